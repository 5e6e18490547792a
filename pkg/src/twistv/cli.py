"""Command line interface.

Exit codes: 0 success (and affirmative answers), 1 negative answers
(unequal, not in kernel), 2 usage/parse/evaluation errors, 3 exhausted
search budgets.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .dsl import (ExprEvalError, ExprSyntaxError, parse_and_evaluate,
                  parse_brick_literal, parse_point_literal, parse_word_literal,
                  parse_expression)
from .element import (CantorPoint, Quadruple, act, equal, equality_witness,
                      expand, germinal_twist, identity_element, iota, multiply,
                      commutator, reduce, resolved)
from .forest import Brick, Forest, Permutation, Tree, LEAF, common_refinement, tree_leaves
from .kuznetsov import Budget, FinitePresentation, PresentationError, decide_word, replay_trace
from .label_group import (LabelElement, LabelGroupError, LabelGroupOracle,
                          analyze_finite_action, oracle_from_config)
from .subgroups import (SubgroupError, WitnessBudgetError, WreathElement,
                        deferment, generating_set, in_canonical_kernel,
                        in_full_deferment, normal_generation_witness,
                        quasi_retract, section_zeta,
                        sk_commutator_decomposition)

_DEFAULT_CONFIG = {"kind": "trivial", "n": 1}


def _load_oracle(args: argparse.Namespace) -> LabelGroupOracle:
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            return oracle_from_config(json.load(fh))
    return oracle_from_config(_DEFAULT_CONFIG)


def _add_expr(p: argparse.ArgumentParser) -> None:
    p.add_argument("expr_pos", nargs="?", metavar="expr", default=None)
    p.add_argument("-e", "--expr", dest="expr", default=None,
                   help="element expression (alternative to the positional; '-' or omit both to read stdin)")


def _add_point(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("point_pos", nargs="?", metavar="point", default=None)
    p.add_argument("-p", "--point", dest="point", default=None,
                   help="configuration literal" + ("" if required else "; default: the all-zero point"))


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="twistv",
        description="exact computation in twisted Brin-Thompson groups over a label-group oracle")
    top.add_argument("-c", "--config", metavar="PATH",
                     help="label-group oracle config (JSON); default: trivial group, one color")
    top.add_argument("--json", action="store_true", help="machine-readable output")
    top.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate an expression to a reduced quadruple")
    _add_expr(p)

    p = sub.add_parser("eq", help="decide equality of two expressions")
    p.add_argument("expr1")
    p.add_argument("expr2")

    p = sub.add_parser("act", help="apply an element to a configuration")
    _add_expr(p)
    _add_point(p, required=True)

    p = sub.add_parser("twist", help="germinal twist of an element at a configuration")
    _add_expr(p)
    _add_point(p, required=True)

    p = sub.add_parser("in-kernel", help="canonical kernel membership")
    _add_expr(p)

    p = sub.add_parser("in-deferment", help="membership in the full deferment of bricks")
    _add_expr(p)
    p.add_argument("bricks", nargs="+", help="pairwise disjoint brick literals")

    p = sub.add_parser("retract", help="wreath quasi-retraction at a configuration")
    _add_expr(p)
    _add_point(p, required=False)

    p = sub.add_parser("zeta", help="section of the retraction at the all-zero point")
    p.add_argument("vector", help="brick-style literal with signed integers, e.g. {0: 2, 1: -1}")
    p.add_argument("word", help="label word")

    p = sub.add_parser("decompose", help="two-commutator decomposition in the canonical kernel")
    _add_expr(p)
    p.add_argument("--skip-check", action="store_true",
                   help="do not re-verify the decomposition")

    p = sub.add_parser("witness", help="conjugacy word reaching a deferment from a displaced element")
    _add_expr(p)
    p.add_argument("--brick", required=True)
    p.add_argument("--label", required=True)
    p.add_argument("--budget", type=int, default=16)
    p.add_argument("--verify", action="store_true")

    p = sub.add_parser("gens", help="print a finite generating set")

    p = sub.add_parser("analyze", help="orbit/stabilizer report for a finite action")
    p.add_argument("-n", "--depth", type=int, default=2)

    p = sub.add_parser("kuznetsov", help="day/night triviality search for a presented group")
    p.add_argument("presentation_pos", nargs="?", metavar="presentation", default=None,
                   help="JSON file with generators and relators")
    p.add_argument("word_pos", nargs="?", metavar="word", default=None)
    p.add_argument("--presentation", dest="presentation", default=None)
    p.add_argument("--word", dest="word", default=None)
    p.add_argument("--budget", "--max-length", dest="max_length", type=int, default=24)
    p.add_argument("--max-states", type=int, default=200_000)

    p = sub.add_parser("report", help="render figures and tables for an element (and the action)")
    p.add_argument("--out", required=True, metavar="DIR")
    _add_expr(p)
    p.add_argument("-n", "--depth", type=int, default=2)

    sub.add_parser("selftest", help="run built-in structural identities")
    return top


def _expr_text(args: argparse.Namespace) -> str:
    flagged = getattr(args, "expr", None)
    if flagged is not None and flagged != "-":
        return flagged
    positional = getattr(args, "expr_pos", None)
    if positional is not None and flagged is None:
        return positional
    data = sys.stdin.read().strip()
    if not data:
        raise ExprEvalError("no expression given (use -e, a positional argument, or stdin)")
    return data


def _point_value(args: argparse.Namespace, oracle: LabelGroupOracle,
                 default_origin: bool = False) -> CantorPoint:
    text = getattr(args, "point", None)
    if text is None:
        text = getattr(args, "point_pos", None)
    if text is None:
        if default_origin:
            return CantorPoint.of({})
        raise ExprEvalError("no configuration given (use -p or a positional argument)")
    return parse_point_literal(text, oracle)


# ---------------------------------------------------------------------------
# per-command handlers


def _cmd_eval(args, oracle) -> int:
    q = reduce(parse_and_evaluate(_expr_text(args), oracle))
    if args.json:
        print(json.dumps(_quad_json(q)))
    else:
        print(q.format())
    return 0


def _quad_json(q: Quadruple) -> dict:
    nm = q.oracle.color_name
    return {
        "quad": q.format(),
        "leaves": [
            {"domain": dom[1].format(nm), "range": rng[1].format(nm), "label": str(g)}
            for dom, rng, g in resolved(q)
        ],
    }


def _cmd_eq(args, oracle) -> int:
    q1 = parse_and_evaluate(args.expr1, oracle)
    q2 = parse_and_evaluate(args.expr2, oracle)
    same = equal(q1, q2)
    if same:
        print(json.dumps({"equal": True}) if args.json else "true")
        return 0
    wit = equality_witness(q1, q2)
    if args.json:
        print(json.dumps({"equal": False,
                          "witness": wit.format(oracle.color_name) if wit else None}))
    else:
        print("false")
        if wit is not None:
            print(f"witness: {wit.format(oracle.color_name)}")
    return 1


def _cmd_act(args, oracle) -> int:
    q = parse_and_evaluate(_expr_text(args), oracle)
    pt = _point_value(args, oracle)
    img = act(q, pt)
    out = img.format(oracle.color_name)
    print(json.dumps({"point": out}) if args.json else out)
    return 0


def _cmd_twist(args, oracle) -> int:
    q = parse_and_evaluate(_expr_text(args), oracle)
    pt = _point_value(args, oracle)
    g = germinal_twist(q, pt)
    print(json.dumps({"label": str(g)}) if args.json else str(g))
    return 0


def _cmd_in_kernel(args, oracle) -> int:
    q = parse_and_evaluate(_expr_text(args), oracle)
    ok = in_canonical_kernel(q)
    print(json.dumps({"in_kernel": ok}) if args.json else ("true" if ok else "false"))
    return 0 if ok else 1


def _cmd_in_deferment(args, oracle) -> int:
    q = parse_and_evaluate(_expr_text(args), oracle)
    bricks = [parse_brick_literal(b, oracle) for b in args.bricks]
    ok = in_full_deferment(q, bricks)
    print(json.dumps({"in_deferment": ok}) if args.json else ("true" if ok else "false"))
    return 0 if ok else 1


def _cmd_retract(args, oracle) -> int:
    q = parse_and_evaluate(_expr_text(args), oracle)
    pt = _point_value(args, oracle, default_origin=True)
    w = quasi_retract(q, pt)
    out = w.format(oracle.color_name)
    print(json.dumps({"retract": out}) if args.json else out)
    return 0


def _cmd_zeta(args, oracle) -> int:
    vec = _parse_int_vector(args.vector, oracle)
    word = parse_word_literal(args.word)
    z = section_zeta(oracle, WreathElement(tuple(vec.items()), word))
    q = reduce(z)
    print(json.dumps(_quad_json(q)) if args.json else q.format())
    return 0


def _parse_int_vector(text: str, oracle) -> dict:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ExprEvalError("vector literal must look like {color: int, ...}")
    inner = text[1:-1].strip()
    out: dict = {}
    if not inner:
        return out
    for part in inner.split(","):
        if ":" not in part:
            raise ExprEvalError(f"bad vector entry {part!r}")
        ctok, val = part.split(":", 1)
        s = oracle.resolve_color(ctok.strip())
        out[s] = int(val.strip())
    return out


def _cmd_decompose(args, oracle) -> int:
    q = parse_and_evaluate(_expr_text(args), oracle)
    (c1, d1), (c2, d2) = sk_commutator_decomposition(q)
    rows = [("c1", c1), ("d1", d1), ("c2", c2), ("d2", d2)]
    if args.json:
        print(json.dumps({name: el.format() for name, el in rows}))
    else:
        for name, el in rows:
            print(f"{name} = {el.format()}")
    if not args.skip_check:
        prod = multiply(commutator(c1, d1), commutator(c2, d2))
        if not equal(prod, q):
            print("check: FAILED", file=sys.stderr)
            return 1
        if not args.json:
            print("check: ok")
    return 0


def _cmd_witness(args, oracle) -> int:
    q = parse_and_evaluate(_expr_text(args), oracle)
    brick = parse_brick_literal(args.brick, oracle)
    label = parse_word_literal(args.label)
    word = normal_generation_witness(q, brick, label, budget=args.budget)
    if args.json:
        print(json.dumps({"factors": [{"exp": e, "conjugator": u.format()}
                                      for e, u in word.factors]}))
    else:
        for e, u in word.factors:
            print(f"{e:+d}\t{u.format()}")
    if args.verify:
        target = deferment(oracle, brick, label)
        if not equal(word.evaluate(q), target):
            print("verify: FAILED", file=sys.stderr)
            return 1
        if not args.json:
            print("verify: ok")
    return 0


def _cmd_gens(args, oracle) -> int:
    rows = generating_set(oracle)
    if args.json:
        print(json.dumps([{"name": n, "quad": el.format()} for n, el in rows]))
    else:
        for name, el in rows:
            print(f"{name}\t{el.format()}")
    return 0


def _cmd_analyze(args, oracle) -> int:
    rep = analyze_finite_action(oracle, args.depth)
    if args.json:
        print(json.dumps(rep.to_dict()))
        return 0
    print(f"group order: {rep.group_order}")
    print(f"kernel order: {rep.kernel_order}")
    print(f"kernel generators: {', '.join(rep.kernel_generators) or '(trivial)'}")
    for m, c in enumerate(rep.orbit_counts, start=1):
        print(f"orbits on S^{m}: {c}")
    for row in rep.subset_stabilizers:
        rep_str = "{" + ",".join(map(str, row["representative"])) + "}"
        print(f"subset {rep_str}: orbit {row['orbit_size']}, stabilizer order "
              f"{row['stabilizer_order']}")
    print(rep.finiteness_note)
    return 0


def _cmd_kuznetsov(args, oracle) -> int:
    pres_path = args.presentation or args.presentation_pos
    word_text = args.word or args.word_pos
    if pres_path is None or word_text is None:
        raise ExprEvalError("kuznetsov needs a presentation file and a word")
    pres = FinitePresentation.load(pres_path)
    word = parse_word_literal(word_text).word
    budget = Budget(max_length=args.max_length, max_states=args.max_states)
    verdict = decide_word(pres, word, budget)
    if args.json:
        print(json.dumps({
            "status": verdict.status,
            "day_trace": list(map(list, verdict.day_trace)) if verdict.day_trace is not None else None,
            "night_traces": {g: list(map(list, t)) for g, t in verdict.night_traces.items()}
            if verdict.night_traces is not None else None,
            "stats": verdict.stats,
        }))
    else:
        print(verdict.status)
        if verdict.day_trace is not None:
            for step in verdict.day_trace:
                print("day\t%d\t%d\t%+d" % step)
        if verdict.night_traces is not None:
            for gen, trace in verdict.night_traces.items():
                for step in trace:
                    print(f"night[{gen}]\t%d\t%d\t%+d" % step)
    return 0 if verdict.is_decided() else 3


def _cmd_report(args, oracle) -> int:
    from .render import (save_action_chart, save_action_table,
                         save_element_figure, save_element_table)
    os.makedirs(args.out, exist_ok=True)
    expr = args.expr or args.expr_pos or "quad((0 . (0 . .)), [2,3,1], [1, 1, 1], (0 . (0 . .)))"
    q = reduce(parse_and_evaluate(expr, oracle))
    paths = {}
    paths["element_figure"] = os.path.join(args.out, "element.png")
    paths["element_table"] = os.path.join(args.out, "element.tsv")
    save_element_figure(q, paths["element_figure"])
    save_element_table(q, paths["element_table"])
    try:
        rep = analyze_finite_action(oracle, args.depth)
    except LabelGroupError:
        rep = None
    if rep is not None:
        paths["action_chart"] = os.path.join(args.out, "action.png")
        paths["action_table"] = os.path.join(args.out, "action.csv")
        save_action_chart(rep, paths["action_chart"])
        save_action_table(rep, paths["action_table"])
    if args.json:
        print(json.dumps(paths))
    else:
        for key, path in paths.items():
            print(f"{key}\t{path}")
    return 0


def _cmd_selftest(args, oracle) -> int:
    checks: list[tuple[str, bool]] = []
    from .label_group import CyclicRotationOracle, SymOracle

    rot = CyclicRotationOracle(3)
    r = LabelElement((("r", 1),))

    # expanding the global twist realizes the color-moving split exchange
    lhs = expand(iota(rot, r), 1, 0)
    rhs = Quadruple(rot, Forest((Tree(1, LEAF, LEAF),)), Permutation.identity(2),
                    (r, r), Forest((Tree(0, LEAF, LEAF),)))
    checks.append(("twisted split exchange", lhs == rhs))

    # two-color split exchange: same partition, matching [1,3,2,4]
    t1 = Tree(0, Tree(1, LEAF, LEAF), Tree(1, LEAF, LEAF))
    t2 = Tree(1, Tree(0, LEAF, LEAF), Tree(0, LEAF, LEAF))
    e1, e2, match = common_refinement(t1, t2)
    checks.append(("two-color exchange", e1.is_identity() and e2.is_identity()
                   and match.images == (1, 3, 2, 4)))

    sym = SymOracle(3, color_names=("r", "b", "g"))
    rr, bb = 0, 1
    tree = Tree(rr, Tree(bb, Tree(rr, LEAF, LEAF), LEAF), LEAF)
    s1 = LabelElement((("s1", 1),))
    s2 = LabelElement((("s2", 1),))
    q = Quadruple(sym, Forest((tree,)), Permutation.identity(4),
                  (s1, s2, sym.multiply(s1, s2), LabelElement.identity()),
                  Forest((tree,)))
    pt = CantorPoint.of({rr: ("01", "0"), bb: ("0", "0")})
    checks.append(("germinal twist picks the leaf label",
                   germinal_twist(q, pt) == s2))

    big = Tree(rr, Tree(bb, Tree(2, LEAF, LEAF), LEAF), Tree(bb, Tree(rr, LEAF, LEAF), LEAF))
    leaves = tree_leaves(big)
    checks.append(("leaf addresses", leaves[3] == Brick.of({rr: "10", bb: "0"})))

    cat = Tree(0, LEAF, Tree(0, LEAF, LEAF))
    c_elem = Quadruple(rot, Forest((cat,)), Permutation((2, 3, 1)),
                       (LabelElement.identity(),) * 3, Forest((cat,)))
    checks.append(("cycle generator has order three",
                   equal(identity_element(rot),
                         multiply(c_elem, multiply(c_elem, c_elem)))))

    ok = True
    for name, passed in checks:
        print(f"{'PASS' if passed else 'FAIL'}  {name}")
        ok = ok and passed
    print(f"selftest: {sum(p for _, p in checks)}/{len(checks)} checks passed")
    return 0 if ok else 1


_HANDLERS = {
    "eval": _cmd_eval,
    "eq": _cmd_eq,
    "act": _cmd_act,
    "twist": _cmd_twist,
    "in-kernel": _cmd_in_kernel,
    "in-deferment": _cmd_in_deferment,
    "retract": _cmd_retract,
    "zeta": _cmd_zeta,
    "decompose": _cmd_decompose,
    "witness": _cmd_witness,
    "gens": _cmd_gens,
    "analyze": _cmd_analyze,
    "kuznetsov": _cmd_kuznetsov,
    "report": _cmd_report,
    "selftest": _cmd_selftest,
}


def run_command(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        oracle = _load_oracle(args)
        return _HANDLERS[args.command](args, oracle)
    except (ExprSyntaxError, ExprEvalError, LabelGroupError, SubgroupError,
            PresentationError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except WitnessBudgetError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv: list[str] | None = None) -> None:
    sys.exit(run_command(argv))


if __name__ == "__main__":
    main()
