"""Distinguished subgroups and the constructions living around them.

* the canonical kernel: elements with a representative [T, id, (k_i), T]
  where every k_i acts trivially on colors;
* deferments D_B(g): twist by g inside a brick, fix the complement;
* full deferments over a finite disjoint family of bricks;
* the wreath-type quasi-retraction at a configuration, and a section of it;
* an explicit two-commutator decomposition of canonical-kernel elements;
* conjugacy words witnessing that a displaced element normally generates
  enough to reach any deferment of a kernel label;
* a finite generating set (for finitely many colors).

Conjugacy words use the standard convention h^u = u^-1 h u.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .element import (CantorPoint, Quadruple, conjugate, expand,
                      identity_element, inverse, iota, iota1, multiply,
                      point_in_any_leaf, power, reduce, resolved)
from .forest import (Brick, Forest, Permutation, Tree, LEAF, simple_split,
                     split_brick, tree_for_brick, tree_leaves,
                     tree_with_brick_pair, replace_leaf)
from .label_group import ColorId, LabelElement, LabelGroupOracle


class SubgroupError(ValueError):
    pass


class WitnessBudgetError(RuntimeError):
    """Raised when a witness search exceeds its expansion budget."""


# ---------------------------------------------------------------------------
# canonical kernel membership


def in_canonical_kernel(h: Quadruple) -> bool:
    """True iff h fixes every brick address and twists only by kernel labels.

    Any representative decides this directly: expansions preserve both a
    domain/range address mismatch and a non-kernel label, so no refinement
    can repair a failing entry.
    """
    return all(dom == rng and h.oracle.acts_trivially(g)
               for dom, rng, g in resolved(h))


def _kernel_form(h: Quadruple) -> tuple[Tree, tuple[LabelElement, ...]]:
    """Rewrite a canonical-kernel element as [T, id, (k_i), T]."""
    if not h.is_group_element():
        raise SubgroupError("kernel form needs a one-rooted element")
    if not in_canonical_kernel(h):
        raise SubgroupError("element is not in the canonical kernel")
    q = reduce(h)
    # the resolved map fixes every leaf brick, so the domain tree with
    # identity pattern and the same (domain-indexed) labels is equal to q
    return q.plus.trees[0], q.labels


# ---------------------------------------------------------------------------
# deferments


def deferment(oracle: LabelGroupOracle, psi: Brick, g: LabelElement) -> Quadruple:
    """D_psi(g): permute the tail coordinates by g inside B(psi), fix the rest."""
    oracle.check_word(g)
    if psi.is_empty():
        return iota(oracle, g)
    tree, idx = tree_for_brick(psi)
    n = tree.leaf_count()
    labels = tuple(g if i == idx else LabelElement.identity() for i in range(1, n + 1))
    return Quadruple(oracle, Forest((tree,)), Permutation.identity(n), labels,
                     Forest((tree,)))


def in_full_deferment(h: Quadruple, bricks: Sequence[Brick]) -> bool:
    """True iff h fixes every configuration outside the given disjoint bricks,
    with exactly trivial germinal twists there."""
    if not h.is_group_element():
        raise SubgroupError("membership test needs a one-rooted element")
    for i, u in enumerate(bricks):
        for v in bricks[i + 1:]:
            if not u.disjoint(v):
                raise SubgroupError("bricks must be pairwise disjoint")
    q = reduce(h)
    # refine until every domain leaf is contained in or disjoint from each brick
    while True:
        split = None
        for i, (_, a) in enumerate(q.domain_bricks()):
            for u in bricks:
                if a.compatible(u) and not u.contains(a):
                    for s, ub in u.entries:
                        ab = a.bits(s)
                        if len(ab) < len(ub) and ub.startswith(ab):
                            split = (i + 1, s)
                            break
                if split:
                    break
            if split:
                break
        if split is None:
            break
        q = expand(q, *split)
    for dom, rng, g in resolved(q):
        if any(u.contains(dom[1]) for u in bricks):
            continue
        if dom != rng or not g.is_identity():
            return False
    return True


# ---------------------------------------------------------------------------
# wreath quasi-retraction


@dataclass(frozen=True)
class WreathElement:
    """An element (vector, label) of the wreath-type target Z^(S) x| G."""

    vector: tuple[tuple[ColorId, int], ...]
    label: LabelElement

    def __post_init__(self) -> None:
        vec = tuple(sorted((s, m) for s, m in self.vector if m != 0))
        object.__setattr__(self, "vector", vec)

    @staticmethod
    def of(mapping: dict[ColorId, int], label: LabelElement) -> "WreathElement":
        return WreathElement(tuple(mapping.items()), label)

    def vec(self, s: ColorId) -> int:
        for t, m in self.vector:
            if t == s:
                return m
        return 0

    def is_identity(self) -> bool:
        return not self.vector and self.label.is_identity()

    def format(self, namer: Callable[[ColorId], str] = str) -> str:
        inner = ", ".join(f"{namer(s)}: {m:+d}" for s, m in self.vector)
        return "({" + inner + "}, " + str(self.label) + ")"

    def __str__(self) -> str:
        return self.format()


def wreath_identity() -> WreathElement:
    return WreathElement((), LabelElement.identity())


def wreath_multiply(oracle: LabelGroupOracle, a: WreathElement, b: WreathElement) -> WreathElement:
    """(v, g)(w, h) = (v + g.w, gh) with (g.w)(s) = w(g^-1.s)."""
    out = {s: m for s, m in a.vector}
    for t, m in b.vector:
        s = oracle.act(a.label, t)
        out[s] = out.get(s, 0) + m
    return WreathElement(tuple(out.items()), oracle.multiply(a.label, b.label))


def wreath_inverse(oracle: LabelGroupOracle, a: WreathElement) -> WreathElement:
    gi = oracle.inverse(a.label)
    out = {oracle.act(gi, s): -m for s, m in a.vector}
    return WreathElement(tuple(out.items()), gi)


def quasi_retract(h: Quadruple, point: CantorPoint) -> WreathElement:
    """The germ of h at the configuration, read in Z^(S) x| G.

    The label is the germinal twist; the integer at color s is the prefix
    length change of output coordinate s, i.e. len(range brick at s) minus
    len(domain brick at g^-1.s).
    """
    if not h.is_group_element():
        raise SubgroupError("retraction needs a one-rooted element")
    bricks = tree_leaves(h.plus.trees[0])
    i = point_in_any_leaf(point, bricks)
    psi = bricks[i]
    phi = tree_leaves(h.minus.trees[0])[h.perm(i + 1) - 1]
    g = h.oracle.normalize(h.labels[i])
    gi = h.oracle.inverse(g)
    vec = {}
    support = set(phi.support) | {h.oracle.act(g, t) for t in psi.support}
    for s in support:
        m = len(phi.bits(s)) - len(psi.bits(h.oracle.act(gi, s)))
        if m:
            vec[s] = m
    return WreathElement(tuple(vec.items()), g)


def _unit_translation(oracle: LabelGroupOracle, s: ColorId) -> Quadruple:
    """The basic element with retract (+1 at s, 1) at the all-zero point."""
    plus = Tree(s, LEAF, Tree(s, LEAF, LEAF))      # leaves 0, 10, 11
    minus = Tree(s, Tree(s, LEAF, LEAF), LEAF)     # leaves 00, 01, 1
    ident = LabelElement.identity()
    return Quadruple(oracle, Forest((minus,)), Permutation.identity(3),
                     (ident,) * 3, Forest((plus,)))


def section_zeta(oracle: LabelGroupOracle, w: WreathElement) -> Quadruple:
    """A section of the quasi-retraction at the all-zero configuration."""
    out = iota(oracle, w.label)
    for s, m in w.vector:
        if not oracle.is_color(s):
            raise SubgroupError(f"unknown color {s} in wreath vector")
        out = multiply(power(_unit_translation(oracle, s), m), out)
    return out


# ---------------------------------------------------------------------------
# conjugacy words


@dataclass(frozen=True)
class ConjugacyWord:
    """A product of conjugates prod_i (h^{e_i})^{u_i}, read left to right."""

    factors: tuple[tuple[int, Quadruple], ...]

    def evaluate(self, h: Quadruple) -> Quadruple:
        out = identity_element(h.oracle)
        for e, u in self.factors:
            term = conjugate(power(h, e), inverse(u))
            out = multiply(out, term)
        return out

    def inverse(self) -> "ConjugacyWord":
        return ConjugacyWord(tuple((-e, u) for e, u in reversed(self.factors)))

    def conjugated_by(self, u: Quadruple) -> "ConjugacyWord":
        """The word for u^-1 (value) u."""
        return ConjugacyWord(tuple((e, multiply(v, u)) for e, v in self.factors))

    def __mul__(self, other: "ConjugacyWord") -> "ConjugacyWord":
        return ConjugacyWord(self.factors + other.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def format(self, namer: Callable[[ColorId], str] | None = None) -> str:
        if not self.factors:
            return "1"
        parts = []
        for e, u in self.factors:
            head = "h" if e == 1 else f"h^{e}"
            parts.append(f"({head})^{{{u.format(namer)}}}")
        return " * ".join(parts)

    def __str__(self) -> str:
        return self.format()


# note: (h^e)^{u} means u^-1 h^e u, so evaluate() conjugates by inverse(u)
# being careful that conjugate(a, b) is b a b^-1.


# ---------------------------------------------------------------------------
# displaced bricks and transporters


def _flip(bit: str) -> str:
    return "1" if bit == "0" else "0"


def _displaced_brick(h: Quadruple) -> tuple[Brick, Brick, LabelElement]:
    """A brick B with h(B) = B' disjoint from B, twist g on it, union != C^S.

    Requires h outside the canonical kernel.  Case A: some leaf moves its
    address; extend it until domain and image are incompatible.  Case B: all
    addresses fixed but some label moves a color; a two-color extension
    separates the brick from its image.
    """
    oracle = h.oracle
    rs = resolved(reduce(h))

    found: tuple[Brick, Brick, LabelElement] | None = None
    for (_, a), (_, b), g in rs:
        if a == b:
            continue
        if a.disjoint(b):
            found = (a, b, g)
            break
        # compatible but different: extend past the first difference
        for s in sorted(set(a.support) | set(b.support)):
            ab, bb = a.bits(s), b.bits(s)
            if ab == bb:
                continue
            if len(ab) < len(bb):
                c = _flip(bb[len(ab)])
                found = (a.append_bit(s, c), b.append_bit(oracle.act(g, s), c), g)
            else:
                u = oracle.act(oracle.inverse(g), s)
                c = _flip(ab[len(bb)])
                found = (a.append_bit(u, c), b.append_bit(s, c), g)
            break
        break
    if found is None:
        for (_, a), (_, b), g in rs:
            if oracle.acts_trivially(g):
                continue
            s = oracle.moved_color(g)
            t = oracle.act(g, s)
            bb = a.append_bit(s, "0").append_bit(t, "1")
            im = b.append_bit(t, "0").append_bit(oracle.act(g, t), "1")
            found = (bb, im, g)
            break
    if found is None:
        raise SubgroupError("element is in the canonical kernel; no displaced brick")

    bb, im, g = found
    if not bb.disjoint(im):
        raise AssertionError("displaced brick construction produced overlapping bricks")
    # keep the union a proper subset: shrink B (and its image) once if the
    # two bricks are complementary halves
    if bb.measure() + im.measure() == 1:
        u = bb.support[0]
        bb2 = bb.append_bit(u, "0")
        im2 = im.append_bit(oracle.act(g, u), "0")
        bb, im = bb2, im2
    return bb, im, g


def _transporter(oracle: LabelGroupOracle, src: tuple[Brick, Brick],
                 tgt: tuple[Brick, Brick]) -> Quadruple:
    """An element with trivial twists mapping src[0] -> tgt[0], src[1] -> tgt[1]."""
    t_src, i0, i1 = tree_with_brick_pair(*src)
    t_tgt, j0, j1 = tree_with_brick_pair(*tgt)

    def pad(tree: Tree, keep: tuple[int, int], n: int) -> tuple[Tree, tuple[int, int]]:
        # split non-distinguished leaves until the tree has n leaves
        a, b = keep
        while tree.leaf_count() < n:
            m = next(i for i in range(tree.leaf_count()) if i not in (a, b))
            col = tree_leaves(tree)[m].support
            s = col[0] if col else (tree.color if not tree.is_leaf else 0)
            tree = replace_leaf(tree, m, simple_split(s))
            if a > m:
                a += 1
            if b > m:
                b += 1
        return tree, (a, b)

    n = max(t_src.leaf_count(), t_tgt.leaf_count())
    t_src, (i0, i1) = pad(t_src, (i0, i1), n)
    t_tgt, (j0, j1) = pad(t_tgt, (j0, j1), n)

    images = [0] * n
    images[i0] = j0 + 1
    images[i1] = j1 + 1
    rest_src = [i for i in range(n) if i not in (i0, i1)]
    rest_tgt = [j + 1 for j in range(n) if j not in (j0, j1)]
    for i, j in zip(rest_src, rest_tgt):
        images[i] = j
    perm = Permutation(tuple(images))
    ident = LabelElement.identity()
    return Quadruple(oracle, Forest((t_tgt,)), perm, (ident,) * n, Forest((t_src,)))


def _aux_brick_outside(psi: Brick) -> Brick:
    """A small brick disjoint from a non-empty brick."""
    s = psi.support[0]
    b = _flip(psi.bits(s)[0])
    return Brick.of({s: b + "0"})


# ---------------------------------------------------------------------------
# normal generation witness


def normal_generation_witness(h: Quadruple, psi: Brick, k: LabelElement,
                              budget: int = 16) -> ConjugacyWord:
    """A conjugacy word in h evaluating to the deferment D_psi(k).

    Preconditions: h is a one-rooted element outside the canonical kernel,
    k acts trivially on colors, psi is non-empty.  The construction is
    deterministic: find a displaced brick (B, B') of h, form the word for
    W(B', B; k) = D_{B'}(k) D_B(k)^-1 out of two conjugates of h^{+-1},
    transport it to brick pairs near psi, and combine

        D_psi(k) = W(A0, psi; k)^-1 * W(A1, psi; k)^-1

    over the two halves A0, A1 of psi, each reached through an auxiliary
    brick disjoint from psi.  The result always has eight factors.
    """
    oracle = h.oracle
    if not h.is_group_element():
        raise SubgroupError("witness needs a one-rooted element")
    if not oracle.acts_trivially(k):
        raise SubgroupError("the deferred label must act trivially on colors")
    if psi.is_empty():
        raise SubgroupError("witness needs a proper (non-empty) brick")
    if in_canonical_kernel(h):
        raise SubgroupError("witness needs an element outside the canonical kernel")
    if oracle.normalize(k).is_identity():
        return ConjugacyWord(())

    bb, im, g = _displaced_brick(h)
    if bb.total_depth() + im.total_depth() > budget:
        raise WitnessBudgetError(
            f"displaced brick needs depth {bb.total_depth() + im.total_depth()}"
            f" > budget {budget}")

    # base word: conjugating [h, D_B(k)] by D_{B'}(g) gives
    # W(B', B; k) = D_{B'}(k) D_B(k)^-1
    f = deferment(oracle, bb, k)
    v = deferment(oracle, im, g)
    base = ConjugacyWord(((1, identity_element(oracle)), (-1, inverse(f)))).conjugated_by(v)

    def transported(tgt_from: Brick, tgt_to: Brick) -> ConjugacyWord:
        # the word for W(tgt_to, tgt_from; k), via tau (B, B') -> (tgt_from, tgt_to)
        tau = _transporter(oracle, (bb, im), (tgt_from, tgt_to))
        return base.conjugated_by(inverse(tau))

    z = _aux_brick_outside(psi)
    a0, a1 = split_brick(psi, psi.support[0])

    def w_half(ai: Brick) -> ConjugacyWord:
        # W(ai, psi; k) = W(ai, z; k) * W(z, psi; k)
        return transported(z, ai) * transported(psi, z)

    return w_half(a0).inverse() * w_half(a1).inverse()


# ---------------------------------------------------------------------------
# two-commutator decomposition in the canonical kernel


def _smallest_tree_color(tree: Tree, fallback: ColorId) -> ColorId:
    colors = []

    def walk(node: Tree) -> None:
        if node.is_leaf:
            return
        colors.append(node.color)
        walk(node.child0)
        walk(node.child1)

    walk(tree)
    return min(colors) if colors else fallback


def _commutator_pair(v: Quadruple) -> tuple[Quadruple, Quadruple]:
    """For v = [T, id, (1, m_2..m_n), T] with kernel labels, (c, d) with v = [c, d]."""
    oracle = v.oracle
    n = v.leaf_arity
    tee = v.plus.trees[0]
    s = _smallest_tree_color(tee, _default_color(oracle))

    qp = v
    for _ in range(n - 1):
        qp = expand(qp, 1, s)
    qpp = v
    for j in range(n, 1, -1):
        qpp = expand(qpp, j, s)
    t_one = qp.plus.trees[0]     # leaf 1 split n-1 times
    t_two = qpp.plus.trees[0]    # every other leaf split once
    big = 2 * n - 1
    ident = LabelElement.identity()

    alpha = [0] * big
    for i in range(1, n + 1):
        alpha[i - 1] = 2 * i - 1
    for j in range(2, n + 1):
        alpha[n + j - 2] = 2 * j - 2
    a = Quadruple(oracle, Forest((t_two,)), Permutation(tuple(alpha)),
                  (ident,) * big, Forest((t_one,)))

    beta = [0] * big
    beta[0] = 1
    for j in range(2, n + 1):
        beta[2 * j - 2] = n + j - 1   # position 2j-1 carries m_j
        beta[2 * j - 3] = j           # position 2j-2 carries a trivial label
    b = Quadruple(oracle, Forest((t_one,)), Permutation(tuple(beta)),
                  (ident,) * big, Forest((t_two,)))

    return conjugate(v, b), conjugate(a, b)


def _default_color(oracle: LabelGroupOracle) -> ColorId:
    cs = oracle.colors()
    return cs[0] if cs else 0


def sk_commutator_decomposition(h: Quadruple) -> tuple[tuple[Quadruple, Quadruple],
                                                       tuple[Quadruple, Quadruple]]:
    """Two commutator pairs ((c1, d1), (c2, d2)) with h = [c1,d1] * [c2,d2].

    Requires h in the canonical kernel.  The element is rewritten as
    [T, id, (k_1..k_n), T], split into the parts carrying k_1 and k_2..k_n,
    and each part is exhibited as a single commutator inside the kernel.
    """
    oracle = h.oracle
    tee, labels = _kernel_form(h)
    q = Quadruple(oracle, Forest((tee,)), Permutation.identity(len(labels)),
                  labels, Forest((tee,)))
    if q.leaf_arity == 1:
        q = expand(q, 1, _default_color(oracle))
    tee = q.plus.trees[0]
    labels = q.labels
    n = q.leaf_arity
    ident = LabelElement.identity()

    w1 = Quadruple(oracle, q.minus, q.perm, (labels[0],) + (ident,) * (n - 1), q.plus)
    w2 = Quadruple(oracle, q.minus, q.perm, (ident,) + labels[1:], q.plus)

    swap = list(range(1, n + 1))
    swap[0], swap[1] = 2, 1
    u = Quadruple(oracle, q.minus, Permutation(tuple(swap)), (ident,) * n, q.plus)
    v1 = Quadruple(oracle, q.minus, q.perm, (ident, labels[0]) + (ident,) * (n - 2), q.plus)

    c1, d1 = _commutator_pair(v1)
    c2, d2 = _commutator_pair(w2)
    return (conjugate(c1, u), conjugate(d1, u)), (c2, d2)


# ---------------------------------------------------------------------------
# generating set


def _v_tree_a(s: ColorId) -> tuple[Tree, Tree]:
    dom = Tree(s, LEAF, Tree(s, LEAF, LEAF))     # 0, 10, 11
    rng = Tree(s, Tree(s, LEAF, LEAF), LEAF)     # 00, 01, 1
    return dom, rng


def generating_set(oracle: LabelGroupOracle) -> list[tuple[str, Quadruple]]:
    """A finite generating set: four V-type generators per color, one
    coordinate swap per color pair, and the label atoms iota / iota1 per
    oracle generator.  Needs finitely many colors."""
    colors = oracle.colors()
    if colors is None:
        raise SubgroupError("generating_set needs finitely many colors")
    ident = LabelElement.identity()
    out: list[tuple[str, Quadruple]] = []
    nm = oracle.color_name

    for s in colors:
        dom_a, rng_a = _v_tree_a(s)
        out.append((f"A[{nm(s)}]", Quadruple(
            oracle, Forest((rng_a,)), Permutation.identity(3), (ident,) * 3,
            Forest((dom_a,)))))
        dom_b = Tree(s, LEAF, Tree(s, Tree(s, LEAF, LEAF), LEAF))   # 0,100,101,11
        rng_b = Tree(s, LEAF, Tree(s, LEAF, Tree(s, LEAF, LEAF)))   # 0,10,110,111
        out.append((f"B[{nm(s)}]", Quadruple(
            oracle, Forest((rng_b,)), Permutation.identity(4), (ident,) * 4,
            Forest((dom_b,)))))
        cat = Tree(s, LEAF, Tree(s, LEAF, LEAF))
        out.append((f"C[{nm(s)}]", Quadruple(
            oracle, Forest((cat,)), Permutation((2, 3, 1)), (ident,) * 3,
            Forest((cat,)))))
        out.append((f"pi0[{nm(s)}]", Quadruple(
            oracle, Forest((cat,)), Permutation((2, 1, 3)), (ident,) * 3,
            Forest((cat,)))))

    for i, s in enumerate(colors):
        for t in colors[i + 1:]:
            out.append((f"w[{nm(s)},{nm(t)}]", Quadruple(
                oracle, Forest((simple_split(t),)), Permutation.identity(2),
                (ident,) * 2, Forest((simple_split(s),)))))

    s0 = colors[0]
    for gname in oracle.generators:
        gel = LabelElement(((gname, 1),))
        out.append((f"iota[{gname}]", iota(oracle, gel)))
        out.append((f"iota1[{nm(s0)},{gname}]", iota1(oracle, s0, gel)))
    return out
