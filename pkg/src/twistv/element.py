"""Group(oid) elements: quadruples [F-, perm, labels, F+] and their arithmetic.

An element is a quadruple of a range forest ``minus``, a pattern permutation,
one label-group word per domain leaf, and a domain forest ``plus``.  It acts
on configurations by: locate the domain leaf whose brick contains the point,
strip that brick's prefix, permute coordinates by the leaf's label, and
prepend the matching range leaf's brick.  Multiplication refines the two
middle patterns to a common one, so the group arithmetic is exact.

Equality is decided by comparing *resolved maps*: expand both elements along
the common refinement of their domain patterns and compare the induced
brick-to-brick-with-twist assignments as dictionaries keyed by the domain
brick.  Points of the underlying space are handled exactly as eventually
periodic families of binary words.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .forest import (Brick, Forest, ForestError, Permutation, Tree, LEAF,
                     collapse_leaf_pair, common_refinement, simple_split,
                     subtree_at_leaf_pair, tree_leaves)
from .label_group import ColorId, LabelElement, LabelGroupOracle


class ElementError(ValueError):
    pass


# ---------------------------------------------------------------------------
# points: eventually periodic configurations


def _normalize_coord(pre: str, per: str) -> tuple[str, str]:
    if not per or any(c not in "01" for c in pre + per):
        raise ElementError("coordinate needs 0/1 prefix and non-empty 0/1 period")
    # minimal period
    for d in range(1, len(per) + 1):
        if len(per) % d == 0 and per == per[:d] * (len(per) // d):
            per = per[:d]
            break
    # minimal preperiod: absorb trailing prefix bits into the rotation
    while pre and pre[-1] == per[-1]:
        per = per[-1] + per[:-1]
        pre = pre[:-1]
    return pre, per


@dataclass(frozen=True)
class CantorPoint:
    """A configuration: one eventually periodic binary sequence per color.

    Colors not listed carry the default coordinate 000...; entries are kept
    in (preperiod, period) normal form, so dataclass equality is equality of
    configurations.
    """

    coords: tuple[tuple[ColorId, tuple[str, str]], ...] = ()

    def __post_init__(self) -> None:
        seen = set()
        norm = []
        for s, (pre, per) in self.coords:
            if s in seen:
                raise ElementError(f"duplicate color {s} in point")
            seen.add(s)
            pre, per = _normalize_coord(pre, per)
            if (pre, per) != ("", "0"):
                norm.append((s, (pre, per)))
        object.__setattr__(self, "coords", tuple(sorted(norm)))

    @staticmethod
    def of(mapping: dict[ColorId, tuple[str, str]] | None = None) -> "CantorPoint":
        if not mapping:
            return CantorPoint()
        return CantorPoint(tuple(mapping.items()))

    def coord(self, s: ColorId) -> tuple[str, str]:
        for t, v in self.coords:
            if t == s:
                return v
        return ("", "0")

    def bits_prefix(self, s: ColorId, k: int) -> str:
        pre, per = self.coord(s)
        if k <= len(pre):
            return pre[:k]
        need = k - len(pre)
        reps = -(-need // len(per))
        return (pre + per * reps)[:k]

    def in_brick(self, brick: Brick) -> bool:
        return all(self.bits_prefix(s, len(b)) == b for s, b in brick.entries)

    def strip(self, brick: Brick) -> "CantorPoint":
        """Drop the brick's words from the front of each coordinate."""
        if not self.in_brick(brick):
            raise ElementError("point is not inside the brick")
        out = dict(self.coords)
        for s, b in brick.entries:
            pre, per = self.coord(s)
            n = len(b)
            if n <= len(pre):
                new = (pre[n:], per)
            else:
                m = (n - len(pre)) % len(per)
                new = ("", per[m:] + per[:m])
            out[s] = new
        return CantorPoint(tuple(out.items()))

    def prepend(self, brick: Brick) -> "CantorPoint":
        out = dict(self.coords)
        for s, b in brick.entries:
            pre, per = self.coord(s)
            out[s] = (b + pre, per)
        return CantorPoint(tuple(out.items()))

    def permute(self, oracle: LabelGroupOracle, g: LabelElement) -> "CantorPoint":
        """Move coordinate s to color g.s, for every supported color."""
        out = {}
        for s, v in self.coords:
            out[oracle.act(g, s)] = v
        return CantorPoint(tuple(out.items()))

    def format(self, namer: Callable[[ColorId], str] = str) -> str:
        inner = ", ".join(f"{namer(s)}: {pre}({per})" for s, (pre, per) in self.coords)
        return "{" + inner + "}"

    def __str__(self) -> str:
        return self.format()


def point_in_any_leaf(point: CantorPoint, bricks: Iterable[Brick]) -> int:
    """Index of the (unique) brick of an arboreal partition containing the point."""
    for i, b in enumerate(bricks):
        if point.in_brick(b):
            return i
    raise ElementError("point escapes the partition; not an arboreal partition?")


# ---------------------------------------------------------------------------
# quadruples


@dataclass(frozen=True)
class Quadruple:
    """[minus, perm, labels, plus] with labels indexed by domain leaves."""

    oracle: LabelGroupOracle
    minus: Forest
    perm: Permutation
    labels: tuple[LabelElement, ...]
    plus: Forest

    def __post_init__(self) -> None:
        n = self.plus.leaf_arity
        if self.minus.leaf_arity != n:
            raise ElementError("domain and range patterns need the same leaf count")
        if self.perm.degree != n or len(self.labels) != n:
            raise ElementError("permutation degree and label count must match leaf count")
        for g in self.labels:
            self.oracle.check_word(g)

    @property
    def leaf_arity(self) -> int:
        return self.plus.leaf_arity

    def is_group_element(self) -> bool:
        return self.plus.root_arity == 1 and self.minus.root_arity == 1

    def domain_bricks(self) -> tuple[tuple[int, Brick], ...]:
        return self.plus.leaves()

    def range_bricks(self) -> tuple[tuple[int, Brick], ...]:
        return self.minus.leaves()

    def with_normalized_labels(self) -> "Quadruple":
        return Quadruple(self.oracle, self.minus, self.perm,
                         tuple(self.oracle.normalize(g) for g in self.labels), self.plus)

    def format(self, namer: Callable[[ColorId], str] | None = None) -> str:
        nm = namer or self.oracle.color_name
        trees_p = " | ".join(t.format(nm) for t in self.plus.trees)
        trees_m = " | ".join(t.format(nm) for t in self.minus.trees)
        labels = ", ".join(str(g) for g in self.labels)
        return f"quad({trees_m}, {self.perm}, [{labels}], {trees_p})"

    def __str__(self) -> str:
        return self.format()


def identity_element(oracle: LabelGroupOracle, arity: int = 1) -> Quadruple:
    return Quadruple(oracle, Forest.identity(arity), Permutation.identity(arity),
                     (LabelElement.identity(),) * arity, Forest.identity(arity))


def iota(oracle: LabelGroupOracle, g: LabelElement) -> Quadruple:
    """The global twist by g: one leaf, label g."""
    return Quadruple(oracle, Forest.identity(1), Permutation.identity(1), (g,),
                     Forest.identity(1))


def iota1(oracle: LabelGroupOracle, s: ColorId, g: LabelElement) -> Quadruple:
    """[x_s, id, (1, g), x_s]: twist by g inside the 1-half of color s."""
    oracle.check_word(g)
    t = Forest((simple_split(s),))
    return Quadruple(oracle, t, Permutation.identity(2),
                     (LabelElement.identity(), g), t)


# ---------------------------------------------------------------------------
# expansion and reduction


def expand(q: Quadruple, k: int, s: ColorId) -> Quadruple:
    """The k-th expansion in color s: split domain leaf k along s.

    The matching range leaf perm(k) splits along g_k.s, the label g_k is
    repeated on both new leaves, and the permutation refines order-compatibly.
    """
    n = q.leaf_arity
    if not 1 <= k <= n:
        raise ElementError(f"leaf index {k} out of range 1..{n}")
    if not q.oracle.is_color(s):
        raise ElementError(f"unknown color {s}")
    g = q.labels[k - 1]
    t = q.oracle.act(g, s)
    j = q.perm(k)
    plus = q.plus.replace_global_leaf(k - 1, simple_split(s))
    minus = q.minus.replace_global_leaf(j - 1, simple_split(t))
    labels = q.labels[:k - 1] + (g, g) + q.labels[k:]
    return Quadruple(q.oracle, minus, q.perm.expand_at(k), labels, plus)


def _forest_pair_candidates(forest: Forest) -> dict[tuple[int, ColorId], None]:
    """Global (first leaf index, color) of sibling leaf pairs, as an ordered set."""
    out: dict[tuple[int, ColorId], None] = {}
    base = 0
    for t in forest.trees:
        for off, s in subtree_at_leaf_pair(t):
            out[(base + off, s)] = None
        base += t.leaf_count()
    return out


def _collapse_global(forest: Forest, index: int) -> Forest:
    r, off = forest.leaf_root_and_offset(index)
    trees = list(forest.trees)
    trees[r] = collapse_leaf_pair(trees[r], off)
    return Forest(tuple(trees))


def reduce(q: Quadruple) -> Quadruple:
    """Greedy un-expansion until no sibling pair can be merged.

    A merge at domain position k needs: sibling domain leaves k, k+1 of some
    color s, adjacent images perm(k)+1 == perm(k+1) forming sibling range
    leaves of color g_k.s, and equal labels.  Each candidate is validated by
    re-expanding the contracted quadruple.  Labels come out normalized.
    """
    q = q.with_normalized_labels()
    changed = True
    while changed:
        changed = False
        minus_pairs = _forest_pair_candidates(q.minus)
        for (off, s) in _forest_pair_candidates(q.plus):
            k = off + 1
            if q.perm(k + 1) != q.perm(k) + 1:
                continue
            if q.labels[k - 1] != q.labels[k]:
                continue
            g = q.labels[k - 1]
            t = q.oracle.act(g, s)
            j = q.perm(k)
            if (j - 1, t) not in minus_pairs:
                continue
            cand = Quadruple(q.oracle, _collapse_global(q.minus, j - 1),
                             q.perm.contract_at(k), q.labels[:k] + q.labels[k + 1:],
                             _collapse_global(q.plus, k - 1))
            if expand(cand, k, s) == q:
                q = cand
                changed = True
                break
    return q


def _expand_along_domain(q: Quadruple, trees: list[Tree]) -> Quadruple:
    """Expand q so that each domain leaf i is refined by trees[i]."""
    pending = list(trees)
    i = 0
    while i < len(pending):
        t = pending[i]
        if t.is_leaf:
            i += 1
            continue
        q = expand(q, i + 1, t.color)
        pending[i:i + 1] = [t.child0, t.child1]
    return q


def _expand_along_range(q: Quadruple, trees: list[Tree]) -> Quadruple:
    """Expand q so that each range leaf j is refined by trees[j]."""
    pending = list(trees)
    j = 0
    while j < len(pending):
        t = pending[j]
        if t.is_leaf:
            j += 1
            continue
        k = q.perm.preimage(j + 1)
        g = q.labels[k - 1]
        s = q.oracle.act(q.oracle.inverse(g), t.color)
        q = expand(q, k, s)
        pending[j:j + 1] = [t.child0, t.child1]
    return q


# ---------------------------------------------------------------------------
# groupoid arithmetic


def multiply(q1: Quadruple, q2: Quadruple) -> Quadruple:
    """The product q1 * q2 (q2 applied first), reduced."""
    if q1.oracle != q2.oracle:
        raise ElementError("elements over different oracles")
    if q1.plus.root_arity != q2.minus.root_arity:
        raise ElementError("not composable: middle object mismatch")

    e1_trees: list[Tree] = []
    e2_trees: list[Tree] = []
    parts: list[Permutation] = []
    for r in range(q1.plus.root_arity):
        er1, er2, pi = common_refinement(q1.plus.trees[r], q2.minus.trees[r])
        e1_trees.extend(er1.trees)
        e2_trees.extend(er2.trees)
        parts.append(pi)
    pi_all = parts[0]
    for p in parts[1:]:
        pi_all = pi_all.direct_sum(p)

    q1e = _expand_along_domain(q1, e1_trees)
    q2e = _expand_along_range(q2, e2_trees)

    # rewrite q1e onto q2e's range pattern: leaf i of q1e.plus is the same
    # brick as leaf pi_all(i) of q2e.minus
    inv = pi_all.inverse()
    sigma = q1e.perm.compose(inv)
    mid_labels = tuple(q1e.labels[inv(i) - 1] for i in range(1, q1e.leaf_arity + 1))

    tau = q2e.perm
    labels = tuple(q1e.oracle.multiply(mid_labels[tau(i) - 1], q2e.labels[i - 1])
                   for i in range(1, q2e.leaf_arity + 1))
    product = Quadruple(q1.oracle, q1e.minus, sigma.compose(tau), labels, q2e.plus)
    return reduce(product)


def inverse(q: Quadruple) -> Quadruple:
    inv = q.perm.inverse()
    labels = tuple(q.oracle.inverse(q.labels[inv(i) - 1])
                   for i in range(1, q.leaf_arity + 1))
    return Quadruple(q.oracle, q.plus, inv, labels, q.minus)


def power(q: Quadruple, m: int) -> Quadruple:
    if m < 0:
        return power(inverse(q), -m)
    out = identity_element(q.oracle, q.plus.root_arity)
    base = q
    while m:
        if m & 1:
            out = multiply(out, base)
        m >>= 1
        if m:
            base = multiply(base, base)
    return out


def conjugate(a: Quadruple, b: Quadruple) -> Quadruple:
    """b * a * b^-1."""
    return multiply(multiply(b, a), inverse(b))


def commutator(a: Quadruple, b: Quadruple) -> Quadruple:
    """a * b * a^-1 * b^-1."""
    return multiply(multiply(a, b), multiply(inverse(a), inverse(b)))


# ---------------------------------------------------------------------------
# action, twist, equality


def act(q: Quadruple, point: CantorPoint) -> CantorPoint:
    """Apply a group element to a configuration."""
    if not q.is_group_element():
        raise ElementError("only one-rooted elements act on configurations")
    bricks = tree_leaves(q.plus.trees[0])
    i = point_in_any_leaf(point, bricks)
    g = q.labels[i]
    moved = point.strip(bricks[i]).permute(q.oracle, g)
    target = tree_leaves(q.minus.trees[0])[q.perm(i + 1) - 1]
    return moved.prepend(target)


def germinal_twist(q: Quadruple, point: CantorPoint) -> LabelElement:
    """The label applied at the (germ of the) given configuration."""
    if not q.is_group_element():
        raise ElementError("only one-rooted elements act on configurations")
    bricks = tree_leaves(q.plus.trees[0])
    i = point_in_any_leaf(point, bricks)
    return q.oracle.normalize(q.labels[i])


ResolvedEntry = tuple[tuple[int, Brick], tuple[int, Brick], LabelElement]


def resolved(q: Quadruple) -> tuple[ResolvedEntry, ...]:
    """(domain (root, brick), range (root, brick), normalized label) per leaf."""
    dom = q.domain_bricks()
    rng = q.range_bricks()
    return tuple((dom[i], rng[q.perm(i + 1) - 1], q.oracle.normalize(q.labels[i]))
                 for i in range(q.leaf_arity))


def _refine_to_common_domain(q1: Quadruple, q2: Quadruple) -> tuple[Quadruple, Quadruple]:
    e1_trees: list[Tree] = []
    e2_trees: list[Tree] = []
    for r in range(q1.plus.root_arity):
        er1, er2, _ = common_refinement(q1.plus.trees[r], q2.plus.trees[r])
        e1_trees.extend(er1.trees)
        e2_trees.extend(er2.trees)
    return _expand_along_domain(q1, e1_trees), _expand_along_domain(q2, e2_trees)


def _resolved_dict(q: Quadruple) -> dict:
    return {(r, b.entries): (rr, bb, g) for (r, b), (rr, bb), g in resolved(q)}


def equal(q1: Quadruple, q2: Quadruple) -> bool:
    """Exact equality of the induced maps."""
    if q1.oracle != q2.oracle:
        raise ElementError("elements over different oracles")
    if (q1.plus.root_arity != q2.plus.root_arity
            or q1.minus.root_arity != q2.minus.root_arity):
        return False
    a, b = _refine_to_common_domain(q1, q2)
    return _resolved_dict(a) == _resolved_dict(b)


def is_identity(q: Quadruple) -> bool:
    return equal(q, identity_element(q.oracle, q.plus.root_arity))


def equality_witness(q1: Quadruple, q2: Quadruple) -> CantorPoint | None:
    """A configuration where the two elements differ (by image or by twist), or None.

    Only meaningful for one-rooted elements, where points live in a single
    root brick.
    """
    if q1.oracle != q2.oracle:
        raise ElementError("elements over different oracles")
    if not (q1.is_group_element() and q2.is_group_element()):
        raise ElementError("witness needs one-rooted elements")
    a, b = _refine_to_common_domain(q1, q2)
    d1, d2 = _resolved_dict(a), _resolved_dict(b)
    for key in sorted(d1):
        if d1[key] == d2[key]:
            continue
        dom = Brick(key[1])
        (_, b1, g1), (_, b2, g2) = d1[key], d2[key]
        base = {s: (bits, "0") for s, bits in dom.entries}
        if g1 != g2:
            return CantorPoint.of(base)
        # labels agree, range bricks differ; find the first differing color
        for s in sorted(set(b1.support) | set(b2.support)):
            c1, c2 = b1.bits(s), b2.bits(s)
            if c1 == c2:
                continue
            k = min(len(c1), len(c2))
            if c1[:k] != c2[:k]:
                return CantorPoint.of(base)
            # one is a strict prefix of the other: steer the continuation,
            # which is coordinate g^-1.s after the strip, away from the
            # longer brick's next bit
            longer = c2 if len(c2) > len(c1) else c1
            flip = "0" if longer[k] == "1" else "1"
            u = q1.oracle.act(q1.oracle.inverse(g1), s)
            pre = dom.bits(u) + flip
            base[u] = (pre, "0")
            return CantorPoint.of(base)
    return None
