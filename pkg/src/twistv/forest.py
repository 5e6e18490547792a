"""Dyadic bricks, multicolored binary trees, and forests.

A *brick* is a finitely supported map from colors to binary words; it names
the set of configurations whose coordinate at each supported color starts
with the given word.  The empty brick is the whole space.  A finite ordered
rooted tree whose internal nodes carry a color splits a brick into an
ordered *arboreal partition*: the node of color s splits a brick B along the
next bit of coordinate s, i.e. into B + {s: 0} and B + {s: 1}.  A *forest*
is an ordered tuple of such trees, one per root.

Leaf order is always depth-first, left child before right child, and leaves
of a forest are numbered 1..n across roots in root order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .label_group import ColorId


class ForestError(ValueError):
    pass


# ---------------------------------------------------------------------------
# bricks


@dataclass(frozen=True)
class Brick:
    """Finitely supported map color -> binary word, stored sorted by color."""

    entries: tuple[tuple[ColorId, str], ...] = ()

    def __post_init__(self) -> None:
        seen = set()
        for s, bits in self.entries:
            if s in seen:
                raise ForestError(f"duplicate color {s} in brick")
            seen.add(s)
            if bits == "" or any(c not in "01" for c in bits):
                raise ForestError(f"brick entry for color {s} must be a non-empty 0/1 word")
        if tuple(sorted(self.entries)) != self.entries:
            object.__setattr__(self, "entries", tuple(sorted(self.entries)))

    @staticmethod
    def of(mapping: dict[ColorId, str] | None = None) -> "Brick":
        """Build a brick, dropping empty entries (absent color = empty word)."""
        if not mapping:
            return Brick()
        return Brick(tuple(sorted((s, b) for s, b in mapping.items() if b)))

    def bits(self, s: ColorId) -> str:
        for t, b in self.entries:
            if t == s:
                return b
        return ""

    @property
    def support(self) -> tuple[ColorId, ...]:
        return tuple(s for s, _ in self.entries)

    def is_empty(self) -> bool:
        return not self.entries

    def total_depth(self) -> int:
        return sum(len(b) for _, b in self.entries)

    def measure(self) -> Fraction:
        return Fraction(1, 2 ** self.total_depth())

    def append_bit(self, s: ColorId, bit: str) -> "Brick":
        d = dict(self.entries)
        d[s] = d.get(s, "") + bit
        return Brick.of(d)

    def concat(self, other: "Brick") -> "Brick":
        """Prefix-extend self by other, colorwise."""
        d = dict(self.entries)
        for s, b in other.entries:
            d[s] = d.get(s, "") + b
        return Brick.of(d)

    def compatible(self, other: "Brick") -> bool:
        """True iff the bricks intersect (per color, one word prefixes the other)."""
        for s, b in self.entries:
            c = other.bits(s)
            k = min(len(b), len(c))
            if b[:k] != c[:k]:
                return False
        return True

    def disjoint(self, other: "Brick") -> bool:
        return not self.compatible(other)

    def contains(self, other: "Brick") -> bool:
        """True iff other is a sub-brick of self (colorwise prefix extension)."""
        for s, b in self.entries:
            if not other.bits(s).startswith(b):
                return False
        return True

    def meet(self, other: "Brick") -> "Brick":
        """Intersection of compatible bricks: the longer word per color."""
        if not self.compatible(other):
            raise ForestError("bricks are disjoint, no intersection")
        d = dict(self.entries)
        for s, c in other.entries:
            if len(c) > len(d.get(s, "")):
                d[s] = c
        return Brick.of(d)

    def strip(self, prefix: "Brick") -> "Brick":
        """Remove a containing brick's words from the front, colorwise."""
        if not prefix.contains(self):
            raise ForestError("strip needs a containing brick")
        d = {}
        for s, b in self.entries:
            rest = b[len(prefix.bits(s)):]
            if rest:
                d[s] = rest
        return Brick.of(d)

    def format(self, namer: Callable[[ColorId], str] = str) -> str:
        inner = ", ".join(f"{namer(s)}:{b}" for s, b in self.entries)
        return "{" + inner + "}"

    def __str__(self) -> str:
        return self.format()


def split_brick(psi: Brick, s: ColorId) -> tuple[Brick, Brick]:
    """The two halves of a brick along the next bit of color s."""
    return psi.append_bit(s, "0"), psi.append_bit(s, "1")


# ---------------------------------------------------------------------------
# trees


@dataclass(frozen=True)
class Tree:
    """A multicolored binary tree; Leaf is color=None with no children."""

    color: ColorId | None = None
    child0: "Tree | None" = None
    child1: "Tree | None" = None

    def __post_init__(self) -> None:
        if self.color is None:
            if self.child0 is not None or self.child1 is not None:
                raise ForestError("leaf must have no children")
        else:
            if self.child0 is None or self.child1 is None:
                raise ForestError("internal node needs both children")

    @property
    def is_leaf(self) -> bool:
        return self.color is None

    def leaf_count(self) -> int:
        if self.is_leaf:
            return 1
        return self.child0.leaf_count() + self.child1.leaf_count()

    def format(self, namer: Callable[[ColorId], str] = str) -> str:
        if self.is_leaf:
            return "."
        return f"({namer(self.color)} {self.child0.format(namer)} {self.child1.format(namer)})"

    def __str__(self) -> str:
        return self.format()


LEAF = Tree()


def internal(s: ColorId, c0: Tree, c1: Tree) -> Tree:
    return Tree(s, c0, c1)


def simple_split(s: ColorId) -> Tree:
    """The one-node tree x_s."""
    return internal(s, LEAF, LEAF)


def tree_leaves(tree: Tree, base: Brick = Brick()) -> tuple[Brick, ...]:
    """Leaf bricks in depth-first order, as extensions of ``base``."""
    if tree.is_leaf:
        return (base,)
    s = tree.color
    return (tree_leaves(tree.child0, base.append_bit(s, "0"))
            + tree_leaves(tree.child1, base.append_bit(s, "1")))


def _replace_leaf(tree: Tree, index: int, sub: Tree) -> tuple[Tree, int]:
    """Replace the index-th (0-based) leaf; returns (new tree, leaves consumed so far)."""
    if tree.is_leaf:
        return (sub, 1) if index == 0 else (tree, 1)
    left, nl = _replace_leaf(tree.child0, index, sub)
    right, nr = _replace_leaf(tree.child1, index - nl, sub)
    return Tree(tree.color, left, right), nl + nr


def replace_leaf(tree: Tree, index: int, sub: Tree) -> Tree:
    if not 0 <= index < tree.leaf_count():
        raise ForestError("leaf index out of range")
    new, _ = _replace_leaf(tree, index, sub)
    return new


def subtree_at_leaf_pair(tree: Tree) -> list[tuple[int, ColorId]]:
    """All (first leaf index, color) of internal nodes whose children are both leaves."""
    out: list[tuple[int, ColorId]] = []

    def walk(node: Tree, offset: int) -> int:
        if node.is_leaf:
            return 1
        n0 = walk(node.child0, offset)
        n1 = walk(node.child1, offset + n0)
        if node.child0.is_leaf and node.child1.is_leaf:
            out.append((offset, node.color))
        return n0 + n1

    walk(tree, 0)
    return out


def collapse_leaf_pair(tree: Tree, index: int) -> Tree:
    """Merge the sibling leaves at positions index, index+1 back into one leaf."""

    def walk(node: Tree, offset: int) -> tuple[Tree, int]:
        if node.is_leaf:
            return node, 1
        n0l = node.child0.leaf_count()
        if (node.child0.is_leaf and node.child1.is_leaf and offset == index):
            return LEAF, 2
        left, n0 = walk(node.child0, offset)
        right, n1 = walk(node.child1, offset + n0l)
        return Tree(node.color, left, right), n0 + n1

    new, _ = walk(tree, 0)
    if new.leaf_count() != tree.leaf_count() - 1:
        raise ForestError("no sibling leaf pair at that index")
    return new


# ---------------------------------------------------------------------------
# forests


@dataclass(frozen=True)
class Forest:
    """An ordered tuple of trees: a morphism from #leaves to #roots."""

    trees: tuple[Tree, ...]

    def __post_init__(self) -> None:
        if not self.trees:
            raise ForestError("a forest needs at least one tree")

    @staticmethod
    def identity(n: int) -> "Forest":
        return Forest((LEAF,) * n)

    @property
    def root_arity(self) -> int:
        return len(self.trees)

    @property
    def leaf_arity(self) -> int:
        return sum(t.leaf_count() for t in self.trees)

    def is_identity(self) -> bool:
        return all(t.is_leaf for t in self.trees)

    def leaves(self) -> tuple[tuple[int, Brick], ...]:
        """(root index, brick) per leaf, in forest leaf order."""
        out: list[tuple[int, Brick]] = []
        for r, t in enumerate(self.trees):
            out.extend((r, b) for b in tree_leaves(t))
        return tuple(out)

    def leaf_root_and_offset(self, index: int) -> tuple[int, int]:
        """Map a global 0-based leaf index to (root, leaf index within tree)."""
        for r, t in enumerate(self.trees):
            n = t.leaf_count()
            if index < n:
                return r, index
            index -= n
        raise ForestError("leaf index out of range")

    def replace_global_leaf(self, index: int, sub: Tree) -> "Forest":
        r, off = self.leaf_root_and_offset(index)
        trees = list(self.trees)
        trees[r] = replace_leaf(trees[r], off, sub)
        return Forest(tuple(trees))

    def direct_sum(self, other: "Forest") -> "Forest":
        return Forest(self.trees + other.trees)

    def format(self, namer: Callable[[ColorId], str] = str) -> str:
        return " | ".join(t.format(namer) for t in self.trees)

    def __str__(self) -> str:
        return self.format()


def compose_forests(upper: Forest, lower: Forest) -> Forest:
    """Graft the trees of ``upper`` onto the leaves of ``lower`` (lower applied first)."""
    if upper.root_arity != lower.leaf_arity:
        raise ForestError(
            f"cannot compose: upper has {upper.root_arity} roots, lower has "
            f"{lower.leaf_arity} leaves")
    it = iter(upper.trees)

    def graft(node: Tree) -> Tree:
        if node.is_leaf:
            return next(it)
        return Tree(node.color, graft(node.child0), graft(node.child1))

    return Forest(tuple(graft(t) for t in lower.trees))


# ---------------------------------------------------------------------------
# permutations (1-based images, matching pattern-group notation)


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n}; images[i-1] is the image of i."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ForestError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(1, n + 1)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def preimage(self, j: int) -> int:
        return self.images.index(j) + 1

    def compose(self, other: "Permutation") -> "Permutation":
        """(self o other)(i) = self(other(i)); other is applied first."""
        if self.degree != other.degree:
            raise ForestError("degree mismatch")
        return Permutation(tuple(self(other(i)) for i in range(1, self.degree + 1)))

    def inverse(self) -> "Permutation":
        out = [0] * self.degree
        for i in range(1, self.degree + 1):
            out[self(i) - 1] = i
        return Permutation(tuple(out))

    def is_identity(self) -> bool:
        return all(self(i) == i for i in range(1, self.degree + 1))

    def expand_at(self, k: int) -> "Permutation":
        """The permutation after splitting domain point k into k, k+1.

        The new domain point k+1 maps to self(k)+1, and images above self(k)
        shift up by one; this is the unique order-compatible refinement.
        """
        n = self.degree
        v = self(k)

        def shift(x: int) -> int:
            return x if x < v else x + 1

        images = []
        for j in range(1, n + 2):
            if j < k:
                images.append(shift(self(j)))
            elif j == k:
                images.append(v)
            elif j == k + 1:
                images.append(v + 1)
            else:
                images.append(shift(self(j - 1)))
        return Permutation(tuple(images))

    def contract_at(self, k: int) -> "Permutation":
        """Inverse of expand_at: merge domain k, k+1 (requires self(k+1) == self(k)+1)."""
        if self(k + 1) != self(k) + 1:
            raise ForestError("contract needs adjacent images at k, k+1")
        v = self(k)
        images = []
        for i in range(1, self.degree):
            old = i if i <= k else i + 1
            w = self(old)
            images.append(w if w <= v else w - 1)
        return Permutation(tuple(images))

    def direct_sum(self, other: "Permutation") -> "Permutation":
        n = self.degree
        return Permutation(self.images + tuple(x + n for x in other.images))

    def __str__(self) -> str:
        return "[" + ",".join(str(x) for x in self.images) + "]"


# ---------------------------------------------------------------------------
# brick <-> tree constructions


def tree_for_brick(psi: Brick) -> tuple[Tree, int]:
    """A minimal tree having B(psi) as a leaf; returns (tree, 1-based leaf index).

    Splits colors in increasing ColorId order, following psi's bits; at each
    split the off-path child stays a leaf, so the tree has total_depth + 1
    leaves.
    """

    def build(es: list[tuple[ColorId, str]]) -> tuple[Tree, int]:
        es = [(s, b) for s, b in es if b]
        if not es:
            return LEAF, 0
        s, bits = es[0]
        nxt = ([(s, bits[1:])] if bits[1:] else []) + es[1:]
        inner, idx = build(nxt)
        if bits[0] == "0":
            return Tree(s, inner, LEAF), idx
        return Tree(s, LEAF, inner), 1 + idx

    tree, idx = build(list(psi.entries))
    return tree, idx + 1


def restrict_tree(tree: Tree, psi: Brick) -> Tree:
    """The partition of B(psi) induced by ``tree``'s partition of the root brick.

    Walking the tree: a node of color s whose bit is already forced by psi
    funnels into the matching child; otherwise the node splits B(psi).  The
    leaves of the result, as extensions of psi, are exactly the nonempty
    intersections of psi with the leaves of ``tree``.
    """

    def walk(node: Tree, chi: Brick) -> Tree:
        if node.is_leaf:
            return LEAF
        s = node.color
        pb = psi.bits(s)
        cb = chi.bits(s)
        if len(cb) < len(pb):
            b = pb[len(cb)]
            child = node.child0 if b == "0" else node.child1
            return walk(child, chi.append_bit(s, b))
        return Tree(s, walk(node.child0, chi.append_bit(s, "0")),
                    walk(node.child1, chi.append_bit(s, "1")))

    return walk(tree, Brick())


def common_refinement(t1: Tree, t2: Tree) -> tuple[Forest, Forest, Permutation]:
    """Coarsest common refinement of two arboreal partitions of the same brick.

    Returns (E1, E2, matching) with compose_forests(E1, Forest((t1,))) and
    compose_forests(E2, Forest((t2,))) inducing the same partition; leaf i
    (1-based) of the first composite is the same brick as leaf matching(i)
    of the second.
    """
    leaves1 = tree_leaves(t1)
    leaves2 = tree_leaves(t2)
    e1 = Forest(tuple(restrict_tree(t2, b) for b in leaves1))
    e2 = Forest(tuple(restrict_tree(t1, b) for b in leaves2))

    refined1: list[Brick] = []
    for b, sub in zip(leaves1, e1.trees):
        refined1.extend(b.concat(x) for x in tree_leaves(sub))
    refined2: list[Brick] = []
    for b, sub in zip(leaves2, e2.trees):
        refined2.extend(b.concat(x) for x in tree_leaves(sub))

    index2 = {brick.entries: j for j, brick in enumerate(refined2)}
    images = []
    for brick in refined1:
        j = index2.get(brick.entries)
        if j is None:
            raise ForestError("refinement mismatch: trees do not partition the same brick")
        images.append(j + 1)
    return e1, e2, Permutation(tuple(images))


def tree_with_brick_pair(psi: Brick, phi: Brick) -> tuple[Tree, int, int]:
    """A tree having the disjoint bricks B(psi), B(phi) among its leaves.

    Returns (tree, index of psi, index of phi), 0-based leaf indices.
    """
    if not psi.disjoint(phi):
        raise ForestError("tree_with_brick_pair needs disjoint bricks")

    # first color where the words are incompatible
    wit = None
    for s, b in psi.entries:
        c = phi.bits(s)
        k = min(len(b), len(c))
        if b[:k] != c[:k]:
            wit = s
            break
    assert wit is not None
    s = wit
    bp, bq = psi.bits(s), phi.bits(s)

    def strip_first(br: Brick, col: ColorId) -> Brick:
        d = dict(br.entries)
        rest = d[col][1:]
        if rest:
            d[col] = rest
        else:
            del d[col]
        return Brick.of(d)

    if bp[0] == bq[0]:
        sub, i, j = tree_with_brick_pair(strip_first(psi, s), strip_first(phi, s))
        if bp[0] == "0":
            return Tree(s, sub, LEAF), i, j
        return Tree(s, LEAF, sub), 1 + i, 1 + j

    t_psi, i = tree_for_brick(strip_first(psi, s))
    t_phi, j = tree_for_brick(strip_first(phi, s))
    i, j = i - 1, j - 1
    if bp[0] == "0":
        return Tree(s, t_psi, t_phi), i, t_psi.leaf_count() + j
    return Tree(s, t_phi, t_psi), t_phi.leaf_count() + i, j
