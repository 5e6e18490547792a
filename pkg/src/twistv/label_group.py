"""Label-group oracles: a group G acting on a set S of "colors".

Everything downstream is exact relative to such an oracle.  Group elements
are only ever handled as words in the oracle's named generators; the oracle
answers normalization (canonical words, so word equality in G is string
equality of normal forms), the action on colors, and membership in the
kernel K of the action.  Non-faithful actions are first-class: the
``product_kernel`` kind realizes G = Q x H acting through Q, which makes H
the kernel factor.

Built-in kinds:

``trivial``
    The trivial group acting on ``n`` colors.
``cyclic_rotation``
    Z/n generated by a rotation of ``n`` colors.
``sym``
    The symmetric group on ``n`` colors, generated by adjacent
    transpositions; canonical words via a deterministic bubble-sort
    factorization (length = inversion number).
``finite_table``
    A permutation group on ``n`` colors given by explicit generator tables;
    canonical words are shortest-lex, found by breadth-first search over the
    generated (finite) group.
``product_kernel``
    Q x H with Q any oracle and H a kernel factor of kind ``free``,
    ``free_abelian`` or ``finite``; H acts trivially on the colors.
``translation_Z``
    Z acting on S = Z by translation; the colors are unbounded, so the
    color enumerator is lazy.

All oracles are immutable and all operations pure.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

ColorId = int


class LabelGroupError(ValueError):
    """Raised for unknown generators, unknown colors, or bad configs."""


# ---------------------------------------------------------------------------
# words


@dataclass(frozen=True)
class LabelElement:
    """A word in oracle generators: a tuple of (generator name, +1 or -1)."""

    word: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        for name, exp in self.word:
            if exp not in (1, -1):
                raise LabelGroupError(f"letter exponent must be +1 or -1, got {exp}")
            if not name.isidentifier() or not name.isascii():
                raise LabelGroupError(f"generator name must be an ASCII identifier: {name!r}")

    @staticmethod
    def identity() -> "LabelElement":
        return LabelElement(())

    def is_identity(self) -> bool:
        return not self.word

    def __str__(self) -> str:
        if not self.word:
            return "1"
        return " ".join(n if e == 1 else f"{n}^-1" for n, e in self.word)

    @staticmethod
    def parse(text: str) -> "LabelElement":
        """Parse a whitespace-separated word; "1" (or nothing) is the identity."""
        letters: list[tuple[str, int]] = []
        for tok in text.split():
            if tok == "1":
                continue
            if tok.endswith("^-1"):
                letters.append((tok[:-3], -1))
            elif "^" in tok:
                raise LabelGroupError(f"only ^-1 is allowed in words: {tok!r}")
            else:
                letters.append((tok, 1))
        return LabelElement(tuple(letters))


def free_reduce(word: Sequence[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    """Cancel adjacent inverse pairs until none remain."""
    out: list[tuple[str, int]] = []
    for name, exp in word:
        if out and out[-1][0] == name and out[-1][1] == -exp:
            out.pop()
        else:
            out.append((name, exp))
    return tuple(out)


def _invert_word(word: Sequence[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    return tuple((n, -e) for n, e in reversed(word))


# ---------------------------------------------------------------------------
# permutation helpers (tuples p with p[i] = image of i, acting on 0..n-1)


def _perm_compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # (p o q)(i) = p(q(i))
    return tuple(p[q[i]] for i in range(len(p)))


def _perm_inverse(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def _word_perm(letters: Iterable[tuple[str, int]], table: dict[str, tuple[int, ...]], n: int) -> tuple[int, ...]:
    perm = tuple(range(n))
    for name, exp in letters:
        g = table[name]
        perm = _perm_compose(perm, g if exp == 1 else _perm_inverse(g))
    return perm


# ---------------------------------------------------------------------------
# oracle base


class LabelGroupOracle:
    """Base class; subclasses implement the per-kind capabilities.

    The interface is exactly: normalize, multiply, inverse, act,
    acts_trivially, plus a color enumerator (total for finite S, lazy for
    translation_Z).  ``enumerate_elements`` is available on finite kinds and
    feeds the action analyzer.
    """

    kind: str = "?"

    def __init__(self, generators: Sequence[str], color_names: Sequence[str] | None) -> None:
        gens = tuple(generators)
        if len(set(gens)) != len(gens):
            raise LabelGroupError("generator names must be distinct")
        for g in gens:
            if not g.isidentifier() or not g.isascii() or g == "1":
                raise LabelGroupError(f"bad generator name: {g!r}")
        self._generators = gens
        self._color_names = tuple(color_names) if color_names is not None else None

    # -- generators and colors

    @property
    def generators(self) -> tuple[str, ...]:
        return self._generators

    def generator_elements(self) -> list[LabelElement]:
        return [LabelElement(((g, 1),)) for g in self._generators]

    def check_word(self, w: LabelElement) -> None:
        for name, _ in w.word:
            if name not in self._generators:
                raise LabelGroupError(f"unknown generator {name!r} for oracle kind {self.kind}")

    def colors(self) -> list[ColorId] | None:
        """All colors for finite S, or None when S is infinite."""
        raise NotImplementedError

    def color_count(self) -> int | None:
        cs = self.colors()
        return None if cs is None else len(cs)

    def iter_colors(self) -> Iterator[ColorId]:
        """Lazy enumerator: total for finite S, 0, 1, -1, 2, ... otherwise."""
        cs = self.colors()
        if cs is not None:
            yield from cs
            return
        yield 0
        for k in itertools.count(1):
            yield k
            yield -k

    def is_color(self, s: ColorId) -> bool:
        cs = self.colors()
        return True if cs is None else s in cs

    def color_name(self, s: ColorId) -> str:
        if self._color_names is not None and 0 <= s < len(self._color_names):
            return self._color_names[s]
        return str(s)

    def resolve_color(self, token: str) -> ColorId:
        """Map a textual color token (name or integer) to a ColorId."""
        if self._color_names is not None and token in self._color_names:
            return self._color_names.index(token)
        try:
            s = int(token)
        except ValueError:
            raise LabelGroupError(f"unknown color {token!r}") from None
        if not self.is_color(s):
            raise LabelGroupError(f"color {s} is outside this oracle's color set")
        return s

    # -- the five capabilities

    def normalize(self, w: LabelElement) -> LabelElement:
        raise NotImplementedError

    def multiply(self, g: LabelElement, h: LabelElement) -> LabelElement:
        self.check_word(g)
        self.check_word(h)
        return self.normalize(LabelElement(g.word + h.word))

    def inverse(self, g: LabelElement) -> LabelElement:
        self.check_word(g)
        return self.normalize(LabelElement(_invert_word(g.word)))

    def act(self, g: LabelElement, s: ColorId) -> ColorId:
        """The left action g.s; a word acts letterwise from the right."""
        self.check_word(g)
        if not self.is_color(s):
            raise LabelGroupError(f"unknown color {s}")
        for name, exp in reversed(g.word):
            s = self._act_letter(name, exp, s)
        return s

    def acts_trivially(self, g: LabelElement) -> bool:
        raise NotImplementedError

    # -- extras used by constructions

    def equal(self, g: LabelElement, h: LabelElement) -> bool:
        return self.normalize(g) == self.normalize(h)

    def moved_color(self, g: LabelElement) -> ColorId | None:
        """Some color s with g.s != s, or None when g is in the kernel."""
        if self.acts_trivially(g):
            return None
        for s in self.iter_colors():
            if self.act(g, s) != s:
                return s
        raise AssertionError("non-kernel element moves some color")

    def enumerate_elements(self) -> list[LabelElement] | None:
        """All elements as canonical words for finite G, else None."""
        return None

    def _act_letter(self, name: str, exp: int, s: ColorId) -> ColorId:
        raise NotImplementedError

    # -- config round trip

    def config(self) -> dict:
        raise NotImplementedError

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LabelGroupOracle) and self.config() == other.config()

    def __hash__(self) -> int:
        return hash(json.dumps(self.config(), sort_keys=True))

    def __repr__(self) -> str:
        return f"<oracle {self.kind} gens={list(self._generators)}>"

    def _base_config(self) -> dict:
        cfg: dict = {"kind": self.kind, "generators": list(self._generators)}
        if self._color_names is not None:
            cfg["colors"] = list(self._color_names)
        return cfg


class TrivialOracle(LabelGroupOracle):
    """The trivial group acting (trivially) on n colors."""

    kind = "trivial"

    def __init__(self, n: int, color_names: Sequence[str] | None = None) -> None:
        if n < 1:
            raise LabelGroupError("the color set must be non-empty")
        super().__init__((), color_names)
        self.n = n

    def colors(self) -> list[ColorId]:
        return list(range(self.n))

    def normalize(self, w: LabelElement) -> LabelElement:
        self.check_word(w)
        return LabelElement.identity()

    def acts_trivially(self, g: LabelElement) -> bool:
        self.check_word(g)
        return True

    def _act_letter(self, name: str, exp: int, s: ColorId) -> ColorId:
        raise LabelGroupError(f"unknown generator {name!r}")

    def enumerate_elements(self) -> list[LabelElement]:
        return [LabelElement.identity()]

    def config(self) -> dict:
        return self._base_config() | {"n": self.n}


class CyclicRotationOracle(LabelGroupOracle):
    """Z/n rotating n colors by +1."""

    kind = "cyclic_rotation"

    def __init__(self, n: int, generators: Sequence[str] = ("r",), color_names: Sequence[str] | None = None) -> None:
        if n < 1:
            raise LabelGroupError("cyclic_rotation needs n >= 1")
        if len(generators) != 1:
            raise LabelGroupError("cyclic_rotation has exactly one generator")
        super().__init__(generators, color_names)
        self.n = n

    def colors(self) -> list[ColorId]:
        return list(range(self.n))

    def _exponent(self, w: LabelElement) -> int:
        self.check_word(w)
        return sum(e for _, e in w.word)

    def normalize(self, w: LabelElement) -> LabelElement:
        e = self._exponent(w) % self.n
        return LabelElement(((self._generators[0], 1),) * e)

    def acts_trivially(self, g: LabelElement) -> bool:
        return self._exponent(g) % self.n == 0

    def _act_letter(self, name: str, exp: int, s: ColorId) -> ColorId:
        return (s + exp) % self.n

    def enumerate_elements(self) -> list[LabelElement]:
        g = self._generators[0]
        return [LabelElement(((g, 1),) * e) for e in range(self.n)]

    def config(self) -> dict:
        return self._base_config() | {"n": self.n}


class _PermWordOracle(LabelGroupOracle):
    """Shared machinery for oracles whose elements are permutations of 0..n-1."""

    def __init__(self, tables: dict[str, tuple[int, ...]], n: int,
                 generators: Sequence[str], color_names: Sequence[str] | None) -> None:
        super().__init__(generators, color_names)
        self.n = n
        self._tables = tables
        self._canon: dict[tuple[int, ...], LabelElement] | None = None

    def colors(self) -> list[ColorId]:
        return list(range(self.n))

    def word_perm(self, w: LabelElement) -> tuple[int, ...]:
        self.check_word(w)
        return _word_perm(w.word, self._tables, self.n)

    def acts_trivially(self, g: LabelElement) -> bool:
        return self.word_perm(g) == tuple(range(self.n))

    def _act_letter(self, name: str, exp: int, s: ColorId) -> ColorId:
        g = self._tables[name]
        return g[s] if exp == 1 else _perm_inverse(g)[s]

    def _canonical_words(self) -> dict[tuple[int, ...], LabelElement]:
        """Shortest-lex canonical word for every element of the generated group."""
        if self._canon is None:
            identity = tuple(range(self.n))
            canon = {identity: LabelElement.identity()}
            frontier = [identity]
            letters = []
            for name in self._generators:
                g = self._tables[name]
                letters.append((name, 1, g))
                if _perm_inverse(g) != g:
                    letters.append((name, -1, _perm_inverse(g)))
            while frontier:
                nxt = []
                for p in frontier:
                    w = canon[p]
                    for name, exp, g in letters:
                        q = _perm_compose(p, g)
                        if q not in canon:
                            canon[q] = LabelElement(w.word + ((name, exp),))
                            nxt.append(q)
                frontier = nxt
            self._canon = canon
        return self._canon

    def normalize(self, w: LabelElement) -> LabelElement:
        return self._canonical_words()[self.word_perm(w)]

    def enumerate_elements(self) -> list[LabelElement]:
        return [self._canonical_words()[p] for p in sorted(self._canonical_words())]


class SymOracle(_PermWordOracle):
    """Sym(n) on n colors, generated by adjacent transpositions.

    Generator i (1-based) swaps colors i-1 and i.  Canonical words come from
    bubble-sorting the one-line notation, which yields a reduced word whose
    length is the inversion number.
    """

    kind = "sym"

    def __init__(self, n: int, generators: Sequence[str] | None = None,
                 color_names: Sequence[str] | None = None) -> None:
        if n < 1:
            raise LabelGroupError("sym needs n >= 1")
        gens = tuple(generators) if generators is not None else tuple(f"s{i}" for i in range(1, n))
        if len(gens) != n - 1:
            raise LabelGroupError(f"sym({n}) needs exactly {n - 1} generators, got {len(gens)}")
        tables = {}
        for i, name in enumerate(gens):
            p = list(range(n))
            p[i], p[i + 1] = p[i + 1], p[i]
            tables[name] = tuple(p)
        super().__init__(tables, n, gens, color_names)

    def normalize(self, w: LabelElement) -> LabelElement:
        return self.normalize_perm(self.word_perm(w))

    def enumerate_elements(self) -> list[LabelElement]:
        return [self.normalize_perm(p) for p in itertools.permutations(range(self.n))]

    def normalize_perm(self, p: Sequence[int]) -> LabelElement:
        arr = list(p)
        swaps: list[int] = []
        changed = True
        while changed:
            changed = False
            for j in range(self.n - 1):
                if arr[j] > arr[j + 1]:
                    arr[j], arr[j + 1] = arr[j + 1], arr[j]
                    swaps.append(j)
                    changed = True
        # p times the recorded swaps is the identity, so p equals their
        # product reversed; adjacent transpositions are involutions, and the
        # word is reduced (its length is the inversion number of p).
        return LabelElement(tuple((self._generators[j], 1) for j in reversed(swaps)))

    def config(self) -> dict:
        return self._base_config() | {"n": self.n}


class FiniteTableOracle(_PermWordOracle):
    """A permutation group on n colors given by generator tables."""

    kind = "finite_table"

    def __init__(self, table: Sequence[Sequence[int]], generators: Sequence[str] | None = None,
                 color_names: Sequence[str] | None = None) -> None:
        if not table:
            raise LabelGroupError("finite_table needs at least one generator row")
        n = len(table[0])
        gens = tuple(generators) if generators is not None else tuple(f"g{i}" for i in range(len(table)))
        if len(gens) != len(table):
            raise LabelGroupError("one generator name per table row required")
        tables = {}
        for name, row in zip(gens, table):
            row_t = tuple(row)
            if sorted(row_t) != list(range(n)):
                raise LabelGroupError(f"table row for {name!r} is not a permutation of 0..{n - 1}")
            tables[name] = row_t
        super().__init__(tables, n, gens, color_names)

    def config(self) -> dict:
        return self._base_config() | {"table": [list(self._tables[g]) for g in self._generators]}


class TranslationZOracle(LabelGroupOracle):
    """Z = <t> acting on S = Z by t.s = s + 1; colors are lazy."""

    kind = "translation_Z"

    def __init__(self, generators: Sequence[str] = ("t",)) -> None:
        if len(generators) != 1:
            raise LabelGroupError("translation_Z has exactly one generator")
        super().__init__(generators, None)

    def colors(self) -> None:
        return None

    def _exponent(self, w: LabelElement) -> int:
        self.check_word(w)
        return sum(e for _, e in w.word)

    def normalize(self, w: LabelElement) -> LabelElement:
        e = self._exponent(w)
        sign = 1 if e >= 0 else -1
        return LabelElement(((self._generators[0], sign),) * abs(e))

    def acts_trivially(self, g: LabelElement) -> bool:
        return self._exponent(g) == 0

    def moved_color(self, g: LabelElement) -> ColorId | None:
        return None if self.acts_trivially(g) else 0

    def _act_letter(self, name: str, exp: int, s: ColorId) -> ColorId:
        return s + exp

    def config(self) -> dict:
        return self._base_config()


# ---------------------------------------------------------------------------
# kernel factors for product_kernel


class _KernelFactor:
    """A group H with decidable word problem, acting trivially on colors."""

    kind = "?"

    def __init__(self, generators: Sequence[str]) -> None:
        self.generators = tuple(generators)

    def normalize(self, letters: tuple[tuple[str, int], ...]) -> tuple[tuple[str, int], ...]:
        raise NotImplementedError

    def enumerate_words(self) -> list[tuple[tuple[str, int], ...]] | None:
        return None

    def config(self) -> dict:
        raise NotImplementedError


class FreeKernel(_KernelFactor):
    kind = "free"

    def __init__(self, rank: int, generators: Sequence[str] | None = None) -> None:
        gens = tuple(generators) if generators is not None else tuple(f"t{i}" for i in range(1, rank + 1))
        if len(gens) != rank:
            raise LabelGroupError(f"free kernel of rank {rank} needs {rank} generators")
        super().__init__(gens)
        self.rank = rank

    def normalize(self, letters: tuple[tuple[str, int], ...]) -> tuple[tuple[str, int], ...]:
        return free_reduce(letters)

    def config(self) -> dict:
        return {"kind": self.kind, "rank": self.rank, "generators": list(self.generators)}


class FreeAbelianKernel(_KernelFactor):
    kind = "free_abelian"

    def __init__(self, rank: int, generators: Sequence[str] | None = None) -> None:
        gens = tuple(generators) if generators is not None else tuple(f"t{i}" for i in range(1, rank + 1))
        if len(gens) != rank:
            raise LabelGroupError(f"free_abelian kernel of rank {rank} needs {rank} generators")
        super().__init__(gens)
        self.rank = rank

    def normalize(self, letters: tuple[tuple[str, int], ...]) -> tuple[tuple[str, int], ...]:
        exps = {g: 0 for g in self.generators}
        for name, exp in letters:
            exps[name] += exp
        out: list[tuple[str, int]] = []
        for g in self.generators:
            e = exps[g]
            out.extend(((g, 1 if e > 0 else -1),) * abs(e))
        return tuple(out)

    def config(self) -> dict:
        return {"kind": self.kind, "rank": self.rank, "generators": list(self.generators)}


class FiniteKernel(_KernelFactor):
    """A finite group given by generator permutations of a private index set."""

    kind = "finite"

    def __init__(self, table: Sequence[Sequence[int]], generators: Sequence[str] | None = None) -> None:
        gens = tuple(generators) if generators is not None else tuple(f"k{i}" for i in range(len(table)))
        if len(gens) != len(table):
            raise LabelGroupError("one generator name per table row required")
        super().__init__(gens)
        self.m = len(table[0]) if table else 1
        self._tables = {}
        for name, row in zip(gens, table):
            row_t = tuple(row)
            if sorted(row_t) != list(range(self.m)):
                raise LabelGroupError(f"kernel table row for {name!r} is not a permutation")
            self._tables[name] = row_t
        self._canon: dict[tuple[int, ...], tuple[tuple[str, int], ...]] | None = None

    def _canonical_words(self) -> dict:
        if self._canon is None:
            identity = tuple(range(self.m))
            canon = {identity: ()}
            frontier = [identity]
            letters = []
            for name in self.generators:
                g = self._tables[name]
                letters.append((name, 1, g))
                if _perm_inverse(g) != g:
                    letters.append((name, -1, _perm_inverse(g)))
            while frontier:
                nxt = []
                for p in frontier:
                    w = canon[p]
                    for name, exp, g in letters:
                        q = _perm_compose(p, g)
                        if q not in canon:
                            canon[q] = w + ((name, exp),)
                            nxt.append(q)
                frontier = nxt
            self._canon = canon
        return self._canon

    def normalize(self, letters: tuple[tuple[str, int], ...]) -> tuple[tuple[str, int], ...]:
        return self._canonical_words()[_word_perm(letters, self._tables, self.m)]

    def enumerate_words(self) -> list[tuple[tuple[str, int], ...]]:
        return [self._canonical_words()[p] for p in sorted(self._canonical_words())]

    def config(self) -> dict:
        return {"kind": self.kind, "table": [list(self._tables[g]) for g in self.generators],
                "generators": list(self.generators)}


def _kernel_from_config(cfg: dict) -> _KernelFactor:
    kind = cfg.get("kind")
    gens = cfg.get("generators")
    if kind == "free":
        return FreeKernel(cfg["rank"], gens)
    if kind == "free_abelian":
        return FreeAbelianKernel(cfg["rank"], gens)
    if kind == "finite":
        return FiniteKernel(cfg["table"], gens)
    raise LabelGroupError(f"unknown kernel factor kind {kind!r}")


class ProductKernelOracle(LabelGroupOracle):
    """G = Q x H acting through Q; H is the kernel factor.

    Words may interleave Q- and H-letters; normalization projects onto the
    two components (they commute) and prints the Q part first.
    """

    kind = "product_kernel"

    def __init__(self, base: LabelGroupOracle, kernel: _KernelFactor) -> None:
        overlap = set(base.generators) & set(kernel.generators)
        if overlap:
            raise LabelGroupError(f"generator names shared between base and kernel: {sorted(overlap)}")
        super().__init__(tuple(base.generators) + tuple(kernel.generators), base._color_names)
        self.base = base
        self.kernel = kernel

    def colors(self) -> list[ColorId] | None:
        return self.base.colors()

    def color_name(self, s: ColorId) -> str:
        return self.base.color_name(s)

    def resolve_color(self, token: str) -> ColorId:
        return self.base.resolve_color(token)

    def _split(self, w: LabelElement) -> tuple[tuple[tuple[str, int], ...], tuple[tuple[str, int], ...]]:
        self.check_word(w)
        base_letters = tuple(l for l in w.word if l[0] in self.base.generators)
        kern_letters = tuple(l for l in w.word if l[0] in self.kernel.generators)
        return base_letters, kern_letters

    def normalize(self, w: LabelElement) -> LabelElement:
        base_letters, kern_letters = self._split(w)
        nb = self.base.normalize(LabelElement(base_letters))
        nk = self.kernel.normalize(kern_letters)
        return LabelElement(nb.word + nk)

    def acts_trivially(self, g: LabelElement) -> bool:
        base_letters, _ = self._split(g)
        return self.base.acts_trivially(LabelElement(base_letters))

    def moved_color(self, g: LabelElement) -> ColorId | None:
        base_letters, _ = self._split(g)
        return self.base.moved_color(LabelElement(base_letters))

    def _act_letter(self, name: str, exp: int, s: ColorId) -> ColorId:
        if name in self.kernel.generators:
            return s
        return self.base._act_letter(name, exp, s)

    def enumerate_elements(self) -> list[LabelElement] | None:
        base_elems = self.base.enumerate_elements()
        kern_words = self.kernel.enumerate_words()
        if base_elems is None or kern_words is None:
            return None
        return [LabelElement(b.word + k) for b in base_elems for k in kern_words]

    def kernel_generator_elements(self) -> list[LabelElement]:
        return [LabelElement(((g, 1),)) for g in self.kernel.generators]

    def config(self) -> dict:
        return {"kind": self.kind, "base": self.base.config(), "kernel": self.kernel.config()}


# ---------------------------------------------------------------------------
# construction from config


def oracle_from_config(cfg: dict) -> LabelGroupOracle:
    """Build an oracle from the JSON configuration schema."""
    kind = cfg.get("kind")
    gens = cfg.get("generators")
    colors = cfg.get("colors")
    if kind == "trivial":
        return TrivialOracle(cfg.get("n", 1), colors)
    if kind == "cyclic_rotation":
        return CyclicRotationOracle(cfg["n"], gens or ("r",), colors)
    if kind == "sym":
        return SymOracle(cfg["n"], gens, colors)
    if kind == "finite_table":
        return FiniteTableOracle(cfg["table"], gens, colors)
    if kind == "translation_Z":
        return TranslationZOracle(gens or ("t",))
    if kind == "product_kernel":
        base = oracle_from_config(cfg["base"])
        kernel = _kernel_from_config(cfg["kernel"])
        return ProductKernelOracle(base, kernel)
    raise LabelGroupError(f"unknown oracle kind {kind!r}")


def load_oracle(path: str) -> LabelGroupOracle:
    with open(path, "r", encoding="utf-8") as fh:
        return oracle_from_config(json.load(fh))


# ---------------------------------------------------------------------------
# free-function aliases for the oracle methods


def lg_normalize(oracle: LabelGroupOracle, w: LabelElement) -> LabelElement:
    return oracle.normalize(w)


def lg_multiply(oracle: LabelGroupOracle, g: LabelElement, h: LabelElement) -> LabelElement:
    return oracle.multiply(g, h)


def lg_inverse(oracle: LabelGroupOracle, g: LabelElement) -> LabelElement:
    return oracle.inverse(g)


def lg_act(oracle: LabelGroupOracle, g: LabelElement, s: ColorId) -> ColorId:
    return oracle.act(g, s)


def lg_acts_trivially(oracle: LabelGroupOracle, g: LabelElement) -> bool:
    return oracle.acts_trivially(g)


# ---------------------------------------------------------------------------
# finite-action analyzer


@dataclass(frozen=True)
class ActionReport:
    """Combinatorial summary of a finite action, JSON-serializable."""

    group_order: int
    kernel_order: int
    kernel_generators: tuple[str, ...]
    orbit_counts: tuple[int, ...]              # diagonal orbits on S^m, m = 1..n
    subset_stabilizers: tuple[dict, ...]       # one entry per subset orbit, sizes 1..n
    finiteness_note: str

    def to_dict(self) -> dict:
        return {
            "group_order": self.group_order,
            "kernel_order": self.kernel_order,
            "kernel_generators": list(self.kernel_generators),
            "orbit_counts": list(self.orbit_counts),
            "subset_stabilizers": [dict(d) for d in self.subset_stabilizers],
            "finiteness_note": self.finiteness_note,
        }


def _element_color_perms(oracle: LabelGroupOracle) -> list[tuple[LabelElement, tuple[int, ...]]]:
    elems = oracle.enumerate_elements()
    cs = oracle.colors()
    if elems is None or cs is None:
        raise LabelGroupError("analyzer needs finite G and finite S "
                              "(kinds trivial, cyclic_rotation, sym, finite_table)")
    return [(e, tuple(oracle.act(e, s) for s in cs)) for e in elems]


def analyze_finite_action(oracle: LabelGroupOracle, n: int) -> ActionReport:
    """Orbit/stabilizer/kernel summary of the diagonal actions on S^m, m <= n."""
    if not 1 <= n <= 3:
        raise LabelGroupError("analyzer depth n must be 1, 2 or 3")
    pairs = _element_color_perms(oracle)
    colors = oracle.colors()
    assert colors is not None
    identity_perm = tuple(colors)

    kernel = [(e, p) for e, p in pairs if p == identity_perm]

    # greedy generating subset of the kernel, by closure growth
    gens: list[LabelElement] = []

    def close_over(g: list[LabelElement]) -> set[str]:
        got = {str(LabelElement.identity())}
        frontier = [LabelElement.identity()]
        while frontier:
            nxt = []
            for x in frontier:
                for a in g:
                    y = oracle.multiply(x, a)
                    if str(y) not in got:
                        got.add(str(y))
                        nxt.append(y)
                    z = oracle.multiply(x, oracle.inverse(a))
                    if str(z) not in got:
                        got.add(str(z))
                        nxt.append(z)
            frontier = nxt
        return got

    if len(kernel) > 1:
        current: set[str] = {"1"}
        for e, _ in kernel:
            if str(e) not in current:
                gens.append(e)
                current = close_over(gens)
                if len(current) == len(kernel):
                    break

    perms = [p for _, p in pairs]
    orbit_counts = []
    for m in range(1, n + 1):
        seen: set[tuple[int, ...]] = set()
        count = 0
        for tup in itertools.product(colors, repeat=m):
            if tup in seen:
                continue
            count += 1
            for p in perms:
                seen.add(tuple(p[x] for x in tup))
        orbit_counts.append(count)

    subset_rows = []
    for size in range(1, n + 1):
        seen_sets: set[frozenset[int]] = set()
        for subset in itertools.combinations(colors, size):
            fs = frozenset(subset)
            if fs in seen_sets:
                continue
            orbit = {frozenset(p[x] for x in fs) for p in perms}
            seen_sets |= orbit
            stab = sum(1 for p in perms if frozenset(p[x] for x in fs) == fs)
            subset_rows.append({
                "size": size,
                "representative": sorted(fs),
                "orbit_size": len(orbit),
                "stabilizer_order": stab,
            })

    note = ("G is finite, so every stabilizer and the group itself have all "
            "topological finiteness properties; the combinatorial clauses are the "
            "orbit counts above.")
    return ActionReport(
        group_order=len(pairs),
        kernel_order=len(kernel),
        kernel_generators=tuple(str(g) for g in gens),
        orbit_counts=tuple(orbit_counts),
        subset_stabilizers=tuple(subset_rows),
        finiteness_note=note,
    )
