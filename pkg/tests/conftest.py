import random

import pytest

from twistv.element import CantorPoint, Quadruple
from twistv.forest import Forest, LEAF, Permutation, Tree, replace_leaf, tree_leaves
from twistv.label_group import (CyclicRotationOracle, FreeKernel, LabelElement,
                                ProductKernelOracle, SymOracle,
                                TranslationZOracle, TrivialOracle)
from twistv.subgroups import WreathElement


def make_oracle(name):
    if name == "trivial2":
        return TrivialOracle(2)
    if name == "rot3":
        return CyclicRotationOracle(3)
    if name == "sym3":
        return SymOracle(3)
    if name == "pk":
        return ProductKernelOracle(SymOracle(2, ("s",)), FreeKernel(1, ("t",)))
    if name == "transZ":
        return TranslationZOracle()
    raise KeyError(name)


ORACLE_NAMES = ["trivial2", "rot3", "sym3", "pk", "transZ"]


@pytest.fixture(params=ORACLE_NAMES)
def any_oracle(request):
    return make_oracle(request.param)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


def color_pool(oracle):
    cols = oracle.colors()
    if cols is None:
        return [-1, 0, 1, 2]
    return cols


def random_word(oracle, rng, max_len=3):
    gens = oracle.generators
    if not gens:
        return LabelElement.identity()
    letters = tuple((rng.choice(gens), rng.choice((1, -1)))
                    for _ in range(rng.randrange(max_len + 1)))
    return LabelElement(letters)


def random_tree(oracle, rng, max_splits=3):
    tree = LEAF
    pool = color_pool(oracle)
    for _ in range(rng.randrange(max_splits + 1)):
        k = rng.randrange(tree.leaf_count())
        tree = replace_leaf(tree, k, Tree(rng.choice(pool), LEAF, LEAF))
    return tree


def random_tree_with_leaves(oracle, rng, n):
    tree = LEAF
    pool = color_pool(oracle)
    while tree.leaf_count() < n:
        k = rng.randrange(tree.leaf_count())
        tree = replace_leaf(tree, k, Tree(rng.choice(pool), LEAF, LEAF))
    return tree


def random_element(oracle, rng, max_splits=3, max_word=3):
    plus = random_tree(oracle, rng, max_splits)
    n = plus.leaf_count()
    minus = random_tree_with_leaves(oracle, rng, n)
    images = list(range(1, n + 1))
    rng.shuffle(images)
    labels = tuple(random_word(oracle, rng, max_word) for _ in range(n))
    return Quadruple(oracle, Forest((minus,)), Permutation(tuple(images)),
                     labels, Forest((plus,)))


def random_point(oracle, rng, n_colors=2):
    pool = color_pool(oracle)
    coords = {}
    for s in rng.sample(pool, min(n_colors, len(pool))):
        pre = "".join(rng.choice("01") for _ in range(rng.randrange(4)))
        per = "".join(rng.choice("01") for _ in range(rng.randrange(1, 4)))
        coords[s] = (pre, per)
    return CantorPoint.of(coords)


def random_kernel_word(oracle, rng, max_len=4):
    """A word acting trivially on colors (identity for kinds with K = 1)."""
    if oracle.kind == "product_kernel":
        gens = oracle.kernel.generators
        letters = []
        for _ in range(rng.randrange(max_len + 1)):
            letters.append((rng.choice(gens), rng.choice((1, -1))))
        if rng.random() < 0.3:
            base = oracle.base.generators
            if base:
                a = rng.choice(base)
                pos = rng.randrange(len(letters) + 1)
                # generators of sym are involutions, so a a acts trivially too
                insert = [(a, 1), (a, 1)] if oracle.base.kind == "sym" \
                    else [(a, 1), (a, -1)]
                letters[pos:pos] = insert
        return LabelElement(tuple(letters))
    return LabelElement.identity()


def random_kernel_element(oracle, rng, max_splits=3, max_word=4):
    tree = random_tree(oracle, rng, max_splits)
    n = tree.leaf_count()
    labels = tuple(random_kernel_word(oracle, rng, max_word) for _ in range(n))
    return Quadruple(oracle, Forest((tree,)), Permutation.identity(n),
                     labels, Forest((tree,)))


def random_wreath(oracle, rng, max_abs=3):
    pool = color_pool(oracle)
    vec = tuple((s, rng.randrange(-max_abs, max_abs + 1))
                for s in rng.sample(pool, min(2, len(pool))))
    vec = tuple((s, m) for s, m in vec if m)
    return WreathElement(vec, oracle.normalize(random_word(oracle, rng)))


def random_expansions(oracle, rng, q, count=5):
    from twistv.element import expand
    for _ in range(count):
        k = rng.randrange(q.leaf_arity) + 1
        q = expand(q, k, rng.choice(color_pool(oracle)))
    return q
