import random

import pytest

from twistv.element import (CantorPoint, Quadruple, act, commutator, equal,
                            expand, germinal_twist, identity_element, inverse,
                            iota, iota1, is_identity, multiply, reduce)
from twistv.forest import (Brick, Forest, LEAF, Permutation, internal,
                           simple_split, tree_for_brick, tree_leaves)
from twistv.label_group import (CyclicRotationOracle, FreeKernel, LabelElement,
                                ProductKernelOracle, SymOracle, TrivialOracle)
from twistv.subgroups import (ConjugacyWord, SubgroupError, WreathElement,
                              deferment, generating_set, in_canonical_kernel,
                              in_full_deferment, normal_generation_witness,
                              quasi_retract, section_zeta,
                              sk_commutator_decomposition, wreath_identity,
                              wreath_inverse, wreath_multiply)

from conftest import (ORACLE_NAMES, color_pool, make_oracle, random_element,
                      random_expansions, random_kernel_element,
                      random_kernel_word, random_point, random_word,
                      random_wreath)

R, B = 0, 1


def word(text):
    return LabelElement.parse(text)


def pk_oracle():
    return ProductKernelOracle(SymOracle(2, ("s",)), FreeKernel(1, ("t",)))


# ---------------------------------------------------------------------------
# canonical kernel


def test_identity_in_kernel(any_oracle):
    assert in_canonical_kernel(identity_element(any_oracle))


def test_equal_trees_kernel_labels():
    o = pk_oracle()
    tree = internal(R, simple_split(B), LEAF)
    labels = (word("t"), word("t t^-1 t"), word("s s"))
    q = Quadruple(o, Forest((tree,)), Permutation.identity(3), labels,
                  Forest((tree,)))
    assert in_canonical_kernel(q)


def test_root_twist_not_in_kernel():
    o = pk_oracle()
    assert not in_canonical_kernel(iota(o, word("s")))
    assert in_canonical_kernel(iota(o, word("t")))


def test_moved_brick_not_in_kernel():
    o = TrivialOracle(2)
    swap = Quadruple(o, Forest((simple_split(R),)), Permutation((2, 1)),
                     (LabelElement.identity(),) * 2,
                     Forest((simple_split(R),)))
    assert not in_canonical_kernel(swap)


def test_kernel_detects_disguised_representatives():
    # an expansion of a kernel element is still recognized
    o = pk_oracle()
    rng = random.Random(4)
    for _ in range(30):
        q = random_kernel_element(o, rng)
        assert in_canonical_kernel(random_expansions(o, rng, q, count=3))


def test_kernel_normality():
    o = pk_oracle()
    rng = random.Random(6)
    for _ in range(100):
        x = random_kernel_element(o, rng)
        h = random_element(o, rng)
        assert in_canonical_kernel(multiply(multiply(h, x), inverse(h)))


# ---------------------------------------------------------------------------
# deferments


def test_deferment_of_empty_brick_is_iota():
    o = pk_oracle()
    assert deferment(o, Brick(), word("t")) == iota(o, word("t"))


def test_deferment_identity_label():
    o = pk_oracle()
    assert equal(deferment(o, Brick.of({R: "1"}), LabelElement.identity()),
                 identity_element(o))


def test_deferment_figure_shape():
    o = pk_oracle()
    psi = Brick.of({R: "1", B: "0"})
    d = deferment(o, psi, word("t"))
    tree, idx = tree_for_brick(psi)
    assert d.minus == d.plus == Forest((tree,))
    assert d.perm.is_identity()
    assert tree.leaf_count() == 3 and idx == 2
    assert d.labels[idx - 1] == word("t")
    assert all(g.is_identity() for i, g in enumerate(d.labels, start=1)
               if i != idx)


def test_deferment_acts_only_inside():
    o = pk_oracle()
    psi = Brick.of({R: "1"})
    d = deferment(o, psi, word("t"))
    rng = random.Random(12)
    for _ in range(40):
        p = random_point(o, rng)
        assert act(d, p) == p  # t acts trivially on colors
        tw = germinal_twist(d, p)
        if p.in_brick(psi):
            assert tw == word("t")
        else:
            assert tw.is_identity()


def test_disjoint_deferments_commute():
    o = pk_oracle()
    rng = random.Random(8)
    psi, phi = Brick.of({R: "0"}), Brick.of({R: "1", B: "1"})
    for _ in range(20):
        g1 = random_word(o, rng)
        g2 = random_word(o, rng)
        assert equal(commutator(deferment(o, psi, g1), deferment(o, phi, g2)),
                     identity_element(o))


def test_in_full_deferment_cases():
    o = pk_oracle()
    psi = Brick.of({R: "1", B: "0"})
    d = deferment(o, psi, word("t"))
    assert in_full_deferment(d, [psi])
    assert not in_full_deferment(d, [Brick.of({R: "0"})])
    # a cover of the whole space makes the condition vacuous
    assert in_full_deferment(d, [Brick.of({R: "0"}), Brick.of({R: "1"})])
    with pytest.raises(SubgroupError):
        in_full_deferment(d, [Brick.of({R: "1"}), Brick.of({B: "0"})])


def test_full_deferment_requires_exact_identity_twist():
    # s s acts trivially but is not 1 in G: not allowed outside the bricks
    o = pk_oracle()
    q = iota(o, word("s s"))
    assert is_identity(q)  # s s normalizes to the identity, so this is fine
    tree = simple_split(R)
    q2 = Quadruple(o, Forest((tree,)), Permutation.identity(2),
                   (word("t"), LabelElement.identity()), Forest((tree,)))
    assert in_full_deferment(q2, [Brick.of({R: "0"})])
    assert not in_full_deferment(q2, [Brick.of({R: "1"})])


# ---------------------------------------------------------------------------
# wreath product and quasi-retraction


def test_wreath_laws():
    o = pk_oracle()
    a = WreathElement(((R, 1),), LabelElement.identity())
    assert wreath_multiply(o, wreath_identity(), a) == a
    assert wreath_multiply(o, a, wreath_identity()) == a
    two = wreath_multiply(o, a, a)
    assert two.vec(R) == 2 and two.label.is_identity()
    # (0, g) (1 at s, 1) = (1 at g.s, g)
    g = word("s")
    lhs = wreath_multiply(o, WreathElement((), g), a)
    assert lhs.vec(o.act(g, R)) == 1 and lhs.vec(R) == 0
    assert lhs.label == g


def test_wreath_group_axioms(any_oracle, rng):
    for _ in range(60):
        a = random_wreath(any_oracle, rng)
        b = random_wreath(any_oracle, rng)
        c = random_wreath(any_oracle, rng)
        assert wreath_multiply(any_oracle, wreath_multiply(any_oracle, a, b), c) \
            == wreath_multiply(any_oracle, a, wreath_multiply(any_oracle, b, c))
        assert wreath_multiply(any_oracle, a, wreath_inverse(any_oracle, a)) \
            == wreath_identity()


def test_retract_identity(any_oracle, rng):
    for _ in range(10):
        p = random_point(any_oracle, rng)
        w = quasi_retract(identity_element(any_oracle), p)
        assert w.is_identity()


def test_retract_of_iota_is_label():
    o = pk_oracle()
    w = quasi_retract(iota(o, word("s t")), CantorPoint.of({}))
    assert w.vector == ()
    assert w.label == o.normalize(word("s t"))


def test_retract_of_unit_section():
    o = pk_oracle()
    z = section_zeta(o, WreathElement(((R, 1),), LabelElement.identity()))
    w = quasi_retract(z, CantorPoint.of({}))
    assert w.vector == ((R, 1),)
    assert w.label.is_identity()


def test_retract_cocycle(any_oracle, rng):
    for _ in range(60):
        h = random_element(any_oracle, rng)
        h2 = random_element(any_oracle, rng)
        p = random_point(any_oracle, rng)
        lhs = quasi_retract(multiply(h2, h), p)
        rhs = wreath_multiply(any_oracle, quasi_retract(h2, act(h, p)),
                              quasi_retract(h, p))
        assert lhs == rhs


def test_retract_representative_independent(any_oracle, rng):
    for _ in range(20):
        h = random_element(any_oracle, rng)
        p = random_point(any_oracle, rng)
        w1 = quasi_retract(h, p)
        w2 = quasi_retract(random_expansions(any_oracle, rng, h, 4), p)
        assert w1 == w2


# ---------------------------------------------------------------------------
# the section


def test_zeta_identity():
    o = pk_oracle()
    assert is_identity(section_zeta(o, wreath_identity()))


def test_zeta_of_pure_label():
    o = pk_oracle()
    g = word("s t")
    assert equal(section_zeta(o, WreathElement((), g)), iota(o, g))


def test_zeta_unit_generator_shape():
    o = TrivialOracle(1)
    z = reduce(section_zeta(o, WreathElement(((R, 1),), LabelElement.identity())))
    # domain tree splits the 1-side: bricks 0, 10, 11; range splits the 0-side
    assert [b for _, b in z.domain_bricks()] == [
        Brick.of({R: "0"}), Brick.of({R: "10"}), Brick.of({R: "11"})]
    assert [b for _, b in z.range_bricks()] == [
        Brick.of({R: "00"}), Brick.of({R: "01"}), Brick.of({R: "1"})]
    assert z.perm.is_identity()
    # 0κ -> 00κ on a sample configuration
    p = CantorPoint.of({R: ("01", "1")})
    assert act(z, p) == CantorPoint.of({R: ("001", "1")})


def test_zeta_is_a_section(any_oracle, rng):
    origin = CantorPoint.of({})
    for _ in range(40):
        w = random_wreath(any_oracle, rng)
        assert quasi_retract(section_zeta(any_oracle, w), origin) == w


def test_zeta_is_a_homomorphism(any_oracle, rng):
    for _ in range(15):
        a = random_wreath(any_oracle, rng)
        b = random_wreath(any_oracle, rng)
        assert equal(section_zeta(any_oracle, wreath_multiply(any_oracle, a, b)),
                     multiply(section_zeta(any_oracle, a),
                              section_zeta(any_oracle, b)))


# ---------------------------------------------------------------------------
# two-commutator decomposition


def test_decomposition_of_identity():
    o = pk_oracle()
    (c1, d1), (c2, d2) = sk_commutator_decomposition(identity_element(o))
    prod = multiply(commutator(c1, d1), commutator(c2, d2))
    assert is_identity(prod)


def test_decomposition_of_deferment():
    o = pk_oracle()
    h = deferment(o, Brick.of({R: "0"}), word("t"))
    (c1, d1), (c2, d2) = sk_commutator_decomposition(h)
    assert equal(multiply(commutator(c1, d1), commutator(c2, d2)), h)


def test_decomposition_pair_slots():
    o = pk_oracle()
    tree = simple_split(R)
    h = Quadruple(o, Forest((tree,)), Permutation.identity(2),
                  (word("t"), word("t")), Forest((tree,)))
    (c1, d1), (c2, d2) = sk_commutator_decomposition(h)
    assert equal(multiply(commutator(c1, d1), commutator(c2, d2)), h)


def test_decomposition_random_kernel_elements():
    rng = random.Random(44)
    oracles_under_test = [
        pk_oracle(),
        ProductKernelOracle(CyclicRotationOracle(2), FreeKernel(2, ("u", "v"))),
    ]
    for o in oracles_under_test:
        for _ in range(15):
            h = random_kernel_element(o, rng)
            (c1, d1), (c2, d2) = sk_commutator_decomposition(h)
            assert equal(multiply(commutator(c1, d1), commutator(c2, d2)), h)


def test_decomposition_rejects_non_kernel():
    o = pk_oracle()
    with pytest.raises(SubgroupError):
        sk_commutator_decomposition(iota(o, word("s")))


# ---------------------------------------------------------------------------
# normal generation witness


def test_witness_empty_for_identity_label():
    o = pk_oracle()
    w = normal_generation_witness(iota(o, word("s")), Brick.of({R: "0"}),
                                  word("t t^-1"))
    assert len(w) == 0
    assert is_identity(w.evaluate(iota(o, word("s"))))


def test_witness_evaluates_to_deferment():
    o = pk_oracle()
    h = iota(o, word("s"))
    psi = Brick.of({R: "0"})
    w = normal_generation_witness(h, psi, word("t"))
    assert equal(w.evaluate(h), deferment(o, psi, word("t")))


def test_witness_from_tree_moving_element():
    # an element displacing a brick without moving colors
    o = pk_oracle()
    h = Quadruple(o, Forest((simple_split(R),)), Permutation((2, 1)),
                  (LabelElement.identity(),) * 2, Forest((simple_split(R),)))
    psi = Brick.of({R: "1", B: "01"})
    w = normal_generation_witness(h, psi, word("t"))
    assert equal(w.evaluate(h), deferment(o, psi, word("t")))


def test_witness_random_instances():
    o = pk_oracle()
    rng = random.Random(27)
    produced = 0
    while produced < 10:
        h = random_element(o, rng)
        if in_canonical_kernel(h):
            continue
        psi = Brick.of({rng.choice((R, B)): "".join(
            rng.choice("01") for _ in range(rng.randrange(1, 3)))})
        k = LabelElement((("t", rng.choice((1, -1))),))
        w = normal_generation_witness(h, psi, k)
        assert equal(w.evaluate(h), deferment(o, psi, k))
        produced += 1


def test_witness_rejects_kernel_element():
    o = pk_oracle()
    with pytest.raises(SubgroupError):
        normal_generation_witness(iota(o, word("t")), Brick.of({R: "0"}),
                                  word("t"))


def test_witness_rejects_nonkernel_label():
    o = pk_oracle()
    with pytest.raises(SubgroupError):
        normal_generation_witness(iota(o, word("s")), Brick.of({R: "0"}),
                                  word("s"))


def test_conjugacy_word_algebra():
    o = pk_oracle()
    rng = random.Random(31)
    h = iota(o, word("s"))
    psi = Brick.of({R: "0"})
    w = normal_generation_witness(h, psi, word("t"))
    target = w.evaluate(h)
    assert equal(w.inverse().evaluate(h), inverse(target))
    u = random_element(o, rng)
    assert equal(w.conjugated_by(u).evaluate(h),
                 multiply(multiply(inverse(u), target), u))


# ---------------------------------------------------------------------------
# generating sets


@pytest.mark.parametrize("name", ["trivial2", "rot3", "sym3", "pk"])
def test_generating_set_elements_are_valid(name):
    o = make_oracle(name)
    rows = generating_set(o)
    assert rows
    for label, q in rows:
        assert q.is_group_element()
        assert isinstance(label, str)


def test_generating_set_single_color():
    o = TrivialOracle(1)
    rows = generating_set(o)
    # the classical V generators only; no label atoms for the trivial group
    assert all(in_canonical_kernel(q) == is_identity(q) for _, q in rows)
    assert len(rows) >= 2


def test_generating_set_contains_label_atoms():
    o = CyclicRotationOracle(2)
    names = [n for n, _ in generating_set(o)]
    assert any("iota" in n for n in names)
