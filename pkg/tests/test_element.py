import random

import pytest

from twistv.element import (CantorPoint, ElementError, Quadruple, act,
                            commutator, conjugate, equal, equality_witness,
                            expand, germinal_twist, identity_element, inverse,
                            iota, iota1, is_identity, multiply,
                            point_in_any_leaf, power, reduce, resolved)
from twistv.forest import (Brick, Forest, LEAF, Permutation, internal,
                           simple_split, tree_leaves)
from twistv.label_group import (CyclicRotationOracle, LabelElement, SymOracle,
                                TranslationZOracle, TrivialOracle)

import oracles
from conftest import (ORACLE_NAMES, color_pool, make_oracle, random_element,
                      random_expansions, random_point, random_word)

R, B, G = 0, 1, 2


def word(text):
    return LabelElement.parse(text)


def point(oracle_coords):
    return CantorPoint.of(oracle_coords)


# ---------------------------------------------------------------------------
# points


def test_point_normal_form():
    # (pre, per) pairs representing the same sequence compare equal
    assert point({R: ("0", "10")}) == point({R: ("01", "01")})
    assert point({R: ("", "11")}) == point({R: ("1", "1")})
    # the all-zero default coordinate is dropped entirely
    assert point({R: ("", "0")}) == point({})
    assert point({R: ("0", "00")}) == CantorPoint.of({})


def test_point_bits_prefix():
    p = point({R: ("01", "10")})
    assert p.bits_prefix(R, 8) == oracles.point_bits({R: ("01", "10")}, R, 8)
    assert p.bits_prefix(B, 5) == "00000"


def test_point_membership():
    p = point({R: ("01", "10")})
    assert p.in_brick(Brick.of({R: "011"}))
    assert not p.in_brick(Brick.of({R: "00"}))
    assert p.in_brick(Brick())
    assert point_in_any_leaf(p, tree_leaves(simple_split(R))) == 0


# ---------------------------------------------------------------------------
# construction and validation


def test_quadruple_validation():
    o = TrivialOracle(2)
    with pytest.raises(ElementError):
        Quadruple(o, Forest((LEAF,)), Permutation.identity(2),
                  (LabelElement.identity(),) * 2, Forest((simple_split(R),)))
    with pytest.raises(ElementError):
        Quadruple(o, Forest((simple_split(R),)), Permutation.identity(2),
                  (LabelElement.identity(),), Forest((simple_split(R),)))


def test_identity_element_shape():
    o = TrivialOracle(1)
    q = identity_element(o)
    assert is_identity(q)
    assert q.is_group_element()


# ---------------------------------------------------------------------------
# expansion and reduction


def test_expand_identity_with_color():
    o = TrivialOracle(2)
    q = expand(identity_element(o), 1, R)
    assert q.plus == Forest((simple_split(R),))
    assert q.minus == Forest((simple_split(R),))
    assert q.perm.is_identity()
    assert all(g.is_identity() for g in q.labels)
    assert equal(q, identity_element(o))


def test_expand_twisted_root_label():
    # a global twist expands to the color-moved split with doubled labels
    o = CyclicRotationOracle(3)
    r = word("r")
    q = expand(iota(o, r), 1, R)
    assert q.plus == Forest((simple_split(R),))
    assert q.minus == Forest((simple_split(B),))  # r.R = B
    assert q.labels == (r, r)
    assert equal(q, iota(o, r))


def test_expand_permutation_update():
    o = TrivialOracle(1)
    swap = Quadruple(o, Forest((simple_split(R),)), Permutation((2, 1)),
                     (LabelElement.identity(),) * 2, Forest((simple_split(R),)))
    assert expand(swap, 1, R).perm.images == oracles.SWAP_EXPANDED_AT_1


def test_expand_out_of_range():
    o = TrivialOracle(1)
    with pytest.raises(ElementError):
        expand(identity_element(o), 2, R)


def test_reduce_undoes_trivial_expansion():
    o = TrivialOracle(2)
    q = expand(identity_element(o), 1, R)
    assert reduce(q) == identity_element(o)


def test_reduce_undoes_twisted_expansion():
    o = CyclicRotationOracle(3)
    q = expand(iota(o, word("r")), 1, B)
    red = reduce(q)
    assert red.plus == Forest((LEAF,))
    assert red.labels == (word("r"),)


def test_reduce_idempotent_on_random_elements(any_oracle, rng):
    for _ in range(50):
        q = random_element(any_oracle, rng)
        red = reduce(q)
        assert reduce(red) == red
        assert equal(red, q)


def test_expansions_never_change_the_element(any_oracle, rng):
    for _ in range(30):
        q = random_element(any_oracle, rng)
        e = random_expansions(any_oracle, rng, q, count=4)
        assert equal(q, e)


# ---------------------------------------------------------------------------
# multiplication, inversion, powers


def test_root_label_multiplication():
    o = CyclicRotationOracle(3)
    assert equal(multiply(iota(o, word("r")), iota(o, word("r r"))),
                 identity_element(o))


def test_multiply_identity_neutral(any_oracle, rng):
    e = identity_element(any_oracle)
    for _ in range(20):
        q = random_element(any_oracle, rng)
        assert equal(multiply(q, e), q)
        assert equal(multiply(e, q), q)


def test_iota1_slotwise():
    o = SymOracle(3)
    g, h = word("s1"), word("s2")
    prod = multiply(iota1(o, R, g), iota1(o, R, h))
    assert equal(prod, iota1(o, R, o.multiply(g, h)))


def test_inverse_examples():
    o = SymOracle(3)
    assert is_identity(inverse(identity_element(o)))
    q = Quadruple(o, Forest((simple_split(R),)), Permutation((2, 1)),
                  (word("s1"), word("s2")), Forest((simple_split(R),)))
    assert equal(multiply(q, inverse(q)), identity_element(o))
    assert equal(multiply(inverse(q), q), identity_element(o))
    assert equal(inverse(iota(o, word("s1 s2"))),
                 iota(o, o.inverse(word("s1 s2"))))


def test_group_laws_random(any_oracle, rng):
    e = identity_element(any_oracle)
    for _ in range(25):
        a = random_element(any_oracle, rng)
        b = random_element(any_oracle, rng)
        c = random_element(any_oracle, rng)
        assert equal(multiply(multiply(a, b), c), multiply(a, multiply(b, c)))
        assert equal(multiply(a, inverse(a)), e)
        assert equal(multiply(inverse(a), a), e)


def test_power():
    o = CyclicRotationOracle(3)
    q = iota(o, word("r"))
    assert equal(power(q, 3), identity_element(o))
    assert equal(power(q, -1), inverse(q))
    assert equal(power(q, 0), identity_element(o))
    cat = internal(R, LEAF, internal(R, LEAF, LEAF))
    cyc = Quadruple(TrivialOracle(1), Forest((cat,)), Permutation((2, 3, 1)),
                    (LabelElement.identity(),) * 3, Forest((cat,)))
    assert equal(power(cyc, 3), identity_element(TrivialOracle(1)))
    assert not equal(power(cyc, 2), identity_element(TrivialOracle(1)))


def test_conjugate_and_commutator(any_oracle, rng):
    for _ in range(10):
        a = random_element(any_oracle, rng)
        b = random_element(any_oracle, rng)
        assert equal(conjugate(a, b), multiply(multiply(b, a), inverse(b)))
        assert equal(commutator(a, b),
                     multiply(multiply(a, b), multiply(inverse(a), inverse(b))))


# ---------------------------------------------------------------------------
# the action on configurations


def test_act_identity(any_oracle, rng):
    e = identity_element(any_oracle)
    for _ in range(20):
        p = random_point(any_oracle, rng)
        assert act(e, p) == p


def test_act_color_swap():
    o = CyclicRotationOracle(2, color_names=("a", "b"))
    g = word("r")
    p = point({0: ("1", "0")})
    assert act(iota(o, g), p) == point({1: ("1", "0")})


def test_act_half_swap():
    o = TrivialOracle(1)
    swap = Quadruple(o, Forest((simple_split(R),)), Permutation((2, 1)),
                     (LabelElement.identity(),) * 2, Forest((simple_split(R),)))
    assert act(swap, point({R: ("0", "0")})) == point({R: ("1", "0")})
    assert act(swap, point({R: ("10", "1")})) == point({R: ("00", "1")})


def test_act_prefix_replacement_reference():
    # untwisted elements act by prefix replacement colorwise
    o = TrivialOracle(3)
    rng = random.Random(99)
    for _ in range(100):
        q = random_element(o, rng, max_splits=4, max_word=0)
        p = random_point(o, rng)
        img = act(q, p)
        doms = [b for _, b in q.domain_bricks()]
        i = point_in_any_leaf(p, doms)
        dom = doms[i]
        rng_brick = [b for _, b in q.range_bricks()][q.perm(i + 1) - 1]
        for s in color_pool(o):
            d, r = len(dom.bits(s)), len(rng_brick.bits(s))
            tail = p.bits_prefix(s, d + 32)[d:]
            assert img.bits_prefix(s, r + 32) == rng_brick.bits(s) + tail


def test_act_is_homomorphism(any_oracle, rng):
    for _ in range(25):
        a = random_element(any_oracle, rng)
        b = random_element(any_oracle, rng)
        p = random_point(any_oracle, rng)
        assert act(multiply(a, b), p) == act(a, act(b, p))
        assert act(inverse(a), act(a, p)) == p


# ---------------------------------------------------------------------------
# germinal twists


def test_twist_identity(any_oracle, rng):
    for _ in range(10):
        p = random_point(any_oracle, rng)
        assert germinal_twist(identity_element(any_oracle), p).is_identity()


def test_twist_caterpillar_leaf2():
    # domain tree: root r, 0-child b, whose 0-child is r with two leaves;
    # the configuration r=01..., b=0... lies in the second leaf
    o = SymOracle(3, color_names=("r", "b", "g"))
    tree = internal(R, internal(B, internal(R, LEAF, LEAF), LEAF), LEAF)
    labels = (word("s1"), word("s2"), word("s1 s2"), LabelElement.identity())
    q = Quadruple(o, Forest((tree,)), Permutation.identity(4), labels,
                  Forest((tree,)))
    p = point({R: ("01", "0"), B: ("0", "0")})
    assert germinal_twist(q, p) == word("s2")


def test_twist_second_leaf_label():
    o = SymOracle(3)
    q = iota1(o, R, word("s1"))  # label s1 on the 1-half of color R
    assert germinal_twist(q, CantorPoint.of({})).is_identity()
    assert germinal_twist(q, point({R: ("1", "0")})) == word("s1")


def test_twist_cocycle(any_oracle, rng):
    for _ in range(40):
        h = random_element(any_oracle, rng)
        h2 = random_element(any_oracle, rng)
        p = random_point(any_oracle, rng)
        lhs = germinal_twist(multiply(h2, h), p)
        rhs = any_oracle.multiply(germinal_twist(h2, act(h, p)),
                                  germinal_twist(h, p))
        assert any_oracle.equal(lhs, rhs)


def test_twist_relation_as_elements(any_oracle, rng):
    for _ in range(20):
        g = random_word(any_oracle, rng)
        s = rng.choice(color_pool(any_oracle))
        lhs = iota(any_oracle, g)
        gs = any_oracle.act(g, s)
        rhs = Quadruple(any_oracle, Forest((simple_split(gs),)),
                        Permutation.identity(2), (g, g),
                        Forest((simple_split(s),)))
        assert equal(lhs, rhs)


# ---------------------------------------------------------------------------
# equality


def test_equal_ignores_representative(any_oracle, rng):
    for _ in range(25):
        q = random_element(any_oracle, rng)
        k = rng.randrange(q.leaf_arity) + 1
        s = rng.choice(color_pool(any_oracle))
        assert equal(q, expand(q, k, s))


def test_two_color_exchange_is_identity():
    o = TrivialOracle(2)
    minus = internal(G - 1, internal(R, LEAF, LEAF), internal(R, LEAF, LEAF))
    plus = internal(R, internal(G - 1, LEAF, LEAF), internal(G - 1, LEAF, LEAF))
    q = Quadruple(o, Forest((minus,)), Permutation((1, 3, 2, 4)),
                  (LabelElement.identity(),) * 4, Forest((plus,)))
    assert equal(q, identity_element(o))
    assert is_identity(q)


def test_unequal_nontrivial_root_label():
    o = CyclicRotationOracle(3)
    assert not equal(iota(o, word("r")), identity_element(o))


def test_equality_witness_separates(any_oracle, rng):
    for _ in range(30):
        a = random_element(any_oracle, rng)
        b = random_element(any_oracle, rng)
        if equal(a, b):
            for _ in range(10):
                p = random_point(any_oracle, rng)
                assert act(a, p) == act(b, p)
                assert any_oracle.equal(germinal_twist(a, p),
                                        germinal_twist(b, p))
        else:
            w = equality_witness(a, b)
            assert w is not None
            assert act(a, w) != act(b, w) or not any_oracle.equal(
                germinal_twist(a, w), germinal_twist(b, w))


def test_equal_rejects_oracle_mismatch():
    with pytest.raises(ElementError):
        equal(identity_element(TrivialOracle(1)),
              identity_element(TrivialOracle(2)))


# ---------------------------------------------------------------------------
# resolved maps


def test_resolved_entries_cover_domain(any_oracle, rng):
    for _ in range(20):
        q = random_element(any_oracle, rng)
        rows = resolved(q)
        assert sum(dom[1].measure() for dom, _, _ in rows) == 1
        assert sum(rb[1].measure() for _, rb, _ in rows) == 1


def test_act_agrees_with_resolved_lookup(any_oracle, rng):
    for _ in range(20):
        q = random_element(any_oracle, rng)
        p = random_point(any_oracle, rng)
        for (_, dom), (_, rb), g in resolved(q):
            if p.in_brick(dom):
                want = p.strip(dom).permute(any_oracle, g).prepend(rb)
                assert act(q, p) == want
                break
        else:
            pytest.fail("no domain brick contained the point")
