import itertools

import numpy as np
import pytest

from masseyvar import gf2
from masseyvar.groupcoh import (
    CONTAINS_ZERO,
    NONVANISHING,
    UNDEFINED,
    CochainError,
    brute_force_massey,
    coset_classes,
    cup,
    d1,
    d2,
    h2_class_is_zero,
    homomorphisms,
    triple_massey,
    u4_element,
    u4_entry,
    u4_lift_exists,
    u4_matrix,
    u4_mul,
)
from masseyvar.groups import cyclic, direct_product, zoo

ZOO = zoo()
RNG = np.random.default_rng(11)


def char(G, gen_values):
    """The homomorphism to Z/2 taking the listed values on the generators."""
    return next(h for h in homomorphisms(G) if [h[g] for g in G.generators] == list(gen_values))


@pytest.mark.parametrize("name", list(ZOO))
def test_d2_d1_is_zero_exhaustively(name):
    G = ZOO[name]
    for bits in itertools.product((0, 1), repeat=G.order):
        assert not d2(G, d1(G, np.array(bits, dtype=np.uint8))).any()


def test_d1_of_indicators():
    G = cyclic(2)
    # on Z/2 the indicator of the generator is the character itself
    assert not d1(G, np.array([0, 1], dtype=np.uint8)).any()
    assert d1(G, np.array([1, 0], dtype=np.uint8)).tolist() == [[1, 1], [1, 1]]
    G4 = cyclic(4)
    assert d1(G4, np.array([0, 1, 0, 0], dtype=np.uint8)).tolist() == [
        [0, 0, 0, 0],
        [0, 0, 1, 1],
        [0, 1, 0, 1],
        [0, 1, 1, 0],
    ]


@pytest.mark.parametrize("name", list(ZOO))
def test_leibniz(name):
    G = ZOO[name]
    for _ in range(1000):
        f, g = RNG.integers(0, 2, size=(2, G.order), dtype=np.uint8)
        assert np.array_equal(d2(G, cup(f, g)), cup(d1(G, f), g) ^ cup(f, d1(G, g)))


def test_cup_examples():
    G2, G4 = cyclic(2), cyclic(4)
    x2, x4 = char(G2, [1]), char(G4, [1])
    zero = np.zeros(4, dtype=np.uint8)
    assert not cup(zero, x4).any() and not cup(x4, zero).any()
    assert h2_class_is_zero(G2, cup(x2, x2)) is None
    w = h2_class_is_zero(G4, cup(x4, x4))
    assert w is not None and np.array_equal(d1(G4, w), cup(x4, x4))


def test_h2_witness_for_coboundaries_and_errors():
    G = ZOO["D4"]
    for _ in range(20):
        f0 = RNG.integers(0, 2, size=G.order, dtype=np.uint8)
        w = h2_class_is_zero(G, d1(G, f0))
        assert np.array_equal(d1(G, w), d1(G, f0))
    bad = np.zeros((8, 8), dtype=np.uint8)
    bad[1, 2] = 1
    with pytest.raises(CochainError):
        h2_class_is_zero(G, bad)


def test_massey_examples():
    G2, G4 = cyclic(2), cyclic(4)
    x2, x4 = char(G2, [1]), char(G4, [1])
    assert triple_massey(G2, x2, x2, x2).status == UNDEFINED
    assert brute_force_massey(G2, x2, x2, x2).status == UNDEFINED
    assert triple_massey(G4, x4, x4, x4).status == CONTAINS_ZERO
    assert brute_force_massey(G4, x4, x4, x4).status == CONTAINS_ZERO
    G = ZOO["Z2^3"]
    x1, x2_, x3 = (char(G, v) for v in ([1, 0, 0], [0, 1, 0], [0, 0, 1]))
    assert triple_massey(G, x1, x2_, x3).status == UNDEFINED
    V = ZOO["Z2xZ2"]
    y1, y2 = char(V, [1, 0]), char(V, [0, 1])
    assert h2_class_is_zero(V, cup(y1, y2)) is None
    assert triple_massey(V, y1, y2, y1).status == brute_force_massey(V, y1, y2, y1).status


def test_non_homomorphism_and_size_errors(u5_subgroup):
    G = cyclic(4)
    with pytest.raises(CochainError):
        triple_massey(G, [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0])
    with pytest.raises(CochainError):
        u4_lift_exists(G, [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0])
    h = homomorphisms(u5_subgroup)[1]
    with pytest.raises(CochainError):
        brute_force_massey(u5_subgroup, h, h, h)


def test_u4_basics():
    jordan = u4_element(a12=1, a23=1, a34=1)
    g, k = jordan, 1
    while g:
        g, k = u4_mul(g, jordan), k + 1
    assert k == 4
    # every element with full superdiagonal has order 4
    for e in range(64):
        if u4_entry(e, 1, 2) and u4_entry(e, 2, 3) and u4_entry(e, 3, 4):
            assert u4_mul(e, e) != 0
    assert np.array_equal(u4_matrix(u4_element(a14=1))[0], [1, 0, 0, 1])


def test_u4_lift_examples():
    G4, G2 = cyclic(4), cyclic(2)
    x4, x2 = char(G4, [1]), char(G2, [1])
    lift = u4_lift_exists(G4, x4, x4, x4)
    assert lift is not None and lift[1] == u4_element(a12=1, a23=1, a34=1)
    assert u4_lift_exists(G2, x2, x2, x2) is None
    for G in ZOO.values():
        z = np.zeros(G.order, dtype=np.uint8)
        assert u4_lift_exists(G, z, z, z) == [0] * G.order


def _lift_is_homomorphism(G, lift, a, b, c):
    for g, h in itertools.product(range(G.order), repeat=2):
        if lift[G.mul(g, h)] != u4_mul(lift[g], lift[h]):
            return False
    return all(
        (u4_entry(lift[g], 1, 2), u4_entry(lift[g], 2, 3), u4_entry(lift[g], 3, 4)) == (a[g], b[g], c[g])
        for g in range(G.order)
    )


@pytest.mark.parametrize("name", ["Z4", "D4", "Q8", "Z2xZ4"])
def test_seed_independence_and_lift_validity(name):
    G = ZOO[name]
    homs = homomorphisms(G)
    for a, b, c in itertools.product(homs, repeat=3):
        statuses = {triple_massey(G, a, b, c, seed=s).status for s in range(10)}
        assert len(statuses) == 1
        lift = u4_lift_exists(G, a, b, c)
        if lift is not None:
            assert _lift_is_homomorphism(G, lift, a, b, c)


def test_nonvanishing_branch(u5_subgroup):
    G = u5_subgroup
    assert G.order == 16
    seen = {UNDEFINED: 0, CONTAINS_ZERO: 0, NONVANISHING: 0}
    for a, b, c in itertools.product(homomorphisms(G), repeat=3):
        res = triple_massey(G, a, b, c)
        seen[res.status] += 1
        lift = u4_lift_exists(G, a, b, c)
        assert (lift is not None) == (res.status == CONTAINS_ZERO)
        if lift is not None:
            assert _lift_is_homomorphism(G, lift, a, b, c)
    assert seen == {UNDEFINED: 24, CONTAINS_ZERO: 34, NONVANISHING: 6}


def test_coset_law_on_small_product():
    G = direct_product(cyclic(2), cyclic(4))
    for a, b, c in itertools.product(homomorphisms(G), repeat=3):
        res = triple_massey(G, a, b, c)
        brute = brute_force_massey(G, a, b, c)
        assert res.status == brute.status
        if res.defined:
            assert coset_classes(G, res) == brute.values
            assert len(brute.values) == 2 ** len(res.indeterminacy_basis)
