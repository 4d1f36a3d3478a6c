import itertools

import numpy as np
import pytest

from masseyvar.ffield import (
    FieldSizeError,
    FqField,
    norm_image_direct,
    norm_image_via_residue_field,
    residue_field_degree,
    sweep,
    x_has_point,
)


def ints(s):
    return sorted(int(x) for x in s)


def test_construction():
    F = FqField.of_order(9)
    assert (F.p, F.k, F.modulus_constant) == (3, 2, 2)
    assert FqField.of_order(13).k == 1
    for q in (4, 8, 6, 27, 1):
        with pytest.raises(ValueError):
            FqField.of_order(q)


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13, 25])
def test_field_axioms(q):
    F = FqField.of_order(q)
    els = F.elements()
    nz = F.elements(nonzero=True)
    for x in nz:
        assert x * (F(1) / x) == F(1)
    # the multiplicative group is cyclic of order q - 1: some element has that order
    orders = []
    for x in nz:
        k, y = 1, x
        while not y == F(1):
            y, k = y * x, k + 1
        orders.append(k)
    assert max(orders) == q - 1
    assert sum(x.is_square() for x in nz) == (q - 1) // 2
    a, b, c = els[1], els[-1], els[len(els) // 2]
    assert a * (b + c) == a * b + a * c


def test_norm_image_examples():
    F3, F5, F7 = FqField(3), FqField(5), FqField(7)
    assert ints(norm_image_direct(F3, 1, 1)) == [1, 2]
    assert ints(norm_image_direct(F3, 2, 2)) == [1, 2]
    assert ints(norm_image_direct(F5, 2, 3)) == [1, 2, 3, 4]
    assert ints(norm_image_via_residue_field(F3, 1, 1)) == [1, 2]
    assert ints(norm_image_via_residue_field(F3, 2, 2)) == [1, 2]
    assert ints(norm_image_via_residue_field(F7, 3, 5)) == [1, 2, 3, 4, 5, 6]
    assert residue_field_degree(F3, 1, 1) == 1 and residue_field_degree(F3, 2, 2) == 2


def test_x_has_point_examples():
    F3 = FqField(3)
    assert x_has_point(F3, 1, 1, 1) == (True, 16)
    assert x_has_point(F3, 2, 2, 2) == (True, 64)
    for q in (5, 9):
        F = FqField.of_order(q)
        for a in F.elements(nonzero=True):
            assert x_has_point(F, a, 1, a)[0]


def test_zero_arguments_rejected():
    with pytest.raises(ValueError):
        norm_image_direct(FqField(5), 0, 1)


def test_enumeration_cap():
    with pytest.raises(FieldSizeError):
        norm_image_direct(FqField(29), 1, 1)


@pytest.mark.parametrize("q", [3, 5, 9])
def test_sweep_small(q):
    rep = sweep(FqField.of_order(q))
    assert rep.passed
    assert rep.pairs_checked == (q - 1) ** 2 and rep.triples_checked == (q - 1) ** 3


@pytest.mark.parametrize("q", [5, 7, 9])
def test_norm_image_closed_under_squares(q):
    F = FqField.of_order(q)
    squares = [x * x for x in F.elements(nonzero=True)]
    for a, c in itertools.product(F.elements(nonzero=True), repeat=2):
        img = {int(v) for v in norm_image_direct(F, a, c)}
        assert {int(v * s) for v in norm_image_direct(F, a, c) for s in squares} == img


def test_array_arithmetic_matches_scalar():
    F = FqField(3, 2)
    xs, ys = F.all_vectors(2)
    prod, total = xs * ys, xs + ys
    for i in range(xs.idx.size):
        x, y = F.elements()[int(xs.idx[i])], F.elements()[int(ys.idx[i])]
        assert int(prod.idx[i]) == int(x * y)
        assert int(total.idx[i]) == int(x + y)
    t = F((0, 1))
    assert t * t == F(F.modulus_constant)
