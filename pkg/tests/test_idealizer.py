import random

import pytest
from hypothesis import given

import oracles
from conftest import CUSP, FAMILY, random_weyl, weylops
from weylkit.errors import InputError, ZeroDivisor
from weylkit.idealizer import (
    action_witness,
    as_curve,
    colon_filtered_basis,
    colon_member,
    idealizer_dim,
    idealizer_dims,
    idealizer_filtered_basis,
    idealizer_member,
    point_colon_basis,
    point_colon_member,
    quotient_dim,
)
from weylkit.parse import parse_poly, parse_weyl
from weylkit.poly import BiPoly
from weylkit.weyl import WeylOp, euler_operator

# G_n and F_n for the cusp, frozen after agreement with oracles.idealizer_dim for n <= 3
CUSP_G = [1, 3, 7, 14, 27, 47, 79]
CUSP_F = [1, 3, 7, 13, 22, 32, 44]


def test_curve_poly_rejects_constants():
    with pytest.raises(InputError):
        as_curve("3")
    with pytest.raises(InputError):
        as_curve(BiPoly())


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_dims_match_oracle(n):
    assert idealizer_dim(CUSP, n) == oracles.idealizer_dim(CUSP, n) == CUSP_G[n]


def test_pinned_dims():
    rows = idealizer_dims(CUSP, 6)
    assert [r["dim"] for r in rows] == CUSP_G
    assert [r["quotient_dim"] for r in rows] == CUSP_F
    assert quotient_dim(CUSP, 2) == 7


def test_basis_contains_euler_and_is_independent():
    b = idealizer_filtered_basis(CUSP, 2)
    assert b.verify_independent()
    assert "2*x*dx + 3*y*dy" in b.as_strings()
    for theta in b.elements:
        assert idealizer_member(theta, CUSP)


@pytest.mark.parametrize("f", FAMILY)
def test_euler_membership_across_family(f):
    exps = sorted(parse_poly(f).support())
    # y^a - x^b is weighted homogeneous for weights (a, b) on (x, y)
    (_, a), (b, _) = exps[0], exps[-1]
    assert idealizer_member(euler_operator(a, b), f)
    assert not idealizer_member(WeylOp.generator("dx"), f)
    assert not idealizer_member(WeylOp.generator("dy"), f)


def test_left_multiples_of_f_are_in_idealizer(rng):
    f = parse_poly(CUSP)
    for _ in range(20):
        theta = random_weyl(rng, max_degree=3)
        assert idealizer_member(WeylOp.poly(f) * theta, f)


@given(weylops(max_degree=3))
def test_conjugation_and_action_agree(theta):
    member = idealizer_member(theta, CUSP)
    witness = action_witness(theta, CUSP)
    assert member == (witness is None)


def test_ring_closure(rng):
    basis = idealizer_filtered_basis(CUSP, 3).elements
    for _ in range(30):
        a, b = rng.choice(basis), rng.choice(basis)
        assert idealizer_member(a * b, CUSP)
        assert idealizer_member(a + b, CUSP)


def test_monotone_in_level():
    dims = [idealizer_dim(CUSP, n) for n in range(5)]
    assert dims == sorted(dims)


def test_colon_ideal():
    f, g = parse_poly(CUSP), parse_poly("x")
    assert colon_member(WeylOp.poly(parse_poly("x")), f, g)
    assert not colon_member(WeylOp.scalar(1), f, g)
    with pytest.raises(ZeroDivisor):
        colon_member(WeylOp.scalar(1), f, BiPoly())
    b = colon_filtered_basis(f, f, 2)
    assert b.dim == 7


def test_point_colon():
    d = parse_weyl("dy")
    # dy * f = f*dy + 2y, and 2y vanishes at the origin but not at (1, 1)
    assert point_colon_member(d, CUSP, 0, 0)
    assert not point_colon_member(d, CUSP, 1, 1)
    assert point_colon_member(WeylOp.scalar(1), CUSP, 1, 1)
    assert not point_colon_member(WeylOp.scalar(1), CUSP, 1, 2)
    assert point_colon_basis(CUSP, 1, 2, 0).dim == 0
    assert point_colon_basis(CUSP, 0, 0, 1).dim == 5
