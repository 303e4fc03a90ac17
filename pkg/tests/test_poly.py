"""Polynomial models, near points, prolongation and the Taylor route."""

from fractions import Fraction

import pytest

import weilnear as wn
from weilnear import APoly, MismatchError, NearPoint, Poly, prolong, taylor_value
from weilnear.sampling import (derive_rng, rand_aelement, rand_nearpoint,
                               rand_poly)

F = Fraction


def x_(n, j):
    return Poly.variable(n, j)


def test_prolong_square_at_dual_point(dual):
    f = x_(1, 1) ** 2
    xi = NearPoint(dual, [dual.from_scalar(2) + dual.by_label("eps") * 3])
    assert str(prolong(f, dual).eval_at(xi)) == "4 + 12*eps"


def test_prolong_cube_third_order(eps3):
    f = x_(1, 1) ** 3
    xi = NearPoint(eps3, [eps3.unit() + eps3.by_label("eps")])
    value = prolong(f, eps3).eval_at(xi)
    expected = (eps3.unit() + eps3.by_label("eps") * 3
                + eps3.by_label("eps^2") * 3)
    assert value == expected


def test_prolong_one_is_unit(dual):
    assert prolong(Poly.one(2), dual) == APoly.one(dual, 2)


def test_apoly_eval_constant_and_coordinate(dual):
    rng = derive_rng(3, 0)
    a = rand_aelement(rng, dual)
    xi = rand_nearpoint(rng, dual, 2)
    assert APoly.constant(dual, 2, a).eval_at(xi) == a
    assert APoly.coordinate(dual, 2, 1).eval_at(xi) == xi.coords[0]


def test_apoly_eval_nilpotent_coefficient(dual):
    eps = dual.by_label("eps")
    phi = APoly.coordinate(dual, 1, 1) * eps
    xi = NearPoint(dual, [dual.unit() + eps])
    assert phi.eval_at(xi) == eps  # eps * (1 + eps) = eps


def test_prolong_is_ring_homomorphism(acceptance_algebras):
    for alg in acceptance_algebras.values():
        for i in range(25):
            rng = derive_rng(7, i)
            n = rng.choice((1, 2))
            f, g = rand_poly(rng, n), rand_poly(rng, n)
            assert prolong(f * g, alg) == prolong(f, alg) * prolong(g, alg)
            assert prolong(f + g, alg) == prolong(f, alg) + prolong(g, alg)


def test_a_scale_laws(eps4):
    eps = eps4.by_label("eps")
    phi = prolong(x_(2, 1) * x_(2, 2), eps4)
    assert (phi * 0).is_zero()
    cubed = phi * eps * eps * eps * eps
    assert cubed.is_zero()  # eps^4 = 0 kills the coefficient


def test_partial_commutes_with_prolong(eps3):
    f = x_(2, 1) ** 2 * x_(2, 2) - x_(2, 2) * 3
    for j in (1, 2):
        assert prolong(f, eps3).partial(j) == prolong(f.partial(j), eps3)


def test_partial_of_constant_is_zero(dual):
    assert APoly.constant(dual, 2, dual.by_label("eps")).partial(1).is_zero()


def test_partial_formal_example(dual):
    eps = dual.by_label("eps")
    phi = APoly.coordinate(dual, 1, 1) ** 2 * eps
    assert phi.partial(1) == APoly.coordinate(dual, 1, 1) * eps * 2


def test_partial_index_out_of_range(dual):
    with pytest.raises(MismatchError):
        APoly.one(dual, 2).partial(3)


def test_taylor_matches_substitution(acceptance_algebras):
    for alg in acceptance_algebras.values():
        for i in range(25):
            rng = derive_rng(13, i)
            n = rng.choice((1, 2))
            f = rand_poly(rng, n)
            xi = rand_nearpoint(rng, alg, n)
            assert prolong(f, alg).eval_at(xi) == taylor_value(f, xi)


def test_taylor_frozen_value(eps3):
    # f = x^3 at 1 + eps: binomial expansion with eps^3 = 0
    f = x_(1, 1) ** 3
    xi = NearPoint(eps3, [eps3.unit() + eps3.by_label("eps")])
    expected = (eps3.unit() + eps3.by_label("eps") * 3
                + eps3.by_label("eps^2") * 3)
    assert taylor_value(f, xi) == expected


def test_augmentation_covers_origin(jets2):
    for i in range(20):
        rng = derive_rng(17, i)
        f = rand_poly(rng, 2)
        xi = rand_nearpoint(rng, jets2, 2)
        value = prolong(f, jets2).eval_at(xi)
        assert value.augmentation == f.eval_rational(xi.origin())


def test_real_hint_propagation(dual):
    c = APoly.constant(dual, 2, F(3, 2))
    assert c.real_hint
    assert (c + c).real_hint and (c * c).real_hint
    lifted = prolong(x_(2, 1), dual)
    assert not lifted.real_hint  # coordinate lifts take values outside R
    assert not (c * dual.by_label("eps")).real_hint


def test_poly_str_canonical():
    f = x_(2, 2) * F(-3, 2) + x_(2, 1) ** 2 + Poly.constant(2, 1)
    assert str(f) == "x1^2 - 3/2*x2 + 1"


def test_apoly_str_mixed_coefficients(dual):
    eps = dual.by_label("eps")
    phi = APoly.coordinate(dual, 2, 1) * (dual.unit() + eps) + APoly.one(dual, 2)
    assert str(phi) == "(1 + eps)*x1 + 1"


def test_mismatch_errors(dual, eps3):
    with pytest.raises(MismatchError):
        prolong(Poly.one(1), dual) + prolong(Poly.one(2), dual)
    a = APoly.one(dual, 1)
    b = APoly.one(eps3, 1)
    with pytest.raises(MismatchError):
        a + b
    with pytest.raises(MismatchError):
        APoly.one(dual, 2).eval_at(NearPoint(eps3, [eps3.zero(), eps3.zero()]))
