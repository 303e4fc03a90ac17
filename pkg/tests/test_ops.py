"""Differential operators: actions, tilde extension, bracket, module laws."""

import pytest

import weilnear as wn
from weilnear import APoly, DiffOp, MismatchError, Poly, bracket, prolong
from weilnear.ops import check_lie_rinehart
from weilnear.sampling import (derive_rng, rand_aelement, rand_apoly,
                               rand_diffop, rand_poly, rand_vector_field)


def x_(n, j):
    return Poly.variable(n, j)


def test_coordinate_lift_action(eps3):
    x1 = DiffOp.coordinate_lift(eps3, 2, 1)
    f = x_(2, 1) ** 2
    assert x1(f) == prolong(x_(2, 1) * 2, eps3)


def test_pure_multiplier_action(dual):
    mu = prolong(x_(2, 2), dual) * dual.by_label("eps")
    x = DiffOp([APoly.zero(dual, 2)] * 2, mu)
    f = x_(2, 1) * x_(2, 2)
    assert x(f) == prolong(f, dual) * mu


def test_action_on_one_gives_multiplier(eps4):
    rng = derive_rng(5, 0)
    x = rand_diffop(rng, eps4, 2)
    assert x(Poly.one(2)) == x.multiplier


def test_tilde_restricts_to_action(acceptance_algebras):
    for alg in acceptance_algebras.values():
        for i in range(20):
            rng = derive_rng(29, i)
            n = rng.choice((1, 2))
            x = rand_diffop(rng, alg, n)
            f = rand_poly(rng, n)
            assert x.tilde(prolong(f, alg)) == x(f)


def test_tilde_a_linearity_frozen(dual):
    # lift of d/dx with zero multiplier: tilde(eps * x^A) = eps
    x = DiffOp.coordinate_lift(dual, 1, 1)
    eps = dual.by_label("eps")
    phi = APoly.coordinate(dual, 1, 1) * eps
    assert x.tilde(phi) == APoly.constant(dual, 1, eps)


def test_prop1_law_random(acceptance_algebras):
    for alg in acceptance_algebras.values():
        for i in range(20):
            rng = derive_rng(43, i)
            n = rng.choice((1, 2))
            x = rand_diffop(rng, alg, n)
            f, g = rand_poly(rng, n), rand_poly(rng, n)
            fa, ga = prolong(f, alg), prolong(g, alg)
            assert x(f * g) == x(f) * ga + fa * x(g) - fa * ga * x(Poly.one(n))


def test_vector_field_leibniz(jets2):
    for i in range(15):
        rng = derive_rng(47, i)
        x = rand_vector_field(rng, jets2, 2)
        f, g = rand_poly(rng, 2), rand_poly(rng, 2)
        assert x(f * g) == x(f) * prolong(g, jets2) + prolong(f, jets2) * x(g)


def test_bracket_alternating(eps4):
    rng = derive_rng(53, 0)
    x = rand_diffop(rng, eps4, 2)
    assert bracket(x, x).is_zero()


def test_bracket_coordinate_lifts_commute(eps3):
    x1 = DiffOp.coordinate_lift(eps3, 2, 1)
    x2 = DiffOp.coordinate_lift(eps3, 2, 2)
    assert bracket(x1, x2).is_zero()


def test_bracket_a_bilinearity(acceptance_algebras):
    for alg in acceptance_algebras.values():
        for i in range(10):
            rng = derive_rng(59, i)
            x = rand_diffop(rng, alg, 2)
            y = rand_diffop(rng, alg, 2)
            a = APoly.constant(alg, 2, rand_aelement(rng, alg))
            assert bracket(x, a * y) == a * bracket(x, y)


def test_bracket_extensional_equality(eps4):
    # the reconstructed bracket acts as tilde(X) o Y - tilde(Y) o X
    for i in range(10):
        rng = derive_rng(61, i)
        x = rand_diffop(rng, eps4, 2)
        y = rand_diffop(rng, eps4, 2)
        xy = bracket(x, y)
        f = rand_poly(rng, 2)
        assert xy(f) == x.tilde(y(f)) - y.tilde(x(f))


def test_bracket_jacobi_random(dual):
    for i in range(10):
        rng = derive_rng(67, i)
        ops = [rand_diffop(rng, dual, 2, max_degree=1) for _ in range(3)]
        x, y, z = ops
        total = (bracket(x, bracket(y, z)) + bracket(y, bracket(z, x))
                 + bracket(z, bracket(x, y)))
        assert total.is_zero()


def test_module_action_laws(eps3):
    rng = derive_rng(71, 0)
    x = rand_diffop(rng, eps3, 2)
    phi = rand_apoly(rng, eps3, 2)
    psi = rand_apoly(rng, eps3, 2)
    f = rand_poly(rng, 2)
    assert (phi * x)(f) == phi * x(f)
    assert (phi * psi) * x == phi * (psi * x)
    assert APoly.one(eps3, 2) * x == x
    assert (APoly.zero(eps3, 2) * x).is_zero()


def test_scaled_op_tilde_is_scaled_tilde(jets2):
    # tilde of (phi . X) equals phi . tilde(X)
    for i in range(10):
        rng = derive_rng(73, i)
        x = rand_diffop(rng, jets2, 2)
        phi = rand_apoly(rng, jets2, 2)
        psi = rand_apoly(rng, jets2, 2)
        assert (phi * x).tilde(psi) == phi * x.tilde(psi)


def test_reconstruction_uniqueness(acceptance_algebras):
    # an operator is determined by its values on the coordinates and on 1
    for alg in acceptance_algebras.values():
        for i in range(10):
            rng = derive_rng(79, i)
            x = rand_diffop(rng, alg, 2)
            assert DiffOp.from_action(alg, 2, x) == x


def test_tilde_naturality(eps4):
    for i in range(10):
        rng = derive_rng(83, i)
        x = rand_diffop(rng, eps4, 2)
        y = rand_diffop(rng, eps4, 2)
        f = rand_poly(rng, 2)
        fa = prolong(f, eps4)
        lhs = x.tilde(y.tilde(fa)) - y.tilde(x.tilde(fa))
        assert lhs == bracket(x, y)(f)


def test_check_lie_rinehart_passes(dual):
    rng = derive_rng(89, 0)
    x = rand_diffop(rng, dual, 2)
    y = rand_diffop(rng, dual, 2)
    phi = rand_apoly(rng, dual, 2)
    fs = [rand_poly(rng, 2) for _ in range(3)]
    psis = [rand_apoly(rng, dual, 2) for _ in range(3)]
    report = check_lie_rinehart(x, y, phi, fs, psis)
    assert report.passed and report.first_failure() is None


def test_check_lie_rinehart_with_unit_scaling(eps3):
    # phi = 1 reduces the anchor law to bracket bilinearity
    rng = derive_rng(97, 0)
    x = rand_diffop(rng, eps3, 2)
    y = rand_diffop(rng, eps3, 2)
    report = check_lie_rinehart(x, y, APoly.one(eps3, 2))
    assert report.passed


def test_anchor_law_structural(jets2):
    for i in range(8):
        rng = derive_rng(101, i)
        x = rand_diffop(rng, jets2, 2)
        y = rand_diffop(rng, jets2, 2)
        phi = rand_apoly(rng, jets2, 2)
        lhs = bracket(x, phi * y)
        rhs = (x.tilde(phi) - phi * x.multiplier) * y + phi * bracket(x, y)
        assert lhs == rhs


def test_permuted_basis_prop1(eps3):
    # rerun the operator law over the same algebra in a permuted basis
    perm = [0, 2, 1]
    c = eps3.dense_constants()
    dim = eps3.dim
    cp = [[[c[perm[i]][perm[j]][perm[k]] for k in range(dim)]
           for j in range(dim)] for i in range(dim)]
    alg = wn.WeilAlgebra.from_table(["1", "eps^2", "eps"], cp)
    for i in range(10):
        rng = derive_rng(103, i)
        x = rand_diffop(rng, alg, 2)
        f, g = rand_poly(rng, 2), rand_poly(rng, 2)
        fa, ga = prolong(f, alg), prolong(g, alg)
        assert x(f * g) == x(f) * ga + fa * x(g) - fa * ga * x(Poly.one(2))


def test_dimension_mismatch(dual):
    x = DiffOp.coordinate_lift(dual, 2, 1)
    with pytest.raises(MismatchError):
        x(Poly.one(3))
