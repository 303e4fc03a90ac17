"""A-valued exterior calculus: derivative, wedge, interior, Lie derivative."""

import pytest

import weilnear as wn
from weilnear import (AForm, APoly, DiffOp, MismatchError, Poly, RForm,
                      d_A, d_alpha, d_base, evaluate, interior,
                      lie_derivative, prolong, prolong_form, wedge,
                      wedge_base)
from weilnear.sampling import derive_rng, rand_apoly, rand_poly, rand_vector_field


def x_(n, j):
    return Poly.variable(n, j)


def _rand_aform(rng, alg, n, degree, max_degree=2):
    from itertools import combinations
    coeffs = {}
    for key in combinations(range(1, n + 1), degree):
        if rng.random() < 0.8:
            coeffs[key] = rand_apoly(rng, alg, n, max_degree=max_degree)
    return AForm(alg, n, degree, coeffs)


def test_d_of_constant_form_is_zero(dual):
    eta = AForm(dual, 2, 1, {(1,): APoly.one(dual, 2)})
    assert d_A(eta).is_zero()


def test_d_formal_example(eps3):
    # d(x1 dx2) = dx1 ^ dx2
    eta = AForm(eps3, 2, 1, {(2,): APoly.coordinate(eps3, 2, 1)})
    expected = AForm(eps3, 2, 2, {(1, 2): APoly.one(eps3, 2)})
    assert d_A(eta) == expected


def test_d_squared_zero(jets2):
    for i in range(15):
        rng = derive_rng(7, i)
        k = rng.choice((0, 1))
        eta = _rand_aform(rng, jets2, 3, k)
        assert d_A(d_A(eta)).is_zero()


def test_d_top_degree_is_zero_form(dual):
    eta = AForm(dual, 2, 2, {(1, 2): APoly.coordinate(dual, 2, 1)})
    out = d_A(eta)
    assert out.is_zero() and out.degree == 3


def test_wedge_alternating(dual):
    dx1 = AForm(dual, 2, 1, {(1,): APoly.one(dual, 2)})
    assert wedge(dx1, dx1).is_zero()


def test_wedge_anticommutes_on_one_forms(eps4):
    for i in range(10):
        rng = derive_rng(11, i)
        a = _rand_aform(rng, eps4, 2, 1)
        b = _rand_aform(rng, eps4, 2, 1)
        assert wedge(a, b) == -wedge(b, a)


def test_wedge_associative(jets2):
    for i in range(8):
        rng = derive_rng(13, i)
        a = _rand_aform(rng, jets2, 3, 1)
        b = _rand_aform(rng, jets2, 3, 1)
        c = _rand_aform(rng, jets2, 3, 1)
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


def test_frame_evaluation_determinant(dual):
    omega = AForm(dual, 2, 2, {(1, 2): APoly.one(dual, 2)})
    d1 = DiffOp.coordinate_lift(dual, 2, 1)
    d2 = DiffOp.coordinate_lift(dual, 2, 2)
    assert evaluate(omega, [d1, d2]) == APoly.one(dual, 2)
    assert evaluate(omega, [d2, d1]) == -APoly.one(dual, 2)


def test_interior_contraction_example(eps3):
    omega = AForm(eps3, 2, 2, {(1, 2): APoly.one(eps3, 2)})
    d1 = DiffOp.coordinate_lift(eps3, 2, 1)
    expected = AForm(eps3, 2, 1, {(2,): APoly.one(eps3, 2)})
    assert interior(d1, omega) == expected


def test_interior_squares_to_zero(eps4):
    for i in range(10):
        rng = derive_rng(17, i)
        x = rand_vector_field(rng, eps4, 2)
        eta = _rand_aform(rng, eps4, 2, 2)
        assert interior(x, interior(x, eta)).is_zero()


def test_interior_zero_field(dual):
    eta = AForm(dual, 2, 2, {(1, 2): APoly.one(dual, 2)})
    assert interior(DiffOp.zero(dual, 2), eta).is_zero()


def test_interior_rejects_multiplier(dual):
    x = DiffOp([APoly.one(dual, 2)] * 2, APoly.one(dual, 2))
    eta = AForm(dual, 2, 2, {(1, 2): APoly.one(dual, 2)})
    with pytest.raises(MismatchError):
        interior(x, eta)


def test_interior_antiderivation(jets2):
    # i_X (a ^ b) = (i_X a) ^ b - a ^ (i_X b) for 1-forms a, b
    for i in range(10):
        rng = derive_rng(19, i)
        x = rand_vector_field(rng, jets2, 2)
        a = _rand_aform(rng, jets2, 2, 1)
        b = _rand_aform(rng, jets2, 2, 1)
        lhs = interior(x, wedge(a, b))
        rhs = wedge(interior(x, a), b) - wedge(a, interior(x, b))
        assert lhs == rhs


def test_d_alpha_on_functions(dual):
    alpha = AForm(dual, 2, 1, {(1,): APoly.one(dual, 2)})
    one = AForm.function(APoly.one(dual, 2))
    assert d_alpha(one, alpha) == alpha  # d(1) = 0 leaves alpha itself
    zero_alpha = AForm(dual, 2, 1, {})
    phi = rand_apoly(derive_rng(23, 0), dual, 2)
    assert d_alpha(AForm.function(phi), zero_alpha) == d_A(AForm.function(phi))


def test_d_alpha_curvature(eps3):
    # d_alpha^2 eta = (d alpha) ^ eta
    for i in range(10):
        rng = derive_rng(29, i)
        alpha = _rand_aform(rng, eps3, 2, 1)
        eta = AForm.function(rand_apoly(rng, eps3, 2))
        lhs = d_alpha(d_alpha(eta, alpha), alpha)
        rhs = wedge(d_A(alpha), eta)
        assert lhs == rhs


def test_prolong_form_naturality(jets2):
    for i in range(10):
        rng = derive_rng(31, i)
        coeffs = {}
        for key in ((1,), (2,)):
            coeffs[key] = rand_poly(rng, 2, max_degree=2)
        eta = RForm(2, 1, coeffs)
        assert prolong_form(d_base(eta), jets2) == d_A(prolong_form(eta, jets2))
        beta = RForm(2, 1, {(1,): rand_poly(rng, 2, max_degree=2)})
        assert (prolong_form(wedge_base(beta, eta), jets2)
                == wedge(prolong_form(beta, jets2), prolong_form(eta, jets2)))


def test_prolong_form_constant_coefficient(dual):
    omega = RForm(2, 2, {(1, 2): Poly.one(2)})
    lifted = prolong_form(omega, dual)
    assert lifted.coeffs[(1, 2)] == APoly.one(dual, 2)


def test_prolong_form_frame_compatibility(eps3):
    # evaluation on lifted frame fields matches the lifted base values
    rng = derive_rng(37, 0)
    w = rand_poly(rng, 2, max_degree=2)
    omega = RForm(2, 2, {(1, 2): w})
    lifted = prolong_form(omega, eps3)
    d1 = DiffOp.coordinate_lift(eps3, 2, 1)
    d2 = DiffOp.coordinate_lift(eps3, 2, 2)
    assert evaluate(lifted, [d1, d2]) == prolong(w, eps3)


def test_lie_derivative_homotopy_consistency(eps4):
    # on functions: theta_X phi = X(phi) + phi * alpha(X)
    rng = derive_rng(41, 0)
    x = rand_vector_field(rng, eps4, 2)
    phi = rand_apoly(rng, eps4, 2)
    alpha = _rand_aform(rng, eps4, 2, 1)
    out = lie_derivative(x, AForm.function(phi), alpha)
    expected = x.tilde(phi) + phi * evaluate(alpha, [x])
    assert out == AForm.function(expected)


def test_lie_derivative_of_zero_form(dual):
    x = DiffOp.coordinate_lift(dual, 2, 1)
    assert lie_derivative(x, AForm.zero(dual, 2, 2)).is_zero()


def test_lie_derivative_multiplier_scaling(dual):
    # nonzero multiplier adds coefficientwise scaling
    rng = derive_rng(43, 0)
    mu = rand_apoly(rng, dual, 2)
    x = DiffOp([APoly.zero(dual, 2)] * 2, mu)
    eta = _rand_aform(rng, dual, 2, 2)
    assert lie_derivative(x, eta) == eta * mu


def test_lcs_transfer(eps3):
    # d omega + alpha ^ omega = 0 on the base forces d_alpha(omega^A) = 0
    alpha = RForm(2, 1, {(1,): Poly.one(2)})
    omega = RForm(2, 2, {(1, 2): Poly.one(2)})
    assert (d_base(omega) + wedge_base(alpha, omega)).is_zero()
    lifted_alpha = prolong_form(alpha, eps3)
    lifted_omega = prolong_form(omega, eps3)
    assert d_alpha(lifted_omega, lifted_alpha).is_zero()


def test_form_key_validation(dual):
    with pytest.raises(MismatchError):
        AForm(dual, 2, 2, {(2, 1): APoly.one(dual, 2)})
    with pytest.raises(MismatchError):
        AForm(dual, 2, 2, {(1, 1): APoly.one(dual, 2)})
    with pytest.raises(MismatchError):
        AForm(dual, 2, 1, {(3,): APoly.one(dual, 2)})
