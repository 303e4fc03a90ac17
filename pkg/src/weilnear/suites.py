"""Named identity batteries behind ``weilnear check``.

Each suite is a list of independently sampled identities; a suite passes
when every identity holds exactly on all of its samples.  Structure-bound
identities (Hamiltonian residuals, bracket coincidences...) are included
only when the context carries the corresponding structure.  When the
2-form of an lcs structure has non-constant coefficients the symbolic
solves are unavailable and the battery switches to its pointwise subset,
sampling near points instead of comparing whole functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import sampling
from .errors import ProblemError
from .forms import (RForm, d_A, d_alpha_base, d_base, interior,
                    lie_derivative, prolong_form, wedge, wedge_base)
from .jacobi import (JacobiData, LcsData, check_jacobi_axioms,
                     check_prolongation_coincidence, advisory_jacobi_check,
                     hamiltonian_field, lcs_bracket, prolong_jacobi,
                     tau_apply_definition, tau_operator)
from .ops import DiffOp, bracket
from .poly import APoly, NearPoint, Poly, prolong, taylor_value
from .reports import IdentityResult, SuiteReport, run_identity
from .weil import WeilAlgebra

SUITE_NAMES = ("prop1", "lie-rinehart", "jacobi-axioms", "prolongation")


@dataclass
class VerifyContext:
    """Everything a suite needs: the algebra, dimension, structure, seeds."""

    algebra: WeilAlgebra
    n: int
    seed: int = 0
    samples: int = 100
    lcs: Optional[LcsData] = None
    jacobi_data: Optional[JacobiData] = None
    named_ops: dict = field(default_factory=dict)

    def require_structure(self, suite: str):
        if self.lcs is None and self.jacobi_data is None:
            raise ProblemError(
                f"suite {suite!r} needs an lcs or jacobi structure section")


def _rand_poly(rng, n):
    return sampling.rand_poly(rng, n, max_degree=3, max_terms=4)


def _rand_apoly(rng, ctx):
    return sampling.rand_apoly(rng, ctx.algebra, ctx.n, max_degree=3, max_terms=3)


def _rand_op(rng, ctx, max_degree=2):
    return sampling.rand_diffop(rng, ctx.algebra, ctx.n,
                                max_degree=max_degree, max_terms=2)


# ---------------------------------------------------------------------------
# suite: prop1 (operator action laws)
# ---------------------------------------------------------------------------

def suite_prop1(ctx: VerifyContext) -> SuiteReport:
    alg, n = ctx.algebra, ctx.n
    one_poly = Poly.one(n)

    def prop1_law(rng):
        x = _rand_op(rng, ctx)
        f, g = _rand_poly(rng, n), _rand_poly(rng, n)
        fa, ga = prolong(f, alg), prolong(g, alg)
        lhs = x(f * g)
        rhs = x(f) * ga + fa * x(g) - fa * ga * x(one_poly)
        if lhs != rhs:
            return {"X": repr(x), "f": str(f), "g": str(g),
                    "lhs": str(lhs), "rhs": str(rhs)}
        return None

    def vector_field_leibniz(rng):
        x = sampling.rand_vector_field(rng, alg, n)
        f, g = _rand_poly(rng, n), _rand_poly(rng, n)
        lhs = x(f * g)
        rhs = x(f) * prolong(g, alg) + prolong(f, alg) * x(g)
        return None if lhs == rhs else {"X": repr(x), "f": str(f), "g": str(g)}

    def tilde_restriction(rng):
        x = _rand_op(rng, ctx)
        f = _rand_poly(rng, n)
        lhs = x.tilde(prolong(f, alg))
        rhs = x(f)
        return None if lhs == rhs else {"X": repr(x), "f": str(f),
                                        "lhs": str(lhs), "rhs": str(rhs)}

    def tilde_a_linearity(rng):
        x = _rand_op(rng, ctx)
        phi = _rand_apoly(rng, ctx)
        a = APoly.constant(alg, n, sampling.rand_aelement(rng, alg))
        lhs = x.tilde(a * phi)
        rhs = a * x.tilde(phi)
        return None if lhs == rhs else {"X": repr(x), "phi": str(phi), "a": str(a)}

    def tilde_product_law(rng):
        x = _rand_op(rng, ctx)
        phi, psi = _rand_apoly(rng, ctx), _rand_apoly(rng, ctx)
        lhs = x.tilde(phi * psi)
        rhs = x.tilde(phi) * psi + phi * x.tilde(psi) - phi * psi * x.multiplier
        return None if lhs == rhs else {"X": repr(x), "phi": str(phi),
                                        "psi": str(psi)}

    def tilde_real_class(rng):
        # the decidable real-valued subclass: real constants
        x = _rand_op(rng, ctx)
        sigma = APoly.constant(alg, n, sampling.rand_fraction(rng))
        assert sigma.real_hint
        gap = x.tilde(sigma) - sigma * x.multiplier
        return None if gap.is_zero() else {"X": repr(x), "sigma": str(sigma)}

    def op_reconstruction(rng):
        x = _rand_op(rng, ctx)
        rebuilt = DiffOp.from_action(alg, n, x)
        return None if rebuilt == x else {"X": repr(x), "rebuilt": repr(rebuilt)}

    def scaled_op_tilde(rng):
        x = _rand_op(rng, ctx)
        phi, psi = _rand_apoly(rng, ctx), _rand_apoly(rng, ctx)
        lhs = (phi * x).tilde(psi)
        rhs = phi * x.tilde(psi)
        return None if lhs == rhs else {"X": repr(x), "phi": str(phi),
                                        "psi": str(psi)}

    def module_composition(rng):
        x = _rand_op(rng, ctx)
        phi, psi = _rand_apoly(rng, ctx), _rand_apoly(rng, ctx)
        ok = ((phi * psi) * x == phi * (psi * x)
              and APoly.one(alg, n) * x == x
              and (APoly.zero(alg, n) * x).is_zero())
        return None if ok else {"X": repr(x), "phi": str(phi), "psi": str(psi)}

    checks = [
        ("prop1-law", prop1_law),
        ("vector-field-leibniz", vector_field_leibniz),
        ("tilde-restriction", tilde_restriction),
        ("tilde-a-linearity", tilde_a_linearity),
        ("tilde-product-law", tilde_product_law),
        ("tilde-real-class", tilde_real_class),
        ("op-reconstruction", op_reconstruction),
        ("scaled-op-tilde", scaled_op_tilde),
        ("module-composition", module_composition),
    ]
    results = [run_identity(name, ctx.seed, ctx.samples, fn)
               for name, fn in checks]
    if ctx.named_ops:
        ops_list = sorted(ctx.named_ops)

        def named_op_law(rng):
            x = ctx.named_ops[ops_list[rng.randrange(len(ops_list))]]
            f, g = _rand_poly(rng, x.n_vars), _rand_poly(rng, x.n_vars)
            fa, ga = prolong(f, x.algebra), prolong(g, x.algebra)
            lhs = x(f * g)
            rhs = x(f) * ga + fa * x(g) - fa * ga * x(Poly.one(x.n_vars))
            return None if lhs == rhs else {"X": repr(x), "f": str(f), "g": str(g)}

        results.append(run_identity("named-op-prop1-law", ctx.seed,
                                    ctx.samples, named_op_law))
    return SuiteReport("prop1", results)


# ---------------------------------------------------------------------------
# suite: lie-rinehart (bracket laws)
# ---------------------------------------------------------------------------

def suite_lie_rinehart(ctx: VerifyContext) -> SuiteReport:
    alg, n = ctx.algebra, ctx.n

    def antisymmetry(rng):
        x, y = _rand_op(rng, ctx), _rand_op(rng, ctx)
        ok = bracket(x, y) == -bracket(y, x) and bracket(x, x).is_zero()
        return None if ok else {"X": repr(x), "Y": repr(y)}

    def a_bilinearity(rng):
        x, y = _rand_op(rng, ctx), _rand_op(rng, ctx)
        a = APoly.constant(alg, n, sampling.rand_aelement(rng, alg))
        ok = (bracket(x, a * y) == a * bracket(x, y)
              and bracket(a * x, y) == a * bracket(x, y))
        return None if ok else {"X": repr(x), "Y": repr(y), "a": str(a)}

    def jacobi_identity(rng):
        # lower-degree entries keep the nested products tractable
        x = _rand_op(rng, ctx, max_degree=1)
        y = _rand_op(rng, ctx, max_degree=1)
        z = _rand_op(rng, ctx, max_degree=1)
        total = (bracket(x, bracket(y, z)) + bracket(y, bracket(z, x))
                 + bracket(z, bracket(x, y)))
        return None if total.is_zero() else {"X": repr(x), "Y": repr(y),
                                             "Z": repr(z)}

    def anchor_leibniz(rng):
        x, y = _rand_op(rng, ctx), _rand_op(rng, ctx)
        phi = _rand_apoly(rng, ctx)
        lhs = bracket(x, phi * y)
        rhs = (x.tilde(phi) - phi * x.multiplier) * y + phi * bracket(x, y)
        return None if lhs == rhs else {"X": repr(x), "Y": repr(y),
                                        "phi": str(phi)}

    def tilde_morphism(rng):
        x, y = _rand_op(rng, ctx), _rand_op(rng, ctx)
        psi = _rand_apoly(rng, ctx)
        lhs = x.tilde(y.tilde(psi)) - y.tilde(x.tilde(psi))
        rhs = bracket(x, y).tilde(psi)
        return None if lhs == rhs else {"X": repr(x), "Y": repr(y),
                                        "psi": str(psi), "lhs": str(lhs),
                                        "rhs": str(rhs)}

    def tilde_naturality(rng):
        x, y = _rand_op(rng, ctx), _rand_op(rng, ctx)
        f = _rand_poly(rng, n)
        fa = prolong(f, alg)
        lhs = x.tilde(y.tilde(fa)) - y.tilde(x.tilde(fa))
        rhs = bracket(x, y)(f)
        return None if lhs == rhs else {"X": repr(x), "Y": repr(y), "f": str(f)}

    checks = [
        ("bracket-antisymmetry", antisymmetry),
        ("bracket-a-bilinearity", a_bilinearity),
        ("bracket-jacobi", jacobi_identity),
        ("anchor-leibniz", anchor_leibniz),
        ("tilde-morphism", tilde_morphism),
        ("tilde-naturality", tilde_naturality),
    ]
    return SuiteReport("lie-rinehart", [
        run_identity(name, ctx.seed, ctx.samples, fn) for name, fn in checks])


# ---------------------------------------------------------------------------
# suite: jacobi-axioms
# ---------------------------------------------------------------------------

def suite_jacobi_axioms(ctx: VerifyContext) -> SuiteReport:
    ctx.require_structure("jacobi-axioms")
    alg, n = ctx.algebra, ctx.n
    results = []
    if ctx.lcs is not None:
        engine = ctx.lcs.engine
        if engine.constant:
            br = lcs_bracket(ctx.lcs)
            results.extend(check_jacobi_axioms(br, ctx.seed, ctx.samples))
            results.extend(_lcs_extras(ctx))
        else:
            results.extend(_lcs_pointwise(ctx))
    if ctx.jacobi_data is not None:
        br = prolong_jacobi(ctx.jacobi_data, alg)
        results.extend(check_jacobi_axioms(br, ctx.seed, ctx.samples))
        results.append(advisory_jacobi_check(ctx.jacobi_data, ctx.seed,
                                             ctx.samples))

        def tau_definition(rng):
            phi = _rand_apoly(rng, ctx)
            f = _rand_poly(rng, n)
            lhs = tau_operator(ctx.jacobi_data, phi)(f)
            rhs = tau_apply_definition(ctx.jacobi_data, phi, f)
            return None if lhs == rhs else {"phi": str(phi), "f": str(f),
                                            "lhs": str(lhs), "rhs": str(rhs)}

        def tau_route(rng):
            phi, psi = _rand_apoly(rng, ctx), _rand_apoly(rng, ctx)
            lhs = br(phi, psi)
            rhs = tau_operator(ctx.jacobi_data, phi).tilde(psi)
            return None if lhs == rhs else {"phi": str(phi), "psi": str(psi)}

        results.append(run_identity("tau-definition-agreement", ctx.seed,
                                    ctx.samples, tau_definition))
        results.append(run_identity("tau-route-agreement", ctx.seed,
                                    ctx.samples, tau_route))
    return SuiteReport("jacobi-axioms", results)


def _lcs_extras(ctx: VerifyContext) -> list:
    lcs = ctx.lcs
    engine = lcs.engine
    alg, n = ctx.algebra, ctx.n
    br = lcs_bracket(lcs)

    def residual(rng):
        phi = _rand_apoly(rng, ctx)
        x_phi = engine.hamiltonian(phi)
        res = engine.residual(phi, x_phi)
        return None if res.is_zero() else {"phi": str(phi), "residual": str(res)}

    def two_formula(rng):
        phi, psi = _rand_apoly(rng, ctx), _rand_apoly(rng, ctx)
        lhs = br(phi, psi)
        rhs = engine.rho_apply(engine.hamiltonian(phi), psi)
        return None if lhs == rhs else {"phi": str(phi), "psi": str(psi),
                                        "lhs": str(lhs), "rhs": str(rhs)}

    def ham_morphism(rng):
        phi, psi = _rand_apoly(rng, ctx), _rand_apoly(rng, ctx)
        lhs = bracket(engine.hamiltonian(phi), engine.hamiltonian(psi))
        rhs = engine.hamiltonian(br(phi, psi))
        return None if lhs == rhs else {"phi": str(phi), "psi": str(psi)}

    def theta_invariance(rng):
        phi = _rand_apoly(rng, ctx)
        ld = engine.lie_derivative_of_omega(phi)
        return None if ld.is_zero() else {"phi": str(phi), "lie-derivative": str(ld)}

    def theta_interior_commutator(rng):
        phi, psi = _rand_apoly(rng, ctx), _rand_apoly(rng, ctx)
        x_phi = engine.hamiltonian(phi)
        x_psi = engine.hamiltonian(psi)
        omega = engine.omega_a
        lhs = (lie_derivative(x_phi, interior(x_psi, omega), engine.alpha_a)
               - interior(x_psi, lie_derivative(x_phi, omega, engine.alpha_a)))
        rhs = interior(bracket(x_phi, x_psi), omega)
        return None if lhs == rhs else {"phi": str(phi), "psi": str(psi)}

    def unit_bracket(rng):
        phi = _rand_apoly(rng, ctx)
        lhs = br(phi, APoly.one(alg, n))
        rhs = engine.alpha_of(engine.hamiltonian(phi))
        return None if lhs == rhs else {"phi": str(phi), "lhs": str(lhs),
                                        "rhs": str(rhs)}

    checks = [
        ("hamiltonian-residual", residual),
        ("two-formula-agreement", two_formula),
        ("hamiltonian-morphism", ham_morphism),
        ("lie-derivative-invariance", theta_invariance),
        ("theta-interior-commutator", theta_interior_commutator),
        ("unit-bracket-value", unit_bracket),
    ]
    return [run_identity(name, ctx.seed, ctx.samples, fn) for name, fn in checks]


def _lcs_pointwise(ctx: VerifyContext) -> list:
    """Pointwise battery for non-constant 2-forms: sampled near points."""
    lcs = ctx.lcs
    engine = lcs.engine
    alg, n = ctx.algebra, ctx.n

    def solvable_point(rng):
        # resample until the 2-form is nondegenerate at the origin of xi
        from .weil import rational_matrix_inverse
        from .errors import NotInvertibleError
        for _ in range(50):
            xi = sampling.rand_nearpoint(rng, alg, n)
            w0 = [[Fraction(0)] * n for _ in range(n)]
            for (i, j), c in engine.omega_a.coeffs.items():
                v = c.eval_at(xi).augmentation
                w0[i - 1][j - 1] = v
                w0[j - 1][i - 1] = -v
            try:
                rational_matrix_inverse(w0)
                return xi
            except NotInvertibleError:
                continue
        raise ProblemError("could not sample a nondegenerate near point")

    def residual_at(rng):
        phi = _rand_apoly(rng, ctx)
        xi = solvable_point(rng)
        # hamiltonian_at asserts the exact pointwise residual internally
        engine.hamiltonian_at(phi, xi)
        return None

    def antisymmetry_at(rng):
        phi, psi = _rand_apoly(rng, ctx), _rand_apoly(rng, ctx)
        xi = solvable_point(rng)
        s = engine.bracket_at(phi, psi, xi) + engine.bracket_at(psi, phi, xi)
        return None if s.is_zero() else {"phi": str(phi), "psi": str(psi),
                                         "xi": repr(xi)}

    def two_formula_at(rng):
        phi, psi = _rand_apoly(rng, ctx), _rand_apoly(rng, ctx)
        xi = solvable_point(rng)
        v = engine.hamiltonian_at(phi, xi)
        rho = alg.zero()
        for j in range(n):
            rho = rho + v[j] * psi.partial(j + 1).eval_at(xi)
        if engine.alpha_a is not None:
            aval = alg.zero()
            for j in range(n):
                c = engine.alpha_a.coeffs.get((j + 1,), APoly.zero(alg, n))
                aval = aval + c.eval_at(xi) * v[j]
            rho = rho + psi.eval_at(xi) * aval
        lhs = engine.bracket_at(phi, psi, xi)
        return None if lhs == rho else {"phi": str(phi), "psi": str(psi),
                                        "xi": repr(xi)}

    checks = [
        ("pointwise-hamiltonian-residual", residual_at),
        ("pointwise-bracket-antisymmetry", antisymmetry_at),
        ("pointwise-two-formula-agreement", two_formula_at),
    ]
    return [run_identity(name, ctx.seed, ctx.samples, fn) for name, fn in checks]


# ---------------------------------------------------------------------------
# suite: prolongation
# ---------------------------------------------------------------------------

def suite_prolongation(ctx: VerifyContext) -> SuiteReport:
    alg, n = ctx.algebra, ctx.n

    def ring_hom(rng):
        f, g = _rand_poly(rng, n), _rand_poly(rng, n)
        ok = (prolong(f + g, alg) == prolong(f, alg) + prolong(g, alg)
              and prolong(f * g, alg) == prolong(f, alg) * prolong(g, alg)
              and prolong(Poly.one(n), alg) == APoly.one(alg, n))
        return None if ok else {"f": str(f), "g": str(g)}

    def taylor_equivalence(rng):
        f = _rand_poly(rng, n)
        xi = sampling.rand_nearpoint(rng, alg, n)
        lhs = prolong(f, alg).eval_at(xi)
        rhs = taylor_value(f, xi)
        return None if lhs == rhs else {"f": str(f), "xi": repr(xi),
                                        "substitution": str(lhs),
                                        "taylor": str(rhs)}

    def origin_augmentation(rng):
        f = _rand_poly(rng, n)
        xi = sampling.rand_nearpoint(rng, alg, n)
        lhs = prolong(f, alg).eval_at(xi).augmentation
        rhs = f.eval_rational(xi.origin())
        return None if lhs == rhs else {"f": str(f), "xi": repr(xi)}

    def partial_commutes(rng):
        f = _rand_poly(rng, n)
        j = rng.randint(1, n)
        lhs = prolong(f, alg).partial(j)
        rhs = prolong(f.partial(j), alg)
        return None if lhs == rhs else {"f": str(f), "j": j}

    def form_naturality(rng):
        k = rng.randint(0, max(0, n - 1))
        eta = _rand_rform(rng, n, k)
        beta = _rand_rform(rng, n, 1)
        ok = (prolong_form(d_base(eta), alg) == d_A(prolong_form(eta, alg))
              and prolong_form(wedge_base(beta, eta), alg)
              == wedge(prolong_form(beta, alg), prolong_form(eta, alg)))
        return None if ok else {"eta": str(eta), "beta": str(beta)}

    checks = [
        ("prolong-ring-hom", ring_hom),
        ("taylor-equivalence", taylor_equivalence),
        ("origin-augmentation", origin_augmentation),
        ("partial-commutes", partial_commutes),
        ("form-naturality", form_naturality),
    ]
    results = [run_identity(name, ctx.seed, ctx.samples, fn)
               for name, fn in checks]

    if ctx.lcs is not None:
        lcs = ctx.lcs

        def lcs_transfer(rng):
            lifted = lcs.engine.differential(lcs.omega_a)
            return None if lifted.is_zero() else {"d-alpha-omega": str(lifted)}

        results.append(run_identity("lcs-transfer", ctx.seed, 1, lcs_transfer))

        def lichnerowicz_prolong(rng):
            f = _rand_poly(rng, n)
            base = d_alpha_base(f, lcs.alpha)
            lhs = prolong_form(base, alg)
            rhs = lcs.engine.d_function(prolong(f, alg))
            return None if lhs == rhs else {"f": str(f)}

        results.append(run_identity("lichnerowicz-prolong", ctx.seed,
                                    ctx.samples, lichnerowicz_prolong))

        if lcs.engine.constant:
            def field_prolongation(rng):
                f = _rand_poly(rng, n)
                lifted = hamiltonian_field(lcs, prolong(f, alg))
                base = lcs.base_hamiltonian(f)
                expected = DiffOp.vector_field(
                    [prolong(c, alg) for c in base])
                return None if lifted == expected else {
                    "f": str(f), "lifted": repr(lifted),
                    "base-prolonged": repr(expected)}

            results.append(run_identity("field-prolongation", ctx.seed,
                                        ctx.samples, field_prolongation))
            results.extend(check_prolongation_coincidence(
                lcs, ctx.seed, ctx.samples))

    if ctx.jacobi_data is not None:
        jd = ctx.jacobi_data
        br = prolong_jacobi(jd, alg)

        def prolonged_coincidence(rng):
            f, g = _rand_poly(rng, n), _rand_poly(rng, n)
            lhs = br(prolong(f, alg), prolong(g, alg))
            rhs = prolong(jd.base_bracket(f, g), alg)
            return None if lhs == rhs else {"f": str(f), "g": str(g),
                                            "lhs": str(lhs), "rhs": str(rhs)}

        results.append(run_identity("prolonged-bracket-coincidence",
                                    ctx.seed, ctx.samples,
                                    prolonged_coincidence))
    return SuiteReport("prolongation", results)


def _rand_rform(rng, n, degree):
    from itertools import combinations
    keys = list(combinations(range(1, n + 1), degree))
    coeffs = {}
    for key in keys:
        if rng.random() < 0.8:
            coeffs[key] = sampling.rand_poly(rng, n, max_degree=2, max_terms=3)
    return RForm(n, degree, coeffs)


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

_SUITES = {
    "prop1": suite_prop1,
    "lie-rinehart": suite_lie_rinehart,
    "jacobi-axioms": suite_jacobi_axioms,
    "prolongation": suite_prolongation,
}


def run_suites(ctx: VerifyContext, names) -> list:
    if isinstance(names, str):
        names = [names]
    has_structure = ctx.lcs is not None or ctx.jacobi_data is not None
    expanded = []
    for name in names:
        if name == "all":
            # structure-bound suites are skipped, not errors, under 'all'
            expanded.extend(s for s in SUITE_NAMES
                            if s != "jacobi-axioms" or has_structure)
        elif name in _SUITES:
            expanded.append(name)
        else:
            raise ProblemError(f"unknown suite {name!r}; "
                               f"choose from {', '.join(SUITE_NAMES)} or 'all'")
    seen = []
    for name in expanded:
        if name not in seen:
            seen.append(name)
    return [_SUITES[name](ctx) for name in seen]
