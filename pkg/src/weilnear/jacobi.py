"""The three A-Jacobi bracket constructions and their verification suites.

* a symplectic Lie-Rinehart engine: given a nondegenerate 2-form and a
  structure differential (plain or Lichnerowicz-twisted), solve for
  Hamiltonian fields and form the bracket -Omega(X_phi, X_psi);
* the prolongation of a base Jacobi structure given by a bivector and a
  curl-type field, extended through the tilde construction;
* the locally-conformally-symplectic instance, which feeds the engine with
  the lifted pair and must coincide with the prolonged base structure.

Hamiltonian solves are symbolic when the 2-form has constant coefficients
(one exact matrix inversion over the algebra); otherwise they are done
pointwise at near points through the nilpotent-Neumann matrix inverse.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .errors import DegenerateFormError, MismatchError, NotInvertibleError, StructureError
from .forms import (AForm, RForm, d_A, d_alpha, d_alpha_base, d_base, evaluate,
                    interior, prolong_form, wedge, wedge_base)
from .ops import DiffOp, bracket
from .poly import APoly, NearPoint, Poly, prolong
from .reports import IdentityResult, run_identity
from .weil import (AElement, WeilAlgebra, nil_matrix_invert,
                   rational_matrix_inverse, same_algebra)
from . import sampling


# ---------------------------------------------------------------------------
# symplectic Lie-Rinehart engine
# ---------------------------------------------------------------------------

class SymplecticEngine:
    """Hamiltonian solves and the bracket for a nondegenerate 2-form.

    ``alpha_a`` selects the structure differential: None gives the plain
    exterior derivative (Poisson case), a lifted 1-form gives the
    Lichnerowicz twist.
    """

    def __init__(self, omega_a: AForm, alpha_a: Optional[AForm] = None):
        if omega_a.degree != 2:
            raise MismatchError("engine needs a 2-form")
        if alpha_a is not None and alpha_a.degree != 1:
            raise MismatchError("twist must be a 1-form")
        self.algebra = omega_a.algebra
        self.n = omega_a.n_vars
        if self.n % 2:
            raise DegenerateFormError(
                "odd dimension: an antisymmetric 2-form is always degenerate")
        self.omega_a = omega_a
        self.alpha_a = alpha_a
        self.constant = all(c.degree() == 0 for c in omega_a.coeffs.values())
        self._inv_wt: Optional[list] = None
        if self.constant:
            w = self._matrix_constant()
            try:
                self._inv_wt = nil_matrix_invert(_transpose(w))
            except NotInvertibleError as exc:
                raise DegenerateFormError(f"2-form is degenerate: {exc}") from None

    # -- matrices -------------------------------------------------------------

    def _matrix_constant(self) -> list:
        """W[i][j] = omega(d_i, d_j) as elements of A (constant case)."""
        alg, n = self.algebra, self.n
        w = [[alg.zero() for _ in range(n)] for _ in range(n)]
        for (i, j), c in self.omega_a.coeffs.items():
            value = c.terms.get((0,) * n, alg.zero())
            w[i - 1][j - 1] = value
            w[j - 1][i - 1] = -value
        return w

    def _matrix_at(self, xi: NearPoint) -> list:
        alg, n = self.algebra, self.n
        w = [[alg.zero() for _ in range(n)] for _ in range(n)]
        for (i, j), c in self.omega_a.coeffs.items():
            value = c.eval_at(xi)
            w[i - 1][j - 1] = value
            w[j - 1][i - 1] = -value
        return w

    # -- differential ----------------------------------------------------------

    def differential(self, eta: AForm) -> AForm:
        return d_alpha(eta, self.alpha_a) if self.alpha_a is not None else d_A(eta)

    def d_function(self, phi: APoly) -> AForm:
        return self.differential(AForm.function(phi))

    # -- Hamiltonian solves -----------------------------------------------------

    def hamiltonian(self, phi: APoly) -> DiffOp:
        """The unique vector field X with i_X omega^A = d phi, symbolically.

        Requires constant coefficients; the residual of the returned field
        is asserted to vanish identically.
        """
        if not self.constant:
            raise DegenerateFormError(
                "symbolic Hamiltonian solve needs constant 2-form coefficients; "
                "use hamiltonian_at for pointwise solves")
        rhs = self.d_function(phi)
        b = [rhs.coeffs.get((j,), APoly.zero(self.algebra, self.n))
             for j in range(1, self.n + 1)]
        comps = []
        for j in range(self.n):
            acc = APoly.zero(self.algebra, self.n)
            for l in range(self.n):
                entry = self._inv_wt[j][l]
                if not entry.is_zero():
                    acc = acc + entry * b[l]
            comps.append(acc)
        field = DiffOp.vector_field(comps)
        assert self.residual(phi, field).is_zero()
        return field

    def residual(self, phi: APoly, field: DiffOp) -> AForm:
        return interior(field, self.omega_a) - self.d_function(phi)

    def hamiltonian_at(self, phi: APoly, xi: NearPoint) -> list:
        """Pointwise Hamiltonian solve at a near point, any coefficients."""
        w = self._matrix_at(xi)
        try:
            inv_wt = nil_matrix_invert(_transpose(w))
        except NotInvertibleError as exc:
            raise DegenerateFormError(
                f"2-form degenerate at the origin of the sample point: {exc}"
            ) from None
        rhs = self.d_function(phi)
        b = [rhs.coeffs.get((j,), APoly.zero(self.algebra, self.n)).eval_at(xi)
             for j in range(1, self.n + 1)]
        v = [sum((inv_wt[j][l] * b[l] for l in range(self.n)),
                 self.algebra.zero()) for j in range(self.n)]
        # exact pointwise residual: sum_j W[j][l] v_j = b_l
        for l in range(self.n):
            lhs = sum((w[j][l] * v[j] for j in range(self.n)), self.algebra.zero())
            assert lhs == b[l]
        return v

    # -- brackets ----------------------------------------------------------------

    def alpha_of(self, field: DiffOp) -> APoly:
        if self.alpha_a is None:
            return APoly.zero(self.algebra, self.n)
        return evaluate(self.alpha_a, [field])

    def rho_apply(self, field: DiffOp, psi: APoly) -> APoly:
        """The twisted representation: tilde action plus alpha(X) scaling."""
        return field.tilde(psi) + psi * self.alpha_of(field)

    def bracket(self, phi: APoly, psi: APoly, verify: bool = False) -> APoly:
        x_phi = self.hamiltonian(phi)
        x_psi = self.hamiltonian(psi)
        value = -evaluate(self.omega_a, [x_phi, x_psi])
        if verify:
            alt = self.rho_apply(x_phi, psi)
            if value != alt:
                raise StructureError(
                    "bracket routes disagree: -Omega(X_phi, X_psi) != rho(X_phi)(psi)")
        return value

    def bracket_at(self, phi: APoly, psi: APoly, xi: NearPoint) -> AElement:
        v = self.hamiltonian_at(phi, xi)
        u = self.hamiltonian_at(psi, xi)
        total = self.algebra.zero()
        for (i, j), c in self.omega_a.coeffs.items():
            cij = c.eval_at(xi)
            total = total + cij * (v[i - 1] * u[j - 1] - v[j - 1] * u[i - 1])
        return -total

    def lie_derivative_of_omega(self, phi: APoly) -> AForm:
        from .forms import lie_derivative
        return lie_derivative(self.hamiltonian(phi), self.omega_a, self.alpha_a)


def _transpose(m):
    n = len(m)
    return [[m[j][i] for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# base Jacobi structures (bivector + curl field) and their prolongation
# ---------------------------------------------------------------------------

class JacobiData:
    """Base Jacobi structure presented by an antisymmetric bivector matrix
    and a curl-type vector field; the bracket is

        {f, g} = sum_ij Lambda[i][j] d_i f d_j g + f E(g) - g E(f).

    The Jacobi identity of the input is sampled by :func:`advisory_jacobi_check`,
    not proved.
    """

    def __init__(self, n: int, lam: Sequence[Sequence], e: Sequence):
        self.n = n
        self.lam = [[_as_poly(entry, n) for entry in row] for row in lam]
        self.e = [_as_poly(entry, n) for entry in e]
        if len(self.lam) != n or any(len(row) != n for row in self.lam):
            raise MismatchError("bivector matrix must be n x n")
        if len(self.e) != n:
            raise MismatchError("curl field must have n components")
        for i in range(n):
            if not self.lam[i][i].is_zero():
                raise StructureError(f"bivector has nonzero diagonal entry at {i + 1}")
            for j in range(i + 1, n):
                if self.lam[i][j] != -self.lam[j][i]:
                    raise StructureError(
                        f"bivector not antisymmetric at ({i + 1}, {j + 1})")

    def e_apply(self, f: Poly) -> Poly:
        out = Poly.zero(self.n)
        for j in range(self.n):
            out = out + self.e[j] * f.partial(j + 1)
        return out

    def base_bracket(self, f: Poly, g: Poly) -> Poly:
        out = f * self.e_apply(g) - g * self.e_apply(f)
        for i in range(self.n):
            for j in range(self.n):
                lij = self.lam[i][j]
                if not lij.is_zero():
                    out = out + lij * f.partial(i + 1) * g.partial(j + 1)
        return out

    def base_ad(self, f: Poly):
        """ad(f) = {f, .} as (components, multiplier) over the base."""
        comps = []
        for j in range(self.n):
            c = f * self.e[j]
            for i in range(self.n):
                if not self.lam[i][j].is_zero():
                    c = c + self.lam[i][j] * f.partial(i + 1)
            comps.append(c)
        return comps, -self.e_apply(f)

    def prolonged_ad(self, f: Poly, algebra: WeilAlgebra) -> DiffOp:
        comps, mult = self.base_ad(f)
        return DiffOp([prolong(c, algebra) for c in comps], prolong(mult, algebra))


def _as_poly(entry, n):
    if isinstance(entry, Poly):
        if entry.n_vars != n:
            raise MismatchError("entry in wrong number of variables")
        return entry
    return Poly.constant(n, entry)


def tau_operator(jd: JacobiData, phi: APoly) -> DiffOp:
    """The operator f |-> -tilde([ad f]^A)(phi) in closed coordinate form."""
    alg, n = phi.algebra, phi.n_vars
    comps = []
    for i in range(n):
        acc = phi * prolong(jd.e[i], alg)
        for j in range(n):
            if not jd.lam[i][j].is_zero():
                acc = acc - prolong(jd.lam[i][j], alg) * phi.partial(j + 1)
        comps.append(acc)
    mult = APoly.zero(alg, n)
    for j in range(n):
        mult = mult - prolong(jd.e[j], alg) * phi.partial(j + 1)
    return DiffOp(comps, mult)


def tau_apply_definition(jd: JacobiData, phi: APoly, f: Poly) -> APoly:
    """The defining route: -(tilde of the prolonged ad(f)) applied to phi."""
    return -jd.prolonged_ad(f, phi.algebra).tilde(phi)


# ---------------------------------------------------------------------------
# the bracket objects
# ---------------------------------------------------------------------------

class ABracket:
    """Bracket evaluator on A-polynomials with a provenance tag."""

    def __init__(self, tag: str, algebra: WeilAlgebra, n: int, evaluator,
                 engine: Optional[SymplecticEngine] = None,
                 verifier=None):
        self.tag = tag
        self.algebra = algebra
        self.n = n
        self._evaluator = evaluator
        self.engine = engine
        self._verifier = verifier

    def __call__(self, phi: APoly, psi: APoly, verify: bool = False) -> APoly:
        value = self._evaluator(phi, psi)
        if verify and self._verifier is not None:
            alt = self._verifier(phi, psi)
            if value != alt:
                raise StructureError(
                    f"bracket verification failed for tag {self.tag!r}")
        return value

    def at(self, phi: APoly, psi: APoly, xi: NearPoint) -> AElement:
        if self.engine is None:
            return self(phi, psi).eval_at(xi)
        return self.engine.bracket_at(phi, psi, xi)

    def unit(self) -> APoly:
        return APoly.one(self.algebra, self.n)


def generic_symplectic_bracket(omega_a: AForm, alpha_a: Optional[AForm] = None,
                               tag: str = "symplectic-LRJ") -> ABracket:
    """Bracket of a symplectic Lie-Rinehart-Jacobi pair: -Omega(X_phi, X_psi),
    with the Hamiltonian condition taken w.r.t. the selected differential."""
    engine = SymplecticEngine(omega_a, alpha_a)
    return ABracket(tag, engine.algebra, engine.n,
                    evaluator=lambda p, q: engine.bracket(p, q),
                    engine=engine,
                    verifier=lambda p, q: engine.rho_apply(engine.hamiltonian(p), q))


def prolong_jacobi(jd: JacobiData, algebra: WeilAlgebra) -> ABracket:
    """Prolongation of a base Jacobi structure to the near-point manifold."""
    n = jd.n
    lam_a = [[prolong(jd.lam[i][j], algebra) for j in range(n)] for i in range(n)]
    e_a = [prolong(jd.e[j], algebra) for j in range(n)]

    def e_tilde(phi: APoly) -> APoly:
        out = APoly.zero(algebra, n)
        for j in range(n):
            if not e_a[j].is_zero():
                out = out + e_a[j] * phi.partial(j + 1)
        return out

    def evaluator(phi: APoly, psi: APoly) -> APoly:
        out = phi * e_tilde(psi) - psi * e_tilde(phi)
        for i in range(n):
            dphi = phi.partial(i + 1)
            if dphi.is_zero():
                continue
            for j in range(n):
                if not lam_a[i][j].is_zero():
                    out = out + lam_a[i][j] * dphi * psi.partial(j + 1)
        return out

    def verifier(phi: APoly, psi: APoly) -> APoly:
        return tau_operator(jd, phi).tilde(psi)

    return ABracket("prolonged", algebra, n, evaluator, verifier=verifier)


# ---------------------------------------------------------------------------
# locally conformally symplectic data
# ---------------------------------------------------------------------------

class LcsData:
    """A locally conformally symplectic triple with its lifted structures.

    Requires the stated compatibility d omega + alpha ^ omega = 0 exactly;
    closedness of alpha is recorded as an advisory flag only (in dimension 2
    the compatibility is vacuous, and several transported identities do
    fail when alpha is not closed -- the mutation tests rely on this).
    """

    def __init__(self, n: int, alpha: RForm, omega: RForm, algebra: WeilAlgebra):
        if alpha.degree != 1 or alpha.n_vars != n:
            raise MismatchError("alpha must be a 1-form on the base")
        if omega.degree != 2 or omega.n_vars != n:
            raise MismatchError("omega must be a 2-form on the base")
        compat = d_base(omega) + wedge_base(alpha, omega)
        if not compat.is_zero():
            raise StructureError(
                "lcs compatibility fails: d(omega) + alpha ^ omega != 0")
        self.n = n
        self.alpha = alpha
        self.omega = omega
        self.algebra = algebra
        self.alpha_closed = d_base(alpha).is_zero()
        self.alpha_a = prolong_form(alpha, algebra)
        self.omega_a = prolong_form(omega, algebra)
        self.engine = SymplecticEngine(self.omega_a, self.alpha_a)
        self.constant_omega = self.engine.constant
        self._base_inv_wt = None
        if self.constant_omega:
            w = [[Fraction(0)] * n for _ in range(n)]
            for (i, j), c in omega.coeffs.items():
                value = c.terms.get((0,) * n, Fraction(0))
                w[i - 1][j - 1] = value
                w[j - 1][i - 1] = -value
            self._base_inv_wt = rational_matrix_inverse(_transpose(w))

    # -- base-manifold side ------------------------------------------------------

    def _need_constant(self):
        if self._base_inv_wt is None:
            raise DegenerateFormError(
                "base-manifold solve needs constant 2-form coefficients")

    def base_hamiltonian(self, f: Poly) -> list:
        """Components of the base Hamiltonian field of f (constant omega)."""
        self._need_constant()
        rhs = d_alpha_base(f, self.alpha)
        b = [rhs.coeffs.get((j,), Poly.zero(self.n)) for j in range(1, self.n + 1)]
        return [
            sum((b[l] * self._base_inv_wt[j][l] for l in range(self.n)),
                Poly.zero(self.n))
            for j in range(self.n)
        ]

    def base_bracket(self, f: Poly, g: Poly) -> Poly:
        xf = self.base_hamiltonian(f)
        xg = self.base_hamiltonian(g)
        total = Poly.zero(self.n)
        for (i, j), c in self.omega.coeffs.items():
            total = total + c * (xf[i - 1] * xg[j - 1] - xf[j - 1] * xg[i - 1])
        return -total


def lcs_bracket(lcs: LcsData) -> ABracket:
    """The bracket -omega^A(X_F, X_G) of the lifted structure."""
    engine = lcs.engine
    return ABracket("lcs", lcs.algebra, lcs.n,
                    evaluator=lambda p, q: engine.bracket(p, q),
                    engine=engine,
                    verifier=lambda p, q: engine.rho_apply(engine.hamiltonian(p), q))


def hamiltonian_field(lcs: LcsData, phi: APoly) -> DiffOp:
    return lcs.engine.hamiltonian(phi)


def hamiltonian_at(lcs: LcsData, phi: APoly, xi: NearPoint) -> list:
    return lcs.engine.hamiltonian_at(phi, xi)


def jacobi_from_lcs(lcs: LcsData) -> JacobiData:
    """Extract the (bivector, curl field) presentation of the base bracket."""
    lcs._need_constant()
    n = lcs.n
    # Lambda = W^{-1} = -(W^T)^{-1}; E solves the interior-product equation
    lam = [[-lcs._base_inv_wt[i][j] for j in range(n)] for i in range(n)]
    alpha_vec = [lcs.alpha.coeffs.get((j,), Poly.zero(n)) for j in range(1, n + 1)]
    e = [
        sum((alpha_vec[l] * lcs._base_inv_wt[j][l] for l in range(n)), Poly.zero(n))
        for j in range(n)
    ]
    return JacobiData(n, lam, e)


# ---------------------------------------------------------------------------
# verification suites
# ---------------------------------------------------------------------------

def check_jacobi_axioms(br: ABracket, seed: int, samples: int,
                        max_degree: int = 3) -> list:
    """Antisymmetry, A-linearity, Jacobi identity and the modified Leibniz
    law of ad(phi), each sampled exactly."""
    alg, n = br.algebra, br.n

    def sample(rng):
        return sampling.rand_apoly(rng, alg, n, max_degree=max_degree)

    def antisymmetry(rng):
        phi, psi = sample(rng), sample(rng)
        if (br(phi, psi) + br(psi, phi)).is_zero() and br(phi, phi).is_zero():
            return None
        return {"phi": str(phi), "psi": str(psi)}

    def a_linearity(rng):
        phi, psi = sample(rng), sample(rng)
        a = sampling.rand_aelement(rng, alg)
        scaled = APoly.constant(alg, n, a)
        ok = (br(phi, scaled * psi) == scaled * br(phi, psi)
              and br(scaled * phi, psi) == scaled * br(phi, psi))
        return None if ok else {"phi": str(phi), "psi": str(psi), "a": str(a)}

    def jacobi_identity(rng):
        phi, psi, nu = sample(rng), sample(rng), sample(rng)
        total = (br(phi, br(psi, nu)) + br(psi, br(nu, phi))
                 + br(nu, br(phi, psi)))
        if total.is_zero():
            return None
        return {"phi": str(phi), "psi": str(psi), "nu": str(nu),
                "defect": str(total)}

    def ad_leibniz(rng):
        phi, p1, p2 = sample(rng), sample(rng), sample(rng)
        lhs = br(phi, p1 * p2)
        rhs = br(phi, p1) * p2 + p1 * br(phi, p2) - p1 * p2 * br(phi, br.unit())
        return None if lhs == rhs else {"phi": str(phi), "psi1": str(p1),
                                        "psi2": str(p2), "lhs": str(lhs),
                                        "rhs": str(rhs)}

    checks = [
        ("bracket-antisymmetry", antisymmetry),
        ("bracket-a-linearity", a_linearity),
        ("bracket-jacobi-identity", jacobi_identity),
        ("ad-modified-leibniz", ad_leibniz),
    ]
    return [run_identity(name, seed, samples, fn) for name, fn in checks]


def check_prolongation_coincidence(lcs: LcsData, seed: int, samples: int,
                                   max_degree: int = 3) -> list:
    """The lifted bracket restricted to prolongations equals the prolonged
    base bracket, and agrees with the prolonged (bivector, curl) structure."""
    alg, n = lcs.algebra, lcs.n
    br = lcs_bracket(lcs)
    jd = jacobi_from_lcs(lcs)
    pj = prolong_jacobi(jd, alg)

    def coincidence(rng):
        f = sampling.rand_poly(rng, n, max_degree=max_degree)
        g = sampling.rand_poly(rng, n, max_degree=max_degree)
        fa, ga = prolong(f, alg), prolong(g, alg)
        expected = prolong(lcs.base_bracket(f, g), alg)
        got = br(fa, ga)
        if got != expected:
            return {"f": str(f), "g": str(g), "lifted": str(got),
                    "prolonged-base": str(expected)}
        return None

    def cross_check(rng):
        f = sampling.rand_poly(rng, n, max_degree=max_degree)
        g = sampling.rand_poly(rng, n, max_degree=max_degree)
        fa, ga = prolong(f, alg), prolong(g, alg)
        lhs = br(fa, ga)
        rhs = pj(fa, ga, verify=True)
        if lhs != rhs:
            return {"f": str(f), "g": str(g), "lcs": str(lhs),
                    "prolonged-jacobi": str(rhs)}
        return None

    def base_agreement(rng):
        f = sampling.rand_poly(rng, n, max_degree=max_degree)
        g = sampling.rand_poly(rng, n, max_degree=max_degree)
        if lcs.base_bracket(f, g) != jd.base_bracket(f, g):
            return {"f": str(f), "g": str(g)}
        return None

    return [
        run_identity("bracket-coincidence", seed, samples, coincidence),
        run_identity("lcs-vs-prolonged-jacobi", seed, samples, cross_check),
        run_identity("base-bivector-agreement", seed, samples, base_agreement),
    ]


def advisory_jacobi_check(jd: JacobiData, seed: int, samples: int,
                          max_degree: int = 2) -> IdentityResult:
    """Sampled Jacobi identity of a base (bivector, curl) structure."""

    def check(rng):
        f = sampling.rand_poly(rng, jd.n, max_degree=max_degree)
        g = sampling.rand_poly(rng, jd.n, max_degree=max_degree)
        h = sampling.rand_poly(rng, jd.n, max_degree=max_degree)
        total = (jd.base_bracket(f, jd.base_bracket(g, h))
                 + jd.base_bracket(g, jd.base_bracket(h, f))
                 + jd.base_bracket(h, jd.base_bracket(f, g)))
        if total.is_zero():
            return None
        return {"f": str(f), "g": str(g), "h": str(h), "defect": str(total)}

    return run_identity("base-jacobi-identity", seed, samples, check)
