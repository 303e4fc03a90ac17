"""Order-at-most-one differential operators on the near-point manifold.

An operator is stored in the lifted coordinate frame: a vector of
components plus a multiplier, acting on a base polynomial f as

    X(f) = sum_j Z_j * d_j(f^A) + f^A * mu.

The multiplier is the value on the constant 1; operators with zero
multiplier are exactly the vector fields (derivations).  The tilde
extension acts on A-polynomials by the same formula and is A-linear in
the coefficients; the bracket (X, Y) |-> tilde(X) o Y - tilde(Y) o X is
recovered in closed form by evaluating on the coordinates and on 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import MismatchError
from .poly import APoly, Poly, prolong
from .weil import AElement, WeilAlgebra, same_algebra


class DiffOp:
    """Differential operator of order <= 1 in the lifted frame."""

    __slots__ = ("algebra", "n_vars", "components", "multiplier")

    def __init__(self, components: Sequence[APoly], multiplier: APoly):
        components = tuple(components)
        if not components:
            raise MismatchError("operator needs at least one component")
        alg = multiplier.algebra
        n = multiplier.n_vars
        for z in components:
            if not same_algebra(z.algebra, alg) or z.n_vars != n:
                raise MismatchError("operator pieces over mismatched algebra/dimension")
        if len(components) != n:
            raise MismatchError(f"expected {n} components, got {len(components)}")
        self.algebra = alg
        self.n_vars = n
        self.components = components
        self.multiplier = multiplier

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, algebra: WeilAlgebra, n: int) -> "DiffOp":
        z = APoly.zero(algebra, n)
        return cls([z] * n, z)

    @classmethod
    def coordinate_lift(cls, algebra: WeilAlgebra, n: int, j: int) -> "DiffOp":
        """Lift of the base frame field along x_j (1-based), zero multiplier."""
        comps = [APoly.one(algebra, n) if i == j - 1 else APoly.zero(algebra, n)
                 for i in range(n)]
        return cls(comps, APoly.zero(algebra, n))

    @classmethod
    def vector_field(cls, components: Sequence[APoly]) -> "DiffOp":
        components = tuple(components)
        return cls(components, APoly.zero(components[0].algebra,
                                          components[0].n_vars))

    @classmethod
    def from_action(cls, algebra: WeilAlgebra, n: int,
                    action: Callable[[Poly], APoly]) -> "DiffOp":
        """Reconstruct an operator from its values on 1 and the coordinates."""
        mu = action(Poly.one(n))
        comps = []
        for j in range(1, n + 1):
            xj = APoly.coordinate(algebra, n, j)
            comps.append(action(Poly.variable(n, j)) - xj * mu)
        return cls(comps, mu)

    # -- actions --------------------------------------------------------------

    def __call__(self, f: Poly) -> APoly:
        """Action on a base polynomial."""
        if f.n_vars != self.n_vars:
            raise MismatchError("operand dimension mismatch")
        fa = prolong(f, self.algebra)
        out = fa * self.multiplier
        for j, z in enumerate(self.components, start=1):
            if not z.is_zero():
                out = out + z * prolong(f.partial(j), self.algebra)
        return out

    def tilde(self, phi: APoly) -> APoly:
        """The unique A-linear extension to A-polynomials."""
        if not same_algebra(phi.algebra, self.algebra) or phi.n_vars != self.n_vars:
            raise MismatchError("operand over mismatched algebra/dimension")
        out = phi * self.multiplier
        for j, z in enumerate(self.components, start=1):
            if not z.is_zero():
                out = out + z * phi.partial(j)
        return out

    # -- module and linear structure -------------------------------------------

    def is_vector_field(self) -> bool:
        return self.multiplier.is_zero()

    def vector_part(self) -> "DiffOp":
        return DiffOp(self.components, APoly.zero(self.algebra, self.n_vars))

    def _coerce_scalar(self, other) -> APoly | None:
        if isinstance(other, APoly):
            return other
        if isinstance(other, (int, Fraction, AElement)):
            return APoly.constant(self.algebra, self.n_vars, other)
        if isinstance(other, Poly):
            return prolong(other, self.algebra)
        return None

    def __rmul__(self, other):
        """Module action phi * X: scales components and multiplier."""
        phi = self._coerce_scalar(other)
        if phi is None:
            return NotImplemented
        return DiffOp([phi * z for z in self.components], phi * self.multiplier)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__rmul__(other)
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        if not same_algebra(self.algebra, other.algebra) or self.n_vars != other.n_vars:
            raise MismatchError("operators over mismatched algebra/dimension")
        return DiffOp([a + b for a, b in zip(self.components, other.components)],
                      self.multiplier + other.multiplier)

    def __sub__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return DiffOp([-z for z in self.components], -self.multiplier)

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return (same_algebra(self.algebra, other.algebra)
                and self.n_vars == other.n_vars
                and self.components == other.components
                and self.multiplier == other.multiplier)

    def is_zero(self) -> bool:
        return self.multiplier.is_zero() and all(z.is_zero() for z in self.components)

    def __repr__(self):
        comps = ", ".join(str(z) for z in self.components)
        return f"DiffOp(Z=[{comps}], mu={self.multiplier})"


def module_action(phi: APoly, x: DiffOp) -> DiffOp:
    """The function-module action phi . X."""
    return phi * x


def bracket(x: DiffOp, y: DiffOp) -> DiffOp:
    """Commutator through the tilde extensions, as a differential operator.

    The multiplier is the value on 1; components come from the values on the
    coordinate functions.  The returned operator agrees with
    ``tilde(x) o y - tilde(y) o x`` on every base polynomial.
    """
    if not same_algebra(x.algebra, y.algebra) or x.n_vars != y.n_vars:
        raise MismatchError("operators over mismatched algebra/dimension")
    n = x.n_vars
    mult = x.tilde(y.multiplier) - y.tilde(x.multiplier)
    comps = []
    for j in range(1, n + 1):
        xj = Poly.variable(n, j)
        value = x.tilde(y(xj)) - y.tilde(x(xj))
        comps.append(value - APoly.coordinate(x.algebra, n, j) * mult)
    return DiffOp(comps, mult)


# ---------------------------------------------------------------------------
# structural report for the Lie-Rinehart identities
# ---------------------------------------------------------------------------

@dataclass
class LieRinehartReport:
    passed: bool
    failures: list

    def first_failure(self):
        return self.failures[0] if self.failures else None


def check_lie_rinehart(x: DiffOp, y: DiffOp, phi: APoly,
                       test_polys: Sequence[Poly] = (),
                       test_apolys: Sequence[APoly] = ()) -> LieRinehartReport:
    """Verify the bracket/module compatibility laws on one input triple.

    Checks, exactly: the expansion of [X, phi.Y], the tilde map being a
    bracket morphism on the supplied A-polynomials, and both sides of the
    expansion acting identically on the supplied base polynomials.
    """
    failures = []
    one = APoly.one(x.algebra, x.n_vars)
    lhs = bracket(x, phi * y)
    anchor = x.tilde(phi) - phi * x.tilde(one)
    rhs = anchor * y + phi * bracket(x, y)
    if lhs != rhs:
        failures.append({"identity": "anchor-leibniz",
                         "lhs": repr(lhs), "rhs": repr(rhs)})
    for f in test_polys:
        lv, rv = lhs(f), rhs(f)
        if lv != rv:
            failures.append({"identity": "anchor-leibniz-action", "input": str(f),
                             "lhs": str(lv), "rhs": str(rv)})
            break
    xy = bracket(x, y)
    for psi in test_apolys:
        lv = x.tilde(y.tilde(psi)) - y.tilde(x.tilde(psi))
        rv = xy.tilde(psi)
        if lv != rv:
            failures.append({"identity": "tilde-morphism", "input": str(psi),
                             "lhs": str(lv), "rhs": str(rv)})
            break
    return LieRinehartReport(passed=not failures, failures=failures)
