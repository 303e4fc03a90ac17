"""Exterior forms with polynomial coefficients, over the base and over A.

Forms are dictionaries keyed by strictly increasing 1-based index tuples,
so antisymmetry is structural.  The same term-level routines serve both
the base forms (``RForm``, rational-polynomial coefficients) and the
A-valued forms (``AForm``); the exterior derivative, the wedge product,
the interior product, the Lichnerowicz twist d + alpha ^ . and the Lie
derivative via the homotopy formula all operate degree by degree.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import MismatchError
from .ops import DiffOp
from .poly import APoly, Poly, prolong
from .weil import AElement, WeilAlgebra, same_algebra


def _validate_key(key, degree, n):
    key = tuple(int(i) for i in key)
    if len(key) != degree:
        raise MismatchError(f"key {key} does not have degree {degree}")
    if any(not 1 <= i <= n for i in key):
        raise MismatchError(f"key {key} has indices outside 1..{n}")
    if any(a >= b for a, b in zip(key, key[1:])):
        raise MismatchError(f"key {key} must be strictly increasing")
    return key


def _insert_index(key, j):
    """Wedge dx_j into dx_key; returns (sign, new key)."""
    pos = 0
    while pos < len(key) and key[pos] < j:
        pos += 1
    sign = 1 if pos % 2 == 0 else -1
    return sign, key[:pos] + (j,) + key[pos:]


def _merge_keys(ka, kb):
    """Sign and key of dx_ka ^ dx_kb, or None when an index repeats."""
    if set(ka) & set(kb):
        return None
    merged = list(ka)
    sign = 1
    for j in kb:
        pos = 0
        while pos < len(merged) and merged[pos] < j:
            pos += 1
        if (len(merged) - pos) % 2 == 1:
            sign = -sign
        merged.insert(pos, j)
    return sign, tuple(merged)


def _accumulate(out, key, inc):
    cur = out.get(key)
    out[key] = inc if cur is None else cur + inc


def _d_terms(form):
    n = form.n_vars
    out = {}
    for key, c in form.coeffs.items():
        for j in range(1, n + 1):
            if j in key:
                continue
            dj = c.partial(j)
            if dj.is_zero():
                continue
            sign, nk = _insert_index(key, j)
            _accumulate(out, nk, dj if sign > 0 else -dj)
    return form._replace(form.degree + 1, out)


def _wedge_terms(a, b):
    out = {}
    for ka, ca in a.coeffs.items():
        for kb, cb in b.coeffs.items():
            merged = _merge_keys(ka, kb)
            if merged is None:
                continue
            sign, key = merged
            prod = ca * cb
            _accumulate(out, key, prod if sign > 0 else -prod)
    return a._replace(a.degree + b.degree, out)


class RForm:
    """Exterior form on the base manifold with Poly coefficients."""

    __slots__ = ("n_vars", "degree", "coeffs")

    def __init__(self, n_vars: int, degree: int, coeffs: dict):
        self.n_vars = n_vars
        self.degree = degree
        clean = {}
        for key, c in coeffs.items():
            key = _validate_key(key, degree, n_vars)
            if isinstance(c, (int, Fraction)):
                c = Poly.constant(n_vars, c)
            if not c.is_zero():
                clean[key] = c
        self.coeffs = clean

    @classmethod
    def zero(cls, n: int, degree: int) -> "RForm":
        return cls(n, degree, {})

    def _replace(self, degree, coeffs):
        return RForm(self.n_vars, degree, coeffs)

    def _check(self, other):
        if not isinstance(other, RForm) or other.n_vars != self.n_vars:
            raise MismatchError("forms over mismatched base")

    def __add__(self, other):
        self._check(other)
        if other.degree != self.degree:
            # zero forms are degree-agnostic
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise MismatchError("forms of different degree")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            _accumulate(out, k, c)
        return self._replace(self.degree, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._replace(self.degree, {k: -c for k, c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, RForm):
            return NotImplemented
        if self.n_vars != other.n_vars:
            return False
        if not self.coeffs and not other.coeffs:
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def is_zero(self) -> bool:
        return not self.coeffs

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for key in sorted(self.coeffs):
            mon = "^".join(f"dx{i}" for i in key) or "1"
            parts.append(f"({self.coeffs[key]})*{mon}")
        return " + ".join(parts)

    __repr__ = __str__


def d_base(form: RForm) -> RForm:
    """Exterior derivative of a base form."""
    return _d_terms(form)


def wedge_base(a: RForm, b: RForm) -> RForm:
    return _wedge_terms(a, b)


def d_alpha_base(f: Poly, alpha: RForm) -> RForm:
    """Lichnerowicz differential of a base function: df + f.alpha."""
    n = f.n_vars
    out = {}
    for j in range(1, n + 1):
        c = f.partial(j) + f * alpha.coeffs.get((j,), Poly.zero(n))
        if not c.is_zero():
            out[(j,)] = c
    return RForm(n, 1, out)


class AForm:
    """A-valued exterior form on the near-point manifold."""

    __slots__ = ("algebra", "n_vars", "degree", "coeffs")

    def __init__(self, algebra: WeilAlgebra, n_vars: int, degree: int, coeffs: dict):
        self.algebra = algebra
        self.n_vars = n_vars
        self.degree = degree
        clean = {}
        for key, c in coeffs.items():
            key = _validate_key(key, degree, n_vars)
            if isinstance(c, (int, Fraction, AElement)):
                c = APoly.constant(algebra, n_vars, c)
            if not same_algebra(c.algebra, algebra):
                raise MismatchError("coefficient over a different algebra")
            if not c.is_zero():
                clean[key] = c
        self.coeffs = clean

    @classmethod
    def zero(cls, algebra: WeilAlgebra, n: int, degree: int) -> "AForm":
        return cls(algebra, n, degree, {})

    @classmethod
    def function(cls, phi: APoly) -> "AForm":
        """A function viewed as a 0-form."""
        return cls(phi.algebra, phi.n_vars, 0, {(): phi})

    def scalar_value(self) -> APoly:
        if self.degree != 0:
            raise MismatchError("not a 0-form")
        return self.coeffs.get((), APoly.zero(self.algebra, self.n_vars))

    def _replace(self, degree, coeffs):
        return AForm(self.algebra, self.n_vars, degree, coeffs)

    def _check(self, other):
        if not isinstance(other, AForm) or other.n_vars != self.n_vars \
                or not same_algebra(other.algebra, self.algebra):
            raise MismatchError("forms over mismatched data")

    def __add__(self, other):
        self._check(other)
        if other.degree != self.degree:
            # zero forms are degree-agnostic
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise MismatchError("forms of different degree")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            _accumulate(out, k, c)
        return self._replace(self.degree, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._replace(self.degree, {k: -c for k, c in self.coeffs.items()})

    def __mul__(self, other):
        """Scaling by a function or scalar (0-form wedge)."""
        if isinstance(other, (int, Fraction, AElement, APoly, Poly)):
            phi = other
            if isinstance(phi, Poly):
                phi = prolong(phi, self.algebra)
            if not isinstance(phi, APoly):
                phi = APoly.constant(self.algebra, self.n_vars, phi)
            return self._replace(self.degree,
                                 {k: phi * c for k, c in self.coeffs.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, AForm):
            return NotImplemented
        if self.n_vars != other.n_vars or not same_algebra(self.algebra, other.algebra):
            return False
        if not self.coeffs and not other.coeffs:
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def is_zero(self) -> bool:
        return not self.coeffs

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for key in sorted(self.coeffs):
            mon = "^".join(f"dx{i}" for i in key) or "1"
            parts.append(f"({self.coeffs[key]})*{mon}")
        return " + ".join(parts)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def prolong_form(eta: RForm, algebra: WeilAlgebra) -> AForm:
    """Coefficientwise lift in the lifted coordinate coframe."""
    return AForm(algebra, eta.n_vars, eta.degree,
                 {k: prolong(c, algebra) for k, c in eta.coeffs.items()})


def d_A(eta: AForm) -> AForm:
    """Coordinate exterior derivative; squares to zero."""
    return _d_terms(eta)


def wedge(a: AForm, b: AForm) -> AForm:
    if not same_algebra(a.algebra, b.algebra) or a.n_vars != b.n_vars:
        raise MismatchError("forms over mismatched data")
    return _wedge_terms(a, b)


def d_alpha(eta: AForm, alpha_a: AForm) -> AForm:
    """Lichnerowicz differential relative to a lifted 1-form."""
    if alpha_a.degree != 1:
        raise MismatchError("twist must be a 1-form")
    return d_A(eta) + wedge(alpha_a, eta)


def interior(x: DiffOp, eta: AForm) -> AForm:
    """Contraction in the first slot; defined for vector fields only."""
    if not x.is_vector_field():
        raise MismatchError("interior product requires a vector field "
                            "(zero multiplier)")
    if eta.degree == 0:
        return eta._replace(0, {})
    out: dict = {}
    for key, c in eta.coeffs.items():
        for r, idx in enumerate(key):
            z = x.components[idx - 1]
            if z.is_zero():
                continue
            inc = z * c
            _accumulate(out, key[:r] + key[r + 1:], inc if r % 2 == 0 else -inc)
    return eta._replace(eta.degree - 1, out)


def evaluate(eta: AForm, fields: Sequence[DiffOp]) -> APoly:
    """Value of a k-form on k vector fields, first slot first."""
    if len(fields) != eta.degree:
        raise MismatchError(f"need {eta.degree} fields, got {len(fields)}")
    cur = eta
    for x in fields:
        cur = interior(x, cur)
    return cur.scalar_value()


def lie_derivative(x: DiffOp, eta: AForm, alpha_a: AForm | None = None) -> AForm:
    """Lie derivative along an operator, via the homotopy formula.

    The vector-field part enters through i_X d + d i_X with respect to the
    structure differential in play (plain, or twisted by ``alpha_a``); a
    nonzero multiplier acts by scalar multiplication of the coefficients.
    """
    def d(z):
        return d_alpha(z, alpha_a) if alpha_a is not None else d_A(z)

    xv = x if x.is_vector_field() else x.vector_part()
    out = interior(xv, d(eta)) + d(interior(xv, eta))
    if not x.multiplier.is_zero():
        out = out + eta * x.multiplier
    return out
