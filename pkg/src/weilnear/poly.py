"""Polynomial models of the smooth function spaces, and prolongation.

``Poly`` stands in for the smooth functions on R^n (exact rational
coefficients); ``APoly`` for the algebra-valued functions on the near-point
manifold generated over A by the lifted coordinates.  ``prolong`` is the
substitution homomorphism; ``taylor_value`` evaluates a prolonged function
through the finite Taylor sum instead, which serves as the independent
second route for the substitution semantics.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from . import _kernels as kernels
from .errors import MismatchError
from .weil import AElement, WeilAlgebra, as_fraction, same_algebra

ZERO = Fraction(0)
ONE = Fraction(1)


def monomial_str(expt, var_names=None) -> str:
    parts = []
    for i, e in enumerate(expt):
        if not e:
            continue
        name = var_names[i] if var_names else f"x{i + 1}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def _term_order(expt):
    # graded-lex, highest degree first, x1 before x2 within a degree
    return (-sum(expt), tuple(-e for e in expt))


class Poly:
    """Exact-coefficient polynomial on R^n."""

    __slots__ = ("n_vars", "terms")

    def __init__(self, n_vars: int, terms: dict):
        self.n_vars = n_vars
        self.terms = {e: c for e, c in terms.items() if c}

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "Poly":
        return cls(n, {})

    @classmethod
    def constant(cls, n: int, c) -> "Poly":
        return cls(n, {(0,) * n: as_fraction(c)})

    @classmethod
    def one(cls, n: int) -> "Poly":
        return cls.constant(n, 1)

    @classmethod
    def variable(cls, n: int, j: int) -> "Poly":
        """The coordinate function x_j, with j in 1..n."""
        if not 1 <= j <= n:
            raise MismatchError(f"variable index {j} out of range 1..{n}")
        e = [0] * n
        e[j - 1] = 1
        return cls(n, {tuple(e): ONE})

    # -- ring structure -------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.n_vars != other.n_vars:
            raise MismatchError("polynomials in different numbers of variables")

    def _coerce(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(self.n_vars, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            terms[e] = terms.get(e, ZERO) + c
        return Poly(self.n_vars, terms)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Poly(self.n_vars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = as_fraction(other)
            return Poly(self.n_vars, {e: c * f for e, c in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in o.terms.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                out[key] = out.get(key, ZERO) + ca * cb
        return Poly(self.n_vars, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * Fraction(1, as_fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        result = Poly.one(self.n_vars)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, Poly) else other
        if not isinstance(o, Poly):
            return NotImplemented
        return self.n_vars == o.n_vars and self.terms == o.terms

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    # -- calculus -------------------------------------------------------------

    def partial(self, j: int) -> "Poly":
        """Formal derivative with respect to x_j (1-based)."""
        if not 1 <= j <= self.n_vars:
            raise MismatchError(f"variable index {j} out of range 1..{self.n_vars}")
        i = j - 1
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                key = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[key] = out.get(key, ZERO) + c * e[i]
        return Poly(self.n_vars, out)

    def eval_rational(self, point: Sequence) -> Fraction:
        pt = [as_fraction(x) for x in point]
        if len(pt) != self.n_vars:
            raise MismatchError("point dimension mismatch")
        total = ZERO
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                for _ in range(k):
                    v *= x
            total += v
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_term_order):
            c = self.terms[e]
            mon = monomial_str(e)
            if not mon:
                piece = str(c)
            elif c == 1:
                piece = mon
            elif c == -1:
                piece = f"-{mon}"
            else:
                piece = f"{c}*{mon}"
            parts.append(piece)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"Poly({self})"


class NearPoint:
    """A point of the near-point manifold over A, i.e. a vector in A^n."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: WeilAlgebra, coords: Sequence[AElement]):
        coords = tuple(coords)
        for c in coords:
            if not same_algebra(c.algebra, algebra):
                raise MismatchError("near-point coordinate over a different algebra")
        self.algebra = algebra
        self.coords = coords

    @classmethod
    def from_rationals(cls, algebra: WeilAlgebra, values: Iterable) -> "NearPoint":
        return cls(algebra, [algebra.from_scalar(v) for v in values])

    @property
    def n_vars(self) -> int:
        return len(self.coords)

    def origin(self) -> tuple:
        """The underlying point of R^n: componentwise augmentation."""
        return tuple(c.augmentation for c in self.coords)

    def __repr__(self):
        return f"NearPoint({', '.join(str(c) for c in self.coords)})"


class APoly:
    """Polynomial in the lifted coordinates with coefficients in A.

    ``real_hint`` marks elements asserted to take values in R inside A;
    the hint is authoritative (set at construction, propagated through
    value-preserving operations) and only feeds advisory checks.
    """

    __slots__ = ("algebra", "n_vars", "terms", "real_hint")

    def __init__(self, algebra: WeilAlgebra, n_vars: int, terms: dict,
                 real_hint: bool = False):
        self.algebra = algebra
        self.n_vars = n_vars
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}
        self.real_hint = real_hint

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, algebra: WeilAlgebra, n: int) -> "APoly":
        return cls(algebra, n, {}, real_hint=True)

    @classmethod
    def constant(cls, algebra: WeilAlgebra, n: int, a) -> "APoly":
        if isinstance(a, (int, Fraction)):
            a = algebra.from_scalar(a)
        return cls(algebra, n, {(0,) * n: a},
                   real_hint=a.is_real_multiple_of_unit())

    @classmethod
    def one(cls, algebra: WeilAlgebra, n: int) -> "APoly":
        return cls.constant(algebra, n, 1)

    @classmethod
    def coordinate(cls, algebra: WeilAlgebra, n: int, j: int) -> "APoly":
        """The lifted coordinate function x_j^A (j in 1..n)."""
        if not 1 <= j <= n:
            raise MismatchError(f"variable index {j} out of range 1..{n}")
        e = [0] * n
        e[j - 1] = 1
        return cls(algebra, n, {tuple(e): algebra.unit()})

    # -- algebra structure ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, APoly):
            if not same_algebra(self.algebra, other.algebra):
                raise MismatchError("A-polynomials over different algebras")
            if self.n_vars != other.n_vars:
                raise MismatchError("A-polynomials in different numbers of variables")
            return other
        if isinstance(other, (int, Fraction)):
            return APoly.constant(self.algebra, self.n_vars, other)
        if isinstance(other, AElement):
            if not same_algebra(self.algebra, other.algebra):
                raise MismatchError("coefficient over a different algebra")
            return APoly.constant(self.algebra, self.n_vars, other)
        if isinstance(other, Poly):
            if self.n_vars != other.n_vars:
                raise MismatchError("operand in different number of variables")
            return prolong(other, self.algebra)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in o.terms.items():
            cur = terms.get(e)
            terms[e] = c if cur is None else cur + c
        return APoly(self.algebra, self.n_vars, terms,
                     real_hint=self.real_hint and o.real_hint)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return APoly(self.algebra, self.n_vars,
                     {e: -c for e, c in self.terms.items()},
                     real_hint=self.real_hint)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = as_fraction(other)
            if not f:
                return APoly.zero(self.algebra, self.n_vars)
            return APoly(self.algebra, self.n_vars,
                         {e: c * f for e, c in self.terms.items()},
                         real_hint=self.real_hint)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        alg = self.algebra
        raw_a = {e: c.coords for e, c in self.terms.items()}
        raw_b = {e: c.coords for e, c in o.terms.items()}
        raw = kernels.apoly_mul_terms(raw_a, raw_b, alg._ktable, alg.dim)
        terms = {e: AElement(alg, coords) for e, coords in raw.items()}
        return APoly(alg, self.n_vars, terms,
                     real_hint=self.real_hint and o.real_hint)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, AElement, Poly)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * Fraction(1, as_fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        result = APoly.one(self.algebra, self.n_vars)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, APoly) else other
        if not isinstance(o, APoly):
            return NotImplemented
        if not same_algebra(self.algebra, o.algebra) or self.n_vars != o.n_vars:
            return False
        return self.terms == o.terms

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    # -- calculus -------------------------------------------------------------

    def partial(self, j: int) -> "APoly":
        """Formal derivative with respect to the lifted coordinate (1-based)."""
        if not 1 <= j <= self.n_vars:
            raise MismatchError(f"variable index {j} out of range 1..{self.n_vars}")
        i = j - 1
        out: dict = {}
        for e, c in self.terms.items():
            if e[i]:
                key = e[:i] + (e[i] - 1,) + e[i + 1:]
                inc = c * e[i]
                cur = out.get(key)
                out[key] = inc if cur is None else cur + inc
        return APoly(self.algebra, self.n_vars, out, real_hint=self.real_hint)

    def eval_at(self, xi: NearPoint) -> AElement:
        """Substitute the coordinates of ``xi`` and contract in A."""
        if not same_algebra(self.algebra, xi.algebra):
            raise MismatchError("near point over a different algebra")
        if xi.n_vars != self.n_vars:
            raise MismatchError("near point dimension mismatch")
        alg = self.algebra
        maxdeg = [0] * self.n_vars
        for e in self.terms:
            for i, k in enumerate(e):
                maxdeg[i] = max(maxdeg[i], k)
        powers = []
        for i in range(self.n_vars):
            row = [alg.unit()]
            for _ in range(maxdeg[i]):
                row.append(row[-1] * xi.coords[i])
            powers.append(row)
        total = alg.zero()
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    v = v * powers[i][k]
            total = total + v
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_term_order):
            c = self.terms[e]
            mon = monomial_str(e)
            if c.is_real_multiple_of_unit():
                r = c.augmentation
                if not mon:
                    piece = str(r)
                elif r == 1:
                    piece = mon
                elif r == -1:
                    piece = f"-{mon}"
                else:
                    piece = f"{r}*{mon}"
            else:
                piece = f"({c})" if not mon else f"({c})*{mon}"
            parts.append(piece)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"APoly({self})"


# ---------------------------------------------------------------------------
# prolongation and its Taylor form
# ---------------------------------------------------------------------------

def prolong(f: Poly, algebra: WeilAlgebra) -> APoly:
    """Lift a base polynomial to the near-point manifold by substitution.

    Evaluation of the result at a near point equals the point's action on f;
    the lift is a homomorphism of real algebras.
    """
    terms = {e: algebra.from_scalar(c) for e, c in f.terms.items()}
    constant_only = all(not any(e) for e in f.terms)
    return APoly(algebra, f.n_vars, terms, real_hint=constant_only)


def taylor_value(f: Poly, xi: NearPoint) -> AElement:
    """Value of the lift of ``f`` at ``xi`` through the finite Taylor sum.

    Expands around the origin of the near point; the displacement has
    nilpotent coordinates, so the sum over derivative orders terminates at
    the degree of ``f``.  Independent of the substitution route in
    :meth:`APoly.eval_at`.
    """
    alg = xi.algebra
    n = f.n_vars
    if xi.n_vars != n:
        raise MismatchError("near point dimension mismatch")
    x0 = xi.origin()
    nu = [xi.coords[i] - alg.from_scalar(x0[i]) for i in range(n)]
    cap = f.degree()

    def multi_indices(k: int, budget: int):
        if k == 0:
            yield ()
            return
        for first in range(budget + 1):
            for rest in multi_indices(k - 1, budget - first):
                yield (first,) + rest

    total = alg.zero()
    for beta in multi_indices(n, cap):
        g = f
        for i, b in enumerate(beta):
            for _ in range(b):
                g = g.partial(i + 1)
        if g.is_zero():
            continue
        c = g.eval_rational(x0)
        if not c:
            continue
        denom = 1
        for b in beta:
            denom *= factorial(b)
        term = alg.from_scalar(c / denom)
        for i, b in enumerate(beta):
            for _ in range(b):
                term = term * nu[i]
        total = total + term
    return total
