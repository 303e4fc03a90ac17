"""Local (Weil) algebras over the rationals, with exact arithmetic.

An algebra is given by a basis and a table of structure constants; index 0
is always the unit.  Locality is certified constructively: the span of the
non-unit basis vectors must be an ideal whose powers shrink to zero, and
the resulting chain of powers yields the height and a graded filtration.
All coefficients are ``fractions.Fraction``; every identity downstream is
checked bit-exactly, never within a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import _kernels as kernels
from .errors import AlgebraError, MismatchError, NotInvertibleError

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(x) -> Fraction:
    """Coerce ints, strings like ``-3/4`` and Fractions to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


# ---------------------------------------------------------------------------
# linear algebra over Q (small dense matrices)
# ---------------------------------------------------------------------------

def rational_matrix_inverse(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Exact inverse by Gauss-Jordan elimination; raises if singular."""
    n = len(rows)
    aug = [[Fraction(v) for v in row] + [ONE if i == j else ZERO for j in range(n)]
           for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise NotInvertibleError("matrix is singular over the rationals")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


class _Echelon:
    """Row-echelon accumulator for exact span computations."""

    def __init__(self, width: int):
        self.width = width
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    def reduce(self, vec: Sequence[Fraction]) -> list[Fraction]:
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                c = v[p]
                for k in range(p, self.width):
                    v[k] -= c * row[k]
        return v

    def add(self, vec: Sequence[Fraction]) -> bool:
        """Insert ``vec`` if independent; returns True when rank grew."""
        v = self.reduce(vec)
        p = next((k for k, x in enumerate(v) if x), None)
        if p is None:
            return False
        inv = 1 / v[p]
        self.rows.append([x * inv for x in v])
        self.pivots.append(p)
        return True

    def contains(self, vec: Sequence[Fraction]) -> bool:
        return all(not x for x in self.reduce(vec))

    @property
    def rank(self) -> int:
        return len(self.rows)


# ---------------------------------------------------------------------------
# the algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LocalityCertificate:
    """Result of a successful locality validation."""

    height: int
    filtration: tuple  # tuple over k of tuples of AElement spanning V_k
    checked: tuple     # names of the axioms that were verified

    def filtration_indices(self):
        """Index sets per level when every V_k is spanned by basis vectors."""
        out = []
        for level in self.filtration:
            idxs = []
            for v in level:
                nz = [i for i, c in enumerate(v.coords) if c]
                if len(nz) != 1:
                    return None
                idxs.append(nz[0])
            out.append(tuple(idxs))
        return out


class WeilAlgebra:
    """Finite-dimensional local commutative unital algebra over Q.

    Construct through :func:`truncated_algebra` or :meth:`from_table`; both
    run the locality validation unless explicitly disabled (tests use the
    escape hatch to probe corrupted tables).
    """

    __slots__ = ("dim", "labels", "pair_rows", "height", "filtration",
                 "monomial_degrees", "_ktable", "_label_index")

    def __init__(self, labels, pair_rows, height, filtration_coords,
                 monomial_degrees=None):
        self.dim = len(labels)
        self.labels = tuple(labels)
        self.pair_rows = pair_rows
        self.height = height
        self.monomial_degrees = monomial_degrees
        self._ktable = kernels.build_table(pair_rows)
        self._label_index = {lbl: i for i, lbl in enumerate(self.labels)}
        self.filtration = tuple(
            tuple(AElement(self, tuple(v)) for v in level)
            for level in filtration_coords
        )

    # -- construction -------------------------------------------------------

    @classmethod
    def from_table(cls, labels: Sequence[str], constants, validate: bool = True,
                   _monomial_degrees=None) -> "WeilAlgebra":
        """Build from a dense dim x dim x dim table of rationals."""
        dim = len(labels)
        if len(set(labels)) != dim:
            raise AlgebraError("duplicate basis labels")
        c = [[[as_fraction(constants[i][j][k]) for k in range(dim)]
              for j in range(dim)] for i in range(dim)]
        pair_rows = tuple(
            tuple(tuple((k, c[i][j][k]) for k in range(dim) if c[i][j][k])
                  for j in range(dim))
            for i in range(dim)
        )
        if validate:
            height, filtration = validate_structure(labels, c, pair_rows)
        else:
            height, filtration = dim, [[_unit_vector(dim, i)] for i in [0]]
        return cls(labels, pair_rows, height, filtration,
                   monomial_degrees=_monomial_degrees)

    def dense_constants(self) -> list[list[list[Fraction]]]:
        c = [[[ZERO] * self.dim for _ in range(self.dim)] for _ in range(self.dim)]
        for i, row in enumerate(self.pair_rows):
            for j, cell in enumerate(row):
                for k, v in cell:
                    c[i][j][k] = v
        return c

    # -- elements -----------------------------------------------------------

    def element(self, coords: Iterable) -> "AElement":
        coords = tuple(as_fraction(x) for x in coords)
        if len(coords) != self.dim:
            raise MismatchError(f"expected {self.dim} coordinates, got {len(coords)}")
        return AElement(self, coords)

    def zero(self) -> "AElement":
        return AElement(self, (ZERO,) * self.dim)

    def unit(self) -> "AElement":
        return self.from_scalar(ONE)

    def from_scalar(self, x) -> "AElement":
        coords = [ZERO] * self.dim
        coords[0] = as_fraction(x)
        return AElement(self, tuple(coords))

    def basis_element(self, i: int) -> "AElement":
        return AElement(self, _unit_vector(self.dim, i))

    def by_label(self, label: str) -> "AElement":
        if label not in self._label_index:
            raise MismatchError(f"no basis label {label!r} in algebra")
        return self.basis_element(self._label_index[label])

    def __repr__(self):
        return f"WeilAlgebra(dim={self.dim}, height={self.height}, labels={list(self.labels)})"

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, WeilAlgebra):
            return NotImplemented
        return self.labels == other.labels and self.pair_rows == other.pair_rows

    def __hash__(self):
        return hash((self.labels, len(self.pair_rows)))


def _unit_vector(dim, i):
    v = [ZERO] * dim
    v[i] = ONE
    return tuple(v)


def same_algebra(a: WeilAlgebra, b: WeilAlgebra) -> bool:
    return a is b or a == b


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def validate_structure(labels, dense, pair_rows):
    """Check the local-algebra axioms; return (height, filtration coords).

    Raises :class:`AlgebraError` naming the offending basis pair/triple.
    """
    dim = len(labels)
    table = kernels.build_table(pair_rows)

    def mul(u, v):
        return kernels.ael_mul(u, v, table, dim)

    # unit law on both sides
    for i in range(dim):
        e = _unit_vector(dim, i)
        if tuple(mul(_unit_vector(dim, 0), e)) != e or tuple(mul(e, _unit_vector(dim, 0))) != e:
            raise AlgebraError(f"basis vector {labels[0]!r} is not a two-sided unit "
                               f"on {labels[i]!r}", witness=(labels[0], labels[i]))

    # commutativity
    for i in range(dim):
        for j in range(i + 1, dim):
            if dense[i][j] != dense[j][i]:
                raise AlgebraError(
                    f"multiplication not commutative on ({labels[i]}, {labels[j]})",
                    witness=(labels[i], labels[j]))

    # associativity, exhaustively on basis triples
    for i in range(dim):
        for j in range(dim):
            left = dense[i][j]
            for k in range(dim):
                lhs = mul(left, _unit_vector(dim, k))
                rhs = mul(_unit_vector(dim, i), dense[j][k])
                if lhs != rhs:
                    raise AlgebraError(
                        f"multiplication not associative on "
                        f"({labels[i]}, {labels[j]}, {labels[k]})",
                        witness=(labels[i], labels[j], labels[k]))

    # the non-unit span must be an ideal: no unit component in products
    for i in range(1, dim):
        for j in range(1, dim):
            if dense[i][j][0]:
                raise AlgebraError(
                    f"product {labels[i]}*{labels[j]} has a unit component; "
                    f"the non-unit span is not an ideal", witness=(labels[i], labels[j]))

    # nilpotency of the ideal via its chain of powers
    m_basis = _Echelon(dim)
    for i in range(1, dim):
        m_basis.add(_unit_vector(dim, i))
    powers = [m_basis]
    while powers[-1].rank > 0:
        prev = powers[-1]
        nxt = _Echelon(dim)
        for u in m_basis.rows:
            for v in prev.rows:
                nxt.add(mul(tuple(u), tuple(v)))
        if nxt.rank == prev.rank:
            bad = [labels[i] for i in range(1, dim)]
            raise AlgebraError(
                "non-nilpotent non-unit part: the ideal spanned by "
                f"{bad} has a stable nonzero power", witness=tuple(bad))
        powers.append(nxt)

    height = len(powers) - 1  # powers[k] spans m^(k+1); last one is zero
    # filtration: V_0 = span(unit); V_k a complement of m^(k+1) inside m^k
    filtration = [[_unit_vector(dim, 0)]]
    for k in range(1, height + 1):
        lower = powers[k - 1]          # m^k
        ech = _Echelon(dim)
        for row in (powers[k].rows if k < len(powers) else []):
            ech.add(row)
        level = []
        for row in lower.rows:
            if ech.add(row):
                level.append(tuple(row))
        filtration.append(level)
    return height, filtration


def validate_local(alg: WeilAlgebra) -> LocalityCertificate:
    """Re-run the locality validation of an algebra and return a certificate."""
    height, filtration = validate_structure(alg.labels, alg.dense_constants(),
                                            alg.pair_rows)
    checked = ("unit", "commutativity", "associativity", "ideal", "nilpotency")
    cert_filtration = tuple(
        tuple(AElement(alg, tuple(v)) for v in level) for level in filtration
    )
    return LocalityCertificate(height=height, filtration=cert_filtration,
                               checked=checked)


# ---------------------------------------------------------------------------
# truncated polynomial algebras  Q[t_1..t_k] / (monomial ideal)
# ---------------------------------------------------------------------------

def _parse_monomial(spec, generators):
    """``"t1^2*t2"`` or an exponent tuple -> exponent tuple."""
    if isinstance(spec, (tuple, list)):
        e = tuple(int(x) for x in spec)
        if len(e) != len(generators) or any(x < 0 for x in e):
            raise AlgebraError(f"bad exponent tuple {spec!r}")
        return e
    index = {g: i for i, g in enumerate(generators)}
    expt = [0] * len(generators)
    for factor in str(spec).replace(" ", "").split("*"):
        if not factor:
            raise AlgebraError(f"empty factor in monomial {spec!r}")
        name, _, power = factor.partition("^")
        if name not in index:
            raise AlgebraError(f"unknown generator {name!r} in monomial {spec!r}")
        expt[index[name]] += int(power) if power else 1
    return tuple(expt)


def _monomial_label(expt, generators):
    if not any(expt):
        return "1"
    parts = []
    for g, e in zip(generators, expt):
        if e == 1:
            parts.append(g)
        elif e > 1:
            parts.append(f"{g}^{e}")
    return "*".join(parts)


def truncated_algebra(generators: Sequence[str], relations: Iterable = (),
                      degree_cap: int | None = None,
                      validate: bool = True) -> WeilAlgebra:
    """Quotient of a polynomial ring by a monomial ideal, as a Weil algebra.

    ``relations`` lists monomial generators of the ideal (strings like
    ``"eps^2"`` or exponent tuples); ``degree_cap`` additionally kills every
    monomial of total degree above the cap.  The quotient must be
    finite-dimensional and the ideal must avoid the constant monomial.
    """
    gens = [str(g) for g in generators]
    if len(set(gens)) != len(gens) or not gens:
        raise AlgebraError("generator names must be nonempty and distinct")
    rels = [_parse_monomial(r, gens) for r in relations]
    if any(not any(e) for e in rels):
        raise AlgebraError("ideal not contained in the maximal ideal: "
                           "a relation reduces the unit monomial")
    if degree_cap is None:
        for i, g in enumerate(gens):
            if not any(e[i] > 0 and all(x == 0 for k, x in enumerate(e) if k != i)
                       for e in rels):
                raise AlgebraError(
                    f"infinite-dimensional quotient: no degree cap and no pure "
                    f"power of {g!r} in the ideal")

    k = len(gens)
    bounds = []
    for i in range(k):
        pure = [e[i] for e in rels
                if e[i] > 0 and all(x == 0 for j, x in enumerate(e) if j != i)]
        b = min(pure) if pure else degree_cap + 1
        if degree_cap is not None:
            b = min(b, degree_cap + 1)
        bounds.append(b)

    def divisible(e, r):
        return all(x >= y for x, y in zip(e, r))

    basis = []
    stack = [(0,) * k]
    seen = {(0,) * k}
    while stack:
        e = stack.pop()
        basis.append(e)
        for i in range(k):
            e2 = e[:i] + (e[i] + 1,) + e[i + 1:]
            if e2 in seen or e2[i] >= bounds[i]:
                continue
            if degree_cap is not None and sum(e2) > degree_cap:
                continue
            if any(divisible(e2, r) for r in rels):
                continue
            seen.add(e2)
            stack.append(e2)
    basis.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
    index = {e: i for i, e in enumerate(basis)}
    dim = len(basis)
    labels = [_monomial_label(e, gens) for e in basis]

    def reduce(e):
        if degree_cap is not None and sum(e) > degree_cap:
            return None
        if any(divisible(e, r) for r in rels):
            return None
        return index.get(e)

    pair_rows = tuple(
        tuple(
            ((tgt, ONE),) if (tgt := reduce(tuple(x + y for x, y in zip(ei, ej)))) is not None
            else ()
            for ej in basis
        )
        for ei in basis
    )
    height = max(sum(e) for e in basis)
    degrees = tuple(sum(e) for e in basis)
    filtration = [
        [_unit_vector(dim, i) for i, d in enumerate(degrees) if d == level]
        for level in range(height + 1)
    ]
    alg = WeilAlgebra(labels, pair_rows, height, filtration,
                      monomial_degrees=degrees)
    if validate:
        validate_local(alg)
    return alg


def dual_numbers() -> WeilAlgebra:
    """Q[eps]/(eps^2): the defining first-order case."""
    return truncated_algebra(["eps"], ["eps^2"])


def jet_algebra(num_generators: int, order: int, prefix: str = "t") -> WeilAlgebra:
    """Truncated polynomial algebra of ``num_generators`` variables modulo
    all monomials of degree above ``order``."""
    gens = [f"{prefix}{i + 1}" for i in range(num_generators)]
    return truncated_algebra(gens, (), degree_cap=order)


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

class AElement:
    """An element of a Weil algebra as an exact coordinate vector."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: WeilAlgebra, coords: tuple):
        self.algebra = algebra
        self.coords = coords

    # -- helpers ------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, AElement):
            if not same_algebra(self.algebra, other.algebra):
                raise MismatchError("elements of different algebras")
            return other
        if isinstance(other, (int, Fraction)):
            return self.algebra.from_scalar(other)
        return None

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AElement(self.algebra, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AElement(self.algebra, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return AElement(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = as_fraction(other)
            return AElement(self.algebra, tuple(a * f for a in self.coords))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        alg = self.algebra
        return AElement(alg, tuple(
            kernels.ael_mul(self.coords, o.coords, alg._ktable, alg.dim)))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            f = as_fraction(other)
            return AElement(self.algebra, tuple(a / f for a in self.coords))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        result = self.algebra.unit()
        for _ in range(n):           # left fold keeps evaluation order fixed
            result = result * self
        return result

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, AElement) else other
        if o is None or not isinstance(o, AElement):
            return NotImplemented
        if not same_algebra(self.algebra, o.algebra):
            return False
        return self.coords == o.coords

    def __bool__(self):
        return any(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    # -- local-algebra structure ---------------------------------------------

    @property
    def augmentation(self) -> Fraction:
        """Image under the quotient map onto A / m, i.e. the unit coordinate."""
        return self.coords[0]

    def nilpotent_part(self) -> "AElement":
        coords = (ZERO,) + self.coords[1:]
        return AElement(self.algebra, coords)

    def is_real_multiple_of_unit(self) -> bool:
        return not any(self.coords[1:])

    def invert(self) -> "AElement":
        """Exact inverse via the terminating geometric series over m."""
        lam = self.augmentation
        if not lam:
            raise NotInvertibleError(
                "element lies in the maximal ideal and is not invertible")
        n_over_lam = self.nilpotent_part() / lam
        acc = self.algebra.unit()
        term = self.algebra.unit()
        for _ in range(self.algebra.height):
            term = term * (-n_over_lam)
            acc = acc + term
        result = acc / lam
        assert (self * result) == self.algebra.unit()
        return result

    def __repr__(self):
        return f"AElement({self})"

    def __str__(self):
        return format_linear(self.coords, self.algebra.labels)


def format_linear(coords, labels) -> str:
    """Canonical rendering of a coordinate vector against basis labels."""
    parts = []
    for c, lbl in zip(coords, labels):
        if not c:
            continue
        if lbl == "1":
            term = str(c)
        elif c == 1:
            term = lbl
        elif c == -1:
            term = f"-{lbl}"
        else:
            term = f"{c}*{lbl}"
        parts.append(term)
    if not parts:
        return "0"
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out


# ---------------------------------------------------------------------------
# matrices over the algebra
# ---------------------------------------------------------------------------

def identity_matrix(alg: WeilAlgebra, n: int) -> list[list[AElement]]:
    return [[alg.unit() if i == j else alg.zero() for j in range(n)] for i in range(n)]


def matrix_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[sum((a[i][k] * b[k][j] for k in range(m)),
                 a[0][0].algebra.zero()) for j in range(p)] for i in range(n)]


def nil_matrix_invert(m: Sequence[Sequence[AElement]]) -> list[list[AElement]]:
    """Exact two-sided inverse of a matrix over a Weil algebra.

    Requires the entrywise augmentation image to be invertible over Q; the
    correction by the nilpotent remainder is a finite geometric series whose
    length is bounded by the algebra height.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise MismatchError("matrix must be square")
    alg = m[0][0].algebra
    m0 = [[entry.augmentation for entry in row] for row in m]
    try:
        m0_inv = rational_matrix_inverse(m0)
    except NotInvertibleError:
        raise NotInvertibleError(
            "augmentation image of the matrix is singular; "
            "matrix is not invertible over the algebra") from None
    p = [[alg.from_scalar(v) for v in row] for row in m0_inv]
    # T = -(M0^-1 N) with N = M - M0 has nilpotent entries
    n_part = [[m[i][j].nilpotent_part() for j in range(n)] for i in range(n)]
    t = [[-x for x in row] for row in matrix_mul(p, n_part)]
    acc = identity_matrix(alg, n)
    power = identity_matrix(alg, n)
    for _ in range(alg.height):
        power = matrix_mul(power, t)
        acc = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(acc, power)]
        if all(x.is_zero() for row in power for x in row):
            break
    result = matrix_mul(acc, p)
    ident = identity_matrix(alg, n)
    if matrix_mul(m, result) != ident or matrix_mul(result, m) != ident:
        raise AlgebraError("matrix inverse verification failed")  # pragma: no cover
    return result
