"""Property-based checks of the algebraic laws with hypothesis."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

import weilnear as wn
from weilnear import AElement, APoly, Poly, prolong, taylor_value
from weilnear.poly import NearPoint

ALGEBRAS = [wn.dual_numbers(), wn.truncated_algebra(["eps"], ["eps^4"]),
            wn.jet_algebra(2, 2)]

rationals = st.fractions(
    min_value=Fraction(-9), max_value=Fraction(9), max_denominator=9)


@st.composite
def elements(draw, algebra=None):
    alg = algebra if algebra is not None else draw(st.sampled_from(ALGEBRAS))
    coords = draw(st.lists(rationals, min_size=alg.dim, max_size=alg.dim))
    return alg.element(coords)


@st.composite
def element_triples(draw):
    alg = draw(st.sampled_from(ALGEBRAS))
    return (draw(elements(alg)), draw(elements(alg)), draw(elements(alg)))


def _poly_terms(n):
    exponents = st.tuples(*[st.integers(0, 3) for _ in range(n)])
    return st.dictionaries(exponents, rationals, min_size=0, max_size=4)


@st.composite
def polys(draw, n=2):
    return Poly(n, draw(_poly_terms(n)))


@settings(max_examples=60, deadline=None)
@given(element_triples())
def test_element_ring_axioms(triple):
    a, b, c = triple
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * a.algebra.unit() == a


@settings(max_examples=60, deadline=None)
@given(elements())
def test_augmentation_and_nilpotency(a):
    alg = a.algebra
    assert ((a - alg.from_scalar(a.augmentation)) ** (alg.height + 1)).is_zero()


@settings(max_examples=40, deadline=None)
@given(elements())
def test_invert_units(a):
    alg = a.algebra
    unit = a + alg.from_scalar(1 + abs(a.augmentation))  # force augmentation > 0
    assert unit * unit.invert() == alg.unit()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ALGEBRAS), polys(), polys())
def test_prolong_homomorphism(alg, f, g):
    assert prolong(f * g, alg) == prolong(f, alg) * prolong(g, alg)
    assert prolong(f + g, alg) == prolong(f, alg) + prolong(g, alg)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(ALGEBRAS), polys(),
       st.lists(st.lists(rationals, min_size=2, max_size=2),
                min_size=2, max_size=2))
def test_taylor_oracle(alg, f, point_rows):
    coords = [alg.element(row + [Fraction(0)] * (alg.dim - 2))
              if alg.dim > 2 else alg.element(row) for row in point_rows]
    xi = NearPoint(alg, coords)
    assert prolong(f, alg).eval_at(xi) == taylor_value(f, xi)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(ALGEBRAS), polys(), polys())
def test_apoly_commutative_ring(alg, f, g):
    fa, ga = prolong(f, alg), prolong(g, alg)
    assert fa * ga == ga * fa
    assert fa * APoly.one(alg, 2) == fa
