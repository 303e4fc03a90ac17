"""Seeded random generators for polynomials, elements, operators, points.

Every identity check derives one RNG per sample index from the top-level
seed, so any reported counterexample is replayable from (seed, index)
alone.  Coefficient numerators and denominators stay within 9 and degrees
within 3 to keep exact arithmetic fast.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .ops import DiffOp
from .poly import APoly, NearPoint, Poly
from .weil import AElement, WeilAlgebra

_STRIDE = 1_000_003


def derive_seed(seed: int, index: int) -> int:
    return seed * _STRIDE + index


def derive_rng(seed: int, index: int) -> random.Random:
    return random.Random(derive_seed(seed, index))


def rand_fraction(rng, num_bound: int = 9, den_bound: int = 9) -> Fraction:
    return Fraction(rng.randint(-num_bound, num_bound), rng.randint(1, den_bound))


def rand_nonzero_fraction(rng, num_bound: int = 9, den_bound: int = 9) -> Fraction:
    num = rng.randint(1, num_bound) * rng.choice((1, -1))
    return Fraction(num, rng.randint(1, den_bound))


def _rand_exponent(rng, n, max_degree):
    total = rng.randint(0, max_degree)
    e = [0] * n
    for _ in range(total):
        e[rng.randrange(n)] += 1
    return tuple(e)


def rand_poly(rng, n: int, max_degree: int = 3, max_terms: int = 4) -> Poly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[_rand_exponent(rng, n, max_degree)] = rand_fraction(rng)
    return Poly(n, terms)


def rand_poly_nonzero(rng, n: int, max_degree: int = 3, max_terms: int = 4) -> Poly:
    while True:
        f = rand_poly(rng, n, max_degree, max_terms)
        if not f.is_zero():
            return f


def rand_aelement(rng, alg: WeilAlgebra, max_coords: int = 3) -> AElement:
    coords = [Fraction(0)] * alg.dim
    for _ in range(rng.randint(1, min(max_coords, alg.dim))):
        coords[rng.randrange(alg.dim)] = rand_fraction(rng)
    return AElement(alg, tuple(coords))


def rand_unit_aelement(rng, alg: WeilAlgebra) -> AElement:
    """Random element with nonzero augmentation (invertible)."""
    a = rand_aelement(rng, alg)
    coords = list(a.coords)
    coords[0] = rand_nonzero_fraction(rng)
    return AElement(alg, tuple(coords))


def rand_apoly(rng, alg: WeilAlgebra, n: int, max_degree: int = 3,
               max_terms: int = 3) -> APoly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[_rand_exponent(rng, n, max_degree)] = rand_aelement(rng, alg)
    return APoly(alg, n, terms)


def rand_diffop(rng, alg: WeilAlgebra, n: int, max_degree: int = 2,
                max_terms: int = 2) -> DiffOp:
    comps = [rand_apoly(rng, alg, n, max_degree, max_terms) for _ in range(n)]
    mu = rand_apoly(rng, alg, n, max_degree, max_terms)
    return DiffOp(comps, mu)


def rand_vector_field(rng, alg: WeilAlgebra, n: int, max_degree: int = 2,
                      max_terms: int = 2) -> DiffOp:
    comps = [rand_apoly(rng, alg, n, max_degree, max_terms) for _ in range(n)]
    return DiffOp.vector_field(comps)


def rand_nearpoint(rng, alg: WeilAlgebra, n: int) -> NearPoint:
    return NearPoint(alg, [rand_aelement(rng, alg) for _ in range(n)])
