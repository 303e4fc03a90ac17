"""Weil algebra construction, validation and exact arithmetic."""

from fractions import Fraction

import pytest

import weilnear as wn
from weilnear import AElement, AlgebraError, NotInvertibleError
from weilnear.sampling import derive_rng, rand_aelement, rand_unit_aelement
from weilnear.weil import nil_matrix_invert, validate_local

F = Fraction


def test_dual_numbers_shape(dual):
    assert dual.dim == 2
    assert dual.labels == ("1", "eps")
    assert dual.height == 1


def test_eps3_filtration(eps3):
    cert = validate_local(eps3)
    assert cert.height == 2
    assert cert.filtration_indices() == [(0,), (1,), (2,)]


def test_two_generators_degree_two_relations():
    alg = wn.truncated_algebra(["x", "y"], ["x^2", "x*y", "y^2"])
    assert alg.dim == 3
    assert alg.labels == ("1", "x", "y")
    assert (alg.by_label("x") * alg.by_label("y")).is_zero()


def test_jet_algebra_dimension(jets2):
    # monomial basis 1, t1, t2, t1^2, t1*t2, t2^2
    assert jets2.dim == 6
    assert jets2.height == 2
    assert jets2.labels[0] == "1"


def test_mul_dual_example(dual):
    a = dual.from_scalar(2) + dual.by_label("eps") * 3
    assert str(a * a) == "4 + 12*eps"


def test_unit_law(eps4):
    rng = derive_rng(11, 0)
    a = rand_aelement(rng, eps4)
    assert a * eps4.unit() == a
    assert eps4.unit() * a == a


def test_nilpotency_products(eps3):
    eps = eps3.by_label("eps")
    assert (eps * (eps * eps)).is_zero()


def test_augmentation_examples(dual):
    eps = dual.by_label("eps")
    assert (dual.from_scalar(4) + eps * 12).augmentation == 4
    assert (eps * eps).augmentation == 0
    assert dual.unit().augmentation == 1


def test_augmentation_is_ring_hom(jets2):
    for i in range(40):
        rng = derive_rng(23, i)
        a = rand_aelement(rng, jets2)
        b = rand_aelement(rng, jets2)
        assert (a * b).augmentation == a.augmentation * b.augmentation
    assert jets2.unit().augmentation == 1


def test_invert_dual_examples(dual):
    eps = dual.by_label("eps")
    assert (dual.unit() + eps).invert() == dual.unit() - eps
    inv = (dual.from_scalar(2) + eps).invert()
    assert inv == dual.from_scalar(F(1, 2)) - eps * F(1, 4)


def test_invert_rejects_maximal_ideal(dual):
    with pytest.raises(NotInvertibleError):
        dual.by_label("eps").invert()


def test_invert_random_units(acceptance_algebras):
    for alg in acceptance_algebras.values():
        for i in range(30):
            rng = derive_rng(31, i)
            a = rand_unit_aelement(rng, alg)
            assert a * a.invert() == alg.unit()


def test_nilpotent_part_vanishes_at_height(acceptance_algebras):
    for alg in acceptance_algebras.values():
        for i in range(20):
            rng = derive_rng(37, i)
            a = rand_aelement(rng, alg)
            n = a - alg.from_scalar(a.augmentation)
            assert (n ** (alg.height + 1)).is_zero()


def test_associativity_commutativity_exhaustive(acceptance_algebras):
    for alg in acceptance_algebras.values():
        basis = [alg.basis_element(i) for i in range(alg.dim)]
        for a in basis:
            for b in basis:
                assert a * b == b * a
                for c in basis:
                    assert (a * b) * c == a * (b * c)


# -- validation of raw tables -------------------------------------------------

def _idempotent_table():
    # basis (1, e) with e*e = e: the split algebra R x R, not local
    return ["1", "e"], [
        [[1, 0], [0, 1]],
        [[0, 1], [0, 1]],
    ]


def test_validate_rejects_idempotent():
    labels, constants = _idempotent_table()
    with pytest.raises(AlgebraError, match="non-nilpotent non-unit part"):
        wn.WeilAlgebra.from_table(labels, constants)


def test_validate_rejects_noncommutative():
    labels = ["1", "a", "b"]
    constants = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    for i in range(3):
        constants[0][i][i] = 1
        constants[i][0][i] = 1
    constants[1][2][0] = 0
    constants[1][2][1] = 1  # a*b = a but b*a = 0
    with pytest.raises(AlgebraError, match="commutative"):
        wn.WeilAlgebra.from_table(labels, constants)


def test_validate_rejects_nonassociative():
    # eps^4 table with eps2*eps2 corrupted from 0 to eps3
    alg = wn.truncated_algebra(["eps"], ["eps^4"])
    constants = alg.dense_constants()
    constants[2][2][3] = Fraction(1)
    with pytest.raises(AlgebraError, match="associative"):
        wn.WeilAlgebra.from_table(alg.labels, constants)


def test_validate_rejects_unit_component():
    # e1*e1 = 1 puts a unit component inside the would-be ideal
    labels = ["1", "e"]
    constants = [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
    ]
    with pytest.raises(AlgebraError, match="unit component|not an ideal"):
        wn.WeilAlgebra.from_table(labels, constants)


def test_table_roundtrip_matches_truncated(eps3):
    rebuilt = wn.WeilAlgebra.from_table(eps3.labels, eps3.dense_constants())
    assert rebuilt == eps3
    assert rebuilt.height == eps3.height


def test_truncated_error_paths():
    with pytest.raises(AlgebraError, match="infinite-dimensional"):
        wn.truncated_algebra(["x", "y"], ["x^2"])  # no cap, no pure power of y
    with pytest.raises(AlgebraError, match="maximal ideal"):
        wn.truncated_algebra(["x"], [(0,)])  # the unit monomial as relation


def test_permuted_basis_table():
    # same algebra, non-unit basis listed in a different order
    eps3 = wn.truncated_algebra(["eps"], ["eps^3"])
    perm = [0, 2, 1]
    c = eps3.dense_constants()
    dim = 3
    cp = [[[None] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                cp[i][j][k] = c[perm[i]][perm[j]][perm[k]]
    alg = wn.WeilAlgebra.from_table(["1", "eps^2", "eps"], cp)
    assert alg.height == eps3.height
    e = alg.by_label("eps")
    assert e * e == alg.by_label("eps^2")
    assert (e * e * e).is_zero()


# -- matrices ------------------------------------------------------------------

def test_nil_matrix_invert_example(dual):
    eps = dual.by_label("eps")
    one_eps = dual.unit() + eps
    m = [[dual.zero(), one_eps], [-one_eps, dual.zero()]]
    inv = nil_matrix_invert(m)
    assert inv[0][1] == -(dual.unit() - eps)
    assert inv[1][0] == dual.unit() - eps


def test_nil_matrix_invert_identity(jets2):
    ident = wn.weil.identity_matrix(jets2, 3)
    assert nil_matrix_invert(ident) == ident


def test_nil_matrix_invert_rejects_nilpotent_entry(dual):
    with pytest.raises(NotInvertibleError):
        nil_matrix_invert([[dual.by_label("eps")]])


def test_nil_matrix_invert_roundtrip_random(acceptance_algebras):
    from weilnear.weil import identity_matrix, matrix_mul
    for alg in acceptance_algebras.values():
        for i in range(20):
            rng = derive_rng(41, i)
            m = [[rand_aelement(rng, alg) for _ in range(2)] for _ in range(2)]
            m[0][0] = rand_unit_aelement(rng, alg)
            m[1][1] = rand_unit_aelement(rng, alg)
            m[0][1] = m[0][1].nilpotent_part()
            m[1][0] = m[1][0].nilpotent_part()
            inv = nil_matrix_invert(m)
            ident = identity_matrix(alg, 2)
            assert matrix_mul(m, inv) == ident
            assert matrix_mul(inv, m) == ident
