import math
from fractions import Fraction

import pytest

from helpers import rand_hermitian, rand_low_rank, rand_matrix, rand_quat
from oracles import brute_cdet, brute_rdet
from quatsys.adjoint import complex_adjoint
from quatsys.errors import EnumerationCapError, NotHermitianError
from quatsys.fixtures import (
    NORMAL_GRAM,
    NORMAL_GRAM_CHARPOLY,
    SINGULAR_A_TIMES_B,
    SINGULAR_HERMITIAN_A,
    SINGULAR_HERMITIAN_A_SQUARED,
)
from quatsys.matrix import QMatrix, qrank, vec_add, vec_lmul, vec_rmul
from quatsys.rcdet import (
    cdet,
    char_poly_hermitian,
    ddet,
    det_hermitian,
    minor_sum,
    normal_forms,
    rdet,
    subset_count,
    subsets,
)
from quatsys.scalar import Quaternion, quat

MINOR = QMatrix.from_rows([["1", "k"], ["-k", "2"]])


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("kind", ["row", "col"])
def test_enumeration_yields_every_permutation_once(n, kind):
    for anchor in {1, n}:
        forms = normal_forms(n, anchor, kind)
        assert len(forms) == math.factorial(n)
        assert len({tuple(sorted(p.as_mapping().items())) for p in forms}) == math.factorial(n)


@pytest.mark.parametrize("anchor", [1, 2, 4])
def test_row_normal_form_conditions(anchor):
    for perm in normal_forms(4, anchor, "row"):
        first, *rest = perm.cycles
        assert first[0] == anchor
        assert all(c[0] == min(c) for c in rest)
        assert [c[0] for c in rest] == sorted(c[0] for c in rest)
        assert perm.sign == (-1) ** (4 - perm.cycle_count)


@pytest.mark.parametrize("anchor", [1, 3, 4])
def test_column_normal_form_conditions(anchor):
    for perm in normal_forms(4, anchor, "col"):
        *rest, last = perm.cycles
        assert anchor in last
        leads = [min(c) for c in rest]
        assert leads == sorted(leads, reverse=True)


def test_single_entry_determinants():
    q = quat(1, -2, 3, 5)
    A = QMatrix.from_rows([[q]])
    assert rdet(1, A) == cdet(1, A) == q


def test_two_by_two_hermitian_minor():
    assert rdet(1, MINOR) == quat(1)
    assert cdet(1, MINOR) == quat(1)


def test_column_determinants_of_squared_minor():
    M = SINGULAR_HERMITIAN_A_SQUARED.principal([0, 1])
    assert M == QMatrix.from_rows([["3", "4k"], ["-4k", "6"]])
    assert cdet(1, M) == cdet(2, M) == quat(2)


def test_noncommutative_column_determinant():
    A = QMatrix.from_rows([["2+j", "4k"], ["i-3k", "6"]])
    assert cdet(1, A) == quat(0, 0, 2)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_expansions_match_brute_force(rng, n):
    for _ in range(4 if n < 4 else 2):
        A = rand_matrix(rng, n)
        for a in range(1, n + 1):
            assert rdet(a, A) == brute_rdet(a, A)
            assert cdet(a, A) == brute_cdet(a, A)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_hermitian_row_and_column_determinants_coincide(rng, n):
    for _ in range(5):
        A = rand_hermitian(rng, n)
        values = {rdet(a, A) for a in range(1, n + 1)} | {cdet(a, A) for a in range(1, n + 1)}
        assert len(values) == 1
        (v,) = values
        assert v.is_real()
        assert det_hermitian(A) == v.w


def test_column_determinant_of_adjoint_conjugates_row_determinant(rng):
    A = rand_matrix(rng, 3)
    for a in range(1, 4):
        assert cdet(a, A.H) == rdet(a, A).conj()


def test_hermitian_determinant_values():
    assert det_hermitian(QMatrix.identity(3)) == 1
    assert det_hermitian(SINGULAR_HERMITIAN_A) == 0
    assert det_hermitian(SINGULAR_HERMITIAN_A_SQUARED) == 0
    assert det_hermitian(NORMAL_GRAM) == 10 * 2 * 1


def test_hermitian_determinant_requires_hermitian(rng):
    with pytest.raises(NotHermitianError):
        det_hermitian(rand_matrix(rng, 2) + QMatrix.from_rows([["0", "i"], ["0", "0"]]))


def test_double_determinant_values():
    assert ddet(QMatrix.identity(3)) == 1
    assert ddet(SINGULAR_HERMITIAN_A) == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_double_determinant_equals_adjoint_determinant(rng, n):
    for _ in range(3):
        A = rand_matrix(rng, n)
        d = complex_adjoint(A).det()
        assert d.im == 0
        assert ddet(A) == d.re
        assert det_hermitian(A @ A.H) == det_hermitian(A.H @ A)


@pytest.mark.parametrize("n, r", [(2, 1), (3, 2), (3, 3)])
def test_double_determinant_vanishes_exactly_for_dependent_columns(rng, n, r):
    A = rand_low_rank(rng, n, r)
    assert (ddet(A) == 0) == (qrank(A) < n)


def _left_combination(A, i, coeffs):
    row = tuple(Quaternion(0) for _ in range(A.cols))
    for idx, c in coeffs.items():
        row = vec_add(row, vec_lmul(c, A.row(idx)))
    return A.with_row(i, row)


def _right_combination(A, j, coeffs):
    col = tuple(Quaternion(0) for _ in range(A.rows))
    for idx, c in coeffs.items():
        col = vec_add(col, vec_rmul(A.col(idx), c))
    return A.with_column(j, col)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_row_replaced_by_left_combination_vanishes(rng, n):
    A = rand_hermitian(rng, n)
    for i in range(n):
        others = {k: rand_quat(rng) for k in range(n) if k != i}
        B = _left_combination(A, i, others)
        assert rdet(i + 1, B).is_zero()
        assert cdet(i + 1, B).is_zero()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_column_replaced_by_right_combination_vanishes(rng, n):
    A = rand_hermitian(rng, n)
    for j in range(n):
        others = {k: rand_quat(rng) for k in range(n) if k != j}
        B = _right_combination(A, j, others)
        assert cdet(j + 1, B).is_zero()
        assert rdet(j + 1, B).is_zero()


def test_enumeration_cap():
    with pytest.raises(EnumerationCapError):
        rdet(1, QMatrix.identity(9))
    with pytest.raises(EnumerationCapError):
        rdet(1, QMatrix.identity(4), cap=3)


def test_principal_minor_sums():
    assert minor_sum(SINGULAR_HERMITIAN_A_SQUARED, 2) == 4
    assert minor_sum(QMatrix.identity(3), 2) == 3
    assert minor_sum(SINGULAR_HERMITIAN_A_SQUARED, 3) == 0


def test_anchored_minor_sum_numerator():
    # column 1 of the squared matrix replaced by A b, summed over 2-subsets holding index 1
    value = minor_sum(SINGULAR_HERMITIAN_A_SQUARED, 2, ("col", 1, SINGULAR_A_TIMES_B))
    assert value == quat(0, 0, 2)


def test_subset_counts():
    assert list(subsets(3, 2)) == [(1, 2), (1, 3), (2, 3)]
    assert list(subsets(3, 2, containing=1)) == [(1, 2), (1, 3)]
    assert subset_count(4, 2) == 6
    assert subset_count(4, 2, containing=True) == 3


def test_characteristic_polynomials():
    assert char_poly_hermitian(NORMAL_GRAM).coeffs == tuple(Fraction(c) for c in NORMAL_GRAM_CHARPOLY)
    assert char_poly_hermitian(QMatrix.identity(2)).coeffs == (1, -2, 1)
    assert char_poly_hermitian(QMatrix.diag(["2", "3"])).coeffs == (6, -5, 1)
    assert str(char_poly_hermitian(NORMAL_GRAM)) == "t^3 - 13*t^2 + 32*t - 20"
