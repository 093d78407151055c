import pytest
from hypothesis import given

from helpers import exact_quats, rand_low_rank, rand_matrix
from oracles import chi_rank, complex_embedding
from quatsys.adjoint import complex_adjoint
from quatsys.errors import DependentVectorsError, ShapeError
from quatsys.fixtures import (
    NORMAL_GRAM,
    NORMAL_N,
    NORMAL_UNITARY,
    SIMILARITY_T,
    SIMILARITY_T_INV,
    SINGULAR_HERMITIAN_A,
    SINGULAR_HERMITIAN_A_SQUARED,
)
from quatsys.matrix import (
    QMatrix,
    gram_schmidt_right,
    inner_r,
    inverse_rowreduce,
    is_hermitian,
    is_normal,
    is_unitary,
    null_space_right,
    qrank,
    solve_rowreduce,
    vec_norm2,
    vec_rmul,
)
from quatsys.scalar import Quaternion, fquat, quat


def test_gram_matrix_of_normal_example():
    assert NORMAL_N.H @ NORMAL_N == NORMAL_GRAM
    assert NORMAL_N @ NORMAL_N.H == NORMAL_GRAM


def test_identity_is_neutral(rng):
    A = rand_matrix(rng, 3, 2)
    assert QMatrix.identity(3) @ A == A
    assert A @ QMatrix.identity(2) == A


def test_similarity_inverse_pair():
    assert SIMILARITY_T @ SIMILARITY_T_INV == QMatrix.identity(3)
    assert SIMILARITY_T_INV @ SIMILARITY_T == QMatrix.identity(3)


def test_predicates_on_reference_matrices():
    assert is_hermitian(SINGULAR_HERMITIAN_A)
    assert is_normal(NORMAL_N) and not is_hermitian(NORMAL_N)
    assert is_unitary(NORMAL_UNITARY)
    assert not is_normal(SIMILARITY_T)


def test_shape_mismatch_raises():
    with pytest.raises(ShapeError):
        QMatrix.identity(2) @ QMatrix.identity(3)
    with pytest.raises(ShapeError):
        QMatrix(2, 2, [quat(1)] * 3)


def test_conjugate_transpose_and_scalars(rng):
    A, B = rand_matrix(rng, 2, 3), rand_matrix(rng, 3, 2)
    q = quat(1, 2, -1, 3)
    assert A.H.H == A
    assert (A @ B).H == B.H @ A.H
    assert A.lmul(q).H == A.H.rmul(q.conj())
    assert (A @ B).trace() == sum((A[i, j] * B[j, i] for i in range(2) for j in range(3)), quat())


def test_adjoint_of_units():
    ci = complex_adjoint(QMatrix.from_rows([["i"]])).to_numpy()
    cj = complex_adjoint(QMatrix.from_rows([["j"]])).to_numpy()
    assert ci.tolist() == [[1j, 0], [0, -1j]]
    assert cj.tolist() == [[0, 1], [-1, 0]]


def test_adjoint_is_multiplicative(rng):
    assert complex_adjoint(NORMAL_N @ NORMAL_N) == complex_adjoint(NORMAL_N) @ complex_adjoint(NORMAL_N)
    A, B = rand_matrix(rng, 3, 2), rand_matrix(rng, 2, 4)
    assert complex_adjoint(A @ B) == complex_adjoint(A) @ complex_adjoint(B)


def test_adjoint_agrees_with_independent_embedding(rng):
    A = rand_matrix(rng, 3, 2)
    assert (complex_adjoint(A).to_numpy() == complex_embedding(A)).all()


def test_rank_examples():
    assert qrank(SINGULAR_HERMITIAN_A) == 2
    assert qrank(SINGULAR_HERMITIAN_A_SQUARED) == 2
    assert qrank(QMatrix.identity(3)) == 3
    assert qrank(QMatrix.zeros(2, 3)) == 0


@pytest.mark.parametrize("n, r", [(2, 1), (3, 1), (3, 2), (4, 2), (4, 3), (4, 4)])
def test_rank_matches_complex_embedding(rng, n, r):
    for _ in range(5):
        A = rand_low_rank(rng, n, r)
        assert qrank(A) == qrank(A.H) == chi_rank(A) // 2
        assert complex_adjoint(A).rank() == 2 * qrank(A)


def test_null_space_examples():
    assert len(null_space_right(QMatrix.zeros(2))) == 2
    assert null_space_right(QMatrix.identity(3)) == []
    shifted = NORMAL_GRAM - QMatrix.identity(3) * 10
    (v,) = null_space_right(shifted)
    assert all(q.is_zero() for q in shifted.matvec(v))


def test_null_space_is_exact_for_random_low_rank(rng):
    for n, r in [(3, 1), (3, 2), (4, 2)]:
        A = rand_low_rank(rng, n, r)
        basis = null_space_right(A)
        assert len(basis) == n - r
        for v in basis:
            assert all(q.is_zero() for q in A.matvec(v))


def test_row_reduction_inverse_and_solve(rng):
    A = SIMILARITY_T
    assert inverse_rowreduce(A) == SIMILARITY_T_INV
    b = (quat(1), quat(0, 1), quat(0, 0, 2))
    x = solve_rowreduce(A, b)
    assert A.matvec(x) == b


def test_gram_schmidt_trivial_cases():
    (e,) = gram_schmidt_right([(quat(2), quat(), quat())])
    assert e == (quat(1), quat(), quat())
    pair = [(quat(1), quat()), (quat(), quat(0, 0, 1))]
    assert gram_schmidt_right(pair) == pair


def test_gram_schmidt_rejects_dependent_vectors():
    v = (quat(1), quat(0, 1))
    with pytest.raises(DependentVectorsError):
        gram_schmidt_right([v, vec_rmul(v, quat(0, 0, 2))])


def test_gram_schmidt_recovers_unitary_columns_up_to_unit_factors():
    # eigenvalue of N*N -> column of the unitary matrix with that |eigenvalue|^2
    column_for = {10: 2, 2: 0, 1: 1}
    for lam, col in column_for.items():
        basis = null_space_right(NORMAL_GRAM - QMatrix.identity(3) * lam)
        (u,) = gram_schmidt_right([tuple(q.to_float() for q in v) for v in basis])
        c = NORMAL_UNITARY.to_float().col(col)
        alpha = inner_r(u, c)
        assert abs(alpha.abs() - 1) < 1e-12
        assert all(p.isclose(q, 1e-12) for p, q in zip(u, vec_rmul(c, alpha)))


def test_gram_schmidt_output_is_orthonormal(rng):
    vs = [tuple(q.to_float() for q in rand_matrix(rng, 4, 1).col(0)) for _ in range(3)]
    es = gram_schmidt_right(vs)
    for a, e in enumerate(es):
        assert abs(vec_norm2(e) - 1) < 1e-12
        for f in es[a + 1:]:
            assert inner_r(e, f).abs() < 1e-12


@given(exact_quats, exact_quats, exact_quats, exact_quats, exact_quats)
def test_inner_product_axioms(x1, x2, y1, y2, alpha):
    x, y = (x1, x2), (y1, y2)
    assert inner_r(vec_rmul(x, alpha), y) == inner_r(x, y) * alpha
    assert inner_r(x, vec_rmul(y, alpha)) == alpha.conj() * inner_r(x, y)
    assert inner_r(x, y) == inner_r(y, x).conj()
    assert inner_r(x, x) == Quaternion(vec_norm2(x))


def test_float_matrices_compare_with_tolerance():
    A = QMatrix.from_rows([[fquat(1.0), fquat(0, 1e-13)]])
    B = QMatrix.from_rows([[fquat(1.0), fquat()]])
    assert A.isclose(B, 1e-12) and A != B
