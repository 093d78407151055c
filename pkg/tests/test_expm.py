import math

import pytest

from helpers import rand_hermitian, rand_matrix
from quatsys.errors import PreconditionError, SingularMatrixError
from quatsys.expm import exp_diagonal, mat_exp, mat_exp_diag
from quatsys.fixtures import NORMAL_D, NORMAL_N, NORMAL_UNITARY, SIMILAR_A, SIMILAR_EIGENVECTORS
from quatsys.matrix import QMatrix, inverse_rowreduce
from quatsys.rcdet import det_hermitian
from quatsys.scalar import fquat, qexp

TOL = 1e-9


def _rand_float(rng, n, scale=0.5):
    return rand_matrix(rng, n, denom=4).to_float().rmul(scale)


def _close(X, Y, tol=TOL):
    return X.max_abs_diff(Y) <= tol * max(1.0, Y.frobenius())


def expm(A, t=1.0):
    return mat_exp(A, t).value


def test_zero_and_identity():
    assert expm(QMatrix.zeros(3)) == QMatrix.identity(3).to_float()
    assert _close(expm(QMatrix.identity(2)), QMatrix.identity(2).to_float().rmul(math.e), 1e-15)


def test_diagonal_matrix_exponentiates_entrywise():
    D = QMatrix.diag([fquat(0.5, 1, 0, 0), fquat(-1, 0, 2, 1), fquat(0, 0, 0, 3)])
    expected = QMatrix.diag([qexp(D[i, i]) for i in range(3)])
    assert _close(expm(D), expected, 1e-13)
    assert exp_diagonal(D) == expected


def test_normal_example_through_its_unitary():
    via_series = expm(NORMAL_N)
    via_diag = NORMAL_UNITARY.to_float() @ exp_diagonal(NORMAL_D.to_float()) @ NORMAL_UNITARY.H.to_float()
    assert _close(via_series, via_diag)


def test_diagonal_path_at_time_zero_is_identity():
    assert _close(mat_exp_diag(SIMILAR_EIGENVECTORS, NORMAL_D, 0.0), QMatrix.identity(3).to_float(), 1e-14)
    assert mat_exp_diag(QMatrix.identity(2), QMatrix.diag(["i", "j"]), 1.0) == QMatrix.diag([qexp(fquat(0, 1)), qexp(fquat(0, 0, 1))])


@pytest.mark.parametrize("t", [0.3, 1.0, -0.8])
def test_diagonal_path_matches_series_for_similar_matrix(t):
    assert _close(mat_exp_diag(SIMILAR_EIGENVECTORS, NORMAL_D, t), expm(SIMILAR_A, t), 1e-8)


def test_diagonal_path_rejects_bad_inputs():
    with pytest.raises(PreconditionError):
        mat_exp_diag(QMatrix.identity(2), QMatrix.from_rows([["1", "1"], ["0", "1"]]))
    with pytest.raises(SingularMatrixError):
        mat_exp_diag(QMatrix.from_rows([["1", "1"], ["1", "1"]]), QMatrix.identity(2))


def test_limit_definition(rng):
    A = _rand_float(rng, 2)
    step = QMatrix.identity(2).to_float() + A.rmul(2.0 ** -20)
    for _ in range(20):
        step = step @ step
    assert _close(step, expm(A), 1e-5)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_conjugate_transpose_commutes_with_exponential(rng, n):
    for _ in range(3):
        A = _rand_float(rng, n)
        assert _close(expm(A).H, expm(A.H))


def test_plain_transpose_does_not_commute_with_exponential():
    A = QMatrix.from_rows([["i", "j"], ["0", "k"]]).to_float()
    assert expm(A).transpose().max_abs_diff(expm(A.transpose())) > 1


@pytest.mark.parametrize("n", [2, 3, 4])
def test_powers_commute_with_exponential(rng, n):
    A = _rand_float(rng, n)
    E = expm(A)
    for m in (1, 2):
        Am = A.power(m)
        assert _close(Am @ E, E @ Am)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_commuting_pair(rng, n):
    A = _rand_float(rng, n)
    B = A.rmul(0.7) + (A @ A).rmul(-0.3) + QMatrix.identity(n).to_float().rmul(0.2)
    assert _close(A @ B, B @ A, 1e-12)
    assert _close(expm(A) @ expm(B), expm(A + B))
    assert _close(expm(B) @ expm(A), expm(A + B))
    assert _close(A @ expm(B), expm(B) @ A)


@pytest.mark.parametrize("s, t", [(0.3, 0.9), (-1.2, 0.5), (2.0, -2.0)])
def test_real_time_shifts_add(rng, s, t):
    A = _rand_float(rng, 3)
    assert _close(expm(A, s) @ expm(A, t), expm(A, s + t))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_inverse_is_exponential_of_negative(rng, n):
    A = _rand_float(rng, n)
    assert _close(inverse_rowreduce(expm(A), 1e-14), expm(-A))
    assert _close(expm(A) @ expm(-A), QMatrix.identity(n).to_float())


def test_inverse_is_not_exponential_of_inverse():
    A = QMatrix.diag(["2"]).to_float()
    assert abs(inverse_rowreduce(expm(A))[0, 0].w - math.exp(0.5)) > 0.4


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_hermitian_determinant_of_exponential(rng, n):
    for _ in range(3):
        H = rand_hermitian(rng, n, span=1).to_float().rmul(0.5)
        trace = H.trace().w
        got = det_hermitian(expm(H))
        assert got == pytest.approx(math.exp(trace), rel=1e-8)


def test_scaling_steps_reported(rng):
    A = _rand_float(rng, 3, scale=4.0)
    res = mat_exp(A)
    assert res.method == "series" and res.scaling_steps > 0
    assert _close(res.value, mat_exp(A, terms=30, halving_norm=0.1).value, 1e-11)
