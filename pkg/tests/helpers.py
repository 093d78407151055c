"""Random generators and hypothesis strategies shared by the tests."""
import random
from fractions import Fraction

from hypothesis import strategies as st

from quatsys.matrix import QMatrix, inverse_rowreduce, qrank
from quatsys.scalar import Quaternion


def rand_quat(rng: random.Random, span: int = 3, denom: int = 1) -> Quaternion:
    return Quaternion(*(Fraction(rng.randint(-span * denom, span * denom), denom) for _ in range(4)))


def rand_matrix(rng, n, m=None, span=3, denom=1) -> QMatrix:
    m = n if m is None else m
    return QMatrix(n, m, [rand_quat(rng, span, denom) for _ in range(n * m)])


def rand_hermitian(rng, n, span=3) -> QMatrix:
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = Quaternion(Fraction(rng.randint(-span, span)))
        for j in range(i + 1, n):
            q = rand_quat(rng, span)
            rows[i][j], rows[j][i] = q, q.conj()
    return QMatrix.from_rows(rows)


def rand_invertible(rng, n, span=3) -> QMatrix:
    while True:
        A = rand_matrix(rng, n, span=span)
        if qrank(A) == n:
            return A


def rand_low_rank(rng, n, r, span=2) -> QMatrix:
    return rand_matrix(rng, n, r, span) @ rand_matrix(rng, r, n, span)


def rand_nilpotent(rng, n, span=2) -> QMatrix:
    """Strictly upper triangular matrix moved by a random unimodular-ish similarity."""
    S = QMatrix(n, n, [rand_quat(rng, span) if j > i else Quaternion(0) for i in range(n) for j in range(n)])
    T = QMatrix(n, n, [Quaternion(1) if i == j else (rand_quat(rng, 1) if j > i else Quaternion(0))
                       for i in range(n) for j in range(n)])
    return T @ S @ inverse_rowreduce(T)


small_ints = st.integers(min_value=-6, max_value=6)
exact_coeffs = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))
exact_quats = st.builds(Quaternion, exact_coeffs, exact_coeffs, exact_coeffs, exact_coeffs)
nonzero_exact_quats = exact_quats.filter(lambda q: not q.is_zero())
float_coeffs = st.floats(min_value=-3, max_value=3, allow_nan=False, allow_infinity=False)
float_quats = st.builds(Quaternion, float_coeffs, float_coeffs, float_coeffs, float_coeffs)
