"""Matrix exponential of quaternion matrices (float backend)."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError, SingularMatrixError
from .matrix import QMatrix, inverse_rowreduce, is_diagonal
from .rcdet import ddet
from .scalar import qexp

SERIES_TERMS = 18
HALVING_NORM = 0.5


@dataclass(frozen=True)
class ExpResult:
    value: QMatrix
    method: str
    scaling_steps: int


def _series_exp(X: QMatrix, terms: int) -> QMatrix:
    eye = QMatrix.identity(X.rows).to_float()
    acc = eye
    for n in range(terms, 0, -1):
        acc = eye + (X @ acc).rmul(1.0 / n)
    return acc


def mat_exp(A: QMatrix, t: float = 1.0, *, terms: int = SERIES_TERMS, halving_norm: float = HALVING_NORM) -> ExpResult:
    """e^(A t) by halving until the Frobenius norm is small, a truncated series, then squaring."""
    A._require_square()
    X = A.to_float().rmul(float(t))
    steps = 0
    while X.frobenius() > halving_norm:
        X = X.rmul(0.5)
        steps += 1
    E = _series_exp(X, terms)
    for _ in range(steps):
        E = E @ E
    return ExpResult(E, "series", steps)


def exp_diagonal(D: QMatrix, t: float = 1.0) -> QMatrix:
    if not is_diagonal(D):
        raise PreconditionError("matrix is not diagonal")
    return QMatrix.diag([qexp(D[i, i] * float(t)) for i in range(D.rows)])


def mat_exp_diag(P: QMatrix, D: QMatrix, t: float = 1.0) -> QMatrix:
    """P e^(D t) P^{-1} for diagonal D."""
    P._require_square()
    d = ddet(P.to_float())
    if abs(d) <= 1e-12 * max(1.0, P.frobenius()) ** (2 * P.rows):
        raise SingularMatrixError("diagonalizing matrix is singular")
    Pf = P.to_float()
    return Pf @ exp_diagonal(D, t) @ inverse_rowreduce(Pf)
