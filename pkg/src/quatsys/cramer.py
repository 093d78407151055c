"""Determinantal inverses and Cramer rules for quaternion linear systems.

Right systems are A x = b with x a column; left systems are x A = b with x
a row.  Hermitian matrices use their (real) determinant directly; any other
matrix goes through the Hermitian products A*A or AA* and the double
determinant.
"""
from __future__ import annotations

from .errors import InconsistencyError, NotHermitianError, PreconditionError, ShapeError, SingularMatrixError
from .matrix import QMatrix, inverse_rowreduce, is_hermitian
from .rcdet import cdet, ddet, det_hermitian, rdet
from .scalar import Backend, Quaternion

SINGULAR_REL_TOL = 1e-12
AGREE_TOL = 1e-9


def _is_float(A: QMatrix) -> bool:
    return A.backend is Backend.FLOAT


def _require_nonsingular(A: QMatrix, det, scale_matrix: QMatrix | None = None):
    if _is_float(A):
        M = A if scale_matrix is None else scale_matrix
        if abs(det) <= SINGULAR_REL_TOL * max(1.0, M.frobenius()) ** M.rows:
            raise SingularMatrixError("matrix is singular to working precision")
    elif det == 0:
        raise SingularMatrixError("matrix is singular")


def _agree(X: QMatrix, Y: QMatrix) -> bool:
    if _is_float(X) or _is_float(Y):
        return X.isclose(Y, AGREE_TOL * max(1.0, X.frobenius()))
    return X == Y


def _scaled(rows_of_cofactors, n, det):
    inv = 1.0 / det if isinstance(det, float) else 1 / det
    return QMatrix(n, n, [rows_of_cofactors[q][p] * inv for p in range(n) for q in range(n)])


def _drop(n: int, i: int):
    return [x for x in range(n) if x != i]


def _rank_in(labels, label) -> int:
    return labels.index(label) + 1


def right_cofactors(A: QMatrix):
    """R[i][j] so that sum_j a_ij R_ij = det A (0-based lists)."""
    n = A.rows
    if n == 1:
        return [[Quaternion.one(A.backend)]]
    R = [[None] * n for _ in range(n)]
    for i in range(n):
        keep = _drop(n, i)
        for j in range(n):
            if i == j:
                R[i][j] = rdet(1, A.principal(keep))
            else:
                sub = A.with_column(j, A.col(i)).principal(keep)
                R[i][j] = -rdet(_rank_in(keep, j), sub)
    return R


def left_cofactors(A: QMatrix):
    """L[i][j] so that sum_i L_ij a_ij = det A (0-based lists)."""
    n = A.rows
    if n == 1:
        return [[Quaternion.one(A.backend)]]
    L = [[None] * n for _ in range(n)]
    for j in range(n):
        keep = _drop(n, j)
        for i in range(n):
            if i == j:
                L[i][j] = cdet(1, A.principal(keep))
            else:
                sub = A.with_row(i, A.row(j)).principal(keep)
                L[i][j] = -cdet(_rank_in(keep, i), sub)
    return L


def inv_hermitian(A: QMatrix) -> QMatrix:
    """Inverse of a Hermitian matrix from row and column cofactors, cross-checked."""
    if not is_hermitian(A):
        raise NotHermitianError("matrix is not Hermitian")
    n = A.rows
    det = det_hermitian(A)
    _require_nonsingular(A, det)
    right = _scaled(right_cofactors(A), n, det)
    left = _scaled(left_cofactors(A), n, det)
    if not _agree(right, left):
        raise InconsistencyError("row- and column-cofactor inverses disagree")
    eye = QMatrix.identity(n, A.backend)
    if not (_agree(A @ right, eye) and _agree(right @ A, eye)):
        raise InconsistencyError("cofactor inverse fails A X = X A = I")
    return right


def inv_general(A: QMatrix) -> QMatrix:
    """A^{-1} through column determinants of A*A, checked against the AA* form and elimination."""
    A._require_square()
    n = A.rows
    AhA, AAh, Ah = A.H @ A, A @ A.H, A.H
    d = ddet(A)
    _require_nonsingular(A, d, AhA)
    # left form: (A*A)^{-1} A*, column i solves (A*A) x = (column i of A*)
    LL = [[cdet(j + 1, AhA.with_column(j, Ah.col(i))) for j in range(n)] for i in range(n)]
    # right form: A* (AA*)^{-1}, row j solves x (AA*) = (row j of A*)
    RR = [[rdet(i + 1, AAh.with_row(i, Ah.row(j))) for j in range(n)] for i in range(n)]
    left = _scaled(LL, n, d)
    right = _scaled(RR, n, d)
    if not _agree(left, right):
        raise InconsistencyError("left and right determinantal inverses disagree")
    if not _agree(left, inverse_rowreduce(A)):
        raise InconsistencyError("determinantal inverse disagrees with elimination")
    return left


def _choose_path(A: QMatrix, method: str) -> str:
    if method == "auto":
        return "hermitian" if is_hermitian(A) else "general"
    if method not in ("hermitian", "general"):
        raise PreconditionError(f"unknown method {method!r}")
    if method == "hermitian" and not is_hermitian(A):
        raise NotHermitianError("matrix is not Hermitian")
    return method


def _divide(values, det):
    inv = 1.0 / det if isinstance(det, float) else 1 / det
    return tuple(v * inv for v in values)


def cramer_right(A: QMatrix, b, method: str = "auto") -> tuple:
    """Solve A x = b for the column x by column determinants.

    Returns ``(x, path)`` with path "hermitian" or "general".
    """
    A._require_square()
    n = A.rows
    if len(b) != n:
        raise ShapeError("right-hand side has the wrong length")
    if _choose_path(A, method) == "hermitian":
        det = det_hermitian(A)
        _require_nonsingular(A, det)
        return _divide([cdet(j + 1, A.with_column(j, b)) for j in range(n)], det), "hermitian"
    AhA = A.H @ A
    d = ddet(A)
    _require_nonsingular(A, d, AhA)
    f = A.H.matvec(b)
    return _divide([cdet(j + 1, AhA.with_column(j, f)) for j in range(n)], d), "general"


def cramer_left(A: QMatrix, b, method: str = "auto") -> tuple:
    """Solve x A = b for the row x by row determinants; returns ``(x, path)``."""
    A._require_square()
    n = A.rows
    if len(b) != n:
        raise ShapeError("right-hand side has the wrong length")
    if _choose_path(A, method) == "hermitian":
        det = det_hermitian(A)
        _require_nonsingular(A, det)
        return _divide([rdet(i + 1, A.with_row(i, b)) for i in range(n)], det), "hermitian"
    AAh = A @ A.H
    d = ddet(A)
    _require_nonsingular(A, d, AAh)
    z = A.H.vecmat(b)
    return _divide([rdet(i + 1, AAh.with_row(i, z)) for i in range(n)], d), "general"
