"""Matrix index and the determinantal Drazin inverse.

The Drazin inverse of A is the unique X with XAX = X, AX = XA and
A^(k+1) X = A^k, where k is the index of A.  Here it is assembled entry by
entry from sums of principal minors of order r = rank A^k, so every entry
is a ratio of polynomial expressions in the entries of A.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InconsistencyError
from .matrix import QMatrix, is_hermitian, qrank
from .rcdet import minor_sum
from .scalar import Backend, Quaternion

VERIFY_TOL = 1e-9


@dataclass(frozen=True)
class DrazinResult:
    index: int
    rank: int
    AD: QMatrix
    method: str = "general"


def _powers(A: QMatrix, upto: int):
    out = [QMatrix.identity(A.rows, A.backend)]
    for _ in range(upto):
        out.append(out[-1] @ A)
    return out


def matrix_index(A: QMatrix) -> int:
    """Smallest k >= 1 with rank A^(k+1) = rank A^k."""
    A._require_square()
    power = A
    rank = qrank(power)
    k = 1
    while True:
        nxt = power @ A
        nrank = qrank(nxt)
        if nrank == rank:
            return k
        power, rank, k = nxt, nrank, k + 1


def _is_float(A: QMatrix) -> bool:
    return A.backend is Backend.FLOAT


def _div(q: Quaternion, d):
    return q * (1.0 / d if isinstance(d, float) else 1 / d)


def _via_cdet_general(Ak: QMatrix, H: QMatrix, Ahat: QMatrix, r: int) -> QMatrix:
    n = Ak.rows
    denom = minor_sum(H, r)
    # inner[t][j]: anchored column sums with column t of H replaced by column j of Ahat
    inner = [[minor_sum(H, r, ("col", t + 1, Ahat.col(j))) for j in range(n)] for t in range(n)]
    out = []
    for i in range(n):
        for j in range(n):
            acc = Ak[i, 0] * inner[0][j]
            for t in range(1, n):
                acc = acc + Ak[i, t] * inner[t][j]
            out.append(_div(acc, denom))
    return QMatrix(n, n, out)


def _via_rdet_general(Ak: QMatrix, K: QMatrix, Acheck: QMatrix, r: int) -> QMatrix:
    n = Ak.rows
    denom = minor_sum(K, r)
    # inner[i][s]: anchored row sums with row s of K replaced by row i of Acheck
    inner = [[minor_sum(K, r, ("row", s + 1, Acheck.row(i))) for s in range(n)] for i in range(n)]
    out = []
    for i in range(n):
        for j in range(n):
            acc = inner[i][0] * Ak[0, j]
            for s in range(1, n):
                acc = acc + inner[i][s] * Ak[s, j]
            out.append(_div(acc, denom))
    return QMatrix(n, n, out)


def _via_cdet_hermitian(Ak: QMatrix, Ak1: QMatrix, r: int) -> QMatrix:
    n = Ak.rows
    denom = minor_sum(Ak1, r)
    return QMatrix(n, n, [_div(minor_sum(Ak1, r, ("col", i + 1, Ak.col(j))), denom)
                          for i in range(n) for j in range(n)])


def _via_rdet_hermitian(Ak: QMatrix, Ak1: QMatrix, r: int) -> QMatrix:
    n = Ak.rows
    denom = minor_sum(Ak1, r)
    return QMatrix(n, n, [_div(minor_sum(Ak1, r, ("row", j + 1, Ak.row(i))), denom)
                          for i in range(n) for j in range(n)])


def _agree(X: QMatrix, Y: QMatrix) -> bool:
    if _is_float(X):
        return X.isclose(Y, VERIFY_TOL * max(1.0, X.frobenius()))
    return X == Y


def drazin_det(A: QMatrix, method: str = "auto") -> DrazinResult:
    """Drazin inverse by determinantal representations.

    ``method`` is "hermitian" (only for Hermitian A, uses A^(k+1)),
    "general" (uses the Hermitian products of A^(2k+1)) or "auto".  In the
    exact backend both the column- and row-determinant forms are computed
    and must agree; the float backend computes one and checks the axioms.
    """
    A._require_square()
    k = matrix_index(A)
    powers = _powers(A, k + 1)
    Ak = powers[k]
    r = qrank(Ak)
    if method == "auto":
        method = "hermitian" if is_hermitian(A) else "general"
    if r == 0:
        return DrazinResult(k, 0, QMatrix.zeros(A.rows, backend=A.backend), method)
    exact = not _is_float(A)
    if method == "hermitian":
        Ak1 = powers[k + 1]
        X = _via_cdet_hermitian(Ak, Ak1, r)
        if exact:
            Y = _via_rdet_hermitian(Ak, Ak1, r)
            if X != Y:
                raise InconsistencyError("column and row Drazin representations disagree")
    elif method == "general":
        P = Ak
        for _ in range(k + 1):
            P = P @ A
        Ph = P.H
        X = _via_cdet_general(Ak, Ph @ P, Ph @ Ak, r)
        if exact:
            Y = _via_rdet_general(Ak, P @ Ph, Ak @ Ph, r)
            if X != Y:
                raise InconsistencyError("column and row Drazin representations disagree")
    else:
        raise ValueError(f"unknown method {method!r}")
    if not drazin_verify(A, X, k):
        raise InconsistencyError("determinantal Drazin inverse fails the defining equations")
    return DrazinResult(k, r, X, method)


def drazin_representations(A: QMatrix) -> dict:
    """Every determinantal form of A^D, keyed by name, without cross-checking.

    The two general forms are always present; the two forms over A^(k+1)
    only for Hermitian A.
    """
    A._require_square()
    k = matrix_index(A)
    powers = _powers(A, 2 * k + 1)
    Ak = powers[k]
    r = qrank(Ak)
    if r == 0:
        zero = QMatrix.zeros(A.rows, backend=A.backend)
        forms = {"cdet_general": zero, "rdet_general": zero}
        if is_hermitian(A):
            forms.update(cdet_hermitian=zero, rdet_hermitian=zero)
        return forms
    P = powers[2 * k + 1]
    Ph = P.H
    forms = {
        "cdet_general": _via_cdet_general(Ak, Ph @ P, Ph @ Ak, r),
        "rdet_general": _via_rdet_general(Ak, P @ Ph, Ak @ Ph, r),
    }
    if is_hermitian(A):
        forms["cdet_hermitian"] = _via_cdet_hermitian(Ak, powers[k + 1], r)
        forms["rdet_hermitian"] = _via_rdet_hermitian(Ak, powers[k + 1], r)
    return forms


def drazin_verify(A: QMatrix, X: QMatrix, k: int) -> bool:
    """True iff XAX = X, AX = XA and A^(k+1) X = A^k."""
    Ak = A.power(k)
    return _agree(X @ A @ X, X) and _agree(A @ X, X @ A) and _agree(Ak @ A @ X, Ak)
