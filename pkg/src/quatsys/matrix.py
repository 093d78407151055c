"""Dense quaternion matrices.

Row reduction always uses left-multiplied row operations, so it computes
rank, right null spaces and inverses correctly in the noncommutative
setting.  In the exact backend pivots are compared against literal zero.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DependentVectorsError,
    ShapeError,
    SingularMatrixError,
)
from .scalar import Backend, Quaternion, as_quaternion, real_sqrt

Vector = tuple  # tuple[Quaternion, ...]


class QMatrix:
    """Immutable row-major quaternion matrix."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[Quaternion]):
        if rows <= 0 or cols <= 0:
            raise ShapeError("matrix dimensions must be positive")
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ShapeError(f"expected {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("QMatrix is immutable")

    # -- construction ----------------------------------------------------
    @classmethod
    def from_rows(cls, rows, backend: Backend | None = None) -> "QMatrix":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ShapeError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeError("ragged rows")
        ents = [as_quaternion(v, backend) for r in rows for v in r]
        return cls(len(rows), width, ents)

    @classmethod
    def identity(cls, n: int, backend: Backend = Backend.EXACT) -> "QMatrix":
        one, zero = Quaternion.one(backend), Quaternion.zero(backend)
        return cls(n, n, [one if i == j else zero for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None, backend: Backend = Backend.EXACT) -> "QMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, [Quaternion.zero(backend)] * (rows * cols))

    @classmethod
    def diag(cls, values, backend: Backend | None = None) -> "QMatrix":
        values = [as_quaternion(v, backend) for v in values]
        n = len(values)
        zero = values[0] * 0
        return cls(n, n, [values[i] if i == j else zero for i in range(n) for j in range(n)])

    @classmethod
    def from_columns(cls, columns) -> "QMatrix":
        columns = [tuple(c) for c in columns]
        n = len(columns[0])
        return cls(n, len(columns), [columns[j][i] for i in range(n) for j in range(len(columns))])

    # -- access ----------------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def backend(self) -> Backend:
        for q in self.entries:
            if q.backend is Backend.FLOAT:
                return Backend.FLOAT
        return Backend.EXACT

    def __getitem__(self, idx) -> Quaternion:
        i, j = idx
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def to(self, backend: Backend) -> "QMatrix":
        return QMatrix(self.rows, self.cols, [q.to(backend) for q in self.entries])

    def to_float(self) -> "QMatrix":
        return QMatrix(self.rows, self.cols, [q.to_float() for q in self.entries])

    # -- algebra ---------------------------------------------------------
    def _check_same(self, other):
        if not isinstance(other, QMatrix):
            raise TypeError("expected a QMatrix")
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check_same(other)
        return QMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._check_same(other)
        return QMatrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return QMatrix(self.rows, self.cols, [-a for a in self.entries])

    def __matmul__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        n, m, p = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            base = i * m
            for j in range(p):
                acc = a[base] * b[j]
                for s in range(1, m):
                    acc = acc + a[base + s] * b[s * p + j]
                out.append(acc)
        return QMatrix(n, p, out)

    def __mul__(self, scalar):
        """Right scalar multiplication A * q (entrywise a_ij q)."""
        return self.rmul(scalar)

    def __rmul__(self, scalar):
        return self.lmul(scalar)

    def lmul(self, q) -> "QMatrix":
        q = as_quaternion(q) if not isinstance(q, (int, float, Fraction)) else q
        return QMatrix(self.rows, self.cols, [q * a for a in self.entries])

    def rmul(self, q) -> "QMatrix":
        q = as_quaternion(q) if not isinstance(q, (int, float, Fraction)) else q
        return QMatrix(self.rows, self.cols, [a * q for a in self.entries])

    def conj_transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows, [self[i, j].conj() for j in range(self.cols) for i in range(self.rows)])

    @property
    def H(self) -> "QMatrix":
        return self.conj_transpose()

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def trace(self) -> Quaternion:
        self._require_square()
        acc = self[0, 0]
        for i in range(1, self.rows):
            acc = acc + self[i, i]
        return acc

    def power(self, k: int) -> "QMatrix":
        """A^k by repeated multiplication (A^0 = I)."""
        self._require_square()
        result = QMatrix.identity(self.rows, self.backend)
        for _ in range(k):
            result = result @ self
        return result

    def matvec(self, v) -> Vector:
        if len(v) != self.cols:
            raise ShapeError("vector length does not match column count")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            acc = r[0] * v[0]
            for s in range(1, self.cols):
                acc = acc + r[s] * v[s]
            out.append(acc)
        return tuple(out)

    def vecmat(self, v) -> Vector:
        """Row vector times matrix, v A."""
        if len(v) != self.rows:
            raise ShapeError("vector length does not match row count")
        out = []
        for j in range(self.cols):
            acc = v[0] * self[0, j]
            for s in range(1, self.rows):
                acc = acc + v[s] * self[s, j]
            out.append(acc)
        return tuple(out)

    def frobenius(self) -> float:
        return math.sqrt(sum(float(q.norm2()) for q in self.entries))

    # -- structure -------------------------------------------------------
    def _require_square(self):
        if not self.is_square:
            raise ShapeError(f"square matrix required, got {self.shape}")

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "QMatrix":
        return QMatrix(len(rows), len(cols), [self[i, j] for i in rows for j in cols])

    def principal(self, idx: Sequence[int]) -> "QMatrix":
        return self.submatrix(idx, idx)

    def with_column(self, j: int, v) -> "QMatrix":
        if len(v) != self.rows:
            raise ShapeError("replacement column has wrong length")
        ents = list(self.entries)
        for i in range(self.rows):
            ents[i * self.cols + j] = v[i]
        return QMatrix(self.rows, self.cols, ents)

    def with_row(self, i: int, v) -> "QMatrix":
        if len(v) != self.cols:
            raise ShapeError("replacement row has wrong length")
        ents = list(self.entries)
        ents[i * self.cols:(i + 1) * self.cols] = v
        return QMatrix(self.rows, self.cols, ents)

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(q.is_zero(tol) for q in self.entries)

    def isclose(self, other: "QMatrix", tol: float = 1e-12) -> bool:
        return self.shape == other.shape and all(a.isclose(b, tol) for a, b in zip(self.entries, other.entries))

    def max_abs_diff(self, other: "QMatrix") -> float:
        self._check_same(other)
        return max(math.sqrt(float((a - b).norm2())) for a, b in zip(self.entries, other.entries))

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"QMatrix.from_rows({self.to_rows()!r})"

    def __str__(self):
        from .textio import render_vector

        return "\n".join("[" + render_vector(self.row(i)) + "]" for i in range(self.rows))

    # -- elimination-based operations -----------------------------------
    def rank(self, tol: float = 0.0) -> int:
        return qrank(self, tol)

    def inverse(self, tol: float = 0.0) -> "QMatrix":
        return inverse_rowreduce(self, tol)


# ---------------------------------------------------------------------------
# predicates


def _default_tol(A: QMatrix, tol):
    if tol is not None:
        return tol
    return 0.0 if A.backend is Backend.EXACT else 1e-10


def is_hermitian(A: QMatrix, tol: float | None = None) -> bool:
    A._require_square()
    tol = _default_tol(A, tol)
    n = A.rows
    return all((A[i, j] - A[j, i].conj()).is_zero(tol) for i in range(n) for j in range(i, n))


def is_normal(A: QMatrix, tol: float | None = None) -> bool:
    A._require_square()
    tol = _default_tol(A, tol)
    return (A.H @ A - A @ A.H).is_zero(tol)


def is_unitary(A: QMatrix, tol: float | None = None) -> bool:
    A._require_square()
    tol = _default_tol(A, tol)
    eye = QMatrix.identity(A.rows, A.backend)
    return (A.H @ A - eye).is_zero(tol) and (A @ A.H - eye).is_zero(tol)


def is_diagonal(A: QMatrix, tol: float | None = None) -> bool:
    tol = _default_tol(A, tol)
    return all(A[i, j].is_zero(tol) for i in range(A.rows) for j in range(A.cols) if i != j)


# ---------------------------------------------------------------------------
# row reduction


def _pivot_tol(A: QMatrix, tol: float) -> float:
    if A.backend is Backend.EXACT or tol:
        return tol
    return 1e-12 * max(1.0, A.frobenius())


def _rref(rows: list[list[Quaternion]], ncols: int, tol: float, pivot_limit: int | None = None):
    """Reduce ``rows`` in place to reduced row-echelon form; return pivot columns.

    Only the first ``pivot_limit`` columns are used for pivots (the rest ride
    along, as in an augmented matrix).
    """
    limit = ncols if pivot_limit is None else pivot_limit
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(limit):
        if r == nrows:
            break
        if tol:
            best = max(range(r, nrows), key=lambda i: float(rows[i][c].norm2()))
            if rows[best][c].is_zero(tol):
                continue
        else:
            best = next((i for i in range(r, nrows) if not rows[i][c].is_zero()), None)
            if best is None:
                continue
        rows[r], rows[best] = rows[best], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [inv * q for q in rows[r]]
        for i in range(nrows):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots


def qrank(A: QMatrix, tol: float = 0.0) -> int:
    """Number of pivots of A under left row operations."""
    rows = A.to_rows()
    return len(_rref(rows, A.cols, _pivot_tol(A, tol)))


def null_space_right(A: QMatrix, tol: float = 0.0) -> list[Vector]:
    """Basis (as column vectors) of {v : A v = 0}, a right H-subspace."""
    rows = A.to_rows()
    pivots = _rref(rows, A.cols, _pivot_tol(A, tol))
    backend = A.backend
    zero, one = Quaternion.zero(backend), Quaternion.one(backend)
    free = [c for c in range(A.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * A.cols
        v[f] = one
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][f]
        basis.append(tuple(v))
    return basis


def inverse_rowreduce(A: QMatrix, tol: float = 0.0) -> QMatrix:
    """A^{-1} by Gauss-Jordan elimination on [A | I]."""
    A._require_square()
    n = A.rows
    eye = QMatrix.identity(n, A.backend)
    rows = [list(A.row(i)) + list(eye.row(i)) for i in range(n)]
    pivots = _rref(rows, 2 * n, _pivot_tol(A, tol), pivot_limit=n)
    if len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    return QMatrix(n, n, [q for r in rows for q in r[n:]])


def solve_rowreduce(A: QMatrix, b, tol: float = 0.0) -> Vector:
    """Solve A x = b for square invertible A by elimination."""
    A._require_square()
    n = A.rows
    rows = [list(A.row(i)) + [b[i]] for i in range(n)]
    pivots = _rref(rows, n + 1, _pivot_tol(A, tol), pivot_limit=n)
    if len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    return tuple(r[n] for r in rows)


# ---------------------------------------------------------------------------
# right inner product space


def inner_r(x, y) -> Quaternion:
    """<x, y>_r = sum conj(y_i) x_i, right-linear in x."""
    acc = y[0].conj() * x[0]
    for a, b in zip(x[1:], y[1:]):
        acc = acc + b.conj() * a
    return acc


def inner_l(x, y) -> Quaternion:
    """<x, y>_l = sum x_i conj(y_i), left-linear in x."""
    acc = x[0] * y[0].conj()
    for a, b in zip(x[1:], y[1:]):
        acc = acc + a * b.conj()
    return acc


def vec_rmul(v, q) -> Vector:
    return tuple(a * q for a in v)


def vec_lmul(q, v) -> Vector:
    return tuple(q * a for a in v)


def vec_sub(u, v) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_add(u, v) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_norm2(v):
    acc = v[0].norm2()
    for q in v[1:]:
        acc = acc + q.norm2()
    return acc


def canonical_phase(v, normalize: bool = False) -> Vector:
    """Fix the right-scalar freedom of a vector.

    Unnormalized: scale so the first nonzero component is exactly 1.
    Normalized: unit length with the first nonzero component real positive.
    """
    lead = next((q for q in v if not q.is_zero()), None)
    if lead is None:
        return tuple(v)
    v = vec_rmul(v, lead.inverse())
    if normalize:
        v = vec_rmul(v, _reciprocal(real_sqrt(vec_norm2(v))))
    return v


def _reciprocal(x):
    return 1.0 / x if isinstance(x, float) else 1 / Fraction(x)


def gram_schmidt_right(vectors: Iterable[Vector], normalize: bool = True, tol: float | None = None) -> list[Vector]:
    """Orthogonalize column vectors in the right H-space.

    The projection of v on u is u <v, u>_r / <u, u>_r, which is what makes
    the residual orthogonal to u when scalars act on the right.  With
    ``normalize`` each output vector has unit length (the exact backend then
    requires rational norms).
    """
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return []
    is_float = any(isinstance(c, float) for v in vectors for q in v for c in q.components)
    if tol is None:
        tol = 1e-10 if is_float else 0.0
    ortho: list[Vector] = []
    for v in vectors:
        u = v
        for e in ortho:
            coeff = inner_r(v, e) * _reciprocal(vec_norm2(e))
            u = vec_sub(u, vec_rmul(e, coeff))
        n2 = vec_norm2(u)
        if (float(n2) <= tol * tol * max(1.0, float(vec_norm2(v)))) if is_float else n2 == 0:
            raise DependentVectorsError("input vectors are right-linearly dependent")
        ortho.append(u)
    if not normalize:
        return ortho
    out = []
    for u in ortho:
        out.append(vec_rmul(u, _reciprocal(real_sqrt(vec_norm2(u)))))
    return out
