"""Complex adjoint embedding, used as an independent cross-check channel.

Writing A = A1 + A2 j with complex A1, A2 (complex unit = i), the adjoint
is the 2n x 2m block matrix [[A1, A2], [-conj(A2), conj(A1)]].  It is a
ring homomorphism, so det and rank of the adjoint give oracles for the
double determinant and the quaternion rank.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ShapeError
from .matrix import QMatrix


@dataclass(frozen=True)
class GaussRational:
    """re + im*i over the rationals (or floats)."""

    re: Fraction
    im: Fraction

    def __add__(self, o):
        return GaussRational(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return GaussRational(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __mul__(self, o):
        return GaussRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def conj(self):
        return GaussRational(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def inverse(self):
        n = self.abs2()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        if isinstance(n, int):
            n = Fraction(n)
        return GaussRational(self.re / n, -self.im / n)

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))


class ComplexMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        self.rows, self.cols = rows, cols
        self.entries = tuple(entries)
        if len(self.entries) != rows * cols:
            raise ShapeError("entry count does not match shape")

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i * self.cols + j]

    def __matmul__(self, other: "ComplexMatrix") -> "ComplexMatrix":
        if self.cols != other.rows:
            raise ShapeError("shape mismatch")
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = self[i, 0] * other[0, j]
                for s in range(1, self.cols):
                    acc = acc + self[i, s] * other[s, j]
                out.append(acc)
        return ComplexMatrix(self.rows, other.cols, out)

    def __eq__(self, other):
        return isinstance(other, ComplexMatrix) and (self.rows, self.cols, self.entries) == (
            other.rows, other.cols, other.entries)

    def to_numpy(self):
        import numpy as np

        return np.array([[complex(self[i, j]) for j in range(self.cols)] for i in range(self.rows)])

    def _eliminate(self):
        """Row-echelon pass returning (determinant factor, pivot count)."""
        rows = [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]
        det = GaussRational(Fraction(1), Fraction(0))
        r = 0
        for c in range(self.cols):
            p = next((i for i in range(r, self.rows) if not rows[i][c].is_zero()), None)
            if p is None:
                det = GaussRational(Fraction(0), Fraction(0))
                continue
            if p != r:
                rows[r], rows[p] = rows[p], rows[r]
                det = -det
            det = det * rows[r][c]
            inv = rows[r][c].inverse()
            for i in range(r + 1, self.rows):
                if not rows[i][c].is_zero():
                    f = rows[i][c] * inv
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            r += 1
            if r == self.rows:
                break
        return det, r

    def det(self) -> GaussRational:
        if self.rows != self.cols:
            raise ShapeError("determinant of a non-square matrix")
        det, rank = self._eliminate()
        return det if rank == self.rows else GaussRational(Fraction(0), Fraction(0))

    def rank(self) -> int:
        return self._eliminate()[1]


def complex_adjoint(A: QMatrix) -> ComplexMatrix:
    n, m = A.rows, A.cols
    out = [None] * (4 * n * m)
    width = 2 * m
    for r in range(n):
        for c in range(m):
            w, x, y, z = A[r, c].components
            a1 = GaussRational(w, x)
            a2 = GaussRational(y, z)
            out[r * width + c] = a1
            out[r * width + m + c] = a2
            out[(n + r) * width + c] = -a2.conj()
            out[(n + r) * width + m + c] = a1.conj()
    return ComplexMatrix(2 * n, 2 * m, out)
