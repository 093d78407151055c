"""Row and column determinants of quaternion matrices.

Both expand over all n! permutations written as products of disjoint
cycles in a normal form, with sign (-1)^(n - number of cycles).  Each
cycle contributes the product of entries a[c, succ(c)] taken along the
cycle from its leading element.  The two determinants differ only in where
the anchored cycle sits and how the remaining cycles are ordered:

* row determinant at row i: the cycle through i comes first, starting at i;
  other cycles start at their minimum and follow in increasing order;
* column determinant at column j: other cycles start at their minimum and
  come first in decreasing order; the cycle through j comes last and starts
  at j, so entries from column j end up rightmost.

On Hermitian matrices all 2n of these agree and are real.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import EnumerationCapError, InconsistencyError, NotHermitianError, PreconditionError, ShapeError
from .matrix import QMatrix, is_hermitian
from .scalar import Backend, Quaternion

ENUMERATION_CAP = 8
FLOAT_TOL = 1e-10


@dataclass(frozen=True)
class CyclePermutation:
    """A permutation in determinant normal form; cycles use 1-based labels."""

    cycles: tuple

    @property
    def cycle_count(self) -> int:
        return len(self.cycles)

    @property
    def sign(self) -> int:
        n = sum(len(c) for c in self.cycles)
        return -1 if (n - len(self.cycles)) % 2 else 1

    def as_mapping(self) -> dict:
        out = {}
        for c in self.cycles:
            for a, b in zip(c, c[1:] + c[:1]):
                out[a] = b
        return out


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for idx in range(len(part)):
            yield part[:idx] + [[first] + part[idx]] + part[idx + 1:]
        yield [[first]] + part


def _cycles_from_block(block, lead):
    others = [x for x in block if x != lead]
    for order in itertools.permutations(others):
        yield (lead,) + order


def _normal_forms(n: int, anchor: int, kind: str):
    """Every permutation of 1..n as a CyclePermutation in normal form."""
    others = [x for x in range(1, n + 1) if x != anchor]
    out = []
    # the anchored cycle takes any subset of the others, in any order
    for size in range(len(others) + 1):
        for chosen in itertools.combinations(others, size):
            rest = [x for x in others if x not in chosen]
            anchored = [(anchor,) + p for p in itertools.permutations(chosen)]
            for part in _set_partitions(rest):
                blocks = sorted(part, key=min)
                choices = [list(_cycles_from_block(b, min(b))) for b in blocks]
                for head in anchored:
                    for tail in itertools.product(*choices):
                        if kind == "row":
                            cycles = (head,) + tuple(tail)
                        else:
                            cycles = tuple(reversed(tail)) + (head,)
                        out.append(CyclePermutation(cycles))
    out.sort(key=lambda p: p.cycles)
    return out


def _check_cap(n: int, cap: int | None):
    cap = ENUMERATION_CAP if cap is None else cap
    if n > cap:
        raise EnumerationCapError(f"order {n} exceeds the enumeration cap {cap}")


@lru_cache(maxsize=None)
def _terms(n: int, anchor: int, kind: str):
    """(sign, flat entry indices in multiplication order) for each permutation."""
    terms = []
    for perm in _normal_forms(n, anchor, kind):
        idx = []
        for c in perm.cycles:
            for a, b in zip(c, c[1:] + c[:1]):
                idx.append((a - 1) * n + (b - 1))
        terms.append((perm.sign, tuple(idx)))
    return tuple(terms)


def normal_forms(n: int, anchor: int, kind: str = "row", cap: int | None = None):
    """Enumerate the n! normal-form permutations anchored at ``anchor`` (1-based)."""
    if kind not in ("row", "col"):
        raise PreconditionError("kind must be 'row' or 'col'")
    _check_cap(n, cap)
    if not 1 <= anchor <= n:
        raise ShapeError(f"anchor {anchor} out of range 1..{n}")
    return _normal_forms(n, anchor, kind)


def _expand(A: QMatrix, anchor: int, kind: str, cap: int | None) -> Quaternion:
    A._require_square()
    n = A.rows
    _check_cap(n, cap)
    if not 1 <= anchor <= n:
        raise ShapeError(f"anchor {anchor} out of range 1..{n}")
    e = A.entries
    total = Quaternion.zero(A.backend)
    for sign, idx in _terms(n, anchor, kind):
        prod = e[idx[0]]
        for t in idx[1:]:
            prod = prod * e[t]
        total = total + prod if sign > 0 else total - prod
    return total


def rdet(i: int, A: QMatrix, cap: int | None = None) -> Quaternion:
    """Row determinant of A anchored at row ``i`` (1-based)."""
    return _expand(A, i, "row", cap)


def cdet(j: int, A: QMatrix, cap: int | None = None) -> Quaternion:
    """Column determinant of A anchored at column ``j`` (1-based)."""
    return _expand(A, j, "col", cap)


def _is_float(A: QMatrix) -> bool:
    return A.backend is Backend.FLOAT


def _tol(A: QMatrix, value) -> float:
    if not _is_float(A):
        return 0.0
    scale = max(1.0, A.frobenius()) ** A.rows
    return FLOAT_TOL * scale


def det_hermitian(A: QMatrix, cap: int | None = None, check: bool = True):
    """The common real value of every row and column determinant of a Hermitian matrix."""
    if not is_hermitian(A):
        raise NotHermitianError("matrix is not Hermitian")
    value = rdet(1, A, cap)
    if check:
        tol = _tol(A, value)
        others = [rdet(i, A, cap) for i in range(2, A.rows + 1)]
        others += [cdet(j, A, cap) for j in range(1, A.rows + 1)]
        if not value.is_real(tol) or any(not (v - value).is_zero(tol) for v in others):
            raise InconsistencyError("row and column determinants of a Hermitian matrix disagree")
    return value.w


def ddet(A: QMatrix, cap: int | None = None):
    """Double determinant det(A* A); checked against det(A A*)."""
    A._require_square()
    left = det_hermitian(A.H @ A, cap)
    right = det_hermitian(A @ A.H, cap)
    if _is_float(A):
        if abs(left - right) > FLOAT_TOL * max(1.0, abs(left)):
            raise InconsistencyError("det(A*A) and det(AA*) disagree")
    elif left != right:
        raise InconsistencyError("det(A*A) and det(AA*) disagree")
    return left


def subsets(n: int, r: int, containing: int | None = None):
    """Increasing r-subsets of 1..n, optionally only those containing ``containing``."""
    for beta in itertools.combinations(range(1, n + 1), r):
        if containing is None or containing in beta:
            yield beta


def principal_det(H: QMatrix, beta, cap: int | None = None) -> Quaternion:
    sub = H.principal([b - 1 for b in beta])
    return rdet(1, sub, cap)


def minor_sum(H: QMatrix, r: int, anchor=None, cap: int | None = None):
    """Sums of principal minors of order r.

    Without ``anchor``: the sum of all order-r principal minors (a real
    number for Hermitian H).  With ``anchor = (kind, index, vector)``: first
    replace column ``index`` (kind "col") or row ``index`` (kind "row") of H
    by ``vector``, then sum the column (resp. row) determinant anchored at
    ``index`` over the principal submatrices whose index sets contain it.
    """
    H._require_square()
    n = H.rows
    if not 1 <= r <= n:
        raise PreconditionError(f"minor order {r} outside 1..{n}")
    _check_cap(r, cap)
    if anchor is None:
        total = Quaternion.zero(H.backend)
        for beta in subsets(n, r):
            total = total + principal_det(H, beta, cap)
        return total.w
    kind, index, vector = anchor
    if kind == "col":
        M = H.with_column(index - 1, vector)
        det_fn = cdet
    elif kind == "row":
        M = H.with_row(index - 1, vector)
        det_fn = rdet
    else:
        raise PreconditionError("anchor kind must be 'row' or 'col'")
    total = Quaternion.zero(M.backend)
    for beta in subsets(n, r, index):
        sub = M.principal([b - 1 for b in beta])
        total = total + det_fn(beta.index(index) + 1, sub, cap)
    return total


def subset_count(n: int, r: int, containing: bool = False) -> int:
    return comb(n - 1, r - 1) if containing else comb(n, r)


class RealPolynomial:
    """c0 + c1 t + ... + cn t^n with real (Fraction or float) coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs) if coeffs else (Fraction(0),)

    @classmethod
    def from_roots(cls, roots):
        p = cls([Fraction(1)])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_exact(self) -> bool:
        return not any(isinstance(c, float) for c in self.coeffs)

    def __call__(self, t):
        acc = self.coeffs[-1] * 1
        for c in reversed(self.coeffs[:-1]):
            acc = acc * t + c
        return acc

    def __mul__(self, other):
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RealPolynomial(out)

    def derivative(self):
        return RealPolynomial([c * k for k, c in enumerate(self.coeffs)][1:] or [0])

    def __eq__(self, other):
        if not isinstance(other, RealPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RealPolynomial({list(self.coeffs)!r})"

    def __str__(self):
        from .textio import render_scalar

        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0 and self.degree > 0:
                continue
            mag = render_scalar(abs(c))
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            body = mono if (mono and abs(c) == 1) else (mag + ("*" + mono if mono else ""))
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)


def char_poly_hermitian(A: QMatrix, cap: int | None = None) -> RealPolynomial:
    """t^n - d1 t^(n-1) + ... + (-1)^n dn, with dk the sum of order-k principal minors."""
    if not is_hermitian(A):
        raise NotHermitianError("matrix is not Hermitian")
    n = A.rows
    one = Fraction(1) if not _is_float(A) else 1.0
    coeffs = [one]  # highest degree first
    for k in range(1, n + 1):
        d = minor_sum(A, k, cap=cap)
        coeffs.append(d if k % 2 == 0 else -d)
    return RealPolynomial(list(reversed(coeffs)))
