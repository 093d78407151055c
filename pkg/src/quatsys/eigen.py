"""Right eigenvalues of Hermitian and normal quaternion matrices.

A normal matrix N shares its eigenvectors with the Hermitian matrix N*N,
so the spectrum of N*N (found as the real roots of its characteristic
polynomial) organizes the search.  Inside each eigenspace of N*N the
Hermitian part (N + N*)/2 fixes the real part h of the eigenvalue and the
skew part S = (N - N*)/2 satisfies S^2 = -(lambda - h^2); for a vector w in
such a joint eigenspace, w k - (S w) i is an eigenvector of N with the
standard eigenvalue h + k i, k = sqrt(lambda - h^2).

The exact backend keeps eigenvectors orthogonal but only normalizes them
when every norm is a rational square; ``unitary`` reports which happened.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import (
    ExactnessError,
    InconsistencyError,
    NonRealRootError,
    NotHermitianError,
    NotNormalError,
    SingularMatrixError,
)
from .matrix import (
    QMatrix,
    canonical_phase,
    gram_schmidt_right,
    inner_r,
    inverse_rowreduce,
    is_diagonal,
    is_hermitian,
    is_normal,
    is_unitary,
    null_space_right,
    vec_norm2,
    vec_rmul,
    vec_sub,
)
from .rcdet import RealPolynomial, char_poly_hermitian, ddet
from .scalar import Backend, Quaternion, real_sqrt

ROOT_TOL = Fraction(1, 2 ** 60)  # bisect well past double precision
FLOAT_TOL = 1e-9

# ---------------------------------------------------------------------------
# polynomial arithmetic over Q (coefficient lists, lowest degree first)


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _divmod(a, b):
    a, b = _trim(a), _trim(b)
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    r = list(a)
    lead = b[-1]
    for shift in range(len(a) - len(b), -1, -1):
        c = r[shift + len(b) - 1] / lead
        q[shift] = c
        for i, bc in enumerate(b):
            r[shift + i] -= c * bc
    return _trim(q), _trim(r[:len(b) - 1] or [Fraction(0)])


def _is_zero_poly(p):
    return all(c == 0 for c in p)


def _monic(p):
    p = _trim(p)
    return [c / p[-1] for c in p]


def _gcd(a, b):
    a, b = _trim(a), _trim(b)
    while not _is_zero_poly(b):
        a, b = b, _divmod(a, b)[1]
    return _monic(a)


def _deriv(p):
    return _trim([c * k for k, c in enumerate(p)][1:] or [Fraction(0)])


def _eval(p, x):
    acc = p[-1]
    for c in reversed(p[:-1]):
        acc = acc * x + c
    return acc


def _square_free(p):
    """Yun's algorithm: [(factor, multiplicity), ...] with square-free factors."""
    out = []
    a = _monic(p)
    b = _deriv(a)
    c = _gcd(a, b)
    w = _divmod(a, c)[0]
    y = _divmod(b, c)[0]
    z = [yi - wi for yi, wi in zip(y + [0] * (len(w) - len(y)), _deriv(w) + [0] * (len(y) - len(_deriv(w))))]
    z = _trim(z)
    k = 1
    while len(w) > 1:
        g = _gcd(w, z)
        if len(g) > 1:
            out.append((g, k))
        w = _divmod(w, g)[0]
        y = _divmod(z, g)[0]
        dw = _deriv(w)
        width = max(len(y), len(dw))
        z = _trim([(y[i] if i < len(y) else 0) - (dw[i] if i < len(dw) else 0) for i in range(width)])
        k += 1
    return out


def _sturm(p):
    seq = [p, _deriv(p)]
    while len(seq[-1]) > 1 or seq[-1][0] != 0:
        r = _divmod(seq[-2], seq[-1])[1]
        if _is_zero_poly(r):
            break
        seq.append([-c for c in r])
    return seq


def _sign_changes(seq, x):
    signs = [s for s in (_eval(p, x) for p in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a < 0) != (b < 0))


def _divisors(n):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _rational_roots(coeffs):
    """Peel rational roots off an exact polynomial; returns (roots, remaining coeffs)."""
    p = [Fraction(c) for c in coeffs]
    roots = []
    while len(p) > 1 and p[0] == 0:
        roots.append(Fraction(0))
        p = p[1:]
    if len(p) == 1:
        return roots, p
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    if abs(ints[0]) > 10**12 or abs(ints[-1]) > 10**12:
        return roots, p
    cands = sorted({Fraction(s * a, b) for a in _divisors(ints[0]) for b in _divisors(ints[-1]) for s in (1, -1)})
    for r in cands:
        while len(p) > 1 and _eval(p, r) == 0:
            roots.append(r)
            p = _divmod(p, [-r, Fraction(1)])[0]
    return roots, p


def _isolate(f, lo, hi, seq):
    """Intervals (a, b] each containing exactly one root of square-free f."""
    stack = [(lo, hi)]
    out = []
    while stack:
        a, b = stack.pop()
        count = _sign_changes(seq, a) - _sign_changes(seq, b)
        if count == 0:
            continue
        if count == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        stack.extend([(m, b), (a, m)])
    return out


def _refine(f, a, b):
    fa = _eval(f, a)
    fb = _eval(f, b)
    if fb == 0:
        return float(b)
    while b - a > ROOT_TOL * max(1, abs(a), abs(b)):
        m = (a + b) / 2
        fm = _eval(f, m)
        if fm == 0:
            return float(m)
        if (fm < 0) == (fa < 0):
            a, fa = m, fm
        else:
            b = m
    return float((a + b) / 2)


def _numeric_fallback(coeffs):
    import numpy as np

    roots = np.roots([float(c) for c in reversed(coeffs)])
    out = []
    for z in roots:
        if abs(z.imag) > 1e-6 * max(1.0, abs(z)):
            raise NonRealRootError("polynomial has non-real roots")
        out.append(float(z.real))
    return out


def real_roots(p: RealPolynomial) -> list:
    """All roots of a real-rooted polynomial, ascending, repeated by multiplicity.

    Exact coefficients: rational roots come back as Fractions, the rest as
    floats.  Float coefficients: every root is a float.
    """
    exact = p.is_exact
    coeffs = [Fraction(c) for c in p.coeffs]
    if len(coeffs) == 1:
        return []
    if exact:
        roots, rest = _rational_roots(coeffs)
    else:
        roots, rest = [], coeffs
    if len(rest) > 1:
        try:
            for f, mult in _square_free(rest):
                seq = _sturm(f)
                bound = 1 + max(abs(c / f[-1]) for c in f[:-1])
                intervals = _isolate(f, -bound, bound, seq)
                if len(intervals) != len(f) - 1:
                    raise NonRealRootError("polynomial has non-real roots")
                for a, b in intervals:
                    roots.extend([_refine(f, a, b)] * mult)
        except NonRealRootError:
            if exact:
                raise
            roots = _numeric_fallback(coeffs)
    if not exact:
        roots = [float(r) for r in roots]
    return sorted(roots)


def distinct_roots(roots):
    """Group a sorted root list into [(root, multiplicity)]; float roots merge within tolerance."""
    out = []
    for r in roots:
        if out:
            prev, m = out[-1]
            same = prev == r if not isinstance(r, float) or not isinstance(prev, float) else \
                abs(prev - r) <= 1e-8 * max(1.0, abs(r))
            if same:
                out[-1] = (prev, m + 1)
                continue
        out.append((r, 1))
    return out


# ---------------------------------------------------------------------------
# spectral decompositions


@dataclass(frozen=True)
class SpectralDecomposition:
    """Standard eigenvalues (as quaternions h + k i with k >= 0) and eigenvector columns."""

    eigenvalues: tuple
    eigenvectors: QMatrix
    unitary: bool

    @property
    def U(self) -> QMatrix:
        return self.eigenvectors

    @property
    def D(self) -> QMatrix:
        return QMatrix.diag(self.eigenvalues)

    def __iter__(self):
        yield self.U
        yield self.D

    def complex_eigenvalues(self) -> list:
        return [complex(float(q.w), float(q.x)) for q in self.eigenvalues]


def _as_scalar(value, backend: Backend):
    return Quaternion.real(value, backend)


def _shifted(M: QMatrix, lam) -> QMatrix:
    n = M.rows
    lam_q = _as_scalar(lam, M.backend)
    return QMatrix(n, n, [M[i, j] - lam_q if i == j else M[i, j] for i in range(n) for j in range(n)])


def _null_space(M: QMatrix, expected: int | None = None) -> list:
    if M.backend is Backend.EXACT:
        return null_space_right(M)
    scale = max(1.0, M.frobenius())
    for tol in (1e-10, 1e-8, 1e-6):
        basis = null_space_right(M, tol * scale)
        if expected is None or len(basis) == expected:
            return basis
    raise InconsistencyError("numerical null space has the wrong dimension")


def _stack(*mats: QMatrix) -> QMatrix:
    rows = [list(m.row(i)) for m in mats for i in range(m.rows)]
    return QMatrix.from_rows(rows)


def _matrix_for(M: QMatrix, lam) -> QMatrix:
    """Promote to float when an eigenvalue is irrational."""
    return M.to_float() if isinstance(lam, float) and M.backend is Backend.EXACT else M


def _try_normalize(columns, backend):
    try:
        return [canonical_phase(v, normalize=True) for v in columns], True
    except ExactnessError:
        return [canonical_phase(v) for v in columns], False


def hermitian_eigs(M: QMatrix, normalize: bool = True) -> SpectralDecomposition:
    """Eigenvalues from the characteristic polynomial, eigenvectors from null spaces."""
    if not is_hermitian(M):
        raise NotHermitianError("matrix is not Hermitian")
    roots = real_roots(char_poly_hermitian(M))
    values, columns = [], []
    for lam, mult in sorted(distinct_roots(roots), key=lambda p: -p[0]):
        W = _matrix_for(M, lam)
        basis = _null_space(_shifted(W, lam), mult)
        if len(basis) != mult:
            raise InconsistencyError(f"eigenspace of {lam} has dimension {len(basis)}, expected {mult}")
        columns.extend(gram_schmidt_right(basis, normalize=False))
        values.extend([lam] * mult)
    backend = Backend.FLOAT if any(isinstance(c, float) for v in columns for q in v for c in q.components) \
        else M.backend
    columns = [tuple(q.to(backend) for q in v) for v in columns]
    unitary = False
    if normalize:
        columns, unitary = _try_normalize(columns, backend)
    else:
        columns = [canonical_phase(v) for v in columns]
    V = QMatrix.from_columns(columns)
    return SpectralDecomposition(tuple(_as_scalar(v, backend) for v in values), V, unitary)


def _phase(v, value: Quaternion, normalize: bool):
    if value.x == 0:
        return canonical_phase(v, normalize=normalize)
    if normalize:
        n = real_sqrt(vec_norm2(v))
        v = vec_rmul(v, 1.0 / n if isinstance(n, float) else 1 / n)
        lead = next((q for q in v if not Quaternion(q.w, q.x, 0, 0).is_zero()), None)
        if lead is not None:
            a = Quaternion(lead.w, lead.x, lead.w * 0, lead.w * 0)
            absval = real_sqrt(a.norm2())
            c = a.conj() * (1.0 / absval if isinstance(absval, float) else 1 / absval)
            v = vec_rmul(v, c)
        return v
    lead = next((q for q in v if not Quaternion(q.w, q.x, 0, 0).is_zero()), None)
    if lead is None:
        return tuple(v)
    return vec_rmul(v, Quaternion(lead.w, lead.x, lead.w * 0, lead.w * 0).inverse())


def _orthogonalize(w, found):
    r = w
    for e in found:
        r = vec_sub(r, vec_rmul(e, inner_r(w, e) * (1 / Fraction(vec_norm2(e)) if not isinstance(vec_norm2(e), float)
                                                    else 1.0 / vec_norm2(e))))
    return r


def _is_zero_vec(v, tol):
    return all(q.is_zero(tol) for q in v)


def normal_diagonalize(N: QMatrix, normalize: bool | None = None) -> SpectralDecomposition:
    """Unitary (or orthogonal, in the exact backend) diagonalization N U = U D with standard D."""
    if not is_normal(N):
        raise NotNormalError("matrix is not normal")
    M = N.H @ N
    Hsum = N + N.H
    lam_roots = distinct_roots(real_roots(char_poly_hermitian(M)))
    s_roots = distinct_roots(real_roots(char_poly_hermitian(Hsum)))
    pairs = []  # (eigenvalue, eigenvector)
    for lam, mult in lam_roots:
        got = 0
        for s, _ in s_roots:
            float_path = isinstance(lam, float) or isinstance(s, float)
            Nw = N.to_float() if float_path else N
            h = s / 2
            k2 = lam - h * h
            Mw, Hw = Nw.H @ Nw, Nw + Nw.H
            joint = _null_space(_stack(_shifted(Mw, lam), _shifted(Hw, s)))
            if not joint:
                continue
            tol = FLOAT_TOL * max(1.0, Nw.frobenius()) if float_path else 0.0
            backend = Nw.backend
            if (k2 <= tol * max(1.0, abs(lam))) if float_path else k2 == 0:
                value = _as_scalar(h, backend)
                for v in gram_schmidt_right(joint, normalize=False):
                    pairs.append((value, v))
                got += len(joint)
                continue
            k = real_sqrt(float(k2) if float_path else Fraction(k2))
            value = Quaternion(h, k, h * 0, h * 0) if not float_path else Quaternion(float(h), float(k), 0.0, 0.0)
            S = (Nw - Nw.H).rmul(Fraction(1, 2) if not float_path else 0.5)
            I_unit = Quaternion.of(0, 1, 0, 0, backend)
            J_unit = Quaternion.of(0, 0, 1, 0, backend)
            found = []
            for w in joint:
                while True:
                    r = _orthogonalize(w, found)
                    if _is_zero_vec(r, tol * max(1.0, math.sqrt(float(vec_norm2(w))))):
                        break
                    v = vec_sub(vec_rmul(r, k), vec_rmul(S.matvec(r), I_unit))
                    if _is_zero_vec(v, tol * max(1.0, math.sqrt(float(vec_norm2(r))))):
                        r = vec_rmul(r, J_unit)
                        v = vec_sub(vec_rmul(r, k), vec_rmul(S.matvec(r), I_unit))
                    found.append(v)
                    if len(found) == len(joint):
                        break
                if len(found) == len(joint):
                    break
            if len(found) != len(joint):
                raise InconsistencyError("failed to split a joint eigenspace")
            pairs.extend((value, v) for v in found)
            got += len(joint)
        if got != mult:
            raise InconsistencyError(f"eigenspace of N*N for {lam} not fully resolved ({got} of {mult})")
    pairs.sort(key=lambda p: (-float(p[0].w), -float(p[0].x)))
    float_out = any(q.backend is Backend.FLOAT for _, v in pairs for q in v)
    if float_out:
        pairs = [(val.to_float(), tuple(q.to_float() for q in v)) for val, v in pairs]
    if normalize is None:
        normalize = True
    unitary = False
    cols = None
    if normalize:
        try:
            cols = [_phase(v, val, True) for val, v in pairs]
            unitary = True
        except ExactnessError:
            cols = None
    if cols is None:
        cols = [_phase(v, val, False) for val, v in pairs]
    values = tuple(val for val, _ in pairs)
    U = QMatrix.from_columns(cols)
    _check_diagonalization(N, U, values)
    if not is_diagonal(U.H @ U):
        raise InconsistencyError("eigenvector columns are not orthogonal")
    return SpectralDecomposition(values, U, unitary and is_unitary(U))


def _check_diagonalization(A: QMatrix, V: QMatrix, values):
    D = QMatrix.diag(values)
    lhs, rhs = (A.to_float() if V.backend is Backend.FLOAT else A) @ V, V @ D
    if V.backend is Backend.FLOAT:
        ok = lhs.isclose(rhs, 1e-8 * max(1.0, A.frobenius()))
    else:
        ok = lhs == rhs
    if not ok:
        raise InconsistencyError("A V = V D fails for the computed eigenpairs")


def transported_eigs(T: QMatrix, N: QMatrix, normalize: bool | None = None) -> SpectralDecomposition:
    """Eigenpairs of T N T^{-1} from those of the normal matrix N."""
    T._require_square()
    d = ddet(T)
    if (abs(d) <= 1e-12) if isinstance(d, float) else d == 0:
        raise SingularMatrixError("similarity matrix is singular")
    dec = normal_diagonalize(N, normalize)
    A = T @ N @ inverse_rowreduce(T)
    backend = dec.U.backend
    Tb = T.to(backend) if backend is Backend.FLOAT else T
    V = Tb @ dec.U
    _check_diagonalization(A, V, dec.eigenvalues)
    return SpectralDecomposition(dec.eigenvalues, V, is_unitary(V))


def verify_eigenpair(A: QMatrix, v, value: Quaternion, tol: float = 0.0) -> bool:
    """A v = v value, exactly or within ``tol``."""
    lhs = A.matvec(v)
    rhs = vec_rmul(v, value)
    return all((a - b).is_zero(tol) for a, b in zip(lhs, rhs))
