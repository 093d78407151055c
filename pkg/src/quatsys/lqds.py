"""Closed-form solutions of constant-coefficient linear quaternion systems.

Orientation is fixed once and for all: right systems are x' = A x + b(t)
with column x, left systems are x' = x A + b(t) with row x.  A system
written as x' + A x = b is passed with A negated.

Sources are vector polynomials in t.  Every solution is the sum of a
polynomial particular part and a homogeneous term e^{A(t - t0)} g (right)
or g e^{A(t - t0)} (left).  The polynomial part is exact whenever the data
are exact; the homogeneous term is evaluated in floating point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .cramer import cramer_left, cramer_right
from .drazin import drazin_det
from .errors import InconsistencyError, PreconditionError, ShapeError, SingularMatrixError
from .expm import mat_exp, mat_exp_diag
from .matrix import QMatrix, inverse_rowreduce, is_diagonal, is_hermitian, qrank, vec_add, vec_sub
from .rcdet import minor_sum
from .scalar import Backend, Quaternion, as_quaternion

SIDES = ("right", "left")
FD_STEP = 1e-5
FLOAT_TOL = 1e-9


def _check_side(side: str):
    if side not in SIDES:
        raise PreconditionError(f"side must be 'right' or 'left', not {side!r}")


def _scale(v, c):
    return tuple(q * c for q in v)


def _apply(A: QMatrix, v, side: str):
    """A v for right systems, v A for left systems."""
    return A.matvec(v) if side == "right" else A.vecmat(v)


def _is_exact_vec(v) -> bool:
    return all(q.backend is Backend.EXACT for q in v)


# ---------------------------------------------------------------------------
# vector polynomials


class PolynomialVector:
    """sum_m C_m t^m with quaternion vector coefficients C_0 .. C_d."""

    __slots__ = ("coeffs", "n")

    def __init__(self, coeffs, n: int | None = None):
        coeffs = [tuple(c) for c in coeffs]
        if not coeffs and n is None:
            raise ShapeError("length of an empty polynomial is unknown")
        n = len(coeffs[0]) if coeffs else n
        if any(len(c) != n for c in coeffs):
            raise ShapeError("coefficient vectors differ in length")
        backend = Backend.FLOAT if any(q.backend is Backend.FLOAT for c in coeffs for q in c) else Backend.EXACT
        zero = Quaternion.zero(backend)
        while coeffs and all(q == 0 for q in coeffs[-1]):
            coeffs.pop()
        self.coeffs = tuple(coeffs) if coeffs else ((zero,) * n,)
        self.n = n

    @classmethod
    def constant(cls, v) -> "PolynomialVector":
        return cls([v])

    @classmethod
    def zero(cls, n: int, backend: Backend = Backend.EXACT) -> "PolynomialVector":
        return cls([(Quaternion.zero(backend),) * n])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if not self.is_zero() else 0

    @property
    def backend(self) -> Backend:
        return Backend.FLOAT if any(q.backend is Backend.FLOAT for c in self.coeffs for q in c) else Backend.EXACT

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(q.is_zero(tol) for c in self.coeffs for q in c)

    def __call__(self, t):
        if isinstance(t, int):
            t = Fraction(t)
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = vec_add(_scale(acc, t), c)
        return acc

    def derivative(self) -> "PolynomialVector":
        if len(self.coeffs) == 1:
            return PolynomialVector.zero(self.n, self.backend)
        return PolynomialVector([_scale(c, m) for m, c in enumerate(self.coeffs)][1:])

    def antiderivative(self) -> "PolynomialVector":
        """Integral from 0, so the constant coefficient is zero."""
        zero = (Quaternion.zero(self.backend),) * self.n
        return PolynomialVector([zero] + [_scale(c, Fraction(1, m + 1)) for m, c in enumerate(self.coeffs)])

    def _pad(self, length):
        zero = (Quaternion.zero(self.backend),) * self.n
        return list(self.coeffs) + [zero] * (length - len(self.coeffs))

    def __add__(self, other: "PolynomialVector") -> "PolynomialVector":
        size = max(len(self.coeffs), len(other.coeffs))
        return PolynomialVector([vec_add(a, b) for a, b in zip(self._pad(size), other._pad(size))])

    def __sub__(self, other: "PolynomialVector") -> "PolynomialVector":
        size = max(len(self.coeffs), len(other.coeffs))
        return PolynomialVector([vec_sub(a, b) for a, b in zip(self._pad(size), other._pad(size))])

    def __neg__(self):
        return PolynomialVector([tuple(-q for q in c) for c in self.coeffs])

    def apply(self, A: QMatrix, side: str) -> "PolynomialVector":
        """Coefficientwise A C_m (right) or C_m A (left)."""
        return PolynomialVector([_apply(A, c, side) for c in self.coeffs])

    def scale(self, c) -> "PolynomialVector":
        return PolynomialVector([_scale(v, c) for v in self.coeffs])

    def to_float(self) -> "PolynomialVector":
        return PolynomialVector([tuple(q.to_float() for q in c) for c in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, PolynomialVector):
            return NotImplemented
        return self.n == other.n and (self - other).is_zero()

    def __repr__(self):
        return f"PolynomialVector({[list(c) for c in self.coeffs]!r})"


def as_polynomial(b, n: int | None = None) -> PolynomialVector:
    if isinstance(b, PolynomialVector):
        return b
    b = list(b)
    if b and isinstance(b[0], (list, tuple)):
        return PolynomialVector([[as_quaternion(q) for q in c] for c in b])
    return PolynomialVector.constant([as_quaternion(q) for q in b])


# ---------------------------------------------------------------------------
# problems and solutions


@dataclass(frozen=True)
class LqdsProblem:
    side: str
    A: QMatrix
    b: PolynomialVector
    t0: object = None
    x0: tuple | None = None

    def __post_init__(self):
        _check_side(self.side)
        self.A._require_square()
        if self.b.n != self.A.rows:
            raise ShapeError("source length does not match the matrix order")
        if self.x0 is not None and len(self.x0) != self.A.rows:
            raise ShapeError("initial vector length does not match the matrix order")
        if (self.x0 is None) != (self.t0 is None):
            raise PreconditionError("t0 and x0 must be given together")


@dataclass(frozen=True)
class ClosedFormSolution:
    """x(t) = poly_part(t) + e^{A(t - t0)} g (right) or g e^{A(t - t0)} (left).

    ``fundamental`` optionally holds (P, D) with A = P D P^{-1}, in which case
    the exponential is evaluated as P e^{D(t - t0)} P^{-1}.
    """

    side: str
    A: QMatrix
    poly_part: PolynomialVector
    hom_vector: tuple | None = None
    t0: object = 0
    fundamental: tuple | None = field(default=None, compare=False)

    @property
    def has_homogeneous(self) -> bool:
        return self.hom_vector is not None and not all(q.is_zero() for q in self.hom_vector)

    def propagator(self, t) -> QMatrix:
        dt = float(t) - float(self.t0)
        if self.fundamental is not None:
            P, D = self.fundamental
            return mat_exp_diag(P, D, dt)
        return mat_exp(self.A, dt).value

    def homogeneous(self, t):
        E = self.propagator(t)
        g = tuple(q.to_float() for q in self.hom_vector)
        return E.matvec(g) if self.side == "right" else E.vecmat(g)

    def __call__(self, t):
        p = self.poly_part(t)
        if not self.has_homogeneous:
            return p
        return vec_add(tuple(q.to_float() for q in p), self.homogeneous(t))


def hom_solution(side: str, A: QMatrix, x0, t0=0) -> ClosedFormSolution:
    _check_side(side)
    x0 = tuple(as_quaternion(q) for q in x0)
    if len(x0) != A.rows:
        raise ShapeError("initial vector length does not match the matrix order")
    zero = PolynomialVector.zero(A.rows, A.backend)
    return ClosedFormSolution(side, A, zero, x0, t0)


def _nonsingular(A: QMatrix) -> bool:
    if A.backend is Backend.FLOAT:
        return qrank(A, 1e-10 * max(1.0, A.frobenius())) == A.rows
    return qrank(A) == A.rows


def particular_polynomial_invertible(side: str, A: QMatrix, b: PolynomialVector) -> PolynomialVector:
    """Polynomial ansatz of the source's degree, solved from the top coefficient down."""
    _check_side(side)
    if not _nonsingular(A):
        raise SingularMatrixError("coefficient matrix is singular; use the Drazin-based particular solution")
    Ainv = inverse_rowreduce(A)
    d = len(b.coeffs) - 1
    C = [None] * (d + 2)
    C[d + 1] = (Quaternion.zero(b.backend),) * A.rows
    for m in range(d, -1, -1):
        rhs = vec_sub(_scale(C[m + 1], m + 1), b.coeffs[m])
        C[m] = _apply(Ainv, rhs, side)
    return PolynomialVector(C[:d + 1])


def particular_polynomial(side: str, A: QMatrix, b: PolynomialVector, AD: QMatrix | None = None,
                          k: int | None = None) -> PolynomialVector:
    """Polynomial particular solution for any A, built from the Drazin inverse.

    With P = A A^D the source splits into a part on which A^D acts as an
    inverse, giving -sum_j (A^D)^{j+1} b^{(j)}, and a part on which A is
    nilpotent of order k, giving sum_{j<k} A^j (I - P) B_{j+1} with B_{j+1}
    the (j+1)-fold antiderivative of b.  Left systems use the mirrored
    products.
    """
    _check_side(side)
    if AD is None or k is None:
        res = drazin_det(A)
        AD, k = res.AD, res.index
    core = PolynomialVector.zero(A.rows, b.backend)
    deriv = b
    power = AD
    for _ in range(b.degree + 1):
        core = core - deriv.apply(power, side)
        deriv = deriv.derivative()
        power = power @ AD
    proj = QMatrix.identity(A.rows, A.backend) - A @ AD
    return core + _nilpotent_part(side, A, proj, b, k)


def _nilpotent_part(side, A, proj, b, k):
    """sum_{j<k} A^j (I - A A^D) applied to the (j+1)-fold antiderivative of b."""
    n = A.rows
    out = PolynomialVector.zero(n, b.backend)
    integral = b.antiderivative()
    Aj = QMatrix.identity(n, A.backend)
    for _ in range(k):
        M = Aj @ proj
        out = out + integral.apply(M, side)
        integral = integral.antiderivative()
        Aj = Aj @ A
    return out


def _same(x, y) -> bool:
    if _is_exact_vec(x) and _is_exact_vec(y):
        return tuple(x) == tuple(y)
    scale = max([1.0] + [abs(float(c)) for q in x for c in q.components])
    return all(a.isclose(b, FLOAT_TOL * scale) for a, b in zip(x, y))


def particular_invertible(side: str, A: QMatrix, b) -> tuple:
    """-A^{-1} b (right) or -b A^{-1} (left), cross-checked against determinantal forms."""
    _check_side(side)
    A._require_square()
    b = tuple(as_quaternion(q) for q in b)
    if len(b) != A.rows:
        raise ShapeError("source length does not match the matrix order")
    if not _nonsingular(A):
        raise SingularMatrixError("coefficient matrix is singular")
    Ainv = inverse_rowreduce(A)
    x = tuple(-q for q in _apply(Ainv, b, side))
    solver = cramer_right if side == "right" else cramer_left
    paths = ["general"] + (["hermitian"] if is_hermitian(A) else [])
    for method in paths:
        y = tuple(-q for q in solver(A, b, method)[0])
        if not _same(x, y):
            raise InconsistencyError(f"{method} determinantal form disagrees with -A^-1 b")
    return x


def drazin_products_det(side: str, A: QMatrix, b, k: int, r: int, upto: int) -> list:
    """A^D A^l b (right) or b A^l A^D (left) for l = 0..upto, from anchored minor sums only."""
    n = A.rows
    powers = [QMatrix.identity(n, A.backend)]
    for _ in range(2 * k + 1 + upto):
        powers.append(powers[-1] @ A)
    out = []
    if r == 0:
        zero = (Quaternion.zero(A.backend),) * n
        return [zero] * (upto + 1)
    if is_hermitian(A):
        Ak1 = powers[k + 1]
        denom = minor_sum(Ak1, r)
        for l in range(upto + 1):
            kind = "col" if side == "right" else "row"
            v = _apply(powers[k + l], b, side)
            out.append(tuple(minor_sum(Ak1, r, (kind, i + 1, v)) * _inv(denom) for i in range(n)))
        return out
    P = powers[2 * k + 1]
    Ph = P.H
    Ak = powers[k]
    if side == "right":
        H = Ph @ P
        denom = minor_sum(H, r)
        for l in range(upto + 1):
            d = Ph.matvec(powers[k + l].matvec(b))
            inner = [minor_sum(H, r, ("col", s + 1, d)) for s in range(n)]
            out.append(tuple(_dot(Ak.row(i), inner) * _inv(denom) for i in range(n)))
    else:
        K = P @ Ph
        denom = minor_sum(K, r)
        for l in range(upto + 1):
            d = Ph.vecmat(powers[k + l].vecmat(b))
            inner = [minor_sum(K, r, ("row", s + 1, d)) for s in range(n)]
            out.append(tuple(_rdot(inner, Ak.col(j)) * _inv(denom) for j in range(n)))
    return out


def _inv(x):
    return 1.0 / x if isinstance(x, float) else 1 / Fraction(x)


def _dot(row, vec):
    acc = row[0] * vec[0]
    for a, c in zip(row[1:], vec[1:]):
        acc = acc + a * c
    return acc


def _rdot(vec, col):
    acc = vec[0] * col[0]
    for a, c in zip(vec[1:], col[1:]):
        acc = acc + a * c
    return acc


def particular_singular(side: str, A: QMatrix, b, check: bool = True) -> PolynomialVector:
    """Polynomial particular solution of x' = A x + b (or x A + b) for constant b and any A.

    The coefficient of t^m is (A^{m-1} b - A^D A^m b)/m! for m = 1..k and the
    constant term is -A^D b (left systems mirror every product).  With
    ``check`` the Drazin products are recomputed from anchored minor sums
    and compared.
    """
    _check_side(side)
    A._require_square()
    b = tuple(as_quaternion(q) for q in b)
    if len(b) != A.rows:
        raise ShapeError("source length does not match the matrix order")
    res = drazin_det(A)
    AD, k, r = res.AD, res.index, res.rank
    n = A.rows
    powers = [QMatrix.identity(n, A.backend)]
    for _ in range(k):
        powers.append(powers[-1] @ A)
    if side == "right":
        Y = [AD.matvec(powers[l].matvec(b)) for l in range(k + 1)]
    else:
        Y = [AD.vecmat(powers[l].vecmat(b)) for l in range(k + 1)]
    if check:
        Z = drazin_products_det(side, A, b, k, r, k)
        if not all(_same(y, z) for y, z in zip(Y, Z)):
            raise InconsistencyError("determinantal particular solution disagrees with the Drazin products")
    coeffs = [tuple(-q for q in Y[0])]
    for m in range(1, k + 1):
        prev = _apply(powers[m - 1], b, side)
        coeffs.append(_scale(vec_sub(prev, Y[m]), Fraction(1, factorial(m))))
    return PolynomialVector(coeffs)


def general_solution_diagonalizable(side: str, A: QMatrix, P: QMatrix, D: QMatrix, b,
                                    t0=None, x0=None, q=None) -> ClosedFormSolution:
    """Particular polynomial part plus the homogeneous term through the fundamental matrix P e^{Dt}.

    With an initial pair (t0, x0) the free vector is fixed as x0 - p(t0); otherwise
    ``q`` (default zero) is the free vector at t0 = 0.
    """
    _check_side(side)
    b = as_polynomial(b)
    if not is_diagonal(D):
        raise PreconditionError("D must be diagonal")
    recon = P @ D @ inverse_rowreduce(P)
    if A.backend is Backend.EXACT and P.backend is Backend.EXACT and D.backend is Backend.EXACT:
        ok = recon == A
    else:
        ok = recon.isclose(A, 1e-8 * max(1.0, A.frobenius()))
    if not ok:
        raise PreconditionError("A is not P D P^{-1}")
    poly = particular_polynomial_invertible(side, A, b)
    return _attach(side, A, poly, t0, x0, q, (P, D))


def _attach(side, A, poly, t0, x0, q, fundamental=None) -> ClosedFormSolution:
    if x0 is not None:
        if t0 is None:
            raise PreconditionError("an initial vector needs its initial time")
        x0 = tuple(as_quaternion(v) for v in x0)
        g = vec_sub(x0, poly(t0))
        return ClosedFormSolution(side, A, poly, g, t0, fundamental)
    if q is not None:
        return ClosedFormSolution(side, A, poly, tuple(as_quaternion(v) for v in q), 0, fundamental)
    return ClosedFormSolution(side, A, poly, None, 0, fundamental)


def general_solution_singular(side: str, A: QMatrix, b, t0=None, x0=None, q=None) -> ClosedFormSolution:
    """Drazin particular solution plus e^{At} q (right) or q e^{At} (left).

    ``q`` plays the role of G b; with an initial pair it is fixed so that
    x(t0) = x0.
    """
    poly = particular_singular(side, A, b)
    return _attach(side, A, poly, t0, x0, q)


def solve(problem: LqdsProblem) -> ClosedFormSolution:
    """Closed form for any constant A and polynomial source."""
    A, b, side = problem.A, problem.b, problem.side
    if b.degree == 0 and not _nonsingular(A):
        poly = particular_singular(side, A, b.coeffs[0])
    elif _nonsingular(A):
        poly = particular_polynomial_invertible(side, A, b)
    else:
        poly = particular_polynomial(side, A, b)
    return _attach(side, A, poly, problem.t0, problem.x0, None)


# ---------------------------------------------------------------------------
# residuals


@dataclass(frozen=True)
class ResidualReport:
    """Maximum residual magnitude; ``exact`` reports a symbolic polynomial check.

    For an exact check that fails, ``witness`` is (power of t, component index, coefficient).
    """

    value: float
    exact: bool
    witness: tuple | None = None

    @property
    def is_zero(self) -> bool:
        return self.value == 0


def _rhs(side, A, x, bt):
    return vec_add(_apply(A, x, side), bt)


def residual(side: str, sol: ClosedFormSolution, A: QMatrix, b, samples=(0.0, 0.5, 1.0)) -> ResidualReport:
    """Residual of x' - A x - b (right) or x' - x A - b (left)."""
    _check_side(side)
    b = as_polynomial(b)
    poly_exact = sol.poly_part.backend is Backend.EXACT and b.backend is Backend.EXACT and A.backend is Backend.EXACT
    if not sol.has_homogeneous and poly_exact:
        R = sol.poly_part.derivative() - sol.poly_part.apply(A, side) - b
        for m, c in enumerate(R.coeffs):
            for i, qv in enumerate(c):
                if not qv.is_zero():
                    return ResidualReport(float(qv.norm2()) ** 0.5, True, (m, i, qv))
        return ResidualReport(0.0, True)
    Af = A.to_float()
    worst = 0.0
    for t in samples:
        t = float(t)
        xp = sol(t + FD_STEP)
        xm = sol(t - FD_STEP)
        deriv = tuple((a - c) * (1.0 / (2 * FD_STEP)) for a, c in zip(_float(xp), _float(xm)))
        bt = _float(b(t))
        r = vec_sub(deriv, _rhs(side, Af, _float(sol(t)), bt))
        worst = max(worst, max(float(q.norm2()) ** 0.5 for q in r))
    return ResidualReport(worst, False)


def _float(v):
    return tuple(q.to_float() for q in v)
