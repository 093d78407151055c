"""Quaternion scalars over two coefficient backends.

Coefficients are either :class:`fractions.Fraction` (the exact backend, no
rounding ever) or ``float`` (IEEE binary64).  The backend of a value is read
off its coefficients; mixing the two promotes to float, as Python does.
"""
from __future__ import annotations

import enum
import math
from fractions import Fraction
from numbers import Rational, Real

from .errors import ExactnessError, PreconditionError


class Backend(str, enum.Enum):
    EXACT = "exact"
    FLOAT = "float"

    def coerce(self, value):
        """Convert a real number (or numeric string) to this backend's scalar type."""
        if self is Backend.EXACT:
            if isinstance(value, float):
                return Fraction(value)
            return Fraction(value)
        return float(value)

    @property
    def zero(self):
        return Fraction(0) if self is Backend.EXACT else 0.0

    @property
    def one(self):
        return Fraction(1) if self is Backend.EXACT else 1.0


def scalar_backend(x) -> Backend:
    return Backend.FLOAT if isinstance(x, float) else Backend.EXACT


def exact_sqrt(x):
    """Square root of a nonnegative rational, exactly, or raise ExactnessError."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("square root of a negative number")
    num, den = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if num * num != x.numerator or den * den != x.denominator:
        raise ExactnessError(f"sqrt({x}) is irrational; use the float backend")
    return Fraction(num, den)


def real_sqrt(x):
    """Backend-preserving square root of a nonnegative real scalar."""
    if isinstance(x, float):
        return math.sqrt(x)
    return exact_sqrt(x)


class Quaternion:
    """w + x i + y j + z k with i^2 = j^2 = k^2 = ijk = -1.

    Immutable.  ``q * r`` is the Hamilton product; multiplying by a real
    number scales every coefficient.
    """

    __slots__ = ("w", "x", "y", "z")

    def __init__(self, w=0, x=0, y=0, z=0):
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "z", z)

    def __setattr__(self, name, value):
        raise AttributeError("Quaternion is immutable")

    @classmethod
    def of(cls, w=0, x=0, y=0, z=0, backend: Backend = Backend.EXACT) -> "Quaternion":
        c = backend.coerce
        return cls(c(w), c(x), c(y), c(z))

    @classmethod
    def real(cls, value, backend: Backend = Backend.EXACT) -> "Quaternion":
        return cls.of(value, 0, 0, 0, backend)

    @classmethod
    def zero(cls, backend: Backend = Backend.EXACT) -> "Quaternion":
        z = backend.zero
        return cls(z, z, z, z)

    @classmethod
    def one(cls, backend: Backend = Backend.EXACT) -> "Quaternion":
        z = backend.zero
        return cls(backend.one, z, z, z)

    # -- conversions -----------------------------------------------------
    @property
    def components(self) -> tuple:
        return (self.w, self.x, self.y, self.z)

    @property
    def backend(self) -> Backend:
        for c in self.components:
            if isinstance(c, float):
                return Backend.FLOAT
        return Backend.EXACT

    def to(self, backend: Backend) -> "Quaternion":
        c = backend.coerce
        return Quaternion(c(self.w), c(self.x), c(self.y), c(self.z))

    def to_float(self) -> "Quaternion":
        return Quaternion(float(self.w), float(self.x), float(self.y), float(self.z))

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)
        if isinstance(other, Real):
            return Quaternion(self.w + other, self.x, self.y, self.z)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)
        if isinstance(other, Real):
            return Quaternion(self.w - other, self.x, self.y, self.z)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            a0, a1, a2, a3 = self.w, self.x, self.y, self.z
            b0, b1, b2, b3 = other.w, other.x, other.y, other.z
            return Quaternion(
                a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
                a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
                a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
                a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
            )
        if isinstance(other, Real):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        return NotImplemented

    def __rmul__(self, other):
        # real scalars commute with every quaternion
        if isinstance(other, Real):
            return Quaternion(other * self.w, other * self.x, other * self.y, other * self.z)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Real):
            if other == 0:
                raise ZeroDivisionError("quaternion division by zero")
            if isinstance(other, int):
                other = Fraction(other)
            return Quaternion(self.w / other, self.x / other, self.y / other, self.z / other)
        if isinstance(other, Quaternion):
            return self * other.inverse()
        return NotImplemented

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self):
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def abs(self):
        return real_sqrt(self.norm2())

    def inverse(self) -> "Quaternion":
        n2 = self.norm2()
        if n2 == 0:
            raise ZeroDivisionError("inverse of the zero quaternion")
        if isinstance(n2, int):
            n2 = Fraction(n2)
        return Quaternion(self.w / n2, -self.x / n2, -self.y / n2, -self.z / n2)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = Quaternion.one(self.backend)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- predicates ------------------------------------------------------
    def is_zero(self, tol: float = 0.0) -> bool:
        if tol == 0.0:
            return self.w == 0 and self.x == 0 and self.y == 0 and self.z == 0
        return float(self.norm2()) <= tol * tol

    def is_real(self, tol: float = 0.0) -> bool:
        return self.vector_part().is_zero(tol)

    def vector_part(self) -> "Quaternion":
        return Quaternion(self.w * 0, self.x, self.y, self.z)

    def isclose(self, other, tol: float = 1e-12) -> bool:
        """Componentwise comparison with absolute tolerance ``tol``."""
        if not isinstance(other, Quaternion):
            other = Quaternion(other, 0, 0, 0)
        return all(abs(float(a) - float(b)) <= tol for a, b in zip(self.components, other.components))

    def __eq__(self, other):
        if isinstance(other, Quaternion):
            return self.components == other.components
        if isinstance(other, Real):
            return self.w == other and self.x == 0 and self.y == 0 and self.z == 0
        return NotImplemented

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"

    def __str__(self):
        from .textio import render_quat

        return render_quat(self)


ONE = Quaternion(Fraction(1), Fraction(0), Fraction(0), Fraction(0))
I = Quaternion(Fraction(0), Fraction(1), Fraction(0), Fraction(0))
J = Quaternion(Fraction(0), Fraction(0), Fraction(1), Fraction(0))
K = Quaternion(Fraction(0), Fraction(0), Fraction(0), Fraction(1))


def quat(w=0, x=0, y=0, z=0) -> Quaternion:
    """Exact quaternion from rationals, ints, or numeric strings like ``"1/2"``."""
    return Quaternion.of(w, x, y, z, Backend.EXACT)


def fquat(w=0.0, x=0.0, y=0.0, z=0.0) -> Quaternion:
    return Quaternion.of(w, x, y, z, Backend.FLOAT)


def as_quaternion(value, backend: Backend | None = None) -> Quaternion:
    if isinstance(value, Quaternion):
        return value if backend is None else value.to(backend)
    if isinstance(value, (Rational, Real)):
        if backend is None:
            backend = scalar_backend(value)
        return Quaternion.real(value, backend)
    if isinstance(value, str):
        from .textio import parse_quat

        return parse_quat(value, backend or Backend.EXACT)
    raise TypeError(f"cannot interpret {value!r} as a quaternion")


# ---------------------------------------------------------------------------
# exponential


_QEXP_TERMS = 20


def qexp(q: Quaternion) -> Quaternion:
    """e^q by argument halving, a 20-term Horner series, then repeated squaring."""
    q = q.to_float()
    halvings = 0
    while q.norm2() > 0.25:
        q = q * 0.5
        halvings += 1
    acc = Quaternion.one(Backend.FLOAT)
    for n in range(_QEXP_TERMS, 0, -1):
        acc = Quaternion.one(Backend.FLOAT) + (q * acc) * (1.0 / n)
    for _ in range(halvings):
        acc = acc * acc
    return acc


def scalar_lqde_solve(a, q0, t0, f, side: str, t) -> Quaternion:
    """Solve q' = a q + f (side "right") or q' = q a + f (side "left") with q(t0) = q0.

    ``a`` and ``f`` are constant quaternions.  For invertible ``a`` the
    particular part is -a^{-1} f (right) or -f a^{-1} (left); for ``a = 0`` it
    is f (t - t0).  Evaluated in floating point.
    """
    if side not in ("right", "left"):
        raise PreconditionError(f"side must be 'right' or 'left', not {side!r}")
    a, q0, f = (as_quaternion(v).to_float() for v in (a, q0, f))
    dt = float(t) - float(t0)
    if a.is_zero():
        return q0 + f * dt
    ainv = a.inverse()
    p = -(ainv * f) if side == "right" else -(f * ainv)
    e = qexp(a * dt)
    if side == "right":
        return e * (q0 - p) + p
    return (q0 - p) * e + p
