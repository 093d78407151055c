"""Reference RK4 integrator for quaternion linear systems.

Each quaternion is stored as four real numbers, so an n-vector becomes a
real 4n-vector and the system x' = A x + b(t) (or x' = x A + b(t)) becomes
an ordinary real linear system integrated with classical fixed-step RK4.
Nothing here shares code with the closed-form solvers.
"""
from __future__ import annotations

import numpy as np

from .scalar import Quaternion


def left_block(q: Quaternion) -> np.ndarray:
    """4x4 real matrix of v -> q v."""
    a, b, c, d = (float(x) for x in q.components)
    return np.array([
        [a, -b, -c, -d],
        [b, a, -d, c],
        [c, d, a, -b],
        [d, -c, b, a],
    ])


def right_block(q: Quaternion) -> np.ndarray:
    """4x4 real matrix of v -> v q."""
    a, b, c, d = (float(x) for x in q.components)
    return np.array([
        [a, -b, -c, -d],
        [b, a, d, -c],
        [c, -d, a, b],
        [d, c, -b, a],
    ])


def embed_vector(v) -> np.ndarray:
    return np.array([float(c) for q in v for c in q.components])


def extract_vector(x: np.ndarray) -> tuple:
    return tuple(Quaternion(*(float(c) for c in x[4 * i:4 * i + 4])) for i in range(len(x) // 4))


def embed_system(A, side: str) -> np.ndarray:
    """Real 4n x 4n matrix of x -> A x (right) or x -> x A (left)."""
    n = A.rows
    out = np.zeros((4 * n, 4 * n))
    for i in range(n):
        for j in range(n):
            if side == "right":
                out[4 * i:4 * i + 4, 4 * j:4 * j + 4] = left_block(A[i, j])
            else:
                # (x A)_j collects x_i a_ij
                out[4 * j:4 * j + 4, 4 * i:4 * i + 4] = right_block(A[i, j])
    return out


def _source(b):
    coeffs = [embed_vector(c) for c in b.coeffs]

    def at(t):
        acc = coeffs[-1].copy()
        for c in reversed(coeffs[:-1]):
            acc = acc * t + c
        return acc

    return at


def _rk4(M, src, x, t, h, steps):
    for _ in range(steps):
        k1 = M @ x + src(t)
        k2 = M @ (x + 0.5 * h * k1) + src(t + 0.5 * h)
        k3 = M @ (x + 0.5 * h * k2) + src(t + 0.5 * h)
        k4 = M @ (x + h * k3) + src(t + h)
        x = x + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        t = t + h
    return x


def rk4_integrate(side: str, A, b, x0, t0: float, t1: float, steps: int):
    """State at t1 of the embedded system started from x0 at t0."""
    if steps < 1:
        raise ValueError("steps must be at least 1")
    M = embed_system(A, side)
    h = (float(t1) - float(t0)) / steps
    x = _rk4(M, _source(b), embed_vector(x0), float(t0), h, steps)
    return extract_vector(x)


def rk4_trajectory(side: str, A, b, x0, t0: float, times, steps_per_interval: int = 2000) -> list:
    """States at each of the increasing ``times``, integrating interval by interval."""
    M = embed_system(A, side)
    src = _source(b)
    x, t = embed_vector(x0), float(t0)
    out = []
    for target in times:
        target = float(target)
        if target != t:
            x = _rk4(M, src, x, t, (target - t) / steps_per_interval, steps_per_interval)
            t = target
        out.append(extract_vector(x))
    return out


def max_deviation(xs, ys) -> float:
    worst = 0.0
    for x, y in zip(xs, ys):
        for p, q in zip(x, y):
            worst = max(worst, float((p.to_float() - q.to_float()).norm2()) ** 0.5)
    return worst


def compare(closed, problem, grid, steps_per_interval: int = 2000) -> float:
    """Largest distance between a closed-form solution and RK4 over ``grid``.

    RK4 starts from the problem's initial pair when present, otherwise from
    the closed form evaluated at the first grid point.
    """
    grid = sorted(float(t) for t in grid)
    if problem.x0 is not None:
        t0, x0 = float(problem.t0), problem.x0
    else:
        t0, x0 = grid[0], closed(grid[0])
    numeric = rk4_trajectory(problem.side, problem.A, problem.b, x0, t0, grid, steps_per_interval)
    return max_deviation([closed(t) for t in grid], numeric)
