"""Numerical contour integration on circles and closed polygons."""
from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import ConvergenceError

ComplexFn = Callable[[np.ndarray], np.ndarray]

RESIDUE_TOL = 1e-10
MAX_POINTS = 2**16


def residue_at(
    f: ComplexFn,
    center: complex,
    radius: float,
    tol: float = RESIDUE_TOL,
    start: int = 32,
    max_points: int = MAX_POINTS,
) -> complex:
    """(1/2 pi i) times the counter-clockwise integral of f over a circle.

    Trapezoidal rule on M equispaced points, doubling M (reusing old nodes)
    until two successive estimates agree to ``tol``.
    """
    m = start
    theta = 2 * np.pi * np.arange(m) / m
    dz = radius * np.exp(1j * theta)
    total = np.sum(np.asarray(f(center + dz)) * dz)
    prev = total / m
    while m < max_points:
        theta = 2 * np.pi * (np.arange(m) + 0.5) / m
        dz = radius * np.exp(1j * theta)
        total = total + np.sum(np.asarray(f(center + dz)) * dz)
        m *= 2
        est = total / m
        if abs(est - prev) <= tol * max(1.0, abs(est)):
            return complex(est)
        prev = est
    raise ConvergenceError(f"circle quadrature not converged at M={m}")


def residue_at_infinity(f: ComplexFn, radius: float, tol: float = RESIDUE_TOL) -> complex:
    """Residue at infinity, -(1/2 pi i) times the integral over |z| = radius."""
    return -residue_at(f, 0.0, radius, tol)


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def path_integral(f: ComplexFn, vertices: np.ndarray, closed: bool = True) -> complex:
    """Integral of f along the polyline through ``vertices``.

    Each edge gets 16-point Gauss-Legendre; keep edges short compared with the
    distance to the nearest singularity.
    """
    v = np.asarray(vertices, dtype=complex)
    if closed:
        v = np.append(v, v[0])
    a, b = v[:-1], v[1:]
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    z = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    vals = np.asarray(f(z.ravel())).reshape(z.shape)
    return complex(np.sum(half * (vals @ _GL_WEIGHTS)))


def winding_number(vertices: np.ndarray, z: complex) -> int:
    v = np.asarray(vertices, dtype=complex) - z
    ang = np.angle(np.append(v[1:], v[:1]) / v)
    return int(np.rint(np.sum(ang) / (2 * np.pi)))


def _arc(center: complex, radius: float, start: float, sweep: float, pts: int) -> np.ndarray:
    t = start + sweep * np.linspace(0.0, 1.0, pts)
    return center + radius * np.exp(1j * t)


def stadium(a: complex, b: complex, half_height: float, max_edge: float | None = None) -> np.ndarray:
    """Counter-clockwise stadium around the segment [a, b]."""
    if max_edge is None:
        max_edge = half_height / 2
    d = b - a
    length = abs(d)
    u = d / length if length > 0 else 1.0 + 0j
    normal = 1j * u
    k = max(2, int(np.ceil(length / max_edge)) + 1)
    t = np.linspace(0.0, 1.0, k)[:-1]
    arc_pts = max(9, int(np.ceil(np.pi * half_height / max_edge)) + 1)
    phi = np.angle(-normal)
    lower = a - normal * half_height + d * t
    cap_b = _arc(b, half_height, phi, np.pi, arc_pts)[:-1]
    upper = b + normal * half_height - d * t
    cap_a = _arc(a, half_height, phi + np.pi, np.pi, arc_pts)[:-1]
    return np.concatenate([lower, cap_b, upper, cap_a])


def tube(curve: np.ndarray, radius: float, arc_pts: int = 33) -> np.ndarray:
    """Counter-clockwise closed contour at distance ``radius`` around a polyline."""
    c = np.asarray(curve, dtype=complex)
    tang = np.gradient(c)
    tang = tang / np.abs(tang)
    right = -1j * tang
    forward = c + radius * right
    backward = (c - radius * right)[::-1]
    cap_end = _arc(c[-1], radius, np.angle(right[-1]), np.pi, arc_pts)[1:-1]
    cap_start = _arc(c[0], radius, np.angle(-right[0]), np.pi, arc_pts)[1:-1]
    return np.concatenate([forward, cap_end, backward, cap_start])


def rectangle(lo: complex, hi: complex, max_edge: float) -> np.ndarray:
    """Counter-clockwise rectangle with corners lo (bottom-left) and hi (top-right)."""
    corners = [lo, complex(hi.real, lo.imag), hi, complex(lo.real, hi.imag)]
    pts = []
    for p, q in zip(corners, corners[1:] + corners[:1]):
        k = max(2, int(np.ceil(abs(q - p) / max_edge)) + 1)
        pts.append(p + (q - p) * np.linspace(0.0, 1.0, k)[:-1])
    return np.concatenate(pts)
