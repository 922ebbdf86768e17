"""Polynomial building blocks: Laguerre, the deforming polynomial xi, and the
exceptional X_ell Laguerre polynomials, plus a polished complex root finder.

Polynomials are dense float coefficient arrays in ascending degree.  The
variable tag records what the argument means: ``x`` is the physical
coordinate, ``u`` stands for ``x**2`` and ``y`` is the bare argument of a
classical Laguerre polynomial.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import ConvergenceError, NullspaceDimensionError

ROOT_RESIDUAL_TOL = 1e-10
PAIRING_TOL = 1e-8
KERNEL_GAP = 1e6

_VARIABLES = ("x", "u", "y")


@dataclass(frozen=True)
class ModelParams:
    """One member of the deformed radial oscillator family (hbar = 2m = 1)."""

    g: float
    ell: int

    def __post_init__(self):
        if not np.isfinite(self.g) or self.g <= 0:
            raise ValueError(f"coupling g must be positive, got {self.g}")
        if int(self.ell) != self.ell or self.ell < 0:
            raise ValueError(f"ell must be a non-negative integer, got {self.ell}")
        object.__setattr__(self, "g", float(self.g))
        object.__setattr__(self, "ell", int(self.ell))

    @property
    def a(self) -> float:
        """Residue of the momentum function at the origin, g + ell."""
        return self.g + self.ell


@dataclass(frozen=True, eq=False)
class RealPoly:
    """Dense real polynomial, coefficients in ascending degree."""

    coeffs: np.ndarray
    var: str = "x"

    def __post_init__(self):
        if self.var not in _VARIABLES:
            raise ValueError(f"unknown variable tag {self.var!r}")
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=float)).copy()
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a non-empty 1-d sequence")
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else c[:1]
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> float:
        return float(self.coeffs[-1])

    def __call__(self, z):
        return npoly.polyval(z, self.coeffs)

    def __repr__(self):
        return f"RealPoly({list(self.coeffs)!r}, var={self.var!r})"

    def _check(self, other: "RealPoly"):
        if other.var != self.var:
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")

    def __add__(self, other):
        if isinstance(other, RealPoly):
            self._check(other)
            return RealPoly(npoly.polyadd(self.coeffs, other.coeffs), self.var)
        return RealPoly(npoly.polyadd(self.coeffs, [float(other)]), self.var)

    __radd__ = __add__

    def __neg__(self):
        return RealPoly(-self.coeffs, self.var)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RealPoly):
            self._check(other)
            return RealPoly(npoly.polymul(self.coeffs, other.coeffs), self.var)
        return RealPoly(self.coeffs * float(other), self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = RealPoly([1.0], self.var)
        for _ in range(k):
            out = out * self
        return out

    def deriv(self, m: int = 1) -> "RealPoly":
        if self.degree < m:
            return RealPoly([0.0], self.var)
        return RealPoly(npoly.polyder(self.coeffs, m), self.var)

    def divmod(self, other: "RealPoly") -> tuple["RealPoly", "RealPoly"]:
        self._check(other)
        q, r = npoly.polydiv(self.coeffs, other.coeffs)
        return RealPoly(q, self.var), RealPoly(r, self.var)

    def monic(self) -> "RealPoly":
        return RealPoly(self.coeffs / self.leading, self.var)

    def max_coeff(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def shift_power(self, k: int) -> "RealPoly":
        """Multiply by ``var**k``."""
        return RealPoly(np.concatenate([np.zeros(k), self.coeffs]), self.var)

    def in_x(self) -> "RealPoly":
        """Substitute u = x**2 (only for polynomials tagged ``u``)."""
        if self.var == "x":
            return self
        if self.var != "u":
            raise ValueError("only u-polynomials can be rewritten in x")
        c = np.zeros(2 * len(self.coeffs) - 1)
        c[::2] = self.coeffs
        return RealPoly(c, "x")

    def is_even(self, tol: float = 0.0) -> bool:
        odd = self.coeffs[1::2]
        return bool(np.all(np.abs(odd) <= tol * self.max_coeff()))

    def even_part_in_u(self) -> "RealPoly":
        """Inverse of :meth:`in_x` for even x-polynomials."""
        return RealPoly(self.coeffs[::2], "u")


@dataclass(frozen=True)
class RootSet:
    roots: np.ndarray
    multiplicity: np.ndarray
    residual_bound: float
    var: str = "x"

    @property
    def total(self) -> int:
        return int(np.sum(self.multiplicity))

    def real(self, tol: float = PAIRING_TOL) -> np.ndarray:
        r = self.roots
        return np.sort(r[np.abs(r.imag) <= tol].real)

    def off_axis(self, tol: float = PAIRING_TOL) -> np.ndarray:
        r = self.roots
        return r[np.abs(r.imag) > tol]


def laguerre(n: int, alpha: float) -> RealPoly:
    """Associated Laguerre polynomial L_n^(alpha)(y) by three-term recurrence."""
    if n < 0:
        raise ValueError("n must be non-negative")
    prev = np.array([1.0])
    if n == 0:
        return RealPoly(prev, "y")
    cur = np.array([1.0 + alpha, -1.0])
    for k in range(1, n):
        nxt = npoly.polysub(
            npoly.polymul([2 * k + 1 + alpha, -1.0], cur), (k + alpha) * prev
        ) / (k + 1)
        prev, cur = cur, nxt
    return RealPoly(cur, "y")


def xi(params: ModelParams, shift: int = 0) -> RealPoly:
    """xi_ell(u; g + shift) = L_ell^(g + shift + ell - 3/2)(-u), as a polynomial in u."""
    if shift not in (0, 1):
        raise ValueError("shift must be 0 or 1")
    lag = laguerre(params.ell, params.g + shift + params.ell - 1.5)
    signs = (-1.0) ** np.arange(lag.degree + 1)
    return RealPoly(lag.coeffs * signs, "u")


def xi_x(params: ModelParams, shift: int = 0) -> RealPoly:
    return xi(params, shift).in_x()


def xl_operator(n: int, params: ModelParams):
    """Return L with L[P] = x*xi_g * (lhs of the X_ell ODE for level n).

    Multiplying the ODE by x*xi_ell(x^2;g) clears every denominator:

        x xi P'' + 2(-x^2 xi + (g+ell) xi - x xi') P' + (4(n-ell) x xi + 4 x^2 xi1') P
    """
    x0 = xi_x(params, 0)
    x1 = xi_x(params, 1)
    X = RealPoly([0.0, 1.0])
    c2 = X * x0
    c1 = 2.0 * (-(X * X * x0) + params.a * x0 - X * x0.deriv())
    c0 = 4.0 * (n - params.ell) * (X * x0) + 4.0 * (X * X * x1.deriv())

    def apply(p: RealPoly) -> RealPoly:
        return c2 * p.deriv(2) + c1 * p.deriv() + c0 * p

    return apply


def xl_ode_residual(n: int, params: ModelParams, p: RealPoly) -> float:
    """Largest residual coefficient of the cleared X_ell ODE, relative to p."""
    return xl_operator(n, params)(p).max_coeff() / p.max_coeff()


def exceptional_poly(n: int, params: ModelParams) -> RealPoly:
    """Monic exceptional Laguerre polynomial hat P_{ell,n}(x^2; g) in x.

    Built as the one-dimensional kernel of the cleared X_ell differential
    operator restricted to even polynomials of degree 2(n + ell).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    m = n + params.ell
    op = xl_operator(n, params)
    cols = [op(RealPoly(np.eye(2 * m + 1)[2 * k])).coeffs for k in range(m + 1)]
    rows = max(len(c) for c in cols)
    mat = np.zeros((rows, m + 1))
    for k, c in enumerate(cols):
        mat[: len(c), k] = c
    scale = np.linalg.norm(mat, axis=0)
    scale[scale == 0] = 1.0
    _, sv, vt = np.linalg.svd(mat / scale)
    if m == 0:
        # a constant is annihilated iff its image vanishes
        if sv[0] > 1e-12:
            raise NullspaceDimensionError("no constant solution for this level")
        vec = np.array([1.0])
    else:
        smallest, second = sv[-1], sv[-2]
        if smallest * KERNEL_GAP > second:
            raise NullspaceDimensionError(
                f"kernel not one-dimensional: singular values {second:.3e}, {smallest:.3e}"
            )
        vec = vt[-1] / scale
    c = np.zeros(2 * m + 1)
    c[::2] = vec
    p = RealPoly(c)
    if p.degree != 2 * m:
        raise NullspaceDimensionError(f"kernel vector has degree {p.degree}, expected {2 * m}")
    return p.monic()


def _polish(coeffs: np.ndarray, z: complex, order: int = 0, iters: int = 60) -> complex:
    """Newton on the order-th derivative (order = multiplicity - 1)."""
    c = npoly.polyder(coeffs, order) if order else coeffs
    dc = npoly.polyder(c)
    for _ in range(iters):
        d = npoly.polyval(z, dc)
        if d == 0:
            break
        step = npoly.polyval(z, c) / d
        z = z - step
        if abs(step) <= 4 * np.finfo(float).eps * max(1.0, abs(z)):
            break
    return z


def _residual(coeffs: np.ndarray, z: complex) -> float:
    scale = max(np.max(np.abs(coeffs)), npoly.polyval(abs(z), np.abs(coeffs)))
    return float(abs(npoly.polyval(z, coeffs)) / scale)


def _cluster(raw: np.ndarray, tol: float) -> tuple[list[complex], list[int]]:
    roots: list[complex] = []
    mult: list[int] = []
    used = np.zeros(len(raw), dtype=bool)
    for i, z in enumerate(raw):
        if used[i]:
            continue
        close = (~used) & (np.abs(raw - z) <= tol * max(1.0, abs(z)))
        used |= close
        roots.append(complex(np.mean(raw[close])))
        mult.append(int(np.count_nonzero(close)))
    return roots, mult


def _pair_conjugates(roots: np.ndarray, tol: float) -> np.ndarray:
    out = roots.astype(complex).copy()
    small = np.abs(out.imag) <= tol * np.maximum(1.0, np.abs(out))
    out[small] = out[small].real
    upper = np.flatnonzero(out.imag > 0)
    lower = list(np.flatnonzero(out.imag < 0))
    for i in upper:
        if not lower:
            break
        j = min(lower, key=lambda k: abs(out[k] - np.conj(out[i])))
        if abs(out[j] - np.conj(out[i])) <= tol * max(1.0, abs(out[i])):
            z = 0.5 * (out[i] + np.conj(out[j]))
            out[i], out[j] = z, np.conj(z)
            lower.remove(j)
    return out


def poly_roots(p: RealPoly, cluster_tol: float = 1e-7) -> RootSet:
    """All complex roots: companion-matrix eigenvalues polished by Newton.

    Even x-polynomials are solved in u = x**2 and mapped back as +-sqrt(u),
    which keeps the +-x symmetry exact.
    """
    if p.degree < 1:
        raise ValueError("root finding needs degree >= 1")
    if p.var == "x" and p.degree >= 2 and p.is_even():
        inner = poly_roots(p.even_part_in_u(), cluster_tol)
        w = np.sqrt(inner.roots.astype(complex))
        roots = np.concatenate([w, -w])
        mult = np.concatenate([inner.multiplicity, inner.multiplicity])
        # a root u = 0 of multiplicity m is a root x = 0 of multiplicity 2m
        zero = np.flatnonzero(inner.roots == 0)
        if zero.size:
            keep = np.ones(len(roots), dtype=bool)
            keep[len(w) + zero] = False
            mult[zero] *= 2
            roots, mult = roots[keep], mult[keep]
        res = max((_residual(p.coeffs, z) for z in roots), default=0.0)
        if res > ROOT_RESIDUAL_TOL:
            raise ConvergenceError(f"root residual {res:.2e} above tolerance")
        return RootSet(roots, mult, res, "x")

    coeffs = p.coeffs
    raw = npoly.polyroots(coeffs).astype(complex)
    centers, mult = _cluster(raw, cluster_tol)
    polished = np.array(
        [_polish(coeffs, z, m - 1) for z, m in zip(centers, mult)], dtype=complex
    )
    polished = _pair_conjugates(polished, PAIRING_TOL)
    res = max(_residual(coeffs, z) for z in polished)
    if res > ROOT_RESIDUAL_TOL:
        raise ConvergenceError(f"root residual {res:.2e} above tolerance")
    return RootSet(polished, np.array(mult), res, p.var)


def conjugate_pairing_defect(roots: Sequence[complex]) -> float:
    """Largest distance from a root's conjugate to its nearest root."""
    r = np.asarray(roots, dtype=complex)
    if r.size == 0:
        return 0.0
    return float(max(np.min(np.abs(r - np.conj(z))) for z in r))
