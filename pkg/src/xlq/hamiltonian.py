"""Superpotential, potential, weight and bound states of the deformed oscillator."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np
from scipy import integrate

from .errors import PolePointError
from .polycore import ModelParams, RealPoly, exceptional_poly, poly_roots, xi_x

X = RealPoly([0.0, 1.0])
POLE_GUARD = 1e-6


@dataclass(frozen=True, eq=False)
class RationalFunction:
    numerator: RealPoly
    denominator: RealPoly

    def __post_init__(self):
        if self.denominator.max_coeff() == 0:
            raise ZeroDivisionError("denominator is identically zero")

    def __call__(self, z):
        return self.numerator(z) / self.denominator(z)

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __neg__(self):
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return RationalFunction(
                self.numerator * other.numerator, self.denominator * other.denominator
            )
        return RationalFunction(self.numerator * other, self.denominator)

    __rmul__ = __mul__

    def deriv(self) -> "RationalFunction":
        n, d = self.numerator, self.denominator
        return RationalFunction(n.deriv() * d - n * d.deriv(), d * d)

    def cancel(self, factor: RealPoly, tol: float = 1e-9) -> "RationalFunction":
        """Divide numerator and denominator by a known common factor."""
        out = []
        for p in (self.numerator, self.denominator):
            q, r = p.divmod(factor)
            if r.max_coeff() > tol * p.max_coeff():
                raise ValueError("factor does not divide both polynomials")
            out.append(q)
        return RationalFunction(*out)

    def poles(self) -> np.ndarray:
        if self.denominator.degree < 1:
            return np.array([], dtype=complex)
        return poly_roots(self.denominator).roots

    def residue(self, z0: complex) -> complex:
        """Residue at a simple zero of the denominator."""
        return complex(self.numerator(z0) / self.denominator.deriv()(z0))

    def common_root_gap(self) -> float:
        """Smallest distance between a numerator root and a denominator root."""
        if self.numerator.degree < 1 or self.denominator.degree < 1:
            return np.inf
        rn = poly_roots(self.numerator).roots
        rd = poly_roots(self.denominator).roots
        return float(np.min(np.abs(rn[:, None] - rd[None, :])))


def _xi_pair(params: ModelParams) -> tuple[RealPoly, RealPoly]:
    return xi_x(params, 0), xi_x(params, 1)


def superpotential(params: ModelParams) -> RationalFunction:
    """W = x - (g+ell)/x - xi1'/xi1 + xi0'/xi0 over the denominator x xi1 xi0."""
    x0, x1 = _xi_pair(params)
    num = X * X * x1 * x0 - params.a * (x1 * x0) - X * x1.deriv() * x0 + X * x0.deriv() * x1
    return RationalFunction(num, X * x1 * x0)


def _u0_parts(params: ModelParams) -> tuple[RealPoly, RealPoly]:
    """Numerator B of U0 = B / (x xi0), and U0^2 + U0' over (x xi0)^2."""
    x0, _ = _xi_pair(params)
    b = -(X * X * x0) + params.a * x0 - X * x0.deriv()
    riccati = b * b + b.deriv() * X * x0 - b * (x0 + X * x0.deriv())
    return b, riccati


def potential(
    params: ModelParams, form: Literal["reduced", "intermediate"] = "reduced"
) -> RationalFunction:
    """V_ell with zero ground-state energy, built from one of two algebraic routes.

    ``reduced``: U0^2 + U0' - 4x xi1'/xi0 + 4 ell, over x^2 xi0^2.
    ``intermediate``: U0^2 + U0' + xi1''/xi1 + 2 U0 xi1'/xi1, over x^2 xi0^2 xi1.
    """
    x0, x1 = _xi_pair(params)
    b, riccati = _u0_parts(params)
    den = (X * x0) ** 2
    if form == "reduced":
        num = riccati + 4.0 * params.ell * den - 4.0 * X * x1.deriv() * X * X * x0
        return RationalFunction(num, den)
    if form == "intermediate":
        num = riccati * x1 + x1.deriv(2) * den + 2.0 * b * X * x0 * x1.deriv()
        return RationalFunction(num, den * x1)
    raise ValueError(f"unknown form {form!r}")


def susy_potential(params: ModelParams) -> RationalFunction:
    """W^2 - W' over the squared superpotential denominator (not reduced)."""
    w = superpotential(params)
    a, d = w.numerator, w.denominator
    return RationalFunction(a * a - a.deriv() * d + a * d.deriv(), d * d)


def susy_factorization_residual(params: ModelParams) -> float:
    """Coefficient residual of V_reduced - (W^2 - W') after cross-multiplying."""
    v = potential(params, "reduced")
    s = susy_potential(params)
    lhs = v.numerator * s.denominator
    rhs = s.numerator * v.denominator
    return (lhs - rhs).max_coeff() / max(lhs.max_coeff(), rhs.max_coeff())


def _guard(points: np.ndarray, singular: np.ndarray, radius: float):
    if singular.size == 0:
        return
    dist = np.min(np.abs(points[:, None] - singular[None, :]), axis=1)
    if np.any(dist < radius):
        raise PolePointError(f"point within {radius} of a singularity")


def verify_identity_12(params: ModelParams, points: Iterable[complex]) -> float:
    """Max |xi1''/xi1 + 2(x + (g+ell)/x) xi1'/xi1 - 4 ell| over points.

    This is the Laguerre equation of xi_ell(x^2; g+1) rewritten in x.
    """
    z = np.asarray(list(points), dtype=complex)
    _, x1 = _xi_pair(params)
    sing = [np.array([0j])]
    if x1.degree >= 1:
        sing.append(poly_roots(x1).roots)
    _guard(z, np.concatenate(sing), POLE_GUARD)
    d1 = x1.deriv()(z) / x1(z)
    d2 = x1.deriv(2)(z) / x1(z)
    res = d2 + 2.0 * (z + params.a / z) * d1 - 4.0 * params.ell
    return float(np.max(np.abs(res)))


@dataclass(frozen=True, eq=False)
class WeightFunction:
    """w(x) = x^(g+ell) exp(-x^2/2) / xi_ell(x^2; g); w^2 is the orthogonality weight."""

    params: ModelParams

    def __call__(self, x):
        x = np.asarray(x)
        return x ** self.params.a * np.exp(-0.5 * x * x) / xi_x(self.params, 0)(x)


def weight_function(params: ModelParams) -> WeightFunction:
    return WeightFunction(params)


@dataclass(frozen=True, eq=False)
class Wavefunction:
    """Unnormalized bound state x^(g+ell) e^(-x^2/2) P(x) / xi(x^2; g)."""

    n: int
    params: ModelParams
    prefactor_power: float
    gaussian_rate: float
    xi_denom: RealPoly
    poly: RealPoly

    @property
    def energy(self) -> float:
        return 4.0 * self.n

    def __call__(self, x):
        x = np.asarray(x)
        return (
            x ** self.prefactor_power
            * np.exp(-self.gaussian_rate * x * x)
            * self.poly(x)
            / self.xi_denom(x)
        )

    def log_derivative(self, x):
        """psi'/psi, assembled factor by factor."""
        x = np.asarray(x)
        return (
            self.prefactor_power / x
            - 2.0 * self.gaussian_rate * x
            + self.poly.deriv()(x) / self.poly(x)
            - self.xi_denom.deriv()(x) / self.xi_denom(x)
        )

    def node_count(self, x_max: float | None = None, points: int = 20001) -> int:
        if x_max is None:
            x_max = np.sqrt(4 * self.n + 2 * self.prefactor_power) + 8.0
        xs = np.linspace(1e-6, x_max, points)
        s = np.sign(self.poly(xs))
        s = s[s != 0]
        return int(np.count_nonzero(s[1:] != s[:-1]))


def wavefunction(n: int, params: ModelParams) -> Wavefunction:
    if n < 0:
        raise ValueError("n must be non-negative")
    return Wavefunction(
        n=n,
        params=params,
        prefactor_power=params.a,
        gaussian_rate=0.5,
        xi_denom=xi_x(params, 0),
        poly=exceptional_poly(n, params),
    )


def _tail_cutoff(log_f, x_peak: float, drop: float = 37.0) -> float:
    """First x beyond the peak where log f has fallen by ``drop`` (about 1e-16)."""
    ref = log_f(x_peak)
    x = x_peak
    while log_f(x) > ref - drop:
        x += 0.25
    return x


def overlap(n: int, m: int, params: ModelParams) -> tuple[float, float]:
    """(integral of w^2 P_n P_m on (0, inf), sqrt(norm_n * norm_m))."""
    w = weight_function(params)
    pn, pm = exceptional_poly(n, params), exceptional_poly(m, params)
    x0 = xi_x(params, 0)
    deg = pn.degree + pm.degree

    def log_abs(x):
        return (2 * params.a + deg) * np.log(x) - x * x - 2 * np.log(x0(x))

    x_peak = np.sqrt(params.a + deg / 2)
    x_max = _tail_cutoff(log_abs, x_peak)

    def integral(f):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            val, _ = integrate.quad(f, 0.0, x_max, epsabs=0.0, epsrel=1e-12, limit=500)
        return val

    cross = integral(lambda x: w(x) ** 2 * pn(x) * pm(x))
    nn = integral(lambda x: (w(x) * pn(x)) ** 2)
    mm = integral(lambda x: (w(x) * pm(x)) ** 2)
    return cross, float(np.sqrt(nn * mm))
