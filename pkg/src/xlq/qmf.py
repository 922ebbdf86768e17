"""Quantum momentum function q = psi'/psi: poles, residues and exact quantization."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import partial
from typing import Literal

import numpy as np

from .contour import path_integral, residue_at, residue_at_infinity, stadium, winding_number
from .errors import AmbiguityError, PolePointError
from .hamiltonian import potential, wavefunction
from .polycore import PAIRING_TOL, ModelParams, RealPoly, poly_roots, xi_x

PoleKind = Literal[
    "origin", "fixed_xi_g", "fixed_xi_g1", "moving_real", "moving_imag", "infinity"
]

EVAL_GUARD = 1e-8
QUANT_WINDOW = 0.05
STADIUM_HALF_HEIGHT = 0.1
STADIUM_PAD = 0.05


@dataclass(frozen=True)
class PoleSpec:
    location: complex
    residue: complex
    kind: PoleKind


@dataclass
class ResidueReport:
    poles: list[PoleSpec]
    residue_at_infinity: complex
    closure_defect: complex
    energy: float = 0.0

    def of_kind(self, kind: PoleKind) -> list[PoleSpec]:
        return [p for p in self.poles if p.kind == kind]

    def count(self, kind: PoleKind) -> int:
        return len(self.of_kind(kind))

    @property
    def physical_nodes(self) -> int:
        """Moving real poles on the positive half-line."""
        return sum(1 for p in self.of_kind("moving_real") if p.location.real > 0)

    @property
    def infinity_coefficient(self) -> complex:
        """Coefficient of 1/x in the large-x expansion, i.e. minus the residue at infinity."""
        return -self.residue_at_infinity


def _singularities(n: int, params: ModelParams) -> tuple[np.ndarray, np.ndarray]:
    """(zeros of xi(x^2; g), zeros of hat P_{ell,n}) in the x-plane."""
    psi = wavefunction(n, params)
    fixed = poly_roots(psi.xi_denom).roots if psi.xi_denom.degree else np.array([], complex)
    moving = poly_roots(psi.poly).roots if psi.poly.degree else np.array([], complex)
    return fixed, moving


def _q(psi, z):
    return psi.log_derivative(np.asarray(z, dtype=complex))


def qmf_eval(n: int, params: ModelParams, x: complex) -> complex:
    """q_ell(x) = Psi_n'(x) / Psi_n(x) at a regular point."""
    fixed, moving = _singularities(n, params)
    sing = np.concatenate([[0j], fixed, moving])
    if np.min(np.abs(sing - x)) < EVAL_GUARD:
        raise PolePointError(f"x = {x} is within {EVAL_GUARD} of a pole of q")
    return complex(_q(wavefunction(n, params), x))


def qmf_function(n: int, params: ModelParams):
    """Vectorised q for repeated contour evaluations (no pole guard)."""
    return partial(_q, wavefunction(n, params))


def riccati_residual(n: int, params: ModelParams, x) -> np.ndarray:
    """q^2 + q' + E - V at E = 4n, with q' taken analytically."""
    psi = wavefunction(n, params)
    z = np.asarray(x, dtype=complex)

    def dlog2(p: RealPoly):
        r = p.deriv()(z) / p(z)
        return p.deriv(2)(z) / p(z) - r * r

    q = psi.log_derivative(z)
    dq = -params.a / z**2 - 1.0 + dlog2(psi.poly) - dlog2(psi.xi_denom)
    return q * q + dq + 4.0 * n - potential(params)(z)


def _isolation_radius(loc: complex, others: np.ndarray) -> float:
    d = np.abs(others - loc)
    d = d[d > 0]
    return 0.4 * float(np.min(d)) if d.size else 1.0


def classify_poles(n: int, params: ModelParams, imag_tol: float = PAIRING_TOL) -> ResidueReport:
    """Every pole of q with its numerically integrated residue."""
    q = qmf_function(n, params)
    fixed, moving = _singularities(n, params)
    everything = np.concatenate([[0j], fixed, moving])
    entries: list[tuple[complex, PoleKind]] = [(0j, "origin")]
    entries += [(z, "fixed_xi_g") for z in fixed]
    entries += [
        (z, "moving_real" if abs(z.imag) <= imag_tol else "moving_imag") for z in moving
    ]
    poles = [
        PoleSpec(complex(z), residue_at(q, z, _isolation_radius(z, everything)), kind)
        for z, kind in entries
    ]
    radius = 2.0 * float(np.max(np.abs(everything))) + 5.0
    res_inf = residue_at_infinity(q, radius)
    closure = sum(p.residue for p in poles) + res_inf
    return ResidueReport(poles, res_inf, closure, energy=4.0 * n)


def classical_turning_points(params: ModelParams, energy: float) -> tuple[float, float]:
    """Outermost positive roots of E = V(x); degenerate at the well bottom."""
    v = potential(params)
    poly = energy * v.denominator - v.numerator
    roots = poly_roots(poly).roots
    pos = np.sort(roots[(np.abs(roots.imag) <= 1e-7) & (roots.real > 0)].real)
    if pos.size >= 2:
        return float(pos[0]), float(pos[-1])
    xs = np.linspace(0.05, np.sqrt(energy + 2 * params.a) + 6, 20001)
    xm = float(xs[np.argmin(v(xs))])
    return xm, xm


def quantization_contour(n: int, params: ModelParams) -> np.ndarray:
    """Stadium around the classical region that excludes every non-nodal pole."""
    x1, x2 = classical_turning_points(params, 4.0 * n)
    fixed, moving = _singularities(n, params)
    nodes = moving[(np.abs(moving.imag) <= PAIRING_TOL) & (moving.real > 0)]
    foreign = np.concatenate(
        [[0j], fixed, moving[~((np.abs(moving.imag) <= PAIRING_TOL) & (moving.real > 0))]]
    )
    h, pad = STADIUM_HALF_HEIGHT, STADIUM_PAD
    for _ in range(20):
        a, b = max(x1 - pad, 0.5 * x1), x2 + pad
        path = stadium(complex(a), complex(b), min(h, 0.5 * a))
        if all(winding_number(path, z) == 0 for z in foreign) and all(
            winding_number(path, z) == 1 for z in nodes
        ):
            return path
        h *= 0.5
    raise AmbiguityError("could not isolate the nodal poles with a stadium contour")


def exact_quantization(n: int, params: ModelParams) -> int:
    """(1/2 pi i) of the integral of q around the classical region, rounded."""
    value = quantization_integral(n, params)
    k = int(np.rint(value.real))
    if abs(value - k) > QUANT_WINDOW:
        raise AmbiguityError(f"quantization integral {value} is not near an integer")
    return k


def quantization_integral(n: int, params: ModelParams) -> complex:
    path = quantization_contour(n, params)
    return path_integral(qmf_function(n, params), path) / (2j * np.pi)
