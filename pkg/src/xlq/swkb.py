"""SWKB integral of the deformed oscillator and its complete contour decomposition.

The integrand p(x) = sqrt(E - W(x)^2) is taken on the sheet

    p(x) = i W(x) sqrt(1 - E / W(x)^2)        (principal square root)

which is the sheet fixed by the E -> 0 boundary condition p -> i W.  Its
branch cuts are the preimages under W of the real segment [-sqrt(E), sqrt(E)]:
one curve per sheet of W^{-1}, i.e. deg(numerator of W) curves in total.  Two
of them are real (the classical region and its mirror image); the rest lie
off the real axis.  Approached from below, p is positive on the classical
region, so the counter-clockwise integral around that cut equals
2 * integral_{x1}^{x2} sqrt(E - W^2) dx.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import optimize
from scipy.spatial import cKDTree

from .contour import (
    path_integral,
    rectangle,
    residue_at,
    residue_at_infinity,
    stadium,
    tube,
    winding_number,
)
from .errors import BracketError, BranchJumpError, PairingError, TurningPointError
from .hamiltonian import RationalFunction, superpotential
from .polycore import PAIRING_TOL, ModelParams, poly_roots, xi_x
from .qmf import PoleSpec

TOL_LEDGER = 1e-6
ENDPOINT_RESIDUAL_TOL = 1e-8
MAX_TRACE_POINTS = 2**14 + 1


def p_swkb(w: RationalFunction, energy: float, z):
    """Canonical-sheet SWKB integrand for a superpotential ``w``."""
    z = np.asarray(z, dtype=complex)
    wz = w(z)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = 1j * wz * np.sqrt(1.0 - energy / (wz * wz))
    # W = 0 only happens on a cut; take the lower-lip value there
    return np.where(wz == 0, np.sqrt(complex(energy)), val)


class SheetTracker:
    """Phase-continuation token for sqrt(E - W^2) along one path.

    Each new point takes the sign of the principal root closest to the
    previous value; a turn of more than pi/2 between neighbours means the
    step was too coarse (or the path hit a branch point).
    """

    def __init__(self, params: ModelParams, energy: float, anchor: complex, value: complex):
        self.w = superpotential(params)
        self.energy = energy
        self.point = complex(anchor)
        self.value = complex(value)

    @classmethod
    def anchored(cls, params: ModelParams, energy: float) -> "SheetTracker":
        """Start just below the classical-region midpoint, on the positive branch."""
        x1, x2 = turning_points(params, energy)
        mid = 0.5 * (x1 + x2)
        w = superpotential(params)
        return cls(params, energy, complex(mid), complex(np.sqrt(energy - w(mid) ** 2)))

    def _candidate(self, z: complex) -> complex:
        r = np.sqrt(complex(self.energy - self.w(z) ** 2))
        return r if abs(r - self.value) <= abs(r + self.value) else -r

    def _jump(self, new: complex) -> bool:
        if self.value == 0 or new == 0:
            return False
        return abs(np.angle(new / self.value)) > np.pi / 2

    def step(self, z: complex, depth: int = 0) -> complex:
        new = self._candidate(z)
        if self._jump(new):
            if depth >= 30:
                raise BranchJumpError(f"phase jump near {z}")
            self.step(0.5 * (self.point + z), depth + 1)
            return self.step(z, depth + 1)
        self.point, self.value = complex(z), new
        return new

    def walk(self, path: np.ndarray) -> np.ndarray:
        return np.array([self.step(z) for z in path])


def swkb_integrand(params: ModelParams, energy: float, x, branch_state: SheetTracker | None = None):
    """p_SWKB(x); canonical sheet, or continued along a path when a tracker is given."""
    if branch_state is None:
        return p_swkb(superpotential(params), energy, x)
    return branch_state.step(complex(x))


def _cleared_u(params: ModelParams, energy: float):
    """E D^2 - A^2 as a polynomial in u = x^2, where W = A / D."""
    w = superpotential(params)
    q = energy * w.denominator * w.denominator - w.numerator * w.numerator
    return q.even_part_in_u(), q


def turning_points(params: ModelParams, energy: float) -> tuple[float, float]:
    """Real positive roots x1 < x2 of E = W^2 bounding the classical region."""
    if energy <= 0:
        raise TurningPointError("turning points need E > 0")
    qu, _ = _cleared_u(params, energy)
    roots = poly_roots(qu).roots
    pos = np.sort(roots[(np.abs(roots.imag) <= 1e-9 * np.maximum(1, np.abs(roots))) & (roots.real > 0)].real)
    if pos.size != 2:
        raise TurningPointError(f"expected 2 positive turning points, found {pos.size}")
    x1, x2 = np.sqrt(pos)
    w = superpotential(params)
    if not energy - w(0.5 * (x1 + x2)) ** 2 > 0:
        raise TurningPointError("E - W^2 is not positive between the turning points")
    return float(x1), float(x2)


def swkb_integral(params: ModelParams, energy: float, tol: float = 1e-14) -> float:
    """(1/pi) * integral of sqrt(E - W^2) between the turning points.

    x = h sin(theta) + c turns the square-root endpoints into smooth zeros, so
    Gauss-Legendre in theta converges spectrally.
    """
    if energy == 0:
        return 0.0
    x1, x2 = turning_points(params, energy)
    w = superpotential(params)
    h, c = 0.5 * (x2 - x1), 0.5 * (x2 + x1)

    def estimate(m: int) -> float:
        t, wt = np.polynomial.legendre.leggauss(m)
        theta = 0.5 * np.pi * t
        x = h * np.sin(theta) + c
        f = np.sqrt(np.maximum(energy - w(x) ** 2, 0.0)) * h * np.cos(theta)
        return float(0.5 * np.pi * np.dot(wt, f) / np.pi)

    m, prev = 32, estimate(32)
    while m < 8192:
        m *= 2
        cur = estimate(m)
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur
        prev = cur
    return prev


# ---------------------------------------------------------------- cut tracing


@dataclass
class BranchCut:
    endpoints: tuple[complex, complex]
    contour_points: np.ndarray
    pairing_score: float
    curve: np.ndarray = field(repr=False)
    contribution: complex = 0j
    line_contribution: complex = 0j

    @property
    def is_real(self) -> bool:
        return bool(np.max(np.abs(self.curve.imag)) <= 1e-9)


@dataclass
class _Traced:
    theta: np.ndarray
    curves: np.ndarray  # shape (n_curves, n_theta)
    score: np.ndarray  # per-curve worst decisiveness ratio


def _roots_at(w: RationalFunction, s: float) -> np.ndarray:
    return poly_roots(w.numerator - s * w.denominator).roots


def _newton(w: RationalFunction, s, x0: np.ndarray, iters: int = 40):
    """Vectorised Newton on A(x) - s D(x) = 0; returns (roots, converged)."""
    a, d = w.numerator, w.denominator
    da, dd = a.deriv(), d.deriv()
    x = np.array(x0, dtype=complex)
    for _ in range(iters):
        step = (a(x) - s * d(x)) / (da(x) - s * dd(x))
        x = x - step
        if np.all(np.abs(step) <= 1e-15 * np.maximum(1.0, np.abs(x))):
            return x, True
    return x, bool(np.all(np.abs(step) <= 1e-11 * np.maximum(1.0, np.abs(x))))


def _decisiveness(guess: np.ndarray, roots: np.ndarray) -> np.ndarray:
    """Nearest-other-root distance over own displacement, per curve (axis 0)."""
    gaps = np.abs(roots[:, None, ...] - roots[None, :, ...])
    idx = np.arange(roots.shape[0])
    gaps[idx, idx, ...] = np.inf
    nearest = np.min(gaps, axis=1)
    moved = np.abs(roots - guess)
    with np.errstate(divide="ignore"):
        return np.where(moved > 0, nearest / moved, np.inf)


_MIN_STEP_SCORE = 4.0


def _advance(w, energy, x, th0, th1, depth=0):
    """Continue every root from theta0 to theta1, halving the step when unsure."""
    s0, s1 = np.sqrt(energy) * np.cos(th0), np.sqrt(energy) * np.cos(th1)
    guess = x + (s1 - s0) / w.deriv()(x)
    new, ok = _newton(w, s1, guess)
    score = float(np.min(_decisiveness(guess, new))) if x.size > 1 else np.inf
    if ok and score >= _MIN_STEP_SCORE:
        return new, score
    if depth >= 14:
        raise PairingError(f"cut tracing ambiguous near theta = {th1:.6f}")
    mid = 0.5 * (th0 + th1)
    xm, sc1 = _advance(w, energy, x, th0, mid, depth + 1)
    xe, sc2 = _advance(w, energy, xm, mid, th1, depth + 1)
    return xe, min(sc1, sc2)


def _trace(w: RationalFunction, energy: float, points: int) -> _Traced:
    """Follow every root of W(x) = sqrt(E) cos(theta) from theta = pi down to 0."""
    theta = np.pi * (1.0 - np.linspace(0.0, 1.0, points))
    cur = _roots_at(w, -np.sqrt(energy))
    curves = np.empty((cur.size, points), dtype=complex)
    curves[:, 0] = cur
    score = np.inf
    for k in range(1, points):
        cur, sc = _advance(w, energy, cur, theta[k - 1], theta[k])
        curves[:, k] = cur
        score = min(score, sc)
    return _Traced(theta, curves, np.full(cur.size, score))


def _refine(w: RationalFunction, energy: float, tr: _Traced) -> _Traced:
    """Insert midpoints, solving all of them at once from left-neighbour predictors."""
    th = tr.theta
    mid = 0.5 * (th[:-1] + th[1:])
    s_left = np.sqrt(energy) * np.cos(th[:-1])
    s_mid = np.sqrt(energy) * np.cos(mid)
    left = tr.curves[:, :-1]
    guess = left + (s_mid - s_left)[None, :] / w.deriv()(left)
    new, ok = _newton(w, s_mid[None, :], guess)
    score = np.min(_decisiveness(guess, new)) if new.shape[0] > 1 else np.inf
    if not ok or score < _MIN_STEP_SCORE:
        return _trace(w, energy, 2 * th.size - 1)
    curves = np.empty((new.shape[0], 2 * th.size - 1), dtype=complex)
    curves[:, ::2] = tr.curves
    curves[:, 1::2] = new
    theta = np.empty(2 * th.size - 1)
    theta[::2], theta[1::2] = th, mid
    return _Traced(theta, curves, np.minimum(tr.score, score))


def _line_contribution(w: RationalFunction, energy: float, tr: _Traced) -> np.ndarray:
    """Jump integral across each cut: int_0^pi 2E sin^2(theta) / W'(x(theta)) dtheta."""
    dw = w.deriv()
    sin2 = np.sin(tr.theta) ** 2
    vals = 2.0 * energy * sin2[None, :] / dw(tr.curves)
    step = np.pi / (tr.theta.size - 1)
    return step * np.sum(vals, axis=1)


def trace_cuts(params: ModelParams, energy: float, tol: float = 1e-12, start: int = 129):
    """Trace all cut curves, doubling resolution until the jump integrals settle."""
    w = superpotential(params)
    tr = _trace(w, energy, start)
    prev = _line_contribution(w, energy, tr)
    while tr.theta.size < MAX_TRACE_POINTS:
        tr = _refine(w, energy, tr)
        cur = _line_contribution(w, energy, tr)
        if np.max(np.abs(cur - prev)) <= tol * max(1.0, np.max(np.abs(cur))):
            return w, tr, cur
        prev = cur
    return w, tr, prev


def _pole_sets(params: ModelParams) -> tuple[np.ndarray, np.ndarray]:
    """(zeros of xi(x^2; g), zeros of xi(x^2; g+1))."""
    if params.ell == 0:
        return np.array([], complex), np.array([], complex)
    return poly_roots(xi_x(params, 0)).roots, poly_roots(xi_x(params, 1)).roots


def _min_distance(a: np.ndarray, b: np.ndarray) -> float:
    if a.size == 0 or b.size == 0:
        return np.inf
    tree = cKDTree(np.column_stack([b.real, b.imag]))
    d, _ = tree.query(np.column_stack([a.real, a.imag]))
    return float(np.min(d))


def _tube_radius(curve: np.ndarray, obstacles: np.ndarray, endpoints) -> float:
    sep = abs(endpoints[1] - endpoints[0])
    gap = _min_distance(curve, obstacles)
    return float(min(0.1 * sep, 0.3 * gap))


def _cut_objects(params: ModelParams, energy: float) -> list[BranchCut]:
    w, tr, line = trace_cuts(params, energy)
    fixed_g, fixed_g1 = _pole_sets(params)
    poles = np.concatenate([[0j], fixed_g, fixed_g1])
    cuts = []
    for i, curve in enumerate(tr.curves):
        others = np.concatenate([np.delete(tr.curves, i, axis=0).ravel(), poles])
        ends = (complex(curve[0]), complex(curve[-1]))
        radius = _tube_radius(curve, others, ends)
        contour = tube(curve, radius)
        contrib = path_integral(lambda z: p_swkb(w, energy, z), contour)
        cuts.append(
            BranchCut(ends, contour, float(tr.score[i]), curve, contrib, complex(line[i]))
        )
    return cuts


def branch_cuts_off_axis(params: ModelParams, energy: float) -> list[BranchCut]:
    """Cuts of p_SWKB away from the real line, each with its enclosing contour."""
    if energy <= 0:
        raise TurningPointError("branch cuts need E > 0")
    _, q = _cleared_u(params, energy)
    roots = poly_roots(q).roots
    off = roots[np.abs(roots.imag) > 1e-9 * np.maximum(1, np.abs(roots))]
    if off.size % 2:
        raise PairingError(f"odd number ({off.size}) of off-axis branch points")
    cuts = [c for c in _cut_objects(params, energy) if not c.is_real]
    if 2 * len(cuts) != off.size:
        raise PairingError(
            f"{off.size} off-axis branch points but {len(cuts)} traced cuts"
        )
    scale = np.max(np.abs(q.coeffs))
    for c in cuts:
        for z in c.endpoints:
            res = abs(q(z)) / max(scale, np.polynomial.polynomial.polyval(abs(z), np.abs(q.coeffs)))
            if res > ENDPOINT_RESIDUAL_TOL:
                raise PairingError(f"cut endpoint {z} is not a branch point (residual {res:.1e})")
    return cuts


# ------------------------------------------------------- residue at infinity


def _series_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.convolve(a, b)[: a.size]


def _series_inv(a: np.ndarray) -> np.ndarray:
    out = np.zeros_like(a)
    out[0] = 1.0 / a[0]
    for k in range(1, a.size):
        out[k] = -np.dot(a[1 : k + 1], out[k - 1 :: -1][:k]) / a[0]
    return out


def _series_sqrt(a: np.ndarray) -> np.ndarray:
    """Square root with constant term sqrt(a[0]) (principal)."""
    out = np.zeros_like(a)
    out[0] = np.sqrt(a[0])
    for k in range(1, a.size):
        acc = np.dot(out[1:k], out[k - 1 : 0 : -1]) if k > 1 else 0.0
        out[k] = (a[k] - acc) / (2 * out[0])
    return out


def _tw_series(params: ModelParams, order: int) -> np.ndarray:
    """Power series of t * W(1/t) from the pole decomposition of W."""
    fixed_g, fixed_g1 = _pole_sets(params)
    f = np.zeros(order, dtype=complex)
    f[0] = 1.0
    f[2] -= params.a
    k = np.arange(order - 2)
    for c in fixed_g1:
        f[2:] -= c**k
    for c in fixed_g:
        f[2:] += c**k
    return f


def _residue_infinity_series(params: ModelParams, energy: float, order: int = 8) -> complex:
    """-(coefficient of t) in p(1/t) = (i/t) * tW * sqrt(1 - E t^2 / (tW)^2)."""
    f = _tw_series(params, order)
    g = np.zeros(order, dtype=complex)
    g[2] = energy
    ratio = _series_mul(g, _series_inv(_series_mul(f, f)))
    s = _series_mul(f, _series_sqrt(-ratio + np.eye(order)[0]))
    return complex(-1j * s[2])


def _theta_radius(params: ModelParams, energy: float) -> float:
    fixed_g, fixed_g1 = _pole_sets(params)
    pts = np.concatenate([[0j], fixed_g, fixed_g1])
    if energy > 0:
        _, q = _cleared_u(params, energy)
        pts = np.concatenate([pts, poly_roots(q).roots])
    return 2.0 * float(np.max(np.abs(pts))) + 5.0


def _residue_infinity_contour(params: ModelParams, energy: float, points: int = 4096) -> complex:
    """Continue sqrt(E - W^2) from the anchor out to |x| = R and around the circle."""
    radius = _theta_radius(params, energy)
    w = superpotential(params)
    if energy > 0:
        tracker = SheetTracker.anchored(params, energy)
        x1, x2 = turning_points(params, energy)
        depth = 0.5 * min(0.1, x1)
        corner = x2 + 0.5
        lead = np.concatenate(
            [
                np.linspace(tracker.point, tracker.point - 1j * depth, 50),
                np.linspace(tracker.point - 1j * depth, corner - 1j * depth, 400),
                np.linspace(corner - 1j * depth, corner, 50),
                np.linspace(corner, radius, 400),
            ]
        )
    else:
        tracker = SheetTracker(params, 0.0, radius, complex(1j * w(radius)))
        lead = np.array([radius], dtype=complex)
    tracker.walk(lead[1:])
    theta = 2 * np.pi * np.arange(points + 1) / points
    circle = radius * np.exp(1j * theta)
    vals = tracker.walk(circle[1:])
    if abs(vals[-1] - tracker.walk(np.array([circle[-1]]))[0]) > 1e-12:
        raise BranchJumpError("continuation did not close around the large circle")
    dz = circle[1:]
    # trapezoid for (1/2 pi i) * contour integral, sign flipped for infinity
    return complex(-np.mean(vals * dz))


def residue_infinity_swkb(params: ModelParams, energy: float, method: str = "series") -> complex:
    """Residue of p_SWKB at infinity, i (E/2 + g + ell) on the canonical sheet.

    ``series``: small-t expansion of p(1/t) from the pole decomposition of W.
    ``contour``: large-circle quadrature of the phase-continued integrand.
    """
    if method == "series":
        return _residue_infinity_series(params, energy)
    if method == "contour":
        return _residue_infinity_contour(params, energy)
    raise ValueError(f"unknown method {method!r}")


# ------------------------------------------------------------------ ledger


@dataclass
class SwkbReport:
    energy: float
    params: ModelParams
    turning_points: tuple[float, float]
    principal_integral: float
    residue_origin: complex
    residues_xi_g: list[complex]
    residues_xi_g1: list[complex]
    residue_infinity: complex
    residue_infinity_contour: complex
    branch_cut_contribs: list[complex]
    branch_cut_line_contribs: list[complex]
    branch_cut_total_halfplane: complex
    principal_contour: complex
    mirror_by_symmetry: float
    mirror_quadrature: complex
    theta_term: complex
    reconstructed_n: float
    ledger_defect: float
    cuts: list[BranchCut] = field(default_factory=list, repr=False)
    poles: list[PoleSpec] = field(default_factory=list, repr=False)

    @property
    def branch_cut_sum(self) -> complex:
        """Sum over the off-axis cuts of the closed contour integrals."""
        return complex(sum(self.branch_cut_contribs))

    @property
    def xi_net(self) -> complex:
        """(1/2 pi) times the pole contours at both xi zero sets; ideally 0."""
        return complex(1j * (sum(self.residues_xi_g) + sum(self.residues_xi_g1)))

    @property
    def off_axis_cut_count(self) -> int:
        return len(self.branch_cut_contribs)


def _isolation(z: complex, obstacles: np.ndarray) -> float:
    d = np.abs(obstacles - z)
    d = d[d > 1e-14]
    return 0.4 * float(np.min(d)) if d.size else 1.0


def _half_plane_total(w, energy, cuts, poles_with_res, radius) -> complex:
    """Off-axis cut total from two half-plane rectangles minus enclosed poles."""
    f = lambda z: p_swkb(w, energy, z)  # noqa: E731
    off = [c for c in cuts if not c.is_real]
    total = 0j
    for sign in (1, -1):
        mine = [c for c in off if np.sign(c.curve[0].imag) == sign]
        hs = [np.min(np.abs(c.curve.imag)) for c in mine]
        hs += [abs(z.imag) for z, _ in poles_with_res if np.sign(z.imag) == sign]
        if not mine:
            continue
        h = 0.5 * min(hs)
        if sign > 0:
            rect = rectangle(complex(-radius, h), complex(radius, radius), h / 2)
        else:
            rect = rectangle(complex(-radius, -radius), complex(radius, -h), h / 2)
        inside = sum(
            (r for z, r in poles_with_res if winding_number(rect, z) == 1), 0j
        )
        total += path_integral(f, rect) - 2j * np.pi * inside
    return total


def decomposition_ledger(params: ModelParams, energy: float) -> SwkbReport:
    """Evaluate every term of the contour decomposition of the SWKB integral."""
    if energy <= 0:
        raise TurningPointError("the ledger needs E > 0")
    w = superpotential(params)
    f = lambda z: p_swkb(w, energy, z)  # noqa: E731
    x1, x2 = turning_points(params, energy)
    i_c = swkb_integral(params, energy)
    cuts = _cut_objects(params, energy)
    fixed_g, fixed_g1 = _pole_sets(params)
    cut_pts = np.concatenate([c.curve for c in cuts])
    obstacles = np.concatenate([[0j], fixed_g, fixed_g1, cut_pts])

    res0 = residue_at(f, 0j, _isolation(0j, obstacles))
    res_g = [residue_at(f, z, _isolation(z, obstacles)) for z in fixed_g]
    res_g1 = [residue_at(f, z, _isolation(z, obstacles)) for z in fixed_g1]
    radius = _theta_radius(params, energy)
    res_inf = _residue_infinity_series(params, energy)
    res_inf_b = _residue_infinity_contour(params, energy)

    real_cuts = [c for c in cuts if c.is_real]
    off = [c for c in cuts if not c.is_real]
    mirror = next(c for c in real_cuts if c.curve[0].real < 0)
    principal = next(c for c in real_cuts if c.curve[0].real > 0)
    # stadium around the mirror cut, thin enough to miss everything else
    others = np.concatenate([[0j], fixed_g, fixed_g1, *(c.curve for c in off)])
    h = min(0.1, 0.4 * _min_distance(mirror.curve, others), 0.4 * x1)
    mirror_q = path_integral(f, stadium(complex(-x2), complex(-x1), h))
    principal_q = path_integral(f, stadium(complex(x1), complex(x2), h))

    omegas = [c.contribution for c in off]
    theta_term = -1j * res_inf  # (1/2 pi) * counter-clockwise integral over the big circle
    rhs = theta_term - (
        1j * res0
        + mirror_q / (2 * np.pi)
        + 1j * (sum(res_g) + sum(res_g1))
        + sum(omegas) / (2 * np.pi)
    )
    defect = abs(i_c - rhs)
    poles = [PoleSpec(0j, res0, "origin")]
    poles += [PoleSpec(complex(z), r, "fixed_xi_g") for z, r in zip(fixed_g, res_g)]
    poles += [PoleSpec(complex(z), r, "fixed_xi_g1") for z, r in zip(fixed_g1, res_g1)]
    half = _half_plane_total(
        w, energy, cuts, [(p.location, p.residue) for p in poles], radius
    )
    return SwkbReport(
        energy=energy,
        params=params,
        turning_points=(x1, x2),
        principal_integral=i_c,
        residue_origin=res0,
        residues_xi_g=res_g,
        residues_xi_g1=res_g1,
        residue_infinity=res_inf,
        residue_infinity_contour=res_inf_b,
        branch_cut_contribs=omegas,
        branch_cut_line_contribs=[c.line_contribution for c in off],
        branch_cut_total_halfplane=half,
        principal_contour=principal_q,
        mirror_by_symmetry=2 * np.pi * i_c,
        mirror_quadrature=mirror_q,
        theta_term=theta_term,
        reconstructed_n=float((i_c + sum(omegas).real / (4 * np.pi))),
        ledger_defect=float(defect),
        cuts=cuts,
        poles=poles,
    )


def swkb_energy_solve(params: ModelParams, n: int, xtol: float = 1e-13) -> float:
    """Energy at which the SWKB integral equals n, by bisection."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 0.0
    lo, hi = max(0.0, 4.0 * n - 3.0), 4.0 * n + 3.0

    def f(e):
        return (swkb_integral(params, e) if e > 0 else 0.0) - n

    flo, fhi = f(lo), f(hi)
    if flo * fhi > 0:
        raise BracketError(f"no sign change of I(E) - {n} on [{lo}, {hi}]")
    return float(optimize.bisect(f, lo, hi, xtol=xtol, maxiter=200))
