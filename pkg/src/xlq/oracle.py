"""Finite-difference Schrodinger eigensolver on the half-line.

Independent of the exceptional-polynomial construction: only the rational
potential V_ell is used.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import sparse
from scipy.linalg import eigh_tridiagonal
from scipy.sparse.linalg import eigsh

from .errors import GridError
from .hamiltonian import potential, wavefunction
from .polycore import ModelParams


@dataclass(frozen=True)
class GridSpec:
    x_min: float = 0.0  # Dirichlet wall; first grid node sits at x_min + h
    x_max: float | None = None  # default sqrt(4k) + 8
    points: int = 8000  # number of intervals on the coarse grid
    order: int = 2
    tol: float = 1e-5

    def resolved(self, k: int) -> "GridSpec":
        if self.x_max is not None:
            return self
        return GridSpec(self.x_min, float(np.sqrt(4 * k) + 8), self.points, self.order, self.tol)


@dataclass
class EigenResult:
    index: int
    energy: float
    node_count: int
    grid: tuple[float, float, int]
    boundary_exponent: float
    x: np.ndarray = field(repr=False, default=None)
    vector: np.ndarray = field(repr=False, default=None)
    raw_energies: tuple[float, float] = (np.nan, np.nan)


def _sign_changes(v: np.ndarray, rel: float = 1e-8) -> int:
    s = v[np.abs(v) > rel * np.max(np.abs(v))]
    s = np.sign(s)
    return int(np.count_nonzero(s[1:] != s[:-1]))


def _solve(params: ModelParams, k: int, x_min: float, x_max: float, intervals: int, order: int):
    x = np.linspace(x_min, x_max, intervals + 1)[1:-1]
    h = x[1] - x[0]
    v = potential(params)(x)
    if order == 2:
        diag = 2.0 / h**2 + v
        off = np.full(x.size - 1, -1.0 / h**2)
        vals, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, k - 1))
    elif order == 4:
        c = 1.0 / (12 * h**2)
        main = 30 * c + v
        # odd reflection through each Dirichlet wall for the wide stencil
        main[0] -= c
        main[-1] -= c
        mat = sparse.diags(
            [main, np.full(x.size - 1, -16 * c), np.full(x.size - 2, c)],
            [0, 1, 2],
        )
        mat = (mat + sparse.triu(mat, 1).T).tocsc()
        vals, vecs = eigsh(mat, k=k, sigma=float(np.min(v)) - 1.0, which="LM")
        order_ = np.argsort(vals)
        vals, vecs = vals[order_], vecs[:, order_]
    else:
        raise ValueError("order must be 2 or 4")
    return x, vals, vecs


def solve_spectrum(params: ModelParams, k: int, grid: GridSpec | None = None) -> list[EigenResult]:
    """Lowest k eigenpairs of -psi'' + V psi = E psi, Richardson-extrapolated."""
    if k < 1:
        raise ValueError("k must be at least 1")
    grid = (grid or GridSpec()).resolved(k)
    if grid.x_min > 1e-3 or grid.x_max < np.sqrt(4 * k) + 6:
        raise GridError("grid does not resolve the origin core or the Gaussian tail")
    m = grid.points
    x, coarse, vecs = _solve(params, k, grid.x_min, grid.x_max, m, grid.order)
    _, fine, _ = _solve(params, k, grid.x_min, grid.x_max, 2 * m, grid.order)
    factor = 2.0**grid.order
    extrap = (factor * fine - coarse) / (factor - 1)
    shift = np.max(np.abs(extrap - fine))
    if shift > 10 * grid.tol:
        raise GridError(f"eigenvalues still move by {shift:.2e} between resolutions")
    out = []
    for i in range(k):
        out.append(
            EigenResult(
                index=i,
                energy=float(extrap[i]),
                node_count=_sign_changes(vecs[:, i]),
                grid=(grid.x_min, grid.x_max, m),
                boundary_exponent=params.a,
                x=x,
                vector=vecs[:, i],
                raw_energies=(float(coarse[i]), float(fine[i])),
            )
        )
    return out


def _normalize(x: np.ndarray, v: np.ndarray) -> np.ndarray:
    h = x[1] - x[0]
    v = v / np.sqrt(np.sum(v * v) * h)
    return v * np.sign(v[np.argmax(np.abs(v))])


def compare_wavefunction(n: int, params: ModelParams, result: EigenResult) -> float:
    """Max-norm distance between normalized numeric and closed-form states."""
    psi = wavefunction(n, params)(result.x)
    a = _normalize(result.x, result.vector)
    b = _normalize(result.x, psi)
    return float(np.max(np.abs(a - b)))
