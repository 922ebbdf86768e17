"""Rationally extended radial oscillator: exceptional Laguerre states, quantum
momentum poles and contour analysis of the SWKB condition."""
from .errors import XlqError
from .hamiltonian import potential, superpotential, wavefunction
from .oracle import GridSpec, solve_spectrum
from .polycore import ModelParams, exceptional_poly, poly_roots, xi
from .qmf import classify_poles, exact_quantization
from .swkb import decomposition_ledger, swkb_energy_solve, swkb_integral

__version__ = "0.1.0"

__all__ = [
    "GridSpec",
    "ModelParams",
    "XlqError",
    "classify_poles",
    "decomposition_ledger",
    "exact_quantization",
    "exceptional_poly",
    "poly_roots",
    "potential",
    "solve_spectrum",
    "superpotential",
    "swkb_energy_solve",
    "swkb_integral",
    "wavefunction",
    "xi",
]
