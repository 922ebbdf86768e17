"""Acceptance criteria at their stated tolerances; one PASS/FAIL line each.

The lines are printed in the terminal summary (see conftest.py) and also
echoed to stdout, so `pytest -s` shows them inline.
"""
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, GRID
from xlq.hamiltonian import (
    overlap,
    potential,
    superpotential,
    susy_factorization_residual,
    verify_identity_12,
    wavefunction,
)
from xlq.oracle import compare_wavefunction, solve_spectrum
from xlq.polycore import ModelParams, exceptional_poly, poly_roots, xi_x
from xlq.qmf import classify_poles, exact_quantization
from xlq.swkb import decomposition_ledger, swkb_energy_solve, swkb_integral

LEVELS = range(6)
PARAMS = [ModelParams(g, ell) for g, ell in GRID]


def _report(number: int, title: str, ok: bool, detail: str, seconds: float) -> None:
    line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail} ({seconds:.1f}s)"
    ACCEPTANCE_LINES.append(line)
    print(line)


def test_criterion_1_eigenvalues():
    t = time.perf_counter()
    worst = 0.0
    for p in PARAMS:
        res = solve_spectrum(p, len(LEVELS))
        worst = max(worst, max(abs(r.energy - 4 * r.index) for r in res))
    dt = time.perf_counter() - t
    ok = worst <= 1e-5 and dt <= 120
    _report(1, "oracle E_n = 4n", ok, f"max |E_n - 4n| = {worst:.2e} (tol 1e-5)", dt)
    assert ok


def test_criterion_2_swkb_exactness():
    t = time.perf_counter()
    worst_i, worst_e, where = 0.0, 0.0, None
    for p in PARAMS:
        for n in LEVELS:
            dev = abs(swkb_integral(p, 4.0 * n) - n)
            if dev > worst_i:
                worst_i, where = dev, (p.g, p.ell, n)
            worst_e = max(worst_e, abs(swkb_energy_solve(p, n) - 4.0 * n))
    dt = time.perf_counter() - t
    ok = worst_i <= 1e-8 and worst_e <= 1e-6 and dt <= 60
    _report(
        2,
        "SWKB integral = n at E = 4n",
        ok,
        f"max |I - n| = {worst_i:.3e} at (g, ell, n) = {where} (tol 1e-8); "
        f"max |E_swkb - 4n| = {worst_e:.3e} (tol 1e-6)",
        dt,
    )
    assert ok


def test_criterion_3_pole_table():
    t = time.perf_counter()
    worst_p, worst_swkb = 0.0, 0.0
    for p in PARAMS:
        for n in LEVELS:
            rep = classify_poles(n, p)
            e = 4.0 * n
            want = {"origin": p.a, "fixed_xi_g": -1.0, "moving_real": 1.0, "moving_imag": 1.0}
            errs = [abs(s.residue - want[s.kind]) for s in rep.poles]
            errs.append(abs(rep.infinity_coefficient - (e / 2 + p.a)))
            worst_p = max(worst_p, max(errs))
            if n == 0:
                continue
            led = decomposition_ledger(p, e)
            errs = [abs(led.residue_origin + 1j * p.a)]
            errs += [abs(r - 1j) for r in led.residues_xi_g]
            errs += [abs(r + 1j) for r in led.residues_xi_g1]
            errs.append(abs(led.residue_infinity - 1j * (e / 2 + p.a)))
            errs.append(abs(led.residue_infinity_contour - 1j * (e / 2 + p.a)))
            worst_swkb = max(worst_swkb, max(errs))
    dt = time.perf_counter() - t
    ok = worst_p <= 1e-8 and worst_swkb <= 1e-8
    _report(
        3,
        "pole/residue table",
        ok,
        f"max residue error: momentum function {worst_p:.1e}, SWKB integrand {worst_swkb:.1e} (tol 1e-8)",
        dt,
    )
    assert ok


def test_criterion_4_branch_cuts():
    t = time.perf_counter()
    at_levels, between, defect = 0.0, np.inf, 0.0
    for p in PARAMS:
        for n in LEVELS:
            if n > 0:
                rep = decomposition_ledger(p, 4.0 * n)
                at_levels = max(at_levels, abs(rep.branch_cut_sum))
                defect = max(defect, rep.ledger_defect)
            rep = decomposition_ledger(p, 4.0 * n + 2.0)
            between = min(between, abs(rep.branch_cut_sum))
            defect = max(defect, rep.ledger_defect)
    dt = time.perf_counter() - t
    parts = (at_levels <= 1e-6, between >= 1e-3, defect <= 1e-6)
    ok = all(parts)
    _report(
        4,
        "branch-cut criterion",
        ok,
        f"max |sum Omega| at E=4n = {at_levels:.3e} (tol 1e-6) [{'ok' if parts[0] else 'fail'}]; "
        f"min |sum Omega| at E=4n+2 = {between:.3e} (need >= 1e-3) [{'ok' if parts[1] else 'fail'}]; "
        f"max ledger defect = {defect:.1e} (tol 1e-6) [{'ok' if parts[2] else 'fail'}]",
        dt,
    )
    assert ok


def test_criterion_5_quantization():
    t = time.perf_counter()
    bad = [(p.g, p.ell, n) for p in PARAMS for n in LEVELS if exact_quantization(n, p) != n]
    dt = time.perf_counter() - t
    _report(5, "QHJ contour integral = n", not bad, f"mismatches: {bad or 'none'}", dt)
    assert not bad


def test_criterion_6_singularity_census():
    t = time.perf_counter()
    bad = []
    worst_re = 0.0
    for p in PARAMS:
        xi_roots = poly_roots(xi_x(p)).roots
        worst_re = max(worst_re, float(np.max(np.abs(xi_roots.real))))
        if xi_roots.size != 2 * p.ell:
            bad.append((p.g, p.ell, "xi"))
        for n in LEVELS:
            r = poly_roots(exceptional_poly(n, p)) if n + p.ell else None
            nodes = np.count_nonzero(r.real() > 0) if r else 0
            off = r.off_axis().size if r else 0
            if nodes != n or off != 2 * p.ell:
                bad.append((p.g, p.ell, n))
    dt = time.perf_counter() - t
    ok = not bad and worst_re <= 1e-8
    _report(
        6,
        "singularity census",
        ok,
        f"count mismatches: {bad or 'none'}; max |Re| of xi zeros = {worst_re:.1e} (tol 1e-8)",
        dt,
    )
    assert ok


def test_criterion_7_structural_identities():
    t = time.perf_counter()
    rng = np.random.default_rng(42)
    z = rng.uniform(0.2, 4.0, 20) + 1j * rng.uniform(-2.0, 2.0, 20)
    worst = dict(xi1_identity=0.0, forms=0.0, susy=0.0, ground_state=0.0)
    for p in PARAMS:
        worst["xi1_identity"] = max(worst["xi1_identity"], verify_identity_12(p, z))
        a, b = potential(p, "reduced")(z), potential(p, "intermediate")(z)
        worst["forms"] = max(worst["forms"], float(np.max(np.abs(a - b) / np.abs(a))))
        worst["susy"] = max(worst["susy"], susy_factorization_residual(p))
        w = superpotential(p)(z)
        gs = np.abs(w + wavefunction(0, p).log_derivative(z)) / np.maximum(1, np.abs(w))
        worst["ground_state"] = max(worst["ground_state"], float(np.max(gs)))
    dt = time.perf_counter() - t
    ok = all(v <= 1e-9 for v in worst.values())
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    _report(7, "structural identities", ok, f"{detail} (tol 1e-9)", dt)
    assert ok


def test_criterion_8_orthogonality():
    t = time.perf_counter()
    worst = 0.0
    for p in PARAMS:
        for n in range(5):
            for m in range(n + 1, 5):
                cross, norm = overlap(n, m, p)
                worst = max(worst, abs(cross) / norm)
    dt = time.perf_counter() - t
    ok = worst <= 1e-8
    _report(8, "orthogonality", ok, f"max |<P_n, P_m>| / norms = {worst:.1e} (tol 1e-8)", dt)
    assert ok


def test_criterion_9_wavefunctions():
    t = time.perf_counter()
    match, control = 0.0, np.inf
    for p in PARAMS:
        res = solve_spectrum(p, len(LEVELS))
        for n in LEVELS:
            match = max(match, compare_wavefunction(n, p, res[n]))
            other = (n + 1) % len(LEVELS)
            control = min(control, compare_wavefunction(other, p, res[n]))
    dt = time.perf_counter() - t
    ok = match <= 1e-4 and control >= 0.1
    _report(
        9,
        "wavefunction match",
        ok,
        f"max distance {match:.1e} (tol 1e-4); mismatched-n control min {control:.2f} (need >= 0.1)",
        dt,
    )
    assert ok
