"""Command-line front end: every verification as a reproducible batch job.

Subcommands: potential, eigen, qhj, swkb, ledger, sweep.  Output is JSON
(default) or CSV; exit code 1 on a module error, 2 when a check fails.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any

import numpy as np

from . import __version__
from .errors import XlqError
from .hamiltonian import (
    potential,
    superpotential,
    susy_factorization_residual,
    verify_identity_12,
    wavefunction,
)
from .oracle import solve_spectrum
from .polycore import ModelParams, poly_roots, xi_x
from .qmf import classify_poles, quantization_contour, quantization_integral
from .swkb import decomposition_ledger, swkb_energy_solve, swkb_integral

COMMANDS = ("potential", "eigen", "qhj", "swkb", "ledger", "sweep")

DEFAULT_TOLERANCES = {
    "identity": 1e-9,
    "eigen": 1e-5,
    "residue": 1e-8,
    "quantization": 0.05,
    "swkb": 1e-8,
    "swkb_energy": 1e-6,
    "ledger": 1e-6,
    "branch_cut": 1e-6,
    "branch_cut_min": 1e-3,
}

GRID = ((1.0, 1), (2.5, 1), (1.0, 2), (3.0, 2), (1.5, 3))

CSV_COLUMNS = (
    "g",
    "ell",
    "n",
    "energy",
    "oracle_energy",
    "eigen_delta",
    "quantization",
    "swkb_integral",
    "swkb_delta",
    "branch_cut_sum_re",
    "branch_cut_sum_im",
    "ledger_defect",
    "reconstructed_n",
    "checks_passed",
    "checks_total",
)


@dataclass
class RunConfig:
    command: str
    g: float = 1.0
    ell: int = 1
    n: int | None = None
    n_max: int | None = None
    energy: float | None = None
    output_format: str = "json"
    output_path: str | None = None
    plot_path: str | None = None
    seed: int = 42
    tolerances: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.output_format not in ("json", "csv"):
            raise ValueError("output_format must be json or csv")
        merged = dict(DEFAULT_TOLERANCES)
        merged.update(self.tolerances)
        bad = [k for k, v in merged.items() if not v > 0]
        if bad:
            raise ValueError(f"tolerances must be positive: {bad}")
        self.tolerances = merged

    @property
    def params(self) -> ModelParams:
        return ModelParams(self.g, self.ell)

    def levels(self, default_max: int = 5, start: int = 0) -> list[int]:
        if self.n is not None:
            return [self.n]
        top = default_max if self.n_max is None else self.n_max
        return list(range(start, top + 1))


# ------------------------------------------------------------- serialisation


def _c(z) -> dict[str, float]:
    z = complex(z)
    return {"re": float(z.real), "im": float(z.imag)}


def _check(name: str, value: float, tol: float, relation: str = "<=") -> dict[str, Any]:
    value = float(value)
    ok = value <= tol if relation == "<=" else value >= tol
    return {"name": name, "value": value, "tolerance": tol, "relation": relation, "pass": bool(ok)}


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.17g}"


class _Cell:
    """Results and checks for one (g, ell, n) row."""

    def __init__(self, g: float, ell: int, n: int | None, energy: float | None):
        self.row: dict[str, Any] = {k: None for k in CSV_COLUMNS}
        self.row.update(g=g, ell=ell, n=n, energy=energy)
        self.detail: dict[str, Any] = {}
        self.checks: list[dict[str, Any]] = []

    def record(self) -> dict[str, Any]:
        self.row["checks_passed"] = sum(c["pass"] for c in self.checks)
        self.row["checks_total"] = len(self.checks)
        out = {k: v for k, v in self.row.items() if v is not None}
        out.update(self.detail)
        return out


def _label(p: ModelParams, n=None, energy=None) -> str:
    s = f"g={p.g:g},ell={p.ell}"
    if n is not None:
        s += f",n={n}"
    if energy is not None:
        s += f",E={energy:g}"
    return s


# ----------------------------------------------------------------- commands


def _potential(cfg: RunConfig, p: ModelParams) -> tuple[list[_Cell], list[dict]]:
    tol = cfg.tolerances["identity"]
    rng = np.random.default_rng(cfg.seed)
    pts = rng.uniform(0.2, 4.0, 20) + 1j * rng.uniform(-2.0, 2.0, 20)
    v = potential(p, "reduced")
    vi = potential(p, "intermediate")
    w = superpotential(p)
    xs = np.linspace(0.1, 6.0, 60)
    cell = _Cell(p.g, p.ell, None, None)
    cell.detail["samples"] = [
        {"x": float(x), "V": float(v(x)), "W": float(w(x))} for x in xs
    ]
    poles = [{"location": _c(0), "kind": "origin", "residue_W": _c(w.residue(0j))}]
    for shift, kind in ((0, "xi_g"), (1, "xi_g1")):
        xp = xi_x(p, shift)
        if xp.degree:
            for z in poly_roots(xp).roots:
                poles.append({"location": _c(z), "kind": kind, "residue_W": _c(w.residue(z))})
    cell.detail["poles"] = poles
    form_gap = np.max(np.abs(v(pts) - vi(pts)) / np.maximum(1.0, np.abs(v(pts))))
    psi0 = wavefunction(0, p)
    w_gap = np.max(np.abs(w(pts) + psi0.log_derivative(pts)) / np.maximum(1.0, np.abs(w(pts))))
    lab = _label(p)
    cell.checks += [
        _check(f"identity_xi1_laguerre[{lab}]", verify_identity_12(p, pts), tol),
        _check(f"potential_forms_agree[{lab}]", form_gap, tol),
        _check(f"susy_factorization[{lab}]", susy_factorization_residual(p), tol),
        _check(f"W_equals_minus_log_derivative[{lab}]", w_gap, tol),
    ]
    return [cell], cell.checks


def _eigen(cfg: RunConfig, p: ModelParams) -> tuple[list[_Cell], list[dict]]:
    levels = cfg.levels()
    spec = solve_spectrum(p, max(levels) + 1)
    cells, checks = [], []
    for n in levels:
        r = spec[n]
        cell = _Cell(p.g, p.ell, n, 4.0 * n)
        delta = r.energy - 4.0 * n
        cell.row.update(oracle_energy=r.energy, eigen_delta=delta)
        cell.detail["node_count"] = r.node_count
        cell.checks.append(_check(f"eigen_delta[{_label(p, n)}]", abs(delta), cfg.tolerances["eigen"]))
        cells.append(cell)
        checks += cell.checks
    return cells, checks


def _qhj_cell(cfg: RunConfig, p: ModelParams, n: int) -> _Cell:
    tol = cfg.tolerances["residue"]
    rep = classify_poles(n, p)
    q = quantization_integral(n, p)
    k = int(np.rint(q.real))
    cell = _Cell(p.g, p.ell, n, 4.0 * n)
    cell.row["quantization"] = k
    cell.detail["quantization_integral"] = _c(q)
    cell.detail["poles"] = [
        {"location": _c(s.location), "kind": s.kind, "residue": _c(s.residue)} for s in rep.poles
    ]
    cell.detail["residue_at_infinity"] = _c(rep.residue_at_infinity)
    cell.detail["infinity_coefficient"] = _c(rep.infinity_coefficient)
    expected = {"origin": p.a, "fixed_xi_g": -1.0, "moving_real": 1.0, "moving_imag": 1.0}
    worst = max(abs(s.residue - expected[s.kind]) for s in rep.poles)
    lab = _label(p, n)
    cell.checks += [
        _check(f"quantization_window[{lab}]", abs(q - n), cfg.tolerances["quantization"]),
        _check(f"quantization_equals_n[{lab}]", abs(k - n), 0.5),
        _check(f"finite_pole_residues[{lab}]", worst, tol),
        _check(
            f"infinity_coefficient[{lab}]",
            abs(rep.infinity_coefficient - (2.0 * n + p.a)),
            tol * max(1.0, 2.0 * n + p.a),
        ),
        _check(f"residue_closure[{lab}]", abs(rep.closure_defect), tol),
        _check(f"physical_nodes[{lab}]", abs(rep.physical_nodes - n), 0.5),
    ]
    if cfg.plot_path:
        cell.detail["_plot"] = [("pole_" + s.kind, 0, s.location) for s in rep.poles] + [
            ("quantization_contour", 0, z) for z in quantization_contour(n, p)
        ]
    return cell


def _per_level(fn):
    def run(cfg: RunConfig, p: ModelParams):
        cells = [fn(cfg, p, n) for n in cfg.levels()]
        return cells, [c for cell in cells for c in cell.checks]

    return run


def _swkb(cfg: RunConfig, p: ModelParams) -> tuple[list[_Cell], list[dict]]:
    if cfg.energy is not None:
        e = cfg.energy
        cell = _Cell(p.g, p.ell, None, e)
        val = swkb_integral(p, e)
        cell.row["swkb_integral"] = val
        cell.checks.append(
            _check(f"swkb_vs_quarter_energy[{_label(p, energy=e)}]", abs(val - e / 4), cfg.tolerances["swkb"])
        )
        return [cell], cell.checks
    cells = [_swkb_cell(cfg, p, n) for n in cfg.levels(start=1)]
    return cells, [c for cell in cells for c in cell.checks]


def _swkb_cell(cfg: RunConfig, p: ModelParams, n: int, solve: bool = True) -> _Cell:
    e = 4.0 * n
    cell = _Cell(p.g, p.ell, n, e)
    val = swkb_integral(p, e) if n > 0 else 0.0
    cell.row.update(swkb_integral=val, swkb_delta=val - n)
    lab = _label(p, n)
    cell.checks.append(_check(f"swkb_integral[{lab}]", abs(val - n), cfg.tolerances["swkb"]))
    if solve:
        e_star = swkb_energy_solve(p, n)
        cell.detail["swkb_energy"] = e_star
        cell.checks.append(
            _check(f"swkb_energy_solve[{lab}]", abs(e_star - e), cfg.tolerances["swkb_energy"])
        )
    return cell


def _ledger_cell(cfg: RunConfig, p: ModelParams, e: float) -> _Cell:
    rep = decomposition_ledger(p, e)
    quarter = e / 4.0
    n = int(round(quarter)) if abs(quarter - round(quarter)) < 1e-12 else None
    cell = _Cell(p.g, p.ell, n, e)
    s = rep.branch_cut_sum
    cell.row.update(
        swkb_integral=rep.principal_integral,
        branch_cut_sum_re=s.real,
        branch_cut_sum_im=s.imag,
        ledger_defect=rep.ledger_defect,
        reconstructed_n=rep.reconstructed_n,
    )
    cell.detail.update(
        turning_points=list(rep.turning_points),
        residue_origin=_c(rep.residue_origin),
        residues_xi_g=[_c(r) for r in rep.residues_xi_g],
        residues_xi_g1=[_c(r) for r in rep.residues_xi_g1],
        residue_infinity=_c(rep.residue_infinity),
        residue_infinity_contour=_c(rep.residue_infinity_contour),
        theta_term=_c(rep.theta_term),
        mirror_quadrature=_c(rep.mirror_quadrature),
        mirror_by_symmetry=rep.mirror_by_symmetry,
        principal_contour=_c(rep.principal_contour),
        branch_cut_total_halfplane=_c(rep.branch_cut_total_halfplane),
        cuts=[
            {
                "endpoints": [_c(z) for z in c.endpoints],
                "omega": _c(c.contribution),
                "omega_line": _c(c.line_contribution),
                "pairing_score": c.pairing_score,
            }
            for c in rep.cuts
            if not c.is_real
        ],
    )
    lab = _label(p, energy=e)
    cell.checks.append(_check(f"ledger_defect[{lab}]", rep.ledger_defect, cfg.tolerances["ledger"]))
    cell.checks.append(
        _check(
            f"branch_cut_routes_agree[{lab}]",
            abs(s - rep.branch_cut_total_halfplane),
            cfg.tolerances["ledger"],
        )
    )
    if n is not None:
        cell.checks.append(_check(f"branch_cut_vanishes[{lab}]", abs(s), cfg.tolerances["branch_cut"]))
    elif abs((quarter - 0.5) - round(quarter - 0.5)) < 1e-12:
        cell.checks.append(
            _check(f"branch_cut_nonzero[{lab}]", abs(s), cfg.tolerances["branch_cut_min"], ">=")
        )
    if cfg.plot_path:
        plot = [("pole_" + pl.kind, 0, pl.location) for pl in rep.poles]
        for i, c in enumerate(rep.cuts):
            kind = "cut_real" if c.is_real else "cut_off_axis"
            plot += [(kind, i, z) for z in c.curve]
            plot += [("cut_contour", i, z) for z in c.contour_points]
        cell.detail["_plot"] = plot
    return cell


def _ledger(cfg: RunConfig, p: ModelParams) -> tuple[list[_Cell], list[dict]]:
    if cfg.energy is not None:
        energies = [cfg.energy]
    else:
        energies = [4.0 * n for n in cfg.levels(start=1) if n > 0]
    cells = [_ledger_cell(cfg, p, e) for e in energies]
    return cells, [c for cell in cells for c in cell.checks]


def _threads() -> int:
    cap = os.environ.get("XLQ_THREADS")
    if cap:
        return max(1, int(cap))
    return os.cpu_count() or 1


def _sweep_one(cfg: RunConfig, g: float, ell: int) -> tuple[list[_Cell], list[dict]]:
    p = ModelParams(g, ell)
    sub = dataclasses.replace(cfg, g=g, ell=ell)
    checks = list(_potential(sub, p)[1])
    eigen_cells, ec = _eigen(sub, p)
    checks += ec
    cells = []
    for cell in eigen_cells:
        n = cell.row["n"]
        q = _qhj_cell(sub, p, n)
        s = _swkb_cell(sub, p, n, solve=n > 0)
        cell.row.update(quantization=q.row["quantization"])
        cell.row.update(swkb_integral=s.row["swkb_integral"], swkb_delta=s.row["swkb_delta"])
        cell.checks += q.checks + s.checks
        if n > 0:
            led = _ledger_cell(sub, p, 4.0 * n)
            for k in ("branch_cut_sum_re", "branch_cut_sum_im", "ledger_defect", "reconstructed_n"):
                cell.row[k] = led.row[k]
            cell.checks += led.checks
        cell.checks += _ledger_cell(sub, p, 4.0 * n + 2.0).checks
        checks += [c for c in cell.checks if c not in ec]
        cells.append(cell)
    return cells, checks


def _sweep(cfg: RunConfig, _p: ModelParams) -> tuple[list[_Cell], list[dict]]:
    with ThreadPoolExecutor(max_workers=min(len(GRID), _threads())) as pool:
        parts = list(pool.map(lambda gl: _sweep_one(cfg, *gl), GRID))
    cells = [c for part in parts for c in part[0]]
    checks = [c for part in parts for c in part[1]]
    summary: dict[str, dict[str, int]] = {}
    for c in checks:
        key = c["name"].split("[", 1)[0]
        s = summary.setdefault(key, {"passed": 0, "total": 0})
        s["total"] += 1
        s["passed"] += int(c["pass"])
    cells[0].detail.setdefault("_summary", summary)
    return cells, checks


HANDLERS = {
    "potential": _potential,
    "eigen": _eigen,
    "qhj": _per_level(_qhj_cell),
    "swkb": _swkb,
    "ledger": _ledger,
    "sweep": _sweep,
}


# ------------------------------------------------------------------- driver


def _meta(cfg: RunConfig) -> dict[str, Any]:
    params = {"g": cfg.g, "ell": cfg.ell, "n": cfg.n, "n_max": cfg.n_max, "energy": cfg.energy}
    if cfg.command == "sweep":
        params = {"grid": [list(gl) for gl in GRID], "n_max": cfg.n_max}
    return {
        "version": __version__,
        "command": cfg.command,
        "params": params,
        "tolerances": cfg.tolerances,
        "seed": cfg.seed,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def _write(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _to_csv(cells: list[_Cell]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for cell in cells:
        cell.record()
        writer.writerow([_fmt(cell.row[k]) for k in CSV_COLUMNS])
    return buf.getvalue()


def _plot_csv(cells: list[_Cell]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("g", "ell", "n", "energy", "kind", "index", "re", "im"))
    for cell in cells:
        for kind, idx, z in cell.detail.get("_plot", []):
            r = cell.row
            writer.writerow(
                (_fmt(r["g"]), r["ell"], _fmt(r["n"]), _fmt(r["energy"]), kind, idx,
                 _fmt(complex(z).real), _fmt(complex(z).imag))
            )
    return buf.getvalue()


def run(cfg: RunConfig) -> int:
    """Execute one configured batch; returns the process exit code."""
    meta = _meta(cfg)
    try:
        params = cfg.params
        cells, checks = HANDLERS[cfg.command](cfg, params)
    except (XlqError, ValueError, ArithmeticError) as exc:
        record = {
            "meta": meta,
            "error": {"type": type(exc).__name__, "module": type(exc).__module__, "message": str(exc)},
        }
        _write(json.dumps(record, indent=2) + "\n", cfg.output_path)
        return 1
    if cfg.plot_path:
        _write(_plot_csv(cells), cfg.plot_path)
    if cfg.output_format == "csv":
        _write(_to_csv(cells), cfg.output_path)
    else:
        results = []
        for cell in cells:
            rec = cell.record()
            rec.pop("_plot", None)
            results.append(rec)
        doc = {"meta": meta, "results": results, "checks": checks}
        _write(json.dumps(doc, indent=2) + "\n", cfg.output_path)
    return 0 if all(c["pass"] for c in checks) else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xlq", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    parser.add_argument("--g", type=float)
    parser.add_argument("--ell", type=int)
    level = parser.add_mutually_exclusive_group()
    level.add_argument("--n", type=int)
    level.add_argument("--n-max", type=int, dest="n_max")
    parser.add_argument("--energy", type=float)
    parser.add_argument("--format", choices=("json", "csv"), dest="output_format")
    parser.add_argument("--out", dest="output_path")
    parser.add_argument("--plot-out", dest="plot_path", help="CSV of poles, cuts and contours")
    parser.add_argument("--seed", type=int)
    for name, default in DEFAULT_TOLERANCES.items():
        parser.add_argument(
            f"--tol-{name.replace('_', '-')}", type=float, dest=f"tol_{name}",
            help=f"default {default:g}",
        )
    return parser


def config_from_args(argv: list[str] | None = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    base: dict[str, Any] = {}
    if args.config:
        with open(args.config) as fh:
            base = json.load(fh)
    base["command"] = args.command
    tols = dict(base.get("tolerances", {}))
    for key, val in vars(args).items():
        if val is None or key in ("config", "command"):
            continue
        if key.startswith("tol_"):
            tols[key[4:]] = val
        else:
            base[key] = val
    base["tolerances"] = tols
    return RunConfig(**base)


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
    except (ValueError, TypeError, OSError) as exc:
        print(json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}), file=sys.stderr)
        return 1
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
