import csv
import json

import pytest

from xlq.cli import CSV_COLUMNS, RunConfig, config_from_args, main, run


def _json(path):
    with open(path) as fh:
        return json.load(fh)


def test_potential_json_schema(tmp_path):
    out = tmp_path / "p.json"
    assert main(["potential", "--g", "1", "--ell", "1", "--out", str(out)]) == 0
    doc = _json(out)
    assert set(doc) == {"meta", "results", "checks"}
    assert {"version", "params", "seed", "timestamp"} <= set(doc["meta"])
    for c in doc["checks"]:
        assert {"name", "value", "tolerance", "pass"} <= set(c)
    kinds = [p["kind"] for p in doc["results"][0]["poles"]]
    assert kinds.count("xi_g") == 2 and kinds.count("xi_g1") == 2


def test_eigen_csv_columns(tmp_path):
    out = tmp_path / "e.csv"
    assert main(["eigen", "--g", "1", "--ell", "0", "--n-max", "3", "--format", "csv", "--out", str(out)]) == 0
    rows = list(csv.DictReader(open(out)))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert [round(float(r["oracle_energy"]), 6) for r in rows] == [0, 4, 8, 12]
    # 17 significant digits
    assert len(rows[1]["oracle_energy"].replace(".", "").lstrip("0")) >= 16


def test_determinism_apart_from_timestamp(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        main(["qhj", "--g", "2.5", "--ell", "1", "--n-max", "2", "--out", str(path)])
    da, db = _json(a), _json(b)
    da["meta"].pop("timestamp"), db["meta"].pop("timestamp")
    assert json.dumps(da) == json.dumps(db)


def test_seed_changes_identity_points(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["potential", "--seed", "1", "--out", str(a)])
    main(["potential", "--seed", "2", "--out", str(b)])
    va = [c["value"] for c in _json(a)["checks"]]
    vb = [c["value"] for c in _json(b)["checks"]]
    assert va != vb


def test_module_error_exit_code(tmp_path):
    out = tmp_path / "err.json"
    assert main(["swkb", "--energy", "-2", "--out", str(out)]) == 1
    assert _json(out)["error"]["type"] == "TurningPointError"


def test_invariant_failure_exit_code(tmp_path):
    out = tmp_path / "s.json"
    # a tolerance no computation can meet
    code = main(["eigen", "--g", "1", "--ell", "1", "--n", "1", "--tol-eigen", "1e-30", "--out", str(out)])
    assert code == 2
    assert not _json(out)["checks"][0]["pass"]


def test_ledger_nonzero_cut_sum_between_levels(tmp_path):
    out = tmp_path / "l.json"
    plot = tmp_path / "plot.csv"
    assert main(["ledger", "--g", "1", "--ell", "1", "--energy", "6", "--out", str(out), "--plot-out", str(plot)]) == 0
    doc = _json(out)
    names = {c["name"].split("[")[0]: c for c in doc["checks"]}
    assert names["branch_cut_nonzero"]["pass"]
    assert len(doc["results"][0]["cuts"]) == 4
    kinds = {r["kind"] for r in csv.DictReader(open(plot))}
    assert {"cut_real", "cut_off_axis", "cut_contour", "pole_origin"} <= kinds


def test_config_file_and_overrides(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"g": 2.5, "ell": 1, "tolerances": {"eigen": 1e-4}}))
    rc = config_from_args(["eigen", "--config", str(cfg), "--ell", "2", "--tol-swkb", "1e-3"])
    assert (rc.g, rc.ell) == (2.5, 2)
    assert rc.tolerances["eigen"] == 1e-4 and rc.tolerances["swkb"] == 1e-3


def test_tolerances_must_be_positive():
    with pytest.raises(ValueError):
        RunConfig("eigen", tolerances={"eigen": 0.0})
    assert main(["eigen", "--tol-eigen", "-1"]) == 1


def test_sweep_threads_env(monkeypatch):
    import xlq.cli as cli

    monkeypatch.setenv("XLQ_THREADS", "1")
    assert cli._threads() == 1
    monkeypatch.delenv("XLQ_THREADS")
    assert cli._threads() >= 1


def test_run_returns_code_without_file(capsys):
    code = run(RunConfig("swkb", g=1.0, ell=0, n=2))
    assert code == 0
    assert '"swkb_integral"' in capsys.readouterr().out
