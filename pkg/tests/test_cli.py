import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from coopgdof import cli
from coopgdof.synth import synthesize
from coopgdof.theorems import CoopBudget
from strategies import budgets, params
from mutations import overlap_bands


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_json(capsys):
    code, out, _ = run(capsys, "compute", "--alpha", "2,2,5,3", "--pi", "4", "--mode", "half")
    rep = json.loads(out)
    assert code == 0
    assert rep["sum_gdof"] == "17/3" and rep["active"] == ["(D_3e+π)/3"]
    assert rep["pi_star"] == "5" and rep["pi_plus"] == "6" and rep["regime"] == "Strong"


def test_compute_variants(capsys):
    _, out, _ = run(capsys, "compute", "--alpha", "2,2,5,3", "--pi", "0", "--mode", "full")
    assert json.loads(out)["sum_gdof"] == "3"
    _, out, _ = run(capsys, "compute", "--alpha", "1.2,1,2,1.8", "--pi", "1", "--mode", "full")
    assert json.loads(out)["sum_gdof"] == "23/10"
    _, out, _ = run(capsys, "compute", "--alpha", "2,2,5,3", "--pi", "5", "--split", "5,0")
    assert json.loads(out)["split"]["value"] == "5"


def test_compute_csv(capsys):
    _, out, _ = run(capsys, "compute", "--alpha", "2,2,5,3", "--pi", "4", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "key,rational,float"
    assert "sum_gdof,17/3,5.666666666666667" in lines


@pytest.mark.parametrize("alpha", ["1,2,3", "1,2,x,3", "1,-2,3,4", "1,2,3/0,4"])
def test_usage_errors(capsys, alpha):
    code, _, err = run(capsys, "compute", "--alpha", alpha, "--pi", "1")
    assert code == 2 and "error" in err


def test_synth_verify_sim(tmp_path, capsys):
    doc = tmp_path / "s.json"
    assert run(capsys, "synth", "--alpha", "2,2,5,3", "--pi", "5", "--out", str(doc))[0] == 0
    code, out, _ = run(capsys, "verify", str(doc))
    rep = json.loads(out)
    assert code == 0 and rep["ok"] and rep["totals"] == ["0", "1", "4", "1"]
    code, out, _ = run(capsys, "sim", str(doc), "--grain", "1")
    rep = json.loads(out)
    assert code == 0 and rep["delivered"]["Rx2:W22"] == 1 and rep["delivered"]["Rx1:W01p"] == 3


def test_verify_overlap_exit(tmp_path, capsys, worked):
    doc = tmp_path / "bad.json"
    doc.write_text(cli.dumps(overlap_bands(synthesize(worked, CoopBudget.half(5)))))
    code, out, _ = run(capsys, "verify", str(doc))
    assert code == 3
    assert any(v["constraint"].startswith("band-overlap") for v in json.loads(out)["violations"])
    assert run(capsys, "sim", str(doc), "--grain", "1")[0] == 3


def test_schema_errors(tmp_path, capsys, worked):
    doc = json.loads(cli.dumps(synthesize(worked, CoopBudget.half(5))))
    doc["codewords"][1]["gdof"] = 0.5
    path = tmp_path / "d.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2 and "$.codewords[1].gdof" in err
    with pytest.raises(cli.SchemaError) as e:
        cli.doc_to_scheme({**doc, "schema": 2})
    assert e.value.path == "$.schema"


@settings(max_examples=50)
@given(params, budgets)
def test_document_round_trip(p, pi):
    for b in (CoopBudget.half(pi), CoopBudget.full(pi)):
        s = synthesize(p, b)
        assert cli.loads(cli.dumps(s)) == s


def test_figures_are_byte_stable(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, "figures", "--which", "fig2", "--out", str(a))[0] == 0
    run(capsys, "figures", "--which", "fig2", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().splitlines()[0] == ",".join(cli.FIG2_HEADER)
    assert len(a.read_text().splitlines()) == 252


def test_figure_unwritable(capsys):
    assert run(capsys, "figures", "--which", "fig1", "--out", "/nonexistent/dir/x.csv")[0] == 2


def test_fig1_row():
    rows = cli.fig1_rows()
    row = next(r for r in rows if r[0] == F(5, 6) and r[2] == "0")
    assert row[4] == F(7, 6)


def test_sweep_small(tmp_path, capsys):
    out = tmp_path / "sweep.csv"
    code, _, err = run(capsys, "sweep", "--n", "4", "--sim-every", "2", "--out", str(out))
    assert code == 0 and "0 failed" in err
    text = out.read_text()
    assert text.count("\n") == 1 + 3 * 4 * 5
    run(capsys, "sweep", "--n", "4", "--sim-every", "2", "--out", str(tmp_path / "again.csv"))
    assert (tmp_path / "again.csv").read_text() == text


def test_sweep_workers_env(monkeypatch):
    monkeypatch.setenv(cli.WORKERS_ENV, "3")
    assert cli.workers() == 3
    monkeypatch.setenv(cli.WORKERS_ENV, "junk")
    assert cli.workers() == 1


def test_sweep_parallel_matches_serial():
    assert cli.run_sweep(3, 5, n_workers=2) == cli.run_sweep(3, 5, n_workers=1)
