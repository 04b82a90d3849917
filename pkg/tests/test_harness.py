from __future__ import annotations

import io
import json

import pytest

from artifact import harness
from artifact.cli import main
from artifact.harness import CheckRecord, SweepConfig, emit_lattice, explain_q, read_records, run_verify


def _strip(records):
    return [{k: v for k, v in r.to_dict().items() if k != "elapsed_ms"} for r in records]


def test_dims_suite_passes():
    records, code = run_verify(SweepConfig(ps=(3,), r_min=9, r_max=60, suites=("dims",)))
    assert code == 0
    for rec in records:
        below = rec.i == 2 and rec.r % 3 < 2 and rec.r <= 12
        assert rec.status == ("not-applicable" if below else "pass"), rec


def test_r_zero_only_gives_no_records():
    records, code = run_verify(SweepConfig(ps=(3, 5), r_min=0, r_max=0, suites=harness.SUITES))
    assert records == [] and code == 0


def test_qstruct_below_every_window():
    records, code = run_verify(SweepConfig(ps=(5,), r_min=1, r_max=4, suites=("qstruct",)))
    assert code == 0
    assert records and {r.status for r in records} == {"not-applicable"}


def test_config_validation():
    with pytest.raises(ValueError):
        SweepConfig(ps=(4,))
    with pytest.raises(ValueError):
        SweepConfig(r_min=10, r_max=9)
    with pytest.raises(ValueError):
        SweepConfig(suites=("nope",))
    with pytest.raises(ValueError):
        SweepConfig(fmt="xml")


def test_fail_records_need_both_values():
    with pytest.raises(ValueError):
        CheckRecord(3, 10, 1, None, "dims", "fail", "", "6")
    with pytest.raises(ValueError):
        CheckRecord(3, 10, 1, None, "dims", "maybe", "6", "6")


def test_inconsistency_becomes_fail_record():
    rec = harness._compare(3, 10, 0, None, "qstruct", lambda: (_ for _ in ()).throw(harness.JHInconsistency("boom")), lambda: 7)
    assert rec.status == "fail" and "boom" in rec.predicted and rec.observed == "7"


def test_rerun_is_identical_modulo_elapsed():
    cfg = SweepConfig(ps=(3, 5), r_min=20, r_max=40, suites=("singular", "xrp", "identities"), seed=4, samples=50, periodicity_samples=5)
    a, _ = run_verify(cfg)
    b, _ = run_verify(cfg)
    assert _strip(a) == _strip(b)


def test_parallel_matches_serial():
    base = dict(ps=(3, 5), r_min=15, r_max=45, suites=("successive", "qstruct", "periodicity"), periodicity_samples=6)
    serial, _ = run_verify(SweepConfig(threads=1, **base))
    parallel, _ = run_verify(SweepConfig(threads=4, **base))
    assert _strip(serial) == _strip(parallel)


def test_seed_changes_samples():
    a = harness.periodicity_samples(5, 10, seed=0)
    b = harness.periodicity_samples(5, 10, seed=1)
    assert a != b
    for r, s, n, m, i in a:
        assert r - s == 20 and 0 <= n < m <= 5 and s >= m * 6 - 1


def test_jsonl_and_csv_roundtrip(tmp_path):
    records, _ = run_verify(SweepConfig(ps=(3,), r_min=9, r_max=14, suites=("dims", "equality")))
    for fmt in ("jsonl", "csv"):
        buf = io.StringIO()
        harness.write_records(records, fmt, buf)
        assert read_records(buf.getvalue(), fmt) == records
    buf = io.StringIO()
    harness.write_records(records, "csv", buf)
    assert buf.getvalue().splitlines()[0] == "p,r,i,j,suite,status,predicted,observed,elapsed_ms"


def test_report_file_written(tmp_path):
    out = tmp_path / "r.jsonl"
    records, code = run_verify(SweepConfig(ps=(3,), r_min=9, r_max=12, suites=("dims",), out=str(out)))
    lines = out.read_text().splitlines()
    assert len(lines) == len(records)
    assert list(json.loads(lines[0])) == list(harness.COLUMNS)


def test_lattice_merges_equal_subspaces():
    dot = emit_lattice(3, 11, 2)
    assert '"Xr-1" [label="dim 6\\ni = 1,2"]' in dot
    assert '"Xr-2"' not in dot
    assert '"Xr-0" -> "Xr-1"' in dot


def test_lattice_single_node():
    dot = emit_lattice(5, 40, 0)
    assert dot.count("[label=") == 1 and "->" not in dot


def test_lattice_with_x_r_minus_p():
    dot = emit_lattice(3, 13, 3)
    assert '"Xr-3"' in dot
    # X_{r-3} sits strictly between X_r and X_{r-2}, beside X_{r-1}
    assert '"Xr-0" -> "Xr-3"' in dot and '"Xr-3" -> "Xr-2"' in dot
    assert '"Xr-1" -> "Xr-3"' not in dot and '"Xr-3" -> "Xr-1"' not in dot
    with pytest.raises(ValueError):
        emit_lattice(3, 13, 4)


def test_explain_q_outputs():
    text = explain_q(5, 42, 2)
    assert text.splitlines()[0].startswith("Q(2) = V2")
    assert len(explain_q(5, 30, 0).splitlines()) == 1
    cmp = explain_q(5, 42, 2, compare=True)
    assert "oracle: V2" in cmp and "agrees" in cmp


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text("# a sweep\np = 3\nr-min = 9\nr_max = 20\nsuite = dims\nformat = csv\n")
    out = tmp_path / "out.csv"
    code = main(["verify", "--config", str(cfg), "--r-max", "12", "--out", str(out)])
    assert code == 0
    rows = out.read_text().splitlines()
    assert rows[0].startswith("p,r,i,j")
    assert {int(line.split(",")[1]) for line in rows[1:]} == {9, 10, 11, 12}


def test_cli_subcommands(tmp_path, capsys, monkeypatch):
    assert main(["qstruct", "--p", "5", "--r", "42", "--i", "2"]) == 0
    assert "Q(2) = V2" in capsys.readouterr().out
    assert main(["explain_q", "--p", "5", "--r", "4", "--i", "2"]) == 2
    assert main(["lattice", "--p", "3", "--r", "11", "--max-i", "2"]) == 0
    assert "digraph" in capsys.readouterr().out
    assert main(["dims", "--p", "3", "--r-min", "29"]) == 0
    assert "29\t2\t6\t6" in capsys.readouterr().out
    monkeypatch.setenv("ARTIFACT_REPORT_DIR", str(tmp_path))
    assert main(["sweep", "--p", "3", "--r-min", "7", "--r-max", "20", "--suite", "xrp"]) == 0
    assert (tmp_path / "sweep-xrp-p3.jsonl").exists()
    assert main(["verify", "--p", "4"]) == 2
