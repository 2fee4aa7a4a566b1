import json
import subprocess
import sys

import pytest

from transversal_kit import quasigroup as qg
from transversal_kit.catalog import catalog_group
from transversal_kit.cli import main
from transversal_kit.report import read_group, write_quasigroup


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def records(out):
    lines = [json.loads(s) for s in out.splitlines()]
    assert lines[-1]["summary"] is True
    return lines[:-1], lines[-1]


@pytest.fixture
def q3_file(tmp_path, q3):
    path = tmp_path / "q3.json"
    write_quasigroup(path, q3)
    return path


def test_transversals_s3(capsys):
    code, out, _ = run(capsys, "transversals", "S3", "--subgroup", "{e,(12)}")
    assert code == 0
    recs, summary = records(out)
    ts = [r for r in recs if r["check"] == "transversal"]
    assert len(ts) == 4
    (s,) = [r for r in recs if r["check"] == "subgroup_summary"]
    assert s["transversals"] == 4 and s["iso_classes"] == 3 and s["mode"] == "exhaustive"
    assert sorted(r["torsion_order"] for r in ts) == [1, 2, 2, 2]
    assert summary["passed"] and summary["failed"] == 0


def test_transversals_whole_group_and_all_subgroups(capsys):
    code, out, _ = run(capsys, "transversals", "S3", "--subgroup", "{(12),(123)}")
    recs, _ = records(out)
    ts = [r for r in recs if r["check"] == "transversal"]
    assert code == 0 and len(ts) == 1 and ts[0]["reps"] == ["e"]
    code, out, _ = run(capsys, "transversals", "Z4")
    recs, _ = records(out)
    assert code == 0
    assert [r["subgroup"] for r in recs if r["check"] == "subgroup_summary"] == [["0"], ["0", "2"], ["0", "1", "2", "3"]]


def test_transversals_reps_file_and_group_file(capsys, tmp_path):
    G = catalog_group("S3")
    reps = [G.index_of(s) for s in ("e", "(23)", "(13)")]
    (tmp_path / "reps.json").write_text(json.dumps({"reps": reps}))
    code, out, _ = run(capsys, "transversals", "S3", "--subgroup", "{e,(12)}", "--reps", str(tmp_path / "reps.json"))
    recs, _ = records(out)
    assert code == 0 and len([r for r in recs if r["check"] == "transversal"]) == 1
    gfile = tmp_path / "z3.json"
    gfile.write_text(json.dumps({"labels": ["0", "1", "2"], "identity": 0,
                                 "table": [[(a + b) % 3 for b in range(3)] for a in range(3)]}))
    code, out, _ = run(capsys, "transversals", str(gfile))
    assert code == 0 and records(out)[1]["group"] == "z3.json"


def test_catalog_name_beats_file(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    (tmp_path / "S3").write_text("not json")
    code, _, err = run(capsys, "transversals", "S3", "--subgroup", "{e,(12)}")
    assert code == 0 and "warning" in err


def test_extension_q3(capsys, q3_file, tmp_path):
    out_t = tmp_path / "t.json"
    code, out, _ = run(capsys, "extension", str(q3_file), "--write-torsion", str(out_t),
                       "--write-universal", str(tmp_path / "u.json"))
    assert code == 0
    recs, _ = records(out)
    (orders,) = [r for r in recs if r["check"] == "orders"]
    assert orders["torsion_extension"] == 6 and orders["universal_extension"] == 6
    assert read_group(out_t).n == 6
    assert read_group(tmp_path / "u.json").n == 6


def test_extension_z4(capsys, tmp_path, z4):
    path = tmp_path / "z4.json"
    write_quasigroup(path, z4)
    code, out, _ = run(capsys, "extension", str(path))
    (orders,) = [r for r in records(out)[0] if r["check"] == "orders"]
    assert code == 0 and (orders["torsion_extension"], orders["universal_extension"]) == (4, 24)


def test_extension_cap(capsys, tmp_path):
    path = tmp_path / "big.json"
    write_quasigroup(path, qg.random_quasigroup(8, 0))
    code, _, err = run(capsys, "extension", str(path))
    assert code == 1 and "cap exceeded" in err


def test_io_and_validation_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "extension", str(bad))
    assert code == 3 and "malformed JSON" in err
    code, _, _ = run(capsys, "extension", str(tmp_path / "missing.json"))
    assert code == 3
    notq = tmp_path / "notq.json"
    notq.write_text(json.dumps({"table": [[0, 1], [1, 1]]}))
    code, _, err = run(capsys, "extension", str(notq))
    assert code == 1 and "not bijective" in err
    code, _, err = run(capsys, "transversals", "S3", "--subgroup", "{e,(99)}")
    assert code == 1
    code, _, _ = run(capsys, "sphere", "--dim", "3", "--samples", "10", "--out", str(tmp_path / "no" / "dir.json"))
    assert code == 3


def test_property_violation_exit_code(capsys):
    code, out, _ = run(capsys, "sphere", "--dim", "3", "--samples", "50", "--tol", "-1")
    assert code == 2
    assert not records(out)[1]["passed"]


def test_sphere_and_cayley(capsys):
    code, out, _ = run(capsys, "sphere", "--dim", "2", "--samples", "200", "--seed", "1")
    recs, _ = records(out)
    (d,) = [r for r in recs if r["check"] == "discontinuity_witness"]
    assert code == 0 and d["skipped"] and "n >= 3" in d["note"]
    code, out, _ = run(capsys, "cayley", "--dim", "8", "--samples", "500", "--seed", "1")
    recs, _ = records(out)
    (w,) = [r for r in recs if r["check"] == "nonassociativity_witness"]
    assert code == 0 and w["residual"] > 0.5


def test_csv_output(capsys, tmp_path):
    out_file = tmp_path / "seq.csv"
    code, _, _ = run(capsys, "sphere", "--dim", "3", "--samples", "100", "--format", "csv", "--out", str(out_file))
    lines = out_file.read_text().splitlines()
    assert code == 0
    assert lines[0].split(",")[:2] == ["eps", "distance"]
    assert len(lines) == 5
    code, out, _ = run(capsys, "cayley", "--dim", "4", "--samples", "100", "--format", "csv")
    assert out.splitlines()[0] == "check,passed,max_residual,tol"


def test_same_seed_same_bytes(capsys):
    a = run(capsys, "sphere", "--dim", "5", "--samples", "300", "--seed", "9")[1]
    b = run(capsys, "sphere", "--dim", "5", "--samples", "300", "--seed", "9")[1]
    c = run(capsys, "sphere", "--dim", "5", "--samples", "300", "--seed", "10")[1]
    assert a == b and a != c


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "transversal_kit.cli", "cayley", "--dim", "2", "--samples", "50"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout.splitlines()[-1])["passed"] is True
