import csv
import io
import json
import subprocess
import sys

import pytest

from streamshare.cli import RunConfig, cmd_axioms, run
from streamshare.core import example_problem, parse_csv, to_csv
from streamshare.errors import InvalidParameter
from streamshare.indices import Index, user_centric


@pytest.fixture
def ex1_csv(tmp_path):
    path = tmp_path / "ex1.csv"
    path.write_text(to_csv(example_problem()))
    return str(path)


def compute(path, *extra):
    return run(["compute", "--input", path, *extra])


def test_compute_pro_rata_json(ex1_csv):
    code, out, err = compute(ex1_csv, "--index", "pro-rata")
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert [(r["reward"], r["reward_decimal"]) for r in doc["results"]] == [
        ("33/14", "2.36"), ("9/14", "0.64")]
    assert [r["index"] for r in doc["results"]] == ["110", "30"]


@pytest.mark.parametrize("name, rewards", [
    ("shapley", ["3/2", "3/2"]),
    ("user-centric", ["4/3", "5/3"]),
    ("equal-division", ["3/2", "3/2"]),
    ("top-takes-all", ["3", "0"]),
])
def test_compute_other_indices(ex1_csv, name, rewards):
    code, out, _ = compute(ex1_csv, "--index", name)
    assert code == 0
    assert [r["reward"] for r in json.loads(out)["results"]] == rewards


def test_compute_params(ex1_csv):
    code, out, _ = compute(ex1_csv, "--index", "blend1", "--beta", "1/2")
    assert [r["reward"] for r in json.loads(out)["results"]] == ["17/12", "19/12"]
    assert json.loads(out)["params"] == {"beta": "1/2"}
    code, out, _ = compute(ex1_csv, "--index", "spotify", "--tau", "100")
    assert code == 0 and [r["index"] for r in json.loads(out)["results"]] == ["110", "0"]


def test_compute_csv_and_table(ex1_csv):
    code, out, _ = compute(ex1_csv, "--index", "user-centric", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["reward_decimal"] for r in rows] == ["1.33", "1.67"]
    code, out, _ = compute(ex1_csv, "--index", "pro-rata", "--format", "table", "--precision", "3")
    assert code == 0 and "33/14" in out and "2.357" in out


def test_compute_exit_codes(ex1_csv, tmp_path):
    code, out, err = compute(ex1_csv, "--index", "spotify", "--tau", "1000")
    assert code == 3 and "AllArtistsBelowThreshold" in err and out == ""
    assert compute(str(tmp_path / "missing.csv"), "--index", "pro-rata")[0] == 2
    bad = tmp_path / "bad.csv"
    bad.write_text("artist_id,a,b\n1,3,0\n")
    code, _, err = compute(str(bad), "--index", "pro-rata")
    assert code == 2 and "'b'" in err
    assert compute(ex1_csv, "--index", "nope")[0] == 2
    assert compute(ex1_csv, "--index", "pro-rata", "--tau", "5")[0] == 2
    assert compute(ex1_csv, "--index", "blend1", "--beta", "9")[0] == 3
    assert run(["axioms", "--seed", "-1"])[0] == 2
    assert run(["axioms", "--budget", "0"])[0] == 2


def test_axioms_single_index():
    code, out, _ = run(["axioms", "--indices", "pro-rata", "--budget", "50"])
    assert code == 0
    doc = json.loads(out)
    assert list(doc["matrix"]) == ["pro-rata"] and doc["matches_expected"] is True
    assert doc["matrix"]["pro-rata"]["equal-global-impact"]["witness"]["lhs"]


def test_axioms_formats():
    code, out, _ = run(["axioms", "--indices", "shapley,binary", "--budget", "30",
                        "--format", "table"])
    assert code == 0 and "shapley" in out and "✗" in out and "!" not in out.split("\n")[3]
    code, out, _ = run(["axioms", "--indices", "shapley", "--budget", "30", "--format", "csv"])
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 6 and {r["index"] for r in rows} == {"shapley"}
    assert run(["axioms", "--indices", "bogus"])[0] == 2


def test_axioms_broken_index_exits_4():
    broken = Index("pro-rata", user_centric)  # wears the pro-rata name, computes user-centric
    code, out = cmd_axioms(RunConfig("axioms", budget=50, format="table"), indices=[broken])
    assert code == 4 and "!" in out


def test_shapley_audit():
    code, out, _ = run(["shapley-audit", "--profiles", "40", "--games", "20"])
    doc = json.loads(out)
    assert code == 0 and doc["ok"]
    assert [p["profiles"] for p in doc["pairs"]] == [41, 41]
    code, out, _ = run(["shapley-audit", "--pair", "user-centric:pro-rata-game",
                        "--profiles", "5", "--games", "0"])
    assert code == 4
    v = json.loads(out)["pairs"][0]["violations"]
    assert {"kind": "value", "user": "u0", "profile": {"1": "1", "2": "2"}, "artist": "1",
            "d": "1/3", "shapley": "1"} in v
    assert run(["shapley-audit", "--profiles", "0"])[0] == 2
    assert run(["shapley-audit", "--pair", "x:y"])[0] == 2


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("STREAMSHARE_SEED", "9")
    code, out, _ = run(["shapley-audit", "--profiles", "3", "--games", "1"])
    assert json.loads(out)["seed"] == 9
    code, out, _ = run(["shapley-audit", "--profiles", "3", "--games", "1", "--seed", "4"])
    assert json.loads(out)["seed"] == 4
    monkeypatch.setenv("STREAMSHARE_SEED", "abc")
    assert run(["shapley-audit", "--profiles", "3"])[0] == 2


def test_reports_are_deterministic():
    argv = ["axioms", "--indices", "spotify,user-centric", "--budget", "40", "--seed", "3"]
    assert run(argv) == run(argv)
    argv = ["shapley-audit", "--profiles", "10", "--games", "5", "--seed", "3"]
    assert run(argv) == run(argv)


def test_witness_csv_round_trips():
    code, out, _ = run(["axioms", "--indices", "spotify", "--budget", "10"])
    w = json.loads(out)["matrix"]["spotify"]["additivity"]["witness"]
    p = parse_csv(w["problem_csv"])
    assert to_csv(p) == w["problem_csv"] and p.streams == ((600, 600),)


def test_config_validation():
    with pytest.raises(InvalidParameter):
        RunConfig("axioms", format="xml").validate()


def test_module_entry_point(ex1_csv):
    proc = subprocess.run([sys.executable, "-m", "streamshare", "compute", "--input", ex1_csv,
                           "--index", "shapley", "--format", "csv"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "3/2" in proc.stdout
