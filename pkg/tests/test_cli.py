import csv
import io
import json
import subprocess
import sys

import pytest

from coxshuffle.algebra import AlgebraElement, shuffle
from coxshuffle.cli import main
from coxshuffle.numbers import stirling2


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_process(*argv):
    return subprocess.run([sys.executable, "-m", "coxshuffle", *argv], capture_output=True, check=False)


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--family", "A", "--n", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["count"] == 13
    code, out, _ = run(capsys, "enumerate", "--family", "B", "--n", "2", "--type", "t", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and len(rows) == 5


@pytest.mark.parametrize("family", ["sideA", "twoSidedA", "riffleA", "sideB", "riffleB", "sideD", "riffleD"])
def test_verify_passes(capsys, family):
    code, out, _ = run(capsys, "verify", "--family", family, "--n", "3", "--checks", "semigroup,idempotents,minpoly,axioms")
    report = json.loads(out)
    assert code == 0, out
    assert all(c["pass"] for c in report["checks"])
    assert all("identity" in c for c in report["checks"])


def test_verify_usage_errors(capsys):
    assert run(capsys, "verify", "--family", "sideA", "--n", "99")[0] == 2
    assert run(capsys, "verify", "--family", "bogus", "--n", "3")[0] == 2
    assert run(capsys, "verify", "--family", "sideA", "--n", "3", "--checks", "nope")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2


def test_spectrum(capsys, tmp_path):
    matrix = tmp_path / "m.csv"
    fig = tmp_path / "m.png"
    code, out, _ = run(capsys, "spectrum", "--family", "riffleA", "--n", "4", "--a", "2", "--matrix", str(matrix), "--figure", str(fig))
    data = json.loads(out)
    assert code == 0
    assert data["eigenvalues"] == [2, 4, 8, 16] and data["multiplicities"] == [6, 11, 6, 1]
    assert len(matrix.read_text().splitlines()) == 25
    assert fig.stat().st_size > 0


def test_map_face_and_family(capsys):
    code, out, _ = run(capsys, "map", "--map", "B->A", "--n", "3", "--face", "({2}|{-3}|Z:{1})", "--format", "text")
    assert code == 0 and "({2}|{1}|{3})" in out
    code, out, _ = run(capsys, "map", "--map", "B->D", "--n", "3", "--family", "riffleB", "--a", "3")
    data = json.loads(out)
    assert code == 0 and data["homomorphism"]
    assert [r["a"] for r in data["shuffles"]] == [1, 2, 3]
    assert all(r["equals_target_shuffle"] for r in data["shuffles"])


def test_map_element_round_trip(capsys, tmp_path):
    src = tmp_path / "x.json"
    src.write_text(shuffle("sideB", 3, 2).to_json())
    code, out, _ = run(capsys, "map", "--map", "B->D", "--n", "3", "--element", str(src))
    assert code == 0
    assert AlgebraElement.from_json(out) == shuffle("sideD", 3, 2)


def test_qshuffle(capsys):
    code, out, _ = run(capsys, "qshuffle", "--building", "glnA", "--n", "3", "--q", "2")
    assert code == 0 and json.loads(out)["pass"]
    assert run(capsys, "qshuffle", "--building", "glnA", "--n", "3", "--q", "4")[0] == 2


def test_numbers(capsys):
    code, out, _ = run(capsys, "numbers", "--kind", "plain", "--amax", "5", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert all(int(r["value"]) == stirling2(int(r["a"]), int(r["j"])) for r in rows)
    assert run(capsys, "numbers", "--kind", "qA", "--amax", "3")[0] == 2


def test_simulate_csv_and_config(capsys, tmp_path):
    code, out, _ = run(capsys, "simulate", "--family", "sideA", "--n", "3", "--steps", "3", "--trials", "500")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "step,chamber,tv_distance" and len(lines) == 5
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"family": "sideA", "n": 3, "a": 1, "steps": 3, "trials": 500, "seed": 0}))
    code2, out2, _ = run(capsys, "simulate", "--config", str(cfg))
    assert code2 == 0 and out2 == out
    assert run(capsys, "simulate", "--n", "3")[0] == 2
    assert run(capsys, "simulate", "--family", "riffleA", "--n", "3", "--a", "0")[0] == 2


def test_write_to_file(capsys, tmp_path):
    target = tmp_path / "faces.txt"
    code, out, _ = run(capsys, "enumerate", "--family", "A", "--n", "2", "--format", "text", "--out", str(target))
    assert code == 0 and out == ""
    assert "({1}|{2})" in target.read_text()
    assert run(capsys, "enumerate", "--family", "A", "--n", "2", "--out", str(tmp_path / "missing" / "x"))[0] == 1


def test_reruns_are_byte_identical(tmp_path):
    argv = ["simulate", "--family", "riffleB", "--n", "3", "--a", "3", "--steps", "5", "--trials", "3000", "--seed", "9", "--sampler", "cards"]
    first, second = run_process(*argv), run_process(*argv)
    assert first.returncode == 0
    assert first.stdout == second.stdout and first.stdout
