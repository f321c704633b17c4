"""The command line: exit codes, report bodies and byte determinism."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

FIXDIR = Path(__file__).resolve().parents[1] / "fixtures"


def run(*args, **kw):
    return subprocess.run(
        [sys.executable, "-m", "graphrank.cli", *args],
        capture_output=True, text=True, **kw,
    )


def test_analyze_reports():
    got = run("analyze", str(FIXDIR / "withtops_all.graph"))
    assert got.returncode == 0
    doc = json.loads(got.stdout)
    assert doc["schema"] == 1
    assert doc["normal_rank"]["rank"] == "1"
    assert doc["aleph1_rank"]["status"] == "NoRank"

    got = run("analyze", str(FIXDIR / "k_aleph1.graph"))
    assert json.loads(got.stdout)["normal_rank"]["status"] == "NoRank"

    got = run("analyze", str(FIXDIR / "ray.graph"))
    doc = json.loads(got.stdout)
    assert doc["normal_rank"]["rank"] == "0"
    assert doc["ends"]["classes"][0]["dominated"] == "No"


def test_parse_error_exit_code():
    got = run("analyze", "comb(two)")
    assert got.returncode == 2
    assert "parse error" in got.stderr


def test_build_and_verify_round_trip(tmp_path):
    art = tmp_path / "efst.json"
    got = run("build", "efst", str(FIXDIR / "withtops_all.graph"),
              "--out", str(art))
    assert got.returncode == 0
    doc = json.loads(art.read_text())
    assert doc["kind"] == "tree" and doc["ends"] == {"branches": "all"}
    got = run("verify", "--artifact", str(art), "--d", "3", "--w", "3",
              str(FIXDIR / "withtops_all.graph"))
    assert got.returncode == 0
    assert json.loads(got.stdout)["pass"] is True


def test_build_unavailable_exit_code(tmp_path):
    got = run("build", "rayless", str(FIXDIR / "ray.graph"))
    assert got.returncode == 4
    body = json.loads(got.stdout)
    assert body["status"] == "NotAllDominated"
    assert body["undominated_end"] == "end"
    # a failing construction still reports a body, never only a code
    assert got.stdout.strip()


def test_verify_mismatch_exit_code(tmp_path):
    art = tmp_path / "t.json"
    run("build", "efst", str(FIXDIR / "ray.graph"), "--out", str(art))
    got = run("verify", "--artifact", str(art),
              str(FIXDIR / "comb1.graph"))
    assert got.returncode == 5


def test_verify_tampered_artifact_fails(tmp_path):
    art = tmp_path / "t.json"
    run("build", "efst", str(FIXDIR / "ray.graph"), "--out", str(art))
    doc = json.loads(art.read_text())
    # redirect one parent rule to create a cycle
    doc["rules"] = [{"kind": "specific", "params": [["r1", "r2"]]},
                    {"kind": "specific", "params": [["r2", "r1"]]}] + doc["rules"]
    art.write_text(json.dumps(doc))
    got = run("verify", "--artifact", str(art), str(FIXDIR / "ray.graph"))
    assert got.returncode == 1
    body = json.loads(got.stdout)
    assert body["pass"] is False
    assert any("reach" in f for f in body["failures"])


def test_export_shapes(tmp_path):
    got = run("export", str(FIXDIR / "ray.graph"), "--d", "5", "--w", "1")
    assert got.returncode == 0
    assert got.stdout.count("--") == 4

    got = run("export", str(FIXDIR / "k_aleph0.graph"), "--d", "1", "--w", "6")
    assert got.stdout.count("--") == 15

    art = tmp_path / "efst.json"
    run("build", "efst", str(FIXDIR / "withtops_all.graph"),
        "--out", str(art))
    got = run("export", str(FIXDIR / "withtops_all.graph"), "--d", "3",
              "--w", "2", "--overlay", str(art))
    assert got.returncode == 0
    assert got.stdout.count("color=red") == 10  # tree edges of 11 vertices


def test_byte_identical_reruns(tmp_path):
    """Two runs of analyze + build + verify over the catalog produce
    byte-identical reports."""
    names = ["ray", "comb2", "star_aleph0", "withtops_all", "k_aleph1",
             "star_of_stars", "nested_tops"]
    outputs = []
    for round_ in (0, 1):
        blob = []
        for name in names:
            path = str(FIXDIR / f"{name}.graph")
            blob.append(run("analyze", path).stdout)
            built = run("build", "efst", path)
            blob.append(built.stdout)
            if built.returncode == 0:
                art = tmp_path / f"{name}_{round_}.json"
                art.write_text(built.stdout)
                blob.append(run("verify", "--artifact", str(art), "--d", "3",
                                "--w", "2", path).stdout)
        outputs.append("\n".join(blob))
    assert outputs[0] == outputs[1]
