import itertools
import json
import os
import pathlib
import subprocess

import jsonschema
import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]
BIN = os.environ.get("UGSPEC_BIN", str(ROOT / "build" / "tools" / "ugspec"))
SCHEMA = json.loads((ROOT / "docs" / "report.schema.json").read_text())


def run(*args, cwd=None):
    return subprocess.run([BIN, *map(str, args)], capture_output=True, text=True, cwd=cwd)


def report(*args, cwd=None):
    p = run(*args, cwd=cwd)
    assert p.returncode == 0, p.stderr
    out = json.loads(p.stdout)
    jsonschema.validate(out, SCHEMA)
    return out


def load_ug(path):
    lines = [l.split() for l in pathlib.Path(path).read_text().splitlines() if l.strip() and not l.startswith("#")]
    kind, n, k = lines[0][0], int(lines[0][1]), int(lines[0][2])
    edges = []
    for f in lines[1:]:
        u, v, w = int(f[0]), int(f[1]), float(f[2])
        if kind == "ug":
            perm = [int(x) for x in f[3:]]
        else:
            c = int(f[3])
            perm = [(i - c) % k for i in range(k)]
        edges.append((u, v, w, perm))
    return n, k, edges


def value(edges, labels):
    total = sum(w for _, _, w, _ in edges)
    good = sum(w for u, v, w, p in edges if p[labels[u]] == labels[v])
    return good / total


def brute(n, k, edges):
    return max(value(edges, L) for L in itertools.product(range(k), repeat=n))


@pytest.fixture
def planted(tmp_path):
    report("gen", "planted", "--n", 8, "--d", 3, "--k", 3, "--eps", 0.1, "--seed", 5,
           "--out", tmp_path / "p.ug", "--completion-out", tmp_path / "c.ug")
    return tmp_path


def test_gen_planted_outputs(planted):
    n, k, edges = load_ug(planted / "p.ug")
    labels = [int(x) for x in (planted / "p.ug.planted").read_text().split()]
    assert (n, k, len(labels)) == (8, 3, 8)
    _, _, comp = load_ug(planted / "c.ug")
    assert value(comp, labels) == 1.0
    assert value(edges, labels) < 1.0


def test_gen_is_seeded(tmp_path):
    for name, seed in (("a", 9), ("b", 9), ("c", 10)):
        run("gen", "planted", "--n", 10, "--d", 3, "--k", 4, "--eps", 0.1, "--seed", seed,
            "--out", tmp_path / f"{name}.ug", "--omit-timings")
    a, b, c = ((tmp_path / f"{x}.ug").read_bytes() for x in "abc")
    assert a == b
    assert a != c


def test_oracle_matches_python_brute_force(planted):
    n, k, edges = load_ug(planted / "p.ug")
    r = report("oracle", planted / "p.ug")
    assert r["best_value"] == pytest.approx(brute(n, k, edges), abs=1e-12)
    assert value(edges, r["best_labeling"]) == pytest.approx(r["best_value"], abs=1e-12)


def test_solve_below_oracle(planted):
    s = report("solve", planted / "p.ug", "--epsilon", 0.01, "--gamma", 0.5, "--max-dim", 64, "--net-step", 0.5)
    o = report("oracle", planted / "p.ug")
    assert s["best_value"] <= o["best_value"]
    _, _, edges = load_ug(planted / "p.ug")
    assert value(edges, s["best_labeling"]) == pytest.approx(s["best_value"], abs=1e-12)
    assert s["decision"] in ("YES", "NO")


def test_kv_pipeline(tmp_path):
    report("gen", "kv", "--kappa", 2, "--eps", 0.25, "--out", tmp_path / "kv.ug")
    n, k, edges = load_ug(tmp_path / "kv.ug")
    r = report("oracle", tmp_path / "kv.ug")
    assert r["best_value"] == pytest.approx(brute(n, k, edges), abs=1e-12)
    assert r["best_value"] < 4 ** -0.25


def test_every_subcommand_validates(planted, tmp_path):
    p = planted / "p.ug"
    report("spectrum", p, "--gamma", 0.5, "--vectors")
    report("spectrum", p, "--laplacian", "--gamma", 0.5)
    report("diagnose", p, "--planted", planted / "p.ug.planted", "--epsilon", 0.05, "--gamma", 0.5)
    report("kv-spectrum", "--n", 6, "--eps", 0.1, "--gamma", 0.5)
    report("gen", "regular", "--n", 10, "--d", 3, "--out", tmp_path / "r.ug")
    report("gen", "planted", "--n", 12, "--d", 3, "--k", 3, "--family", "maxlin", "--eps", 0.05, "--seed", 2,
           "--out", tmp_path / "m.ug", "--completion-out", tmp_path / "mc.ug")
    report("solve", tmp_path / "m.ug", "--maxlin", "--epsilon", 0.01, "--gamma", 0.5, "--max-dim", 64,
           "--net-step", 0.5)
    report("diagnose", tmp_path / "m.ug", "--maxlin", "--planted", tmp_path / "m.ug.planted",
           "--completion", tmp_path / "mc.ug", "--gamma", 0.5, "--epsilon", 0.05)


@pytest.mark.parametrize("args", [
    ("solve", "p.ug", "--epsilon", "0.01", "--gamma", "0.5", "--max-dim", "64", "--net-step", "0.5"),
    ("oracle", "p.ug"),
    ("spectrum", "p.ug", "--gamma", "0.5"),
    ("diagnose", "p.ug", "--planted", "p.ug.planted", "--epsilon", "0.05", "--gamma", "0.5"),
])
def test_byte_identical(planted, args):
    a = run(*args, "--omit-timings", "--seed", 3, cwd=planted)
    b = run(*args, "--omit-timings", "--seed", 3, cwd=planted)
    assert a.returncode == 0, a.stderr
    assert a.stdout == b.stdout


def test_timings_present_by_default(planted):
    r = report("oracle", planted / "p.ug")
    assert r["manifest"]["timings"]["wall_seconds"] >= 0
    assert len(r["manifest"]["input_sha256"]) == 64


def test_exit_codes(planted, tmp_path):
    p = planted / "p.ug"
    assert run("solve", p, "--gamma", 0.05, "--epsilon", 0.01).returncode == 1
    assert run("solve", p, "--bogus-flag").returncode == 1
    assert run("no-such-command").returncode == 1
    bad = tmp_path / "bad.ug"
    bad.write_text("ug 2 2\n0 1 1.0 0 0\n")
    r = run("oracle", bad)
    assert r.returncode == 1
    assert "line 2" in r.stderr
    assert run("solve", p, "--epsilon", 0.01, "--gamma", 0.5, "--max-dim", 1).returncode == 2
    assert run("oracle", p, "--budget", 10).returncode == 2
