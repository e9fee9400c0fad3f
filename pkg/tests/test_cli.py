from __future__ import annotations

import json
import subprocess
import sys
from concurrent.futures import ThreadPoolExecutor

import pytest

from foliate import parse_direction, parse_triangulation
from foliate.cli import main
from foliate.fibration import build_fibration_map, solve_triangle_system


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main([str(a) for a in argv])
        out = capsys.readouterr()
        return code, out.out, out.err
    return _run


def _json(run, *argv):
    code, out, _ = run(*argv, "--json", "--no-timing")
    return code, json.loads(out)


def _checks(report):
    return {c["name"]: c for c in report["checks"]}


# -- check -------------------------------------------------------------------

def test_check_pentachoron(run, fixtures_dir):
    code, rep = _json(run, "check", fixtures_dir / "pentachoron.tri", fixtures_dir / "pentachoron-global.dir")
    assert code == 1 and rep["status"] == "fail"
    checks = _checks(rep)
    assert checks["validation"]["witness"]["f_vector"] == [5, 10, 10, 5]
    assert checks["tet_order"]["verdict"]
    assert checks["link_condition"]["witness"]["failed_vertices"] == [0, 4]
    assert not checks["recurrence"]["verdict"]
    assert checks["recurrence"]["witness"]["scc_count"] == 5
    assert "isoperimetric" not in checks


def test_check_products_pass(run, fixtures_dir):
    for name in ("s2xs1", "t2xs1"):
        code, rep = _json(run, "check", fixtures_dir / f"{name}.tri", fixtures_dir / f"{name}.dir")
        assert code == 0 and rep["status"] == "pass"
        checks = _checks(rep)
        assert all(checks[k]["verdict"] for k in ("validation", "link_condition", "tet_order", "recurrence"))
        assert checks["expanding"]["informational"]
        assert checks["isoperimetric"]["witness"]["c1"] >= 1


def test_check_flipped_reports_the_cycle(run, fixtures_dir):
    code, rep = _json(run, "check", fixtures_dir / "pentachoron.tri", fixtures_dir / "pentachoron-flipped.dir")
    assert code == 1
    failures = _checks(rep)["tet_order"]["witness"]
    assert {tuple(f["cycle"]) for f in failures} == {(0, 2, 1)}
    assert _checks(rep)["expanding"]["witness"] == {"skipped": "tet_order"}


@pytest.mark.parametrize("n, components", [(2, 1), (3, 1)])
def test_check_cover_on_the_torus_bundle(run, fixtures_dir, n, components):
    code, rep = _json(run, "check", fixtures_dir / "t2xs1.tri", fixtures_dir / "t2xs1.dir", "--cover", n)
    cover = _checks(rep)["cover"]
    assert code == 0 and cover["verdict"]
    assert cover["witness"]["components"] == components
    assert cover["witness"]["f_vector"][3] == n * 126
    assert cover["witness"]["lift_local_orientation"]


def test_check_cover_degree_must_be_positive(run, fixtures_dir):
    code, _, err = run("check", fixtures_dir / "t2xs1.tri", fixtures_dir / "t2xs1.dir", "--cover", 0)
    assert code == 2 and "--cover" in err


def test_missing_dir_file(run, fixtures_dir, tmp_path):
    code, out, err = run("check", fixtures_dir / "pentachoron.tri", tmp_path / "nope.dir")
    assert code == 2 and "error" in err


def test_unclosed_triangulation_fails_validation(run, fixtures_dir, tmp_path):
    tri = tmp_path / "open.tri"
    tri.write_text("".join((fixtures_dir / "pentachoron.tri").read_text().splitlines(True)[1:]))
    code, rep = _json(run, "check", tri, fixtures_dir / "pentachoron-global.dir")
    assert code == 1
    assert _checks(rep)["validation"]["verdict"] is False


def test_parse_error_is_exit_2(run, tmp_path, fixtures_dir):
    tri = tmp_path / "bad.tri"
    tri.write_text("tet 0 1 2\n")
    code, out, _ = run("check", tri, fixtures_dir / "pentachoron-global.dir", "--json")
    assert code == 2
    rep = json.loads(out)
    assert rep["status"] == "error" and rep["error"].startswith("ParseError")


# -- fiber -------------------------------------------------------------------

def test_fiber_on_the_sphere_bundle(run, fixtures_dir, tmp_path):
    prefix = tmp_path / "s2"
    code, rep = _json(run, "fiber", fixtures_dir / "s2xs1.tri", fixtures_dir / "s2xs1.dir", "--out", prefix)
    assert code == 0
    fiber = _checks(rep)["fiber"]["witness"]
    assert (fiber["euler_characteristic"], fiber["components"]) == (2, 1)
    assert rep["outputs"] == ["s2.wts", "s2.nsv"]
    T = parse_triangulation((fixtures_dir / "s2xs1.tri").read_text())
    assert len((tmp_path / "s2.wts").read_text().splitlines()) == len(T.edges)
    assert len((tmp_path / "s2.nsv").read_text().splitlines()) == len(T.tets)


def test_fiber_on_the_torus_bundle(run, fixtures_dir):
    code, rep = _json(run, "fiber", fixtures_dir / "t2xs1.tri", fixtures_dir / "t2xs1.dir")
    fiber = _checks(rep)["fiber"]["witness"]
    assert code == 0 and (fiber["euler_characteristic"], fiber["components"]) == (0, 1)


def test_fiber_on_the_pentachoron_fails_at_the_links(run, fixtures_dir):
    code, rep = _json(run, "fiber", fixtures_dir / "pentachoron.tri", fixtures_dir / "pentachoron-global.dir")
    assert code == 1
    links = _checks(rep)["vertex_links"]["witness"]
    assert links["circles"] == {"0": 0, "1": 1, "2": 1, "3": 1, "4": 0}
    assert links["failed_vertices"] == [0, 4]
    assert "fiber" not in _checks(rep)


def test_fiber_certificate(run, fixtures_dir):
    code, rep = _json(run, "fiber", fixtures_dir / "s2xs1.tri", fixtures_dir / "s2xs1-twisted.dir")
    assert code == 1
    checks = _checks(rep)
    assert not checks["triangle_system"]["verdict"]
    assert checks["certificate_check"]["verdict"]
    combo = [float(c) for c in checks["triangle_system"]["witness"]["combination"]]
    assert min(combo) >= 0 and max(combo) > 0


def test_fiber_needs_total_orders(run, fixtures_dir):
    code, _, err = run("fiber", fixtures_dir / "pentachoron.tri", fixtures_dir / "pentachoron-flipped.dir")
    assert code == 2 and "error" in err


def test_theta_collision_suggests_another(run, fixtures_dir):
    T = parse_triangulation((fixtures_dir / "s2xs1.tri").read_text())
    d = parse_direction(T, (fixtures_dir / "s2xs1.dir").read_text())
    system, outcome = solve_triangle_system(d)
    phase = build_fibration_map(d, system.weights_from(outcome.weights)).phase(3)
    code, _, err = run("fiber", fixtures_dir / "s2xs1.tri", fixtures_dir / "s2xs1.dir", "--theta", str(phase))
    assert code == 2 and "vertex 3" in err and "try theta" in err


@pytest.mark.parametrize("theta", ["abc", "1/0", "2", "0"])
def test_bad_theta(run, fixtures_dir, theta):
    code, _, _ = run("fiber", fixtures_dir / "s2xs1.tri", fixtures_dir / "s2xs1.dir", "--theta", theta)
    assert code == 2


def test_explicit_theta(run, fixtures_dir):
    code, rep = _json(run, "fiber", fixtures_dir / "s2xs1.tri", fixtures_dir / "s2xs1.dir", "--theta", "1/3")
    assert code == 0 and _checks(rep)["fiber"]["witness"]["theta"] == "1/3"


# -- germ --------------------------------------------------------------------

def test_germ_global_order(run, fixtures_dir):
    code, rep = _json(run, "germ", fixtures_dir / "pentachoron.tri", fixtures_dir / "pentachoron-global.dir")
    assert code == 0
    counts = _checks(rep)["germ_counts"]["witness"]["counts"]
    assert [c["m"] for c in counts] == [0, 1, 2, 3]
    assert counts[0] == {"m": 0, "nodes": 1, "arcs": 0}


def test_germ_flipped_has_a_witness(run, fixtures_dir, tmp_path):
    code, rep = _json(run, "germ", fixtures_dir / "pentachoron.tri", fixtures_dir / "pentachoron-flipped.dir",
                      "--base", 1, "--m", 3, "--out", tmp_path / "g")
    assert code == 1
    witness = _checks(rep)["germ_acyclic"]["witness"]
    assert witness["nodes"][0] == witness["nodes"][-1]
    assert set(witness["vertices"]) == {0, 1, 2}
    dot = (tmp_path / "g.dot").read_text().splitlines()
    assert dot[0] == "germ base=1 m=3"
    arcs = {tuple(map(int, line.split()[1:])) for line in dot if line.startswith("arc ")}
    assert all(step in arcs for step in zip(witness["nodes"], witness["nodes"][1:]))


def test_germ_budget_too_large(run, fixtures_dir):
    code, _, err = run("germ", fixtures_dir / "pentachoron.tri", fixtures_dir / "pentachoron-global.dir", "--m", 99)
    assert code == 2 and "cap" in err


def test_germ_unknown_base(run, fixtures_dir):
    code, _, _ = run("germ", fixtures_dir / "pentachoron.tri", fixtures_dir / "pentachoron-global.dir", "--base", 9)
    assert code == 2


# -- generate ----------------------------------------------------------------

def test_generate_pentachoron(run, tmp_path):
    code, rep = _json(run, "generate", "--type", "pentachoron", "--out", tmp_path / "p")
    assert code == 0
    assert len((tmp_path / "p.tri").read_text().splitlines()) == 5
    assert rep["outputs"] == ["p.tri"]


def test_generate_products_match_fixtures(run, tmp_path, fixtures_dir):
    for kind, name in (("product-s2", "s2xs1"), ("product-t2", "t2xs1")):
        code, rep = _json(run, "generate", "--type", kind, "--layers", 3, "--out", tmp_path / name)
        assert code == 0
        for ext in (".tri", ".dir"):
            assert (tmp_path / (name + ext)).read_text() == (fixtures_dir / (name + ext)).read_text()
    T = parse_triangulation((tmp_path / "s2xs1.tri").read_text())
    assert len(T.tets) == 36


def test_generate_too_few_layers(run, tmp_path):
    code, _, _ = run("generate", "--type", "product-t2", "--layers", 2, "--out", tmp_path / "x")
    assert code == 2


def test_bad_generate_type():
    with pytest.raises(SystemExit) as info:
        main(["generate", "--type", "klein", "--out", "x"])
    assert info.value.code == 2


# -- rendering and determinism -----------------------------------------------

def test_text_rendering(run, fixtures_dir):
    code, out, _ = run("check", fixtures_dir / "pentachoron.tri", fixtures_dir / "pentachoron-global.dir")
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "foliate check: FAIL"
    assert any(line.split()[:2] == ["link_condition", "FAIL"] for line in lines)
    assert any(line.split()[:2] == ["expanding", "info"] for line in lines)


def test_timing_fields(run, fixtures_dir):
    _, out, _ = run("check", fixtures_dir / "s2xs1.tri", fixtures_dir / "s2xs1.dir", "--json")
    assert "seconds" in _checks(json.loads(out))["validation"]
    _, rep = _json(run, "check", fixtures_dir / "s2xs1.tri", fixtures_dir / "s2xs1.dir")
    assert all("seconds" not in c for c in rep["checks"])


def test_input_digests(run, fixtures_dir):
    import hashlib
    _, rep = _json(run, "check", fixtures_dir / "s2xs1.tri", fixtures_dir / "s2xs1.dir")
    digest = hashlib.sha256((fixtures_dir / "s2xs1.tri").read_bytes()).hexdigest()
    assert rep["inputs"][0] == {"name": "s2xs1.tri", "sha256": digest}


def _subprocess_report(argv):
    res = subprocess.run([sys.executable, "-m", "foliate", *map(str, argv), "--json", "--no-timing"],
                         capture_output=True, check=False)
    return res.returncode, res.stdout


def test_reports_are_byte_identical(fixtures_dir):
    argv = ["fiber", fixtures_dir / "s2xs1.tri", fixtures_dir / "s2xs1.dir"]
    runs = [_subprocess_report(argv) for _ in range(3)]
    with ThreadPoolExecutor(4) as pool:
        runs += list(pool.map(_subprocess_report, [argv] * 4))
    assert len(set(runs)) == 1
    assert runs[0][0] == 0
