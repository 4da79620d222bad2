import importlib
import json
import os
import subprocess
import sys

import pytest

from conecalc import cli
from conecalc.chowcalc import ChowClass, GenericityError
from conecalc.fixtures import FIXTURES, SCHEMA_VERSION, fixture
from conecalc.linecone import Cone, going_down, going_up
from conecalc.linecone.laws import LAWS, make_instance
from conecalc.linecone.serialize import decode_objects
from conecalc.symkernel import Ideal, PolyRing, poly_parse

md_module = importlib.import_module("conecalc.chowcalc.multidegree")


def run(data, **kw):
    return cli.run_job_data(data, **kw)


def vfc_of(report, route="direct"):
    return ChowClass.from_json(report["result"][route]["vfc"])


def strip_timing(text):
    d = json.loads(text)
    d.pop("timing", None)
    return d


# ---------------------------------------------------------------- fixtures

def test_fixture_listing(capsys):
    assert cli.main(["fixtures"]) == 0
    names = [line.split("\t")[0] for line in capsys.readouterr().out.splitlines()]
    assert names == ["fat-point", "conic", "twisted-cubic", "double-line", "p2-smooth"]


def test_fixture_printing(capsys):
    assert cli.main(["fixtures", "conic"]) == 0
    assert json.loads(capsys.readouterr().out) == FIXTURES["conic"]


def test_fat_point_job():
    code, rep = run(fixture("fat-point"))
    assert code == 0
    r = rep["result"]
    ring = PolyRing(["X", "Y", "A", "B", "C"])
    got = Ideal(ring, [poly_parse(g, ring) for g in r["cone"]["ideal"]])
    want = Ideal(ring, ["B^2 - A*C", "X*C - Y*B", "X*B - Y*A", "X^2", "X*Y", "Y^2"])
    assert got.gb() == want.gb()
    assert r["cone"]["dimension"] == 2
    assert r["tangent_action_is_econe"] is True
    assert r["t1"]["descends"] is False


def test_conic_job():
    code, rep = run(fixture("conic"))
    assert code == 0
    assert vfc_of(rep) == ChowClass(2, [0, 2, 0])
    assert rep["result"]["direct"]["rank"] == 1 and rep["result"]["routes_agree"]


def test_twisted_cubic_job():
    code, rep = run(fixture("twisted-cubic"))
    assert code == 0
    assert ChowClass.from_json(rep["result"]["fulton"]) == ChowClass(3, [2, 3, 0, 0])


def test_double_line_job():
    code, rep = run(fixture("double-line"))
    assert code == 0 and vfc_of(rep) == vfc_of(rep, "closed_formula") == ChowClass(2, [0, 2, 0])


def test_plane_job():
    code, rep = run(fixture("p2-smooth"))
    assert code == 0 and vfc_of(rep) == ChowClass(2, [0, 0, 1])


def test_segre_job_with_explicit_cone():
    job = {"schema_version": 1, "task": "segre",
           "ring": {"variables": ["x0", "x1", "x2"], "kind": "projective"},
           "ideal": ["x0*x2 - x1^2"],
           "params": {"cone": {"coords": ["Y"], "twists": [2], "ideal": []}}}
    code, rep = run(job)
    assert code == 0
    assert ChowClass.from_json(rep["result"]["segre"]) == ChowClass(2, [-4, 2, 0])


def test_fulton_job_cross_checks_the_normal_space():
    job = fixture("double-line")
    job["task"] = "fulton"
    code, rep = run(job)
    assert code == 0 and rep["result"]["fulton"] == rep["result"]["fulton_via_normal_space"]


# ---------------------------------------------------------------- cone operations

def test_cone_op_going_up_matches_the_library():
    data = make_instance("going-up-homotopy", 5, 0)
    job = {"schema_version": 1, "task": "cone-op",
           "params": {"op": "going-up", "square": "square", "cone": "cone", "objects": data}}
    code, rep = run(job)
    assert code == 0
    objs = decode_objects(data)
    up = going_up(objs["square"], objs["cone"])
    got = Cone(up.ambient, [poly_parse(g, up.ring) for g in rep["result"]["cone"]["ideal"]])
    assert got.equals(up)


def test_cone_op_diagnostics():
    data = make_instance("exactness-lemma", 5, 0)
    job = {"schema_version": 1, "task": "cone-op",
           "params": {"op": "diagnostics", "square": "square", "objects": data}}
    code, rep = run(job)
    assert code == 0 and len(rep["result"]["diagnostics"]["exactness"]) == 3


def test_cone_op_wrong_object_kind():
    data = make_instance("left-inverse", 5, 0)
    job = {"schema_version": 1, "task": "cone-op",
           "params": {"op": "going-up", "square": "cone", "cone": "cone", "objects": data}}
    assert run(job)[0] == 2


# ---------------------------------------------------------------- exit codes

def test_bad_schema_version():
    job = fixture("conic")
    job["schema_version"] = 99
    code, rep = run(job)
    assert code == 2 and rep["error"]["type"] == "JobError"


@pytest.mark.parametrize("poly", ["x0*x2 - ", "x0*q"])
def test_bad_polynomials_are_input_errors(poly):
    job = fixture("conic")
    job["ideal"] = [poly]
    assert run(job)[0] == 2


def test_missing_file_is_an_input_error(tmp_path):
    code, rep = cli.run_job(tmp_path / "nope.json")
    assert code == 2 and rep["status"] == "error"


def test_inconsistent_section_is_an_assertion_failure():
    job = fixture("conic")
    job["params"]["normal_space"]["sections"] = ["x0^2"]
    code, rep = run(job)
    assert code == 3 and rep["error"]["type"] == "InconsistentSection"


def test_cone_op_going_down():
    data = make_instance("going-down-homotopy", 5, 0)
    job = {"schema_version": 1, "task": "cone-op",
           "params": {"op": "going-down", "square": "square", "cone": "cone", "objects": data}}
    code, rep = run(job)
    assert code == 0
    objs = decode_objects(data)
    down = going_down(objs["square"], objs["cone"])
    assert rep["result"]["cone"]["coords"] == list(down.ambient.coords)
    got = Cone(down.ambient, [poly_parse(g, down.ring) for g in rep["result"]["cone"]["ideal"]])
    assert got.equals(down)


def test_zero_phi0_square_is_not_applicable():
    from conecalc.linecone import (ComplexSquare, TwoTermComplex, free_space, full_cone,
                                   identity, zero_hom)
    from conecalc.linecone.serialize import encode_objects
    R = PolyRing(["t"])
    F0, F1 = free_space(R, ["X"]), free_space(R, ["Y"])
    cx = TwoTermComplex(F0, F1, zero_hom(F0, F1))
    sq = ComplexSquare(cx, cx, zero_hom(F0, F0), identity(F1))
    data = encode_objects(R, Ideal(R, []), {"square": sq, "cone": full_cone(F1)})
    job = {"schema_version": 1, "task": "cone-op",
           "params": {"op": "going-down", "square": "square", "cone": "cone", "objects": data}}
    code, rep = run(job)
    assert code == 3 and rep["error"]["type"] == "NotApplicable"


def test_genericity_failure_exit_code(monkeypatch):
    calls = iter(range(10 ** 6))
    monkeypatch.setattr(md_module, "_attempt", lambda *a: (0, [[next(calls)]]))
    code, rep = run(fixture("conic"))
    assert code == 4 and rep["error"]["type"] == GenericityError.__name__


def test_internal_error_exit_code(monkeypatch):
    def boom(job):
        raise RuntimeError("unexpected")
    monkeypatch.setitem(cli.HANDLERS, "fulton", boom)
    code, rep = run(fixture("twisted-cubic"))
    assert code == 1 and rep["error"]["message"] == "unexpected"


# ---------------------------------------------------------------- reports

def test_report_polynomials_reparse():
    code, rep = run(fixture("fat-point"))
    ring = PolyRing(["X", "Y", "A", "B", "C"])
    for g in rep["result"]["cone"]["ideal"]:
        assert str(poly_parse(g, ring)) == g


def _cli(*args, env=None, cwd=None):
    return subprocess.run([sys.executable, "-m", "conecalc.cli", *args], capture_output=True,
                          text=True, env=env, cwd=cwd)


def test_reports_are_byte_stable(tmp_path):
    job = tmp_path / "job.json"
    job.write_text(json.dumps(fixture("fat-point")))
    outs = []
    for hashseed in ("0", "1", "12345"):
        env = dict(os.environ, PYTHONHASHSEED=hashseed)
        p = _cli("run", str(job), env=env)
        assert p.returncode == 0, p.stderr
        d = strip_timing(p.stdout)
        outs.append(json.dumps(d, sort_keys=True, indent=2))
    assert outs[0] == outs[1] == outs[2]
    assert "normal cone in A, B, C" in p.stderr


def test_out_flag_writes_the_report(tmp_path):
    job = tmp_path / "job.json"
    job.write_text(json.dumps(fixture("conic")))
    out = tmp_path / "report.json"
    assert cli.main(["run", str(job), "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["status"] == "ok" and rep["seed"] == 0


def test_seed_flag_is_echoed(tmp_path):
    job = tmp_path / "job.json"
    job.write_text(json.dumps(fixture("conic")))
    code, rep = cli.run_job(job, seed=17)
    assert code == 0 and rep["seed"] == 17


# ---------------------------------------------------------------- suites

def test_check_job_runs_a_suite():
    job = {"schema_version": 1, "task": "check", "seed": 7,
           "params": {"suites": ["going-up-homotopy"], "count": 100}}
    code, rep = run(job)
    assert code == 0
    assert rep["result"]["suites"]["going-up-homotopy"] == {"passed": 100, "failed": 0,
                                                           "failures": []}


def test_mutation_fails_with_replay_files(tmp_path):
    job = {"schema_version": 1, "task": "check", "seed": 3,
           "params": {"suites": ["left-inverse", "exactness-lemma"], "count": 2, "mutate": True}}
    code, rep = run(job, replay_dir=tmp_path)
    assert code == 3
    files = sorted(p.name for p in tmp_path.iterdir())
    assert files == ["replay-exactness-lemma-3-0.json", "replay-exactness-lemma-3-1.json",
                     "replay-left-inverse-3-0.json", "replay-left-inverse-3-1.json"]
    # a replay reproduces the verdict; without the corruption the instance passes
    replay = json.loads((tmp_path / files[0]).read_text())
    assert run(replay)[0] == 3
    replay["params"]["mutate"] = False
    code, rep = run(replay)
    assert code == 0 and rep["result"]["passed"]


def test_verdicts_do_not_depend_on_the_seed():
    verdicts = set()
    for seed in (1, 2, 3, 4, 5):
        job = {"schema_version": 1, "task": "check", "seed": seed,
               "params": {"suites": sorted(LAWS), "count": 4}}
        code, rep = run(job)
        verdicts.add((code, tuple((s, v["failed"]) for s, v in
                                  sorted(rep["result"]["suites"].items()))))
    assert len(verdicts) == 1 and verdicts.pop()[0] == 0


def test_check_subcommand(tmp_path):
    p = _cli("check", "--suite", "left-inverse", "--count", "3", "--seed", "9",
             "--replay-dir", str(tmp_path))
    assert p.returncode == 0, p.stderr
    assert "left-inverse: 3/3 passed" in p.stderr
    rep = json.loads(p.stdout)
    assert rep["result"]["all_passed"] and rep["seed"] == 9


def test_check_subcommand_with_mutation(tmp_path):
    p = _cli("check", "--suite", "going-up-homotopy", "--count", "2", "--mutate",
             "--replay-dir", str(tmp_path))
    assert p.returncode == 3
    assert len(list(tmp_path.iterdir())) == 2
    rp = _cli("run", str(next(tmp_path.iterdir())))
    assert rp.returncode == 3


def test_default_check_seed():
    job = {"schema_version": SCHEMA_VERSION, "task": "check", "params": {"count": 0}}
    code, rep = run(job)
    assert code == 0 and rep["seed"] == cli.DEFAULT_SEED
