"""Command line front end: JSON jobs in, canonical JSON reports out.

Exit codes: 0 success, 2 input error, 3 applicability or assertion
failure, 4 genericity failure, 1 anything unexpected.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .chowcalc import (ChernPoly, GenericityError, MultidegreeConfig, NotBihomogeneous,
                       NotPure, NotSaturated, segre_class)
from .fixtures import FIXTURES, SCHEMA_VERSION, fixture, t1_data
from .linecone import (CertificateFailure, Cone, LemmaViolation, NotApplicable, NotEpimorphism,
                       NotHomogeneous, SquareDoesNotCommute, complex_diagnostics, descend_check,
                       free_space, going_down, going_up, is_econe, normal_cone, tangent_action)
from .linecone.laws import DEFAULT_COUNT, DEFAULT_SEED, LAWS, make_instance, run_instance
from .linecone.serialize import decode_objects
from .symkernel import (Ideal, PolyRing, PolySyntaxError, UnitIdealError, minimal_generators,
                        poly_str)
from .vfclasses import (Bundle, EmbeddedScheme, ExplicitCone, InconsistentSection, NotABundle,
                        PurityFailure, SectionOfBundle, SmoothIdentity, cone_dimension,
                        fulton_class, fulton_via_normal_space, vfc_closed_formula, vfc_direct)

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_ASSERT, EXIT_GENERICITY = 0, 1, 2, 3, 4
TASKS = ("normal-cone", "segre", "fulton", "vfc", "cone-op", "check")


class JobError(ValueError):
    """The job file does not match the schema."""


class CheckFailed(AssertionError):
    pass


INPUT_ERRORS = (JobError, PolySyntaxError, json.JSONDecodeError, FileNotFoundError)
ASSERT_ERRORS = (NotApplicable, CertificateFailure, LemmaViolation, SquareDoesNotCommute,
                 NotEpimorphism, NotHomogeneous, PurityFailure, InconsistentSection, NotABundle,
                 NotSaturated, NotBihomogeneous, NotPure, UnitIdealError, CheckFailed)


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, GenericityError):
        return EXIT_GENERICITY
    if isinstance(exc, INPUT_ERRORS):
        return EXIT_INPUT
    if isinstance(exc, ASSERT_ERRORS):
        return EXIT_ASSERT
    return EXIT_INTERNAL


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _sorted_gens(gens):
    """Generators printed canonically, ordered by leading monomial (largest first)."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    order = gens[0].ring.order
    return [poly_str(g) for g in sorted(gens, key=lambda g: order.encode(g.lm()), reverse=True)]


# ---------------------------------------------------------------------------
# job parsing

def _need(d: dict, key: str, kind=None):
    if key not in d:
        raise JobError(f"missing field {key!r}")
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise JobError(f"field {key!r} has the wrong type")
    return v


@dataclass
class Job:
    task: str
    data: dict
    params: dict = field(default_factory=dict)
    seed: int = 0
    seed_given: bool = False

    @classmethod
    def parse(cls, data, seed_override: int | None = None) -> "Job":
        if not isinstance(data, dict):
            raise JobError("a job is a JSON object")
        version = _need(data, "schema_version")
        if version != SCHEMA_VERSION:
            raise JobError(f"unsupported schema version {version!r}")
        task = _need(data, "task", str)
        if task not in TASKS:
            raise JobError(f"unknown task {task!r}; expected one of {', '.join(TASKS)}")
        params = data.get("params", {})
        if not isinstance(params, dict):
            raise JobError("params must be an object")
        given = seed_override is not None or "seed" in data
        seed = seed_override if seed_override is not None else data.get("seed", 0)
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise JobError("seed must be an integer")
        if task == "check" and not given:
            seed = DEFAULT_SEED
        return cls(task, data, params, seed, given)

    # ring and ideal ----------------------------------------------------------
    def ring(self) -> tuple[PolyRing, str]:
        r = _need(self.data, "ring", dict)
        names = _need(r, "variables", list)
        if not names or not all(isinstance(v, str) for v in names):
            raise JobError("ring variables must be a nonempty list of names")
        kind = r.get("kind", "projective")
        if kind not in ("projective", "affine"):
            raise JobError("ring kind is 'projective' or 'affine'")
        try:
            return PolyRing(names), kind
        except ValueError as exc:
            raise JobError(str(exc)) from exc

    def ideal(self, ring: PolyRing) -> Ideal:
        gens = _need(self.data, "ideal", list)
        return Ideal(ring, [_poly(ring, g) for g in gens])

    def scheme(self) -> EmbeddedScheme:
        ring, kind = self.ring()
        ideal = self.ideal(ring)
        if kind == "affine":
            return EmbeddedScheme.affine_scheme(ideal)
        if not ideal.is_homogeneous():
            raise JobError("a projective ideal must be homogeneous")
        return EmbeddedScheme.projective(ideal)

    def config(self) -> MultidegreeConfig:
        return MultidegreeConfig(seed=self.seed)


def _poly(ring: PolyRing, text):
    if not isinstance(text, str):
        raise JobError("polynomials are given as strings")
    return ring(text)


def _int_list(v, what: str):
    if not isinstance(v, list) or not all(isinstance(d, int) for d in v):
        raise JobError(f"{what} must be a list of integers")
    return v


def _chern(ring_n: int, v, what: str) -> ChernPoly:
    if not isinstance(v, list):
        raise JobError(f"{what} must be a list of coefficients")
    try:
        return ChernPoly(ring_n, tuple(str(c) if not isinstance(c, int) else c for c in v))
    except ValueError as exc:
        raise JobError(f"bad {what}: {exc}") from exc


def _bundle(n: int, v, what: str) -> Bundle:
    if isinstance(v, list):
        return Bundle.split(_int_list(v, what))
    if isinstance(v, dict):
        rank = _need(v, "rank", int)
        return Bundle(rank, chern_poly=_chern(n, _need(v, "chern", list), what))
    raise JobError(f"{what} is a twist list or {{rank, chern}}")


def _cone_over(X: EmbeddedScheme, spec: dict) -> Cone:
    coords = _need(spec, "coords", list)
    twists = _int_list(spec.get("twists", [0] * len(coords)), "cone twists")
    base_ideal = X.ideal if X.ideal.gens else None
    try:
        space = free_space(X.ring, coords, base_ideal, twists)
    except ValueError as exc:
        raise JobError(str(exc)) from exc
    return Cone(space, [_poly(space.ring, g) for g in _need(spec, "ideal", list)])


def _normal_space(X: EmbeddedScheme, spec) -> object:
    if not isinstance(spec, dict):
        raise JobError("normal_space must be an object")
    kind = _need(spec, "kind", str)
    if kind == "smooth":
        tangent = spec.get("tangent")
        dim = spec.get("dim")
        return SmoothIdentity(_chern(X.n, tangent, "tangent") if tangent is not None else None,
                              dim)
    if kind == "section":
        twists = _int_list(_need(spec, "twists", list), "twists")
        sections = [_poly(X.ring, s) for s in _need(spec, "sections", list)]
        try:
            return SectionOfBundle(twists, sections)
        except ValueError as exc:
            raise JobError(str(exc)) from exc
    if kind == "explicit":
        cone = _cone_over(X, _need(spec, "cone", dict))
        return ExplicitCone(cone, _bundle(X.n, _need(spec, "f1", (list, dict)), "f1"),
                            _bundle(X.n, _need(spec, "f0", (list, dict)), "f0"))
    raise JobError(f"unknown normal space kind {kind!r}")


# ---------------------------------------------------------------------------
# tasks

def _cone_report(cone: Cone, projective: bool | None = None) -> dict:
    amb = cone.ambient
    out = {"coords": list(amb.coords), "twists": list(amb.twists),
           "ideal": _sorted_gens(cone.ideal.gens),
           "krull_dimension": cone_dimension(cone, projective=False)}
    if projective is not None:
        out["dimension"] = cone_dimension(cone, projective)
    return out


def task_normal_cone(job: Job) -> dict:
    ring, kind = job.ring()
    ideal = job.ideal(ring)
    p = job.params
    gens = [_poly(ring, g) for g in p["generators"]] if "generators" in p else None
    coords = p.get("coords")
    n_gens = len(gens) if gens is not None else len(ideal.gens)
    if coords is not None and (not isinstance(coords, list) or len(coords) != n_gens
                               or not all(isinstance(c, str) for c in coords)):
        raise JobError("coords must name one coordinate per generator")
    if gens is None and not ideal.gens:
        raise JobError("the normal cone of the zero ideal needs explicit generators")
    cone = normal_cone(ideal, gens, coords)
    out = {"cone": _cone_report(cone, kind == "projective")}
    if p.get("tangent_action"):
        out["tangent_action_is_econe"] = is_econe(tangent_action(cone))
    if p.get("t1"):
        data = t1_data(Ideal(ring, cone.generators), coords)
        res = descend_check(data.q, data.cone)
        amb = data.cone.ambient
        kernel = []
        for v in data.kernel_vectors:
            f = amb.ring.zero()
            for a, y in zip(v, amb.coords):
                f = f + a.to(amb.ring) * amb.ring.var(y)
            kernel.append(f)
        out["t1"] = {"descends": res.descends, "kernel": _sorted_gens(kernel),
                     "candidate": _sorted_gens(res.candidate.ideal.gens)}
    return out


def task_segre(job: Job) -> dict:
    X = job.scheme()
    p = job.params
    if "cone" in p:
        cone = _cone_over(X, p["cone"])
    elif X.is_whole_space():
        return {"segre": X.fundamental_class_of_ambient().to_json()}
    else:
        cone = normal_cone(X.ideal, minimal_generators(X.ideal))
    s = segre_class(cone, job.config())
    return {"segre": s.to_json(), "cone_dimension": cone_dimension(cone, True)}


def task_fulton(job: Job) -> dict:
    X = job.scheme()
    out = {"fulton": fulton_class(X, job.config()).to_json()}
    if "normal_space" in job.params:
        ns = _normal_space(X, job.params["normal_space"])
        out["fulton_via_normal_space"] = fulton_via_normal_space(X, ns, job.config()).to_json()
        if out["fulton_via_normal_space"] != out["fulton"]:
            raise CheckFailed("Fulton's class differs between the two constructions")
    return out


def task_vfc(job: Job) -> dict:
    X = job.scheme()
    ns = _normal_space(X, _need(job.params, "normal_space", dict))
    route = job.params.get("route", "both")
    if route not in ("both", "direct", "closed-formula"):
        raise JobError("route is 'both', 'direct' or 'closed-formula'")
    out = {}
    cfg = job.config()
    if route in ("both", "direct"):
        out["direct"] = vfc_direct(X, ns, cfg).to_json()
    if route in ("both", "closed-formula"):
        out["closed_formula"] = vfc_closed_formula(X, ns, cfg).to_json()
    if route == "both":
        agree = out["direct"]["vfc"] == out["closed_formula"]["vfc"]
        out["routes_agree"] = agree
        if not agree:
            raise CheckFailed("direct route and closed formula disagree")
    return out


CONE_OPS = ("going-up", "going-down", "descend", "is-econe", "diagnostics")


def task_cone_op(job: Job) -> dict:
    p = job.params
    op = _need(p, "op", str)
    if op not in CONE_OPS:
        raise JobError(f"unknown cone operation {op!r}")
    data = _need(p, "objects", dict)
    try:
        objs = decode_objects(data)
    except KeyError as exc:
        raise JobError(f"dangling reference {exc}") from exc

    def get(name, kind):
        key = _need(p, name, str)
        if key not in objs:
            raise JobError(f"no object named {key!r}")
        obj = objs[key]
        if not isinstance(obj, kind):
            raise JobError(f"object {key!r} is not a {kind.__name__}")
        return obj

    from .linecone import ComplexSquare, LinSpaceHom, TwoTermComplex
    if op == "going-up":
        return {"cone": _cone_report(going_up(get("square", ComplexSquare), get("cone", Cone)))}
    if op == "going-down":
        return {"cone": _cone_report(going_down(get("square", ComplexSquare), get("cone", Cone)))}
    if op == "descend":
        res = descend_check(get("hom", LinSpaceHom), get("cone", Cone))
        return {"descends": res.descends, "candidate": _cone_report(res.candidate)}
    if op == "is-econe":
        cx = get("complex", TwoTermComplex)
        return {"is_econe": is_econe(cx.action(get("cone", Cone)))}
    return {"diagnostics": complex_diagnostics(get("square", ComplexSquare)).as_dict()}


def _replay_path(directory: Path, suite: str, seed: int, index: int) -> Path:
    return directory / f"replay-{suite}-{seed}-{index}.json"


def replay_job(instance: dict, mutate: bool = False) -> dict:
    return {"schema_version": SCHEMA_VERSION, "task": "check",
            "params": {"replay": instance, "mutate": mutate}}


def run_suites(suites, seed: int, count: int, mutate: bool = False,
               replay_dir: Path | None = None, log=None) -> dict:
    """Run law suites; failing instances are dumped as replayable check jobs."""
    replay_dir = Path(replay_dir or "conecalc-replay")
    report = {"seed": seed, "count": count, "suites": {}}
    failures = []
    for suite in suites:
        passed = 0
        failed = []
        for i in range(count):
            inst = make_instance(suite, seed, i)
            ok, info = run_instance(inst, mutate)
            if ok:
                passed += 1
                continue
            replay_dir.mkdir(parents=True, exist_ok=True)
            path = _replay_path(replay_dir, suite, seed, i)
            path.write_text(canonical_json(replay_job(inst, mutate)))
            failed.append({"index": i, "replay": str(path), "info": _jsonable(info)})
        report["suites"][suite] = {"passed": passed, "failed": len(failed), "failures": failed}
        failures += failed
        if log:
            log(f"{suite}: {passed}/{count} passed")
    report["all_passed"] = not failures
    return report


def _jsonable(obj):
    return json.loads(json.dumps(obj, default=str))


def task_check(job: Job, replay_dir: Path | None = None, log=None) -> dict:
    p = job.params
    mutate = bool(p.get("mutate", False))
    if "replay" in p:
        inst = p["replay"]
        if not isinstance(inst, dict) or inst.get("suite") not in LAWS:
            raise JobError("replay must be a serialized suite instance")
        ok, info = run_instance(inst, mutate)
        out = {"suite": inst["suite"], "index": inst.get("index"), "passed": ok,
               "info": _jsonable(info)}
        if not ok:
            raise CheckFailed(f"replayed instance of {inst['suite']} fails", out)
        return out
    suites = p.get("suites") or list(LAWS)
    unknown = [s for s in suites if s not in LAWS]
    if unknown:
        raise JobError(f"unknown suites {unknown}")
    count = p.get("count", DEFAULT_COUNT)
    if not isinstance(count, int) or count < 0:
        raise JobError("count must be a nonnegative integer")
    report = run_suites(suites, job.seed, count, mutate, replay_dir, log)
    if not report["all_passed"]:
        raise CheckFailed("law suite failures", report)
    return report


HANDLERS = {"normal-cone": task_normal_cone, "segre": task_segre, "fulton": task_fulton,
            "vfc": task_vfc, "cone-op": task_cone_op}


def run_job_data(data, seed: int | None = None, replay_dir: Path | None = None, log=None):
    """(exit code, report dict) for a parsed JSON job."""
    t0 = time.perf_counter()
    report = {"schema_version": SCHEMA_VERSION}
    try:
        job = Job.parse(data, seed)
        report.update(task=job.task, seed=job.seed)
        if job.task == "check":
            result = task_check(job, replay_dir, log)
        else:
            result = HANDLERS[job.task](job)
        report.update(status="ok", result=result)
        code = EXIT_OK
    except Exception as exc:   # every failure becomes a structured report
        code = exit_code_for(exc)
        err = {"type": type(exc).__name__, "message": str(exc.args[0]) if exc.args else "",
               "exit_code": code}
        if isinstance(exc, CheckFailed) and len(exc.args) > 1:
            report["result"] = exc.args[1]
        report.update(status="error", error=err)
    report["timing"] = {"seconds": round(time.perf_counter() - t0, 3)}
    return code, report


def run_job(path, seed: int | None = None, replay_dir: Path | None = None, log=None):
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        code = EXIT_INPUT
        return code, {"schema_version": SCHEMA_VERSION, "status": "error",
                      "error": {"type": type(exc).__name__, "message": str(exc),
                                "exit_code": code},
                      "timing": {"seconds": 0.0}}
    return run_job_data(data, seed, replay_dir, log)


# ---------------------------------------------------------------------------
# human summaries

def summary(report: dict) -> str:
    task = report.get("task", "job")
    if report.get("status") != "ok":
        err = report.get("error", {})
        return f"{task}: {err.get('type')}: {err.get('message')} (exit {err.get('exit_code')})"
    r = report["result"]
    if task == "normal-cone":
        lines = [f"normal cone in {', '.join(r['cone']['coords'])}:"]
        lines += [f"  {g}" for g in r["cone"]["ideal"]]
        if "tangent_action_is_econe" in r:
            lines.append(f"tangent action preserves the cone: {r['tangent_action_is_econe']}")
        if "t1" in r:
            lines.append(f"descends to T1: {r['t1']['descends']}")
        return "\n".join(lines)
    if task in ("segre", "fulton"):
        from .chowcalc import ChowClass
        return f"{task}: {ChowClass.from_json(r[task])}"
    if task == "vfc":
        from .chowcalc import ChowClass
        parts = []
        for key in ("direct", "closed_formula"):
            if key in r:
                parts.append(f"{key}: rank {r[key]['rank']}, "
                             f"{ChowClass.from_json(r[key]['vfc'])}")
        return "\n".join(parts)
    if task == "check":
        if "suites" in r:
            return "\n".join(f"{s}: {v['passed']} passed, {v['failed']} failed"
                             for s, v in r["suites"].items())
        return f"replay {r['suite']}#{r['index']}: {'pass' if r['passed'] else 'fail'}"
    return f"{task}: ok"


def _emit(report: dict, out: str | None):
    text = canonical_json(report)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    print(summary(report), file=sys.stderr)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="conecalc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)
    r = sub.add_parser("run", help="run one JSON job")
    r.add_argument("job")
    r.add_argument("--out")
    r.add_argument("--seed", type=int)
    r.add_argument("--replay-dir", type=Path)
    c = sub.add_parser("check", help="run the law suites")
    c.add_argument("--suite", action="append", choices=sorted(LAWS))
    c.add_argument("--seed", type=int, default=DEFAULT_SEED)
    c.add_argument("--count", type=int, default=DEFAULT_COUNT)
    c.add_argument("--mutate", action="store_true", help="corrupt every law (harness test)")
    c.add_argument("--replay-dir", type=Path)
    c.add_argument("--out")
    f = sub.add_parser("fixtures", help="list built-in fixtures or print one as a job")
    f.add_argument("name", nargs="?", choices=sorted(FIXTURES))
    args = ap.parse_args(argv)

    if args.cmd == "fixtures":
        if args.name:
            sys.stdout.write(canonical_json(fixture(args.name)))
        else:
            for name in FIXTURES:
                print(f"{name}\t{FIXTURES[name]['task']}")
        return EXIT_OK
    log = lambda msg: print(msg, file=sys.stderr)   # noqa: E731
    if args.cmd == "run":
        code, report = run_job(args.job, args.seed, args.replay_dir)
        _emit(report, args.out)
        return code
    job = {"schema_version": SCHEMA_VERSION, "task": "check", "seed": args.seed,
           "params": {"suites": args.suite or list(LAWS), "count": args.count,
                      "mutate": args.mutate}}
    code, report = run_job_data(job, None, args.replay_dir, log)
    _emit(report, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
