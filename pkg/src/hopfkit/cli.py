"""Command line front end: ``hopfkit <command> ...``.

Exit codes: 0 all checks pass, 1 some check failed, 2 bad input or budget,
10 + i when stage i of the isocategorical pipeline fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import commutative as cm
from . import fixtures as fxm
from . import isocat
from .hopf import HopfPresentation, check_hopf, dual, element_from_json, element_to_json, from_json, to_json
from .linalg import PrimeField, field_from_spec
from .plie import check_plie, plie_from_json
from .report import CheckReport
from .twists import apply_twist, check_triangular, check_twist, r_matrix

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_STAGE = 0, 1, 2, 10


class InputError(ValueError):
    pass


def threads() -> int:
    try:
        return max(1, int(os.environ.get("HOPFKIT_THREADS", "1")))
    except ValueError:
        return 1


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, ensure_ascii=False) + "\n")


def _parse_budget(text: str) -> int:
    text = text.strip()
    if "^" in text:
        base, exp = text.split("^", 1)
        return int(base) ** int(exp)
    return int(text)


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_hopf(source: str, field) -> HopfPresentation:
    """A presentation JSON file or a presentation name such as ``u(witt)``."""
    if Path(source).is_file():
        try:
            h = from_json(_read_json(source), field)
        except (KeyError, ValueError, TypeError) as exc:
            raise InputError(f"malformed presentation in {source}: {exc}") from exc
        if not isinstance(h, HopfPresentation):
            raise InputError(f"{source} does not hold a Hopf presentation")
        return h
    try:
        return fxm.presentation(source, field)
    except (KeyError, ValueError) as exc:
        raise InputError(str(exc)) from exc


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_catalog(args, out) -> int:
    items = [fx for fx in fxm.load_fixtures() if not args.section or fx.topic == args.section]
    if args.section and not items:
        raise InputError(f"no fixtures under topic {args.section!r}")
    if args.json:
        _emit({"fixtures": [{"name": fx.name, "topic": fx.topic, "origin": fx.origin,
                             "description": fx.description} for fx in items]}, out)
    else:
        width = max(len(fx.name) for fx in items)
        for fx in items:
            out.write(f"{fx.name:<{width}}  [{fx.topic}] {fx.description}\n")
    return EXIT_OK


def _verify_file(obj: dict, field) -> tuple[CheckReport, dict]:
    if "hopf" in obj and "twist" in obj:
        h = from_json(obj["hopf"], field)
        J = element_from_json(h, obj["twist"])
        rep = CheckReport("twist file")
        rep.extend(check_twist(h, J), "twist.")
        if rep.passed:
            hJ = apply_twist(h, J)
            rep.extend(check_hopf(hJ), "hopf_twisted.")
            rep.extend(check_triangular(hJ, r_matrix(h, J)), "triangular.")
        return rep, {"dim": h.dim}
    if "bracket" in obj or "pmap" in obj:
        L, _ = plie_from_json(obj)
        return check_plie(L), {"dim": L.dim}
    h = from_json(obj, field)
    if not isinstance(h, HopfPresentation):
        raise InputError("file does not hold a Hopf presentation")
    return check_hopf(h), {"dim": h.dim}


def _verify_one(target: str, checks, field) -> dict:
    try:
        fx = fxm.fixture_by_name(target)
    except KeyError:
        fx = None
    if fx is not None:
        return fxm.run_fixture(fx, checks)
    if Path(target).is_file():
        obj = _read_json(target)
        try:
            rep, values = _verify_file(obj, field)
        except (KeyError, ValueError, TypeError, IndexError) as exc:
            raise InputError(f"malformed input {target}: {exc}") from exc
    else:
        h = _load_hopf(target, field)
        rep, values = check_hopf(h), {"dim": h.dim}
    if checks:
        kept = CheckReport(rep.subject)
        kept.results = [r for r in rep.results if r.name.split(".")[0] in checks]
        if not kept.results:
            raise InputError(f"none of the requested checks apply to {target}")
        rep = kept
    return {"fixture": target, "passed": rep.passed, "checks": [r.to_dict() for r in rep.results],
            "values": values, "timings": {}}


def cmd_verify(args, out) -> int:
    checks = set(c.strip() for c in args.checks.split(",")) if args.checks else None
    field = field_from_spec(args.field) if args.field else PrimeField(2)
    with ThreadPoolExecutor(max_workers=threads()) as pool:
        reports = list(pool.map(lambda t: _verify_one(t, checks, field), args.targets))
    for rep in reports:
        if args.quiet:
            out.write(f"{'PASS' if rep['passed'] else 'FAIL'} {rep['fixture']}\n")
        elif args.json:
            _emit(rep, out)
        else:
            out.write(f"{rep['fixture']}: {'PASS' if rep['passed'] else 'FAIL'}\n")
            for c in rep["checks"]:
                extra = f"  {json.dumps(c['witness'])}" if not c["passed"] and "witness" in c else ""
                out.write(f"  [{'ok ' if c['passed'] else 'BAD'}] {c['name']}{extra}\n")
            if rep["values"]:
                out.write(f"  values: {json.dumps(rep['values'])}\n")
    return EXIT_OK if all(r["passed"] for r in reports) else EXIT_FAIL


def _pipeline_input(target: str):
    try:
        fx = fxm.fixture_by_name(target)
        if fx.kind != "isocat":
            raise InputError(f"{target} is not an isocategorical fixture")
        p = fx.params
        return fxm.group_by_name(p["group"]), p["subgroup"], PrimeField(p["p"]), p.get("form"), p.get("section")
    except KeyError:
        pass
    obj = _read_json(target)
    try:
        g = obj["group"]
        G = fxm.group_by_name(g) if isinstance(g, str) else cm.GroupTable.from_json(g)
        field = field_from_spec(obj.get("field", "Fp:3"))
        if not isinstance(field, PrimeField):
            raise InputError("the pipeline needs a prime field")
        return G, obj["subgroup"], field, obj.get("form"), obj.get("section")
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"malformed pipeline {target}: {exc}") from exc


def cmd_isocat(args, out) -> int:
    G, sub, field, form, section = _pipeline_input(args.target)
    if isinstance(form, dict):
        form = form.get("table")
    res = isocat.run_pipeline(G, sub, field, form, section)
    report = {"passed": res.passed, "failed_stage": None if res.passed else isocat.STAGES[res.failed_stage],
              "stages": res.stages,
              "artifacts": {k: v for k, v in res.artifacts.items() if k != "objects"}}
    if args.quiet:
        out.write(f"{'PASS' if res.passed else 'FAIL'} isocat\n")
    elif args.json:
        _emit(report, out)
    else:
        for name in isocat.STAGES:
            if name in res.stages:
                info = res.stages[name]
                out.write(f"{name}: {'PASS' if info.get('passed') else 'FAIL'}"
                          f"{'  ' + info['error'] if 'error' in info else ''}\n")
        if res.passed:
            out.write(f"b: {json.dumps(res.artifacts['btilde'])}\n")
            out.write(f"G_b type: {res.stages['G_b']['isomorphism_type']}\n")
    return EXIT_OK if res.passed else EXIT_STAGE + res.failed_stage


def cmd_enumerate(args, out) -> int:
    if args.target in fxm.ENUMERATION_TARGETS:
        name, p = fxm.ENUMERATION_TARGETS[args.target]
        h = fxm.presentation(name, PrimeField(p))
    else:
        h = _load_hopf(args.target, field_from_spec(args.field) if args.field else PrimeField(2))
    try:
        res = cm.enumerate_twists(h, _parse_budget(args.budget), args.gauge_degree)
    except cm.BudgetExceeded as exc:
        raise InputError(str(exc)) from exc
    if not args.quiet:
        for J, orbit in zip(res.twists, res.orbit):
            _emit({"twist": element_to_json(h, J)["entries"], "orbit": orbit}, out)
    _emit({"summary": {"target": args.target, "twists": len(res.twists), "orbit_count": res.orbit_count,
                       "candidates": res.candidates, "gauge_degree": res.gauge_degree}}, out)
    return EXIT_OK


def _write(obj, args, out) -> None:
    if args.output:
        Path(args.output).write_text(json.dumps(obj, ensure_ascii=False, indent=1) + "\n")
    else:
        _emit(obj, out)


def cmd_dual(args, out) -> int:
    h = _load_hopf(args.source, field_from_spec(args.field) if args.field else PrimeField(2))
    _write(to_json(dual(h)), args, out)
    return EXIT_OK


def cmd_twist_apply(args, out) -> int:
    h = _load_hopf(args.hopf, field_from_spec(args.field) if args.field else PrimeField(2))
    try:
        J = element_from_json(h, _read_json(args.twist))
    except (KeyError, ValueError, TypeError, IndexError) as exc:
        raise InputError(f"malformed twist: {exc}") from exc
    rep = check_twist(h, J)
    if not rep.passed:
        sys.stderr.write(rep.summary() + "\n")
        return EXIT_FAIL
    _write(to_json(apply_twist(h, J)), args, out)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="Fp:<p> or Q, for inputs that do not fix a field")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--quiet", action="store_true", help="verdicts only")

    ap = argparse.ArgumentParser(prog="hopfkit", description="Exact checks for finite-dimensional Hopf algebras and twists")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", parents=[common], help="list fixtures")
    p.add_argument("--section", help="only fixtures under this topic")
    p.set_defaults(run=cmd_catalog)

    p = sub.add_parser("verify", parents=[common], help="run fixtures, presentation files or presentation names")
    p.add_argument("targets", nargs="+")
    p.add_argument("--checks", help="comma-separated subset of check names")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("isocat", parents=[common], help="run the isocategorical pipeline")
    p.add_argument("target", help="fixture name or pipeline JSON")
    p.set_defaults(run=cmd_isocat)

    p = sub.add_parser("enumerate", parents=[common], help="exhaustive twist search with gauge orbits")
    p.add_argument("target")
    p.add_argument("--budget", default=str(cm.DEFAULT_BUDGET), help="maximum candidate count, e.g. 2^16")
    p.add_argument("--gauge-degree", type=int, default=2, help="gauge elements over F_{p^d}")
    p.set_defaults(run=cmd_enumerate)

    p = sub.add_parser("dual", parents=[common], help="write the dual presentation")
    p.add_argument("source")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_dual)

    p = sub.add_parser("twist-apply", parents=[common], help="write H^J for a presentation and a twist")
    p.add_argument("hopf")
    p.add_argument("twist")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_twist_apply)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.run(args, out)
    except InputError as exc:
        sys.stderr.write(f"hopfkit: {exc}\n")
        return EXIT_INPUT
    except ValueError as exc:
        sys.stderr.write(f"hopfkit: invalid input: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
