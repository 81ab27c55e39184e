"""Named, reproducible verification runs.

Each fixture is a JSON record (see data/fixtures.json) naming a builder kind,
its parameters and the expected values.  ``run_fixture`` builds the objects,
runs the structural checks, and compares every expected value; the report
keeps timings under their own key so everything else is byte-stable.
"""

from __future__ import annotations

import json
import re
import time
from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import commutative as cm
from . import isocat, plie
from .degeneracy import analyze, dual_algebra
from .hopf import HopfPresentation, check_hopf, dual, trivial_hopf, unit_element
from .linalg import Field, PrimeField, QQ, SparseTensor
from .report import CheckReport
from .twists import (apply_twist, check_triangular, check_twist, exp_twist, falling_factorial_twist,
                     minimality_rank, r_matrix, twisted_coalgebra, witt_twist)


@dataclass(frozen=True)
class Fixture:
    name: str
    topic: str
    origin: str          # "reference-example", "derived" or "sanity"
    description: str
    kind: str
    params: dict
    expected: dict

    @classmethod
    def from_json(cls, obj: dict) -> "Fixture":
        return cls(obj["name"], obj["topic"], obj["origin"], obj["description"], obj["kind"],
                   dict(obj.get("params", {})), dict(obj.get("expected", {})))

    def to_json(self) -> dict:
        return {"name": self.name, "topic": self.topic, "origin": self.origin,
                "description": self.description, "kind": self.kind, "params": self.params,
                "expected": self.expected}


def load_fixtures() -> list[Fixture]:
    text = resources.files("hopfkit").joinpath("data/fixtures.json").read_text()
    return [Fixture.from_json(o) for o in json.loads(text)["fixtures"]]


def fixture_by_name(name: str) -> Fixture:
    for fx in load_fixtures():
        if fx.name == name:
            return fx
    raise KeyError(name)


# ---------------------------------------------------------------------------
# presentations by name
# ---------------------------------------------------------------------------

GROUPS = {"V4": cm.klein4, "D4": lambda: cm.dihedral(4), "Q8": cm.quaternion8, "S3": lambda: cm.symmetric(3)}


def group_by_name(name: str) -> cm.GroupTable:
    m = re.fullmatch(r"Z(\d+)", name)
    if m:
        return cm.cyclic(int(m.group(1)))
    if name in GROUPS:
        return GROUPS[name]()
    raise KeyError(f"unknown group {name!r}")


def presentation(name: str, field: Field) -> HopfPresentation:
    """fun(G), k(G), mu(n), alpha, trivial, u(<p-Lie name>), or a dual(...) of those."""
    m = re.fullmatch(r"dual\((.*)\)", name)
    if m:
        return dual(presentation(m.group(1), field))
    m = re.fullmatch(r"(fun|k)\((\w+)\)", name)
    if m:
        fun, ka = cm.constant_hopf(group_by_name(m.group(2)), field)
        return fun if m.group(1) == "fun" else ka
    m = re.fullmatch(r"mu\((\d+)\)", name)
    if m:
        return cm.mu_n(int(m.group(1)), field)
    if name == "alpha":
        return cm.alpha_p(field)
    if name == "trivial":
        return trivial_hopf(field)
    m = re.fullmatch(r"u\((.*)\)", name)
    if m:
        if not isinstance(field, PrimeField):
            raise ValueError("enveloping algebras need a prime field")
        return plie.enveloping(plie.catalog(m.group(1), field.p))
    raise KeyError(f"unknown presentation {name!r}")


ENUMERATION_TARGETS = {
    "mu2-F2": ("mu(2)", 2),
    "trivial-hopf": ("trivial", 2),
    "klein4-groupalg-F2": ("k(V4)", 2),
}


# ---------------------------------------------------------------------------
# runners: each returns (structural checks, computed values)
# ---------------------------------------------------------------------------


def _gen(L, U, v) -> SparseTensor:
    return SparseTensor.from_dense(L.field, plie.generator_element(L, v))


def _twist_block(rep: CheckReport, values: dict, h: HopfPresentation, J: SparseTensor, hopf: bool = True):
    rep.extend(check_twist(h, J), "twist.")
    hJ = apply_twist(h, J)
    if hopf:
        rep.extend(check_hopf(hJ), "hopf_twisted.")
    R = r_matrix(h, J)
    rep.extend(check_triangular(hJ, R), "triangular.")
    values["minimality_rank"] = minimality_rank(h, R)[0]
    return hJ, R


def _nondegeneracy(values: dict, h: HopfPresentation, psi: SparseTensor):
    an = analyze(dual_algebra(twisted_coalgebra(h, psi)))
    values["verdict"] = an.label()
    values["radical_dim"] = an.radical_dim
    values["center_dim"] = an.center_dim
    values["nondegenerate"] = an.is_simple


def run_exp_twist(params):
    p = params["p"]
    L = plie.abelian2(p)
    U = plie.enveloping(L)
    J = exp_twist(U, _gen(L, U, [1, 0]), _gen(L, U, [0, 1]))
    rep, values = CheckReport("exp twist"), {"dim": U.dim}
    _twist_block(rep, values, U, J)
    _nondegeneracy(values, U, J)
    return rep, values


def run_falling_factorial(params):
    p = params["p"]
    L = plie.nonabelian2(p)
    U = plie.enveloping(L)
    J = falling_factorial_twist(U, _gen(L, U, [1, 0]), _gen(L, U, [0, 1]))
    rep, values = CheckReport("falling factorial twist"), {"dim": U.dim}
    hJ, _ = _twist_block(rep, values, U, J)
    w = hJ.algebra.commutativity_witness()
    rep.add("noncomm", w is not None, w)
    w = hJ.coalgebra.cocommutativity_witness()
    rep.add("nococomm", w is not None, w)
    return rep, values


def run_witt(params):
    p, i = params["p"], params["i"]
    wt = witt_twist(p, i)
    rep, values = CheckReport(f"witt twist J({i})"), {"dim": wt.parent.dim}
    rep.extend(check_twist(wt.sub_hopf, wt.J_sub), "sub_twist.")
    sub_J = apply_twist(wt.sub_hopf, wt.J_sub)
    rep.extend(check_triangular(sub_J, r_matrix(wt.sub_hopf, wt.J_sub)), "sub_triangular.")
    _twist_block(rep, values, wt.parent, wt.J, hopf=False)
    values["sub_minimality_rank"] = minimality_rank(wt.sub_hopf, r_matrix(wt.sub_hopf, wt.J_sub))[0]
    return rep, values


def run_frobenius(params):
    p = params["p"]
    L = plie.gl3_parabolic(p)
    xi = plie.gl3_frobenius_functional(p)
    rep = CheckReport("frobenius functional")
    rep.add("frobenius_check", plie.frobenius_check(L, xi))
    a = plie.reduced_enveloping(L, xi)
    an = analyze(a)
    return rep, {"dim": a.dim, "verdict": an.label(), "radical_dim": an.radical_dim,
                 "center_dim": an.center_dim}


def run_heisenberg(params):
    f = PrimeField(params["p"])
    h = cm.alpha_p(f) if params["group"] == "alpha" else cm.group_algebra(group_by_name(params["group"]), f)
    parent, psi = cm.heisenberg_twist(cm.CommutativePair(h))
    rep, values = CheckReport("heisenberg twist"), {"dim": parent.dim}
    rep.extend(check_twist(parent, psi), "twist.")
    values["minimality_rank"] = minimality_rank(parent, r_matrix(parent, psi))[0]
    _nondegeneracy(values, parent, psi)
    return rep, values


def run_trivial_twist(params):
    p = params["p"]
    U = plie.enveloping(plie.abelian2(p))
    J = unit_element(U, 2)
    rep, values = CheckReport("trivial twist"), {"dim": U.dim}
    rep.extend(check_twist(U, J), "twist.")
    values["minimality_rank"] = minimality_rank(U, r_matrix(U, J))[0]
    _nondegeneracy(values, U, J)
    return rep, values


def run_enumerate(params):
    name, p = ENUMERATION_TARGETS[params["target"]]
    h = presentation(name, PrimeField(p))
    res = cm.enumerate_twists(h, params.get("budget", cm.DEFAULT_BUDGET), params.get("gauge_degree", 2))
    rep = CheckReport("twist enumeration")
    rep.add("trivial_twist_found", unit_element(h, 2) in res.twists)
    return rep, {"twist_count": len(res.twists), "orbit_count": res.orbit_count,
                 "candidates": res.candidates}


def run_isocat(params):
    f = PrimeField(params["p"])
    res = isocat.run_pipeline(group_by_name(params["group"]), params["subgroup"], f, params.get("form"))
    rep = CheckReport("isocategorical pipeline")
    for i, stage in enumerate(isocat.STAGES):
        info = res.stages.get(stage)
        rep.add(stage, info is not None and bool(info.get("passed")), None if info is None or info.get("passed")
                else {"error": info.get("error", "see stage report")})
    values = {"failed_stage": res.failed_stage}
    if res.passed:
        values["G_b_type"] = res.stages["G_b"]["isomorphism_type"]
        values["btilde"] = res.artifacts["btilde"]
        obj = res.artifacts["objects"]
        e, ch, t, gb = obj["embedding"], obj["characters"], obj["tau"], obj["G_b"]
        shift = [e.G.identity] + [e.A[-1]] * (e.index - 1)
        t2 = isocat.perturb(e, ch, t, shift)
        g2 = isocat.build_G_b(e, t2.btilde)
        rep.add("coboundary_shift_isomorphic", cm.find_isomorphism(g2, gb) is not None)
        rep.add("coboundary_shift_isocategorical", isocat.verify_isocategorical(e, obj["J"], t2, g2, f).passed)
    return rep, values


def run_hopf_axioms(params):
    field = PrimeField(params["p"]) if params.get("p") else QQ
    h = presentation(params["presentation"], field)
    return check_hopf(h), {"dim": h.dim}


RUNNERS = {
    "exp-twist": run_exp_twist,
    "falling-factorial": run_falling_factorial,
    "witt": run_witt,
    "frobenius": run_frobenius,
    "heisenberg": run_heisenberg,
    "trivial-twist": run_trivial_twist,
    "enumerate": run_enumerate,
    "isocat": run_isocat,
    "hopf-axioms": run_hopf_axioms,
}


def _select(rep: CheckReport, checks) -> CheckReport:
    if not checks:
        return rep
    out = CheckReport(rep.subject)
    for r in rep.results:
        if r.name.split(".")[0] in checks:
            out.results.append(r)
    return out


def run_fixture(fx: Fixture, checks=None) -> dict:
    """Report dict with keys fixture, passed, checks, values, expected, timings."""
    t0 = time.perf_counter()
    rep, values = RUNNERS[fx.kind](fx.params)
    if checks:
        known = {r.name.split(".")[0] for r in rep.results} | set(fx.expected)
        unknown = sorted(set(checks) - known)
        if unknown:
            raise ValueError(f"{fx.name} has no checks named {', '.join(unknown)}")
    rep = _select(rep, checks)
    for key, want in fx.expected.items():
        if checks and key not in checks:
            continue
        got = values.get(key)
        rep.add(f"expected.{key}", got == want, None if got == want else {"expected": want, "got": got})
    return {
        "fixture": fx.name,
        "passed": rep.passed,
        "checks": [r.to_dict() for r in rep.results],
        "values": _plain(values),
        "timings": {"seconds": round(time.perf_counter() - t0, 3)},
    }


def _plain(x):
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x

