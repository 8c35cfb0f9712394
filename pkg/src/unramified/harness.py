"""Case registry, suite orchestration and JSON reports.

A *cell* is one independent verification: ``(suite, key, params)``. Suites
expand into cells, cells run (optionally in parallel) and the report lists
them in canonical order.
"""

from __future__ import annotations

import json
import platform
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from importlib import resources
from typing import Any, Dict, List, Optional, Tuple

import jsonschema

from . import matgroups as mg
from .identities import (
    IdentityReport,
    check_cauchy,
    check_g_equivalence,
    check_schur_gl,
    check_schur_sp,
)
from .rootchar import GL, GSp, random_satake
from .zeta import get_case, verify_zeta

SCHEMA_VERSION = "1.0"
SUITES = ("identities", "cauchy", "zeta", "orbits", "maps", "pinning")


class ConfigError(ValueError):
    """Invalid suite configuration (exit status 2)."""


# ---------------------------------------------------------------- registry


@dataclass(frozen=True)
class CaseDescriptor:
    id: str
    dual_group: str
    tau: str
    quadruple: Tuple[str, str, str, str]
    ranks: Dict[str, str]
    classification: str = ""
    constraints: str = ""
    remark: str = ""
    zeta_cases: Tuple[str, ...] = ()
    cauchy_case: str = ""
    excluded: bool = False

    def to_json(self) -> Dict[str, Any]:
        d = asdict(self)
        d["quadruple"] = dict(zip(("G", "H", "rho_H", "iota"), self.quadruple))
        d["zeta_cases"] = list(self.zeta_cases)
        return d


_R = CaseDescriptor

REGISTRY: Tuple[CaseDescriptor, ...] = (
    # multiplicity-free representations covered by the zeta integrals
    _R("gsp-gl-2", "GSp(2a) x GL(2)", "std ⊗ std",
       ("GSpin(2a+1) x GL(2)", "GSpin(4)", "T(std_2) ⊕ T(std_2)", "[2a-3, 1^4]"),
       {"a": ">= 3"}, "main", zeta_cases=("GSpinGL(m,2)",), cauchy_case="a"),
    _R("gsp4-gl-n", "GSp(4) x GL(b)", "std ⊗ std",
       ("GSp(4) x GL(b)", "S'(GSp(4) x GL(4))", "std_4 ⊗ ∧²_GL4", "(1, [b-4, 1^4])"),
       {"b": ">= 4"}, "main", zeta_cases=("GSpinGL(2,n)",), cauchy_case="b"),
    _R("gsp-gl-3", "GSp(2a) x GL(3)", "std ⊗ std",
       ("GSpin(2a+1) x GL(3)", "GSpin(6) x GL(3)", "T(HSpin_6 ⊗ std_3)", "([2a-5, 1^6], 1)"),
       {"a": ">= 2"}, "main", constraints="omega_tau * omega_pi = 1",
       zeta_cases=("GSpinGL(m,3)",), cauchy_case="c"),
    _R("gspin10-spin", "GSpin(10)", "Spin",
       ("GSO(10)", "GL(2)", "0", "[4^2, 1^2]"), {}, "main", zeta_cases=("D5",), cauchy_case="e"),
    _R("spin8-std-spin", "Spin(8)", "std ⊕ Spin",
       ("PGSO(8)", "S(GL(2) x GSO(4))", "T(std_2) ⊕ T(std_2)", "[2^2, 1^4]"), {}, "main",
       zeta_cases=("D4",), cauchy_case="d"),
    _R("gl-std-std", "GL(n)", "std ⊕ std",
       ("GL(n)", "GL(2)", "T(std_2)", "[n-2, 1^2]"), {"n": ">= 2"}, "main",
       remark="n = 2 uses (GL(2), GL(2), T(std_2) ⊕ T(std_2), 1)", zeta_cases=("MultiGL(n)",)),
    _R("gsp-std-std", "GSp(2n)", "std ⊕ std",
       ("GSpin(2n+1)", "GSpin(4)", "T(std_2) ⊕ T(std_2)", "[2n-3, 1^4]"), {"n": ">= 2"}, "main",
       zeta_cases=("MultiGSpin(n)",)),
    _R("glue-gl-gl", "GL(m) x GL_2 x GL(n)", "(std ⊗ std_2) ⊕ (std_2 ⊗ std)",
       ("GL(m) x GL(2) x GL(n)", "S(GL(2)^3)", "std_2^⊗3 (+ T(std_2) for rank 2 factors)",
        "([m-2, 1^2], 1, [n-2, 1^2])"),
       {"m": ">= 2", "n": ">= 2"}, "main", zeta_cases=("GlueGLGL(m,n)",)),
    _R("glue-gl-gsp", "GL(m) x GL_2 x GSp(2n)", "(std ⊗ std_2) ⊕ (std_2 ⊗ std)",
       ("GL(m) x GL(2) x GSpin(2n+1)", "S''(GL(2)^4)", "std_2^⊗3 (+ T(std_2) when m = 2)",
        "([m-2, 1^2], 1, [2n-3, 1^4])"),
       {"m": ">= 2", "n": ">= 2"}, "main", zeta_cases=("GlueGLGSpin(m,n)",)),
    _R("glue-gsp-gsp", "GSp(2m) x GL_2 x GSp(2n)", "(std ⊗ std_2) ⊕ (std_2 ⊗ std)",
       ("GSpin(2m+1) x GL(2) x GSpin(2n+1)", "S*(GL(2)^5)", "T(std_2) ⊕ T(std_2) ⊕ std_2^⊗3",
        "([2m-3, 1^4], 1, [2n-3, 1^4])"),
       {"m": ">= 2", "n": ">= 2"}, "main", zeta_cases=("GlueGSpinGSpin(m,n)",)),
    _R("glue-gl2-gl", "GL_2 x GL(n)", "std_2 ⊕ (std_2 ⊗ std)",
       ("GL_2 x GL(n)", "GL(2) x GL(2)", "T(std_2 ⊗ std_2)", "(1, [n-2, 1^2])"), {"n": ">= 2"},
       "main", remark="no zeta integral computed here", excluded=True),
    _R("glue-gl2-gsp", "GL_2 x GSp(2n)", "std_2 ⊕ (std_2 ⊗ std)",
       ("GL_2 x GSpin(2n+1)", "G(SL(2) x SL(2)) x GL(2)", "T(std_2 ⊗ std_2) ⊕ T(std_2)", "(1, [2n-3, 1^4])"),
       {"n": ">= 2"}, "main", remark="no zeta integral computed here", excluded=True),
    # the remaining coisotropic representations of the form tau ⊕ tau^vee
    _R("gl-gl-tensor", "GL(m) x GL(n)", "std ⊗ std",
       ("GL(m) x GL(n)", "GL(n)", "T(std_n) if m = n else 0", "([m-n, 1^n], 1)"), {"m": ">= n >= 2"},
       "coisotropic", remark="Rankin-Selberg"),
    _R("gl-wedge2", "GL(n)", "∧²", ("GL(n)", "GL(floor(n/2))", "T(std) if n even else 0", "[2^m] or [2^m, 1]"),
       {"n": ">= 4"}, "coisotropic", remark="exterior square"),
    _R("gl-std", "GL(n)", "std", ("GL(n)", "GL(1)", "0", "[n-1, 1]"), {"n": ">= 3"}, "coisotropic"),
    _R("sp-std", "Sp(2m)", "std", ("SO(2m+1)", "SO(2)", "0", "[2m-1, 1^2]"), {"m": ">= 2"}, "coisotropic"),
    _R("gso-std", "GSO(2n)", "std", ("GSpin(2n)", "GSpin(3)", "T(std_2)", "[2n-3, 1^3]"), {"n": ">= 2"},
       "coisotropic"),
    _R("gspin7-spin", "GSpin(7)", "Spin", ("GSp(6)", "GL(2)", "T(std_2)", "[3^2]"), {}, "coisotropic"),
    _R("gspin9-spin", "GSpin(9)", "Spin", ("GSp(8)", "S(SL(2) x SL(2))", "T(std_2,2)", "[3^2, 1^2]"), {},
       "coisotropic"),
    _R("e6-std", "E6", "std", ("E6", "GL(3)", "T(std_3)", "D4"), {}, "coisotropic"),
    _R("gl-wedge2-std", "GL(n)", "∧² ⊕ std",
       ("GL(n)", "GL(floor(n/2)) x GL(ceil(n/2))", "T(std_ceil(n/2))", "1"), {"n": ">= 2"},
       "coisotropic-pairs", "22.2"),
    _R("gl-gl-tensor-std", "GL(m) x GL(n)", "std ⊗ std ⊕ std",
       ("GL(m) x GL(n)", "GL(n) x GL(n) or GL(m) x GL(m+1)", "T(std ⊗ std) (+ T(std_n))", "depends on (m, n)"),
       {"m": ">= 2", "n": ">= 2"}, "coisotropic-pairs", "22.3"),
    # disconnected generic stabilizer: outside the framework
    _R("gl-sym2", "GL(n)", "Sym²", ("-", "-", "-", "-"), {}, "disconnected",
       remark="generic stabilizer not connected"),
    _R("so-std", "SO(2k+1)", "std", ("-", "-", "-", "-"), {}, "disconnected",
       remark="generic stabilizer not connected"),
    _R("g2-std", "G2", "std", ("-", "-", "-", "-"), {}, "disconnected",
       remark="generic stabilizer not connected"),
)


def list_cases() -> List[CaseDescriptor]:
    return list(REGISTRY)


def describe_case(case_id: str) -> CaseDescriptor:
    for c in REGISTRY:
        if c.id == case_id:
            return c
    raise ConfigError(f"unknown registry id {case_id!r}")


# ---------------------------------------------------------------- cells


@dataclass(frozen=True)
class Cell:
    suite: str
    key: str
    params: Tuple[Tuple[str, Any], ...] = ()

    @property
    def name(self) -> str:
        return f"{self.suite}:{self.key}"

    def p(self) -> Dict[str, Any]:
        return dict(self.params)


def _cell(suite, key, **params) -> Cell:
    return Cell(suite, key, tuple(sorted(params.items())))


CHI_VALUES = ("2", "-1/3", "5/7")


def _identities_cells(cfg) -> List[Cell]:
    out = [_cell("identities", f"schur_gl_n{n}", n=n, kmax=5, trials=cfg.trials, seed=cfg.seed) for n in (2, 3, 4)]
    out += [_cell("identities", f"schur_sp_n{n}", n=n, kmax=4, trials=cfg.trials, seed=cfg.seed) for n in (2, 3)]
    out += [_cell("identities", "g_function", ord_max=10, chis=CHI_VALUES)]
    return out


CAUCHY_MATRIX = (("a", {"n": 2}), ("a", {"n": 3}), ("b", {"m": 4}), ("b", {"m": 5}),
                 ("c", {"n": 2}), ("c", {"n": 3}), ("d", {}), ("e", {}))
CAUCHY_BOX = {"a": (12, 0), "b": (10, 0), "c": (10, 0), "d": (8, 8), "e": (12, 0)}


def _cauchy_cells(cfg) -> List[Cell]:
    out = []
    for case, ranks in CAUCHY_MATRIX:
        if cfg.case and case != cfg.case:
            continue
        if cfg.rank_m is not None or cfg.rank_n is not None:
            ranks = dict(ranks)
            if "m" in ranks and cfg.rank_m is not None:
                ranks["m"] = cfg.rank_m
            if "n" in ranks and cfg.rank_n is not None:
                ranks["n"] = cfg.rank_n
        box = cfg.box(CAUCHY_BOX[case])
        key = case + "".join(f"_{k}{v}" for k, v in sorted(ranks.items()))
        cell = _cell("cauchy", key, case=case, ranks=tuple(sorted(ranks.items())), box=box,
                     trials=cfg.trials, seed=cfg.seed)
        if cell not in out:
            out.append(cell)
    return out


# (case, m, n, box, derived)
ZETA_MATRIX = (
    ("MultiGL", None, 2, (10, 10)), ("MultiGL", None, 3, (10, 10)), ("MultiGL", None, 4, (10, 10)),
    ("MultiGSpin", None, 2, (10, 10)), ("MultiGSpin", None, 3, (10, 10)),
    ("GSpinGL", 2, 4, (8, 0)), ("GSpinGL", 2, 5, (8, 0)),
    ("GSpinGL", 2, 3, (8, 0)), ("GSpinGL", 3, 3, (8, 0)), ("GSpinGL", 3, 2, (8, 0)),
    ("D5", None, None, (12, 0)), ("D4", None, None, (8, 8)),
    ("GlueGLGL", 2, 2, (8, 8)), ("GlueGLGL", 2, 3, (8, 8)),
    ("GlueGLGSpin", 2, 2, (6, 6)), ("GlueGSpinGSpin", 2, 2, (6, 6)),
)


def _zeta_cells(cfg) -> List[Cell]:
    out = []
    for name, m, n, box in ZETA_MATRIX:
        if cfg.case and name != cfg.case:
            continue
        if cfg.rank_m is not None and m is not None:
            m = cfg.rank_m
        if cfg.rank_n is not None and n is not None:
            n = cfg.rank_n
        key = name + (f"_m{m}" if m is not None else "") + (f"_n{n}" if n is not None else "")
        cell = _cell("zeta", key, case=name, m=m, n=n, box=cfg.box(box), trials=cfg.trials, seed=cfg.seed,
                     corrected=not cfg.verbatim)
        if cell not in out:
            out.append(cell)
    return out


def _orbits_cells(cfg) -> List[Cell]:
    out = [_cell("orbits", "GL2GL2_on_Mat1x4", action="GL2GL2_on_Mat1x4", p=3),
           _cell("orbits", "GSp4GL3_on_Mat1x12", action="GSp4GL3_on_Mat1x12", p=3)]
    for family in ("coset-GL4prime", "coset-GSp4", "eta"):
        for rep in mg.STABILIZER_CASES[family]:
            out.append(_cell("orbits", f"stab_{rep}", family=family, rep=rep, p=5, samples=200, seed=cfg.seed))
    return out


def _extended_orbit_cells(cfg) -> List[Cell]:
    """The xi stabilizer claims; outside the default matrix (see the README)."""
    out = []
    for conv in mg.PHI1_CONVENTIONS:
        for rep in mg.STABILIZER_CASES["xi"]:
            suffix = "" if conv == "stated" else f"_{conv}"
            out.append(_cell("orbits", f"stab_{rep}{suffix}", family="xi", rep=rep, p=5, samples=200,
                             seed=cfg.seed, convention=conv))
    return out


def _maps_cells(cfg) -> List[Cell]:
    out = []
    for name in mg.MAP_NAMES:
        out.append(_cell("maps", f"{name}_F101", map=name, p=101, samples=100, seed=cfg.seed))
        out.append(_cell("maps", f"{name}_QQ", map=name, p=None, samples=20, seed=cfg.seed))
    return out


def _pinning_cells(cfg) -> List[Cell]:
    return [_cell("pinning", f"{g}_{fn}", group=g, p=p, samples=20, seed=cfg.seed)
            for g in ("GSpin4", "GSpin6") for fn, p in (("F101", 101), ("QQ", None))]


EXPANDERS = {
    "identities": _identities_cells,
    "cauchy": _cauchy_cells,
    "zeta": _zeta_cells,
    "orbits": _orbits_cells,
    "maps": _maps_cells,
    "pinning": _pinning_cells,
}


# ---------------------------------------------------------------- config


@dataclass
class SuiteConfig:
    suites: Tuple[str, ...] = SUITES
    only: Tuple[str, ...] = ()
    case: Optional[str] = None
    rank_m: Optional[int] = None
    rank_n: Optional[int] = None
    deg_x: Optional[int] = None
    deg_y: Optional[int] = None
    trials: int = 3
    seed: str = "0"
    json_path: Optional[str] = None
    jobs: int = 1
    verbatim: bool = False

    def validate(self):
        for s in self.suites:
            if s not in SUITES:
                raise ConfigError(f"unknown suite {s!r}")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        for d in (self.deg_x, self.deg_y):
            if d is not None and d < 0:
                raise ConfigError("degrees must be >= 0")
        if self.deg_x is not None and self.deg_x < 2:
            raise ConfigError("boxes must be at least (2, 0)")
        for r in (self.rank_m, self.rank_n):
            if r is not None and r < 1:
                raise ConfigError("ranks must be positive")

    def box(self, default: Tuple[int, int]) -> Tuple[int, int]:
        return (default[0] if self.deg_x is None else self.deg_x,
                default[1] if self.deg_y is None else self.deg_y)

    def to_json(self) -> Dict[str, Any]:
        d = asdict(self)
        d["suites"] = list(self.suites)
        d["only"] = list(self.only)
        d.pop("json_path")
        d.pop("jobs")
        return d


def expand(cfg: SuiteConfig) -> List[Cell]:
    cfg.validate()
    if cfg.only:
        pool = {}
        for s in SUITES:
            for c in EXPANDERS[s](cfg):
                pool[c.name] = c
        for c in _extended_orbit_cells(cfg):
            pool[c.name] = c
        cells = []
        for sel in cfg.only:
            if sel in SUITES:
                cells.extend(EXPANDERS[sel](cfg))
                continue
            hits = [c for n, c in pool.items() if n.startswith(sel)]
            if not hits:
                raise ConfigError(f"--only {sel!r} matches no cell")
            cells.extend(hits)
        seen = set()
        return [c for c in cells if not (c.name in seen or seen.add(c.name))]
    cells = []
    for s in cfg.suites:
        cells.extend(EXPANDERS[s](cfg))
    if not cells:
        raise ConfigError("the selection matches no cell")
    return cells


# ---------------------------------------------------------------- running


def _field(p):
    return mg.QQ if p is None else mg.Field(p)


def _run_identities(cell: Cell) -> Dict[str, Any]:
    p = cell.p()
    t0 = time.perf_counter()
    if cell.key == "g_function":
        reports = [check_g_equivalence(p["ord_max"], Fraction(chi)) for chi in p["chis"]]
    else:
        n, kmax, trials, seed = p["n"], p["kmax"], p["trials"], p["seed"]
        reports = []
        gl = cell.key.startswith("schur_gl")
        for t in range(trials):
            pt = random_satake(GL(n) if gl else GSp(n), f"{seed}:{t}")
            if not gl:
                pt = pt.normalized()
            lo = 0 if gl else 1
            for k in range(lo, kmax + 1):
                for j in range(lo, kmax + 1):
                    reports.append((check_schur_gl if gl else check_schur_sp)(n, k, j, pt))
    bad = next((r for r in reports if not r.passed), None)
    mismatch = None if bad is None else {"check": bad.identity, "params": bad.params, **bad.mismatch}
    return IdentityReport(cell.key, {k: v for k, v in cell.params}, bad is None, mismatch,
                          time.perf_counter() - t0, {"checks": len(reports)}).to_json()


def run_cell(cell: Cell) -> Dict[str, Any]:
    """Run one cell; exceptions become failed cells rather than crashes."""
    p = cell.p()
    try:
        if cell.suite == "identities":
            out = _run_identities(cell)
        elif cell.suite == "cauchy":
            out = check_cauchy(p["case"], dict(p["ranks"]), tuple(p["box"]), p["trials"], p["seed"]).to_json()
        elif cell.suite == "zeta":
            case = get_case(p["case"], p["m"], p["n"], p["corrected"])
            out = verify_zeta(case, tuple(p["box"]), p["trials"], p["seed"]).to_json()
            out["params"]["corrected"] = p["corrected"]
        elif cell.suite == "orbits" and cell.key.startswith("stab_"):
            kw = {"convention": p["convention"]} if "convention" in p else {}
            out = mg.check_stabilizers(p["family"], p["rep"], p["p"], p["samples"], p["seed"], **kw).to_json()
        elif cell.suite == "orbits":
            rep = mg.enumerate_orbits(p["action"], p["p"])
            out = {"identity": f"orbits_{rep.action}", "params": {"action": rep.action, "p": rep.p},
                   "passed": rep.passed, "mismatch": None if rep.passed else {"checks": rep.checks},
                   "elapsed": round(rep.elapsed, 4), "extra": rep.to_json()}
        elif cell.suite == "maps":
            out = mg.check_map_properties(p["map"], _field(p["p"]), p["samples"], p["seed"]).to_json()
        elif cell.suite == "pinning":
            out = mg.check_pinning(p["group"], _field(p["p"]), p["samples"], p["seed"]).to_json()
        else:
            raise ConfigError(f"unknown suite {cell.suite!r}")
    except ConfigError:
        raise
    except Exception as e:  # a crashing cell is a failing cell
        out = {"identity": cell.key, "params": {k: _jsonable(v) for k, v in cell.params}, "passed": False,
               "mismatch": {"reason": "exception", "type": type(e).__name__, "detail": str(e)}, "elapsed": 0.0}
    out["suite"] = cell.suite
    out["cell"] = cell.name
    return _jsonable(out)


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (str, int, float, bool)) or v is None:
        return v
    return str(v)


def _environment() -> Dict[str, Any]:
    import numpy
    import scipy

    from . import __version__

    return {"python": platform.python_version(), "platform": sys.platform, "package": __version__,
            "numpy": numpy.__version__, "scipy": scipy.__version__}


def run_suite(cfg: SuiteConfig) -> Tuple[Dict[str, Any], int]:
    """Run the selected cells; returns (report, exit status)."""
    t0 = time.perf_counter()
    cells = expand(cfg)
    if cfg.jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            results = list(ex.map(run_cell, cells))
    else:
        results = [run_cell(c) for c in cells]
    passed = sum(1 for r in results if r["passed"])
    report = {
        "schema_version": SCHEMA_VERSION,
        "config": _jsonable(cfg.to_json()),
        "environment": _environment(),
        "cells": results,
        "summary": {"total": len(results), "passed": passed, "failed": len(results) - passed},
        "passed": passed == len(results),
        "elapsed": round(time.perf_counter() - t0, 4),
    }
    validate_report(report)
    if cfg.json_path:
        with open(cfg.json_path, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True, ensure_ascii=False)
            fh.write("\n")
    return report, 0 if report["passed"] else 1


def report_schema() -> Dict[str, Any]:
    text = resources.files("unramified").joinpath("report_schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def validate_report(report: Dict[str, Any]) -> None:
    jsonschema.validate(report, report_schema())


def strip_timing(report: Dict[str, Any]) -> Dict[str, Any]:
    """The report without timing fields, for determinism comparisons."""
    if isinstance(report, dict):
        return {k: strip_timing(v) for k, v in report.items() if k != "elapsed"}
    if isinstance(report, list):
        return [strip_timing(v) for v in report]
    return report
