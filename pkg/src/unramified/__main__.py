"""Command line entry point: ``python -m unramified <verb> [flags]``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .harness import SUITES, ConfigError, SuiteConfig, describe_case, list_cases, run_suite

VERBS = ("registry", "identities", "cauchy", "zeta", "orbits", "maps", "pinning", "all")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="unramified", description="Exact verification suites.")
    ap.add_argument("verb", choices=VERBS)
    ap.add_argument("action", nargs="?", help="registry: list | describe")
    ap.add_argument("--case", help="registry id, Cauchy case letter, or zeta case name")
    ap.add_argument("--rank-m", type=int)
    ap.add_argument("--rank-n", type=int)
    ap.add_argument("--deg-x", "--degree", type=int, dest="deg_x")
    ap.add_argument("--deg-y", type=int)
    ap.add_argument("--trials", type=int, default=3)
    ap.add_argument("--seed", default="0")
    ap.add_argument("--json", dest="json_path", metavar="PATH")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--only", action="append", default=[], metavar="SUITE:CELL",
                    help="run only matching cells (repeatable), e.g. cauchy:a or zeta:D5")
    ap.add_argument("--verbatim", action="store_true",
                    help="zeta: use the stated exponents without the recorded corrections")
    ap.add_argument("--quiet", action="store_true")
    return ap


def _registry(args) -> int:
    if args.action in (None, "list"):
        for c in list_cases():
            flag = "  [excluded]" if c.excluded else ""
            zeta = ", ".join(c.zeta_cases) or "-"
            print(f"{c.id:18s} {c.dual_group:28s} {c.tau:32s} zeta: {zeta}{flag}")
        return 0
    if args.action == "describe":
        if not args.case:
            raise ConfigError("registry describe needs --case <id>")
        print(json.dumps(describe_case(args.case).to_json(), indent=2, ensure_ascii=False))
        return 0
    raise ConfigError(f"unknown registry action {args.action!r}")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.verb == "registry":
            return _registry(args)
        if args.action is not None:
            raise ConfigError(f"{args.verb} takes no positional action")
        suites = SUITES if args.verb == "all" else (args.verb,)
        cfg = SuiteConfig(suites=suites, only=tuple(args.only), case=args.case, rank_m=args.rank_m,
                          rank_n=args.rank_n, deg_x=args.deg_x, deg_y=args.deg_y, trials=args.trials,
                          seed=str(args.seed), json_path=args.json_path, jobs=args.jobs,
                          verbatim=args.verbatim)
        report, status = run_suite(cfg)
    except ConfigError as e:
        print(f"configuration error: {e}", file=sys.stderr)
        return 2
    if not args.quiet:
        for cell in report["cells"]:
            mark = "PASS" if cell["passed"] else "FAIL"
            line = f"{mark}  {cell['cell']:40s} {cell['elapsed']:8.2f}s"
            if not cell["passed"]:
                line += "  " + json.dumps(cell["mismatch"], ensure_ascii=False)[:160]
            print(line)
        s = report["summary"]
        print(f"{s['passed']}/{s['total']} cells passed in {report['elapsed']:.1f}s")
    return status


if __name__ == "__main__":
    sys.exit(main())
