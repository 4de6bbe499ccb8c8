"""Command line: ``gsp4cert verify`` runs suites into a JSON report, ``gsp4cert dump`` writes data dumps.

Exit status: 0 when every check passes, 1 when some check fails, 2 on usage
errors (unknown suite, bad config), 3 on I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict
from pathlib import Path
from typing import List, Optional

from .checks import REGISTRY, SUITES, VerifyConfig

SCHEMA = "1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gsp4cert", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--config", type=Path, help="JSON file with VerifyConfig fields")
    v.add_argument("--suite", action="append", choices=SUITES, metavar="NAME",
                   help=f"suite to run (repeatable); one of {', '.join(SUITES)}")
    v.add_argument("--out", type=Path, help="write the JSON report here (default: stdout)")
    v.add_argument("--max-degree", type=int, help="largest PBW word length for period reduction")
    v.add_argument("--quiet", action="store_true", help="suppress the per-check summary on stderr")
    d = sub.add_parser("dump", help="write structure-constant and enveloping-algebra dumps")
    d.add_argument("--out", type=Path, required=True, help="output directory")
    return p


def load_config(args, parser) -> VerifyConfig:
    raw = {}
    if args.config is not None:
        try:
            raw = json.loads(args.config.read_text())
        except OSError as exc:
            parser.error(f"cannot read config: {exc}")
        except json.JSONDecodeError as exc:
            parser.error(f"config is not valid JSON: {exc}")
    try:
        cfg = VerifyConfig.from_dict(raw)
    except (TypeError, ValueError) as exc:
        parser.error(str(exc))
    if args.suite:
        cfg.suites = list(args.suite)
    if args.max_degree is not None:
        if args.max_degree < 1:
            parser.error("--max-degree must be positive")
        cfg.max_degree = args.max_degree
    unknown = [s for s in cfg.suites if s not in REGISTRY]
    if unknown:
        parser.error(f"unknown suite(s): {', '.join(unknown)}")
    return cfg


def run(cfg: VerifyConfig) -> dict:
    t0 = time.perf_counter()
    suites = {}
    timing = {}
    for name in cfg.suites:
        t = time.perf_counter()
        checks = REGISTRY[name](cfg)
        suites[name] = [c.to_json() for c in checks]
        timing[name] = round(time.perf_counter() - t, 6)
    records = [r for rs in suites.values() for r in rs]
    summary = {s: sum(1 for r in records if r["status"] == s) for s in ("pass", "fail", "info")}
    return {
        "schema": SCHEMA,
        "config": asdict(cfg),
        "suites": suites,
        "summary": summary,
        "ok": summary["fail"] == 0,
        "timing": {"suites_wall_time_s": timing, "total_wall_time_s": round(time.perf_counter() - t0, 6)},
    }


def strip_timing(report: dict) -> dict:
    """Copy of a report with every timing field removed (for determinism comparisons)."""
    out = {k: v for k, v in report.items() if k != "timing"}
    out["suites"] = {s: [{k: v for k, v in r.items() if k != "wall_time_s"} for r in rs] for s, rs in report["suites"].items()}
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def cmd_verify(args, parser) -> int:
    cfg = load_config(args, parser)
    report = run(cfg)
    text = dumps(report)
    if args.out is not None:
        try:
            args.out.write_text(text)
        except OSError as exc:
            print(f"error: cannot write report: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    if not args.quiet:
        for name, rs in report["suites"].items():
            for r in rs:
                if r["status"] != "info":
                    print(f"{r['status'].upper():4}  {r['id']}", file=sys.stderr)
        s = report["summary"]
        print(f"{s['pass']} passed, {s['fail']} failed, {s['info']} reported", file=sys.stderr)
    return EXIT_OK if report["ok"] else EXIT_FAIL


def cmd_dump(args) -> int:
    from .gsp4 import structure_dump
    from .uea import uea_dump

    try:
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / "structure.json").write_text(dumps({"schema": SCHEMA, **structure_dump()}))
        (args.out / "uea.json").write_text(dumps({"schema": SCHEMA, **uea_dump()}))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        return cmd_verify(args, parser)
    return cmd_dump(args)


if __name__ == "__main__":
    sys.exit(main())
