"""Command line front end: argument parsing, reports, run manifests.

No mathematics lives here.  Each subcommand wires calls into the
library modules, writes a JSON report plus a run manifest into the
output directory, and returns exit code 0 only when the invoked check
passes.  Reports are fully deterministic (sorted keys, no timestamps),
so identical inputs produce byte-identical report files; timestamps
live in the manifest.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from pathlib import Path
from typing import Optional

from . import __version__
from .collisions import (
    E1,
    E2,
    THREE_ROW_LENGTH,
    TWO_ROW_LENGTH,
    collision_check,
    extract_pairs,
    gcds_to_json,
    pairs_from_csv,
    pairs_to_csv,
    possible_gcds,
)
from .lattice import winners_search
from .verifier import (
    VerificationError,
    bounded_spk_search,
    certify,
    verify_future_examples,
    verify_table1,
)

__all__ = ["dispatch", "main"]


class UsageError(Exception):
    """Bad invocation detected after argument parsing (exit code 2)."""


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumprod",
        description="exact verification pipeline for small sum-product sets",
    )
    parser.add_argument("--out", default=".", help="output directory for reports")
    parser.add_argument(
        "--workers",
        type=int,
        default=None,
        help="worker processes (default: SUMPROD_WORKERS or 1)",
    )
    parser.add_argument(
        "--seed", type=int, default=None, help="seed for randomized spot checks"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("table1", help="recompute the upper-bound example table")

    winners = sub.add_parser("winners", help="small-doubling lattice search")
    winners.add_argument("--k", type=int, required=True)
    winners.add_argument("--m", type=int, required=True)
    winners.add_argument("--emit", choices=["json"], default="json")

    gcds = sub.add_parser("gcds", help="collect nonconstant system gcds")
    gcds.add_argument("--rows", choices=["2", "3"], required=True)

    coll = sub.add_parser("collisions", help="exceptional pair sweep")
    coll.add_argument("--rows", choices=["2", "3"], required=True)
    coll.add_argument("--emit", choices=["csv"], default="csv")

    cert = sub.add_parser("certify", help="check configurations at exceptional pairs")
    cert.add_argument("--k", type=int, choices=[10, 11], required=True)
    cert.add_argument("--pairs", required=True, help="exceptional pair csv")

    sub.add_parser("future", help="check the 12 and 13 element examples")

    spk = sub.add_parser("spk", help="bounded integer sweep under sum/product caps")
    spk.add_argument("--k", type=int, required=True)
    spk.add_argument("--n", type=int, required=True)
    spk.add_argument("--sum-cap", type=int, required=True)
    spk.add_argument("--prod-cap", type=int, required=True)

    return parser


def _resolve_workers(args) -> int:
    if args.workers is not None:
        return max(1, args.workers)
    env = os.environ.get("SUMPROD_WORKERS", "")
    return max(1, int(env)) if env.isdigit() and env != "" else 1


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _stage_table1(args) -> tuple[dict, dict, bool]:
    return {"rows": verify_table1()}, {}, True


def _stage_future(args) -> tuple[dict, dict, bool]:
    return {"rows": verify_future_examples()}, {}, True


def _stage_winners(args) -> tuple[dict, dict, bool]:
    found = winners_search(args.k, args.m)
    listed = sorted(sorted([m, n] for m, n in W) for W in found)
    body = {"k": args.k, "m": args.m, "count": len(listed), "winners": listed}
    return body, {}, True


def _stage_gcds(args) -> tuple[dict, dict, bool]:
    if args.rows == "2":
        mapping = possible_gcds(TWO_ROW_LENGTH, E1)
    else:
        mapping = possible_gcds(THREE_ROW_LENGTH, E2)
    return {"rows": int(args.rows), "gcds": json.loads(gcds_to_json(mapping))}, {}, True


def _stage_collisions(args) -> tuple[dict, dict, bool]:
    if args.rows == "2":
        records = collision_check(TWO_ROW_LENGTH, E1)
        pair_set = extract_pairs(records, "two_row")
    else:
        records = collision_check(THREE_ROW_LENGTH, E2)
        pair_set = extract_pairs(records, "three_row")
    csv_text = pairs_to_csv(pair_set)
    name = f"pairs-{args.rows}row.csv"
    (Path(args.out) / name).write_text(csv_text)
    body = {
        "rows": int(args.rows),
        "pair_count": len(pair_set),
        "r_values": sorted(str(r) for r in pair_set.r_values()),
        "csv": name,
    }
    return body, {name: _sha256(csv_text.encode())}, True


def _stage_certify(args) -> tuple[dict, dict, bool]:
    path = Path(args.pairs)
    if not path.is_file():
        raise UsageError(f"pairs file not found: {path}")
    text = path.read_text()
    try:
        pairs = pairs_from_csv(text)
    except (ValueError, IndexError) as exc:
        raise UsageError(f"malformed pairs file {path}: {exc}") from exc
    report = certify(args.k, pairs, workers=_resolve_workers(args), seed=args.seed)
    body = {
        "k": report.k,
        "threshold_sums": report.threshold_sums,
        "product_cap": report.product_cap,
        "configs_checked": report.configs_checked,
        "violations": [
            {
                "r": str(cfg.r),
                "s": str(cfg.s),
                "pattern": [[m, n] for m, n in cfg.pattern],
                "sums": sums,
                "products": prods,
            }
            for cfg, sums, prods in report.violations
        ],
        "sharp_witnesses": [[str(x) for x in w] for w in report.sharp_witnesses],
    }
    return body, {str(path): _sha256(text.encode())}, report.passed


def _stage_spk(args) -> tuple[dict, dict, bool]:
    found = bounded_spk_search(args.k, args.n, args.sum_cap, args.prod_cap)
    body = {
        "note": "bounded enumeration below the caps; a sweep, not a certification",
        "k": args.k,
        "n": args.n,
        "sum_cap": args.sum_cap,
        "prod_cap": args.prod_cap,
        "count": len(found),
        "sets": [[int(x) for x in A] for A in found],
    }
    return body, {}, True


_STAGES = {
    "table1": _stage_table1,
    "winners": _stage_winners,
    "gcds": _stage_gcds,
    "collisions": _stage_collisions,
    "certify": _stage_certify,
    "future": _stage_future,
    "spk": _stage_spk,
}


def _parameters(args) -> dict:
    skip = {"command", "out", "workers", "seed"}
    params = {
        key: value
        for key, value in sorted(vars(args).items())
        if key not in skip and value is not None
    }
    params["workers"] = _resolve_workers(args)
    if args.seed is not None:
        params["seed"] = args.seed
    return params


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def dispatch(argv: Optional[list[str]] = None) -> int:
    """Run one subcommand; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 2

    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    started = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    diagnostics: Optional[str] = None
    try:
        body, digests, passed = _STAGES[args.command](args)
    except UsageError as exc:
        print(f"sumprod: {exc}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        body, digests, passed = {"error": str(exc)}, {}, False
        diagnostics = str(exc)
    finished = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())

    outcome = "pass" if passed else "fail"
    report = {
        "tool": "sumprod",
        "version": __version__,
        "command": args.command,
        "parameters": _parameters(args),
        "input_digests": digests,
        "outcome": outcome,
        "result": body,
    }
    _write_json(outdir / f"{args.command}-report.json", report)
    manifest = {
        "command": args.command,
        "parameters": _parameters(args),
        "input_digests": digests,
        "started": started,
        "finished": finished,
        "outcome": outcome,
    }
    _write_json(outdir / f"{args.command}-manifest.json", manifest)

    if not passed:
        print(
            json.dumps(
                {
                    "outcome": "fail",
                    "command": args.command,
                    "diagnostics": diagnostics if diagnostics is not None else body,
                },
                sort_keys=True,
            )
        )
        return 1
    return 0


def main() -> None:
    raise SystemExit(dispatch())
