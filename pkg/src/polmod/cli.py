"""Command line front end.

    polmod run --config sweep.ini [--out DIR] [--seed N] [--workers N]
    polmod constellation [--h00 C --h01 C --h10 C --h11 C] [--modulation M] [--out DIR]
    polmod validate

Complex channel entries use Python literal syntax, e.g. --h01 "0.1+0.2j".
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .config import ConfigError, load_config
from .constellation import make_constellation
from .engine import run_sweep
from .figures import dump_hierarchical_constellation, write_constellation_figure
from .validate import run_checks

__all__ = ["main", "build_parser"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polmod",
        description="Monte Carlo link simulation of dual-polarized transmit schemes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a sweep from an INI config")
    run.add_argument("--config", required=True, help="path to the INI file")
    run.add_argument("--out", default="results", help="output directory (default: results)")
    run.add_argument("--seed", type=int, default=None, help="override the master seed")
    run.add_argument("--workers", type=int, default=1, help="process count (default: 1)")

    con = sub.add_parser("constellation", help="dump the hierarchical receive constellation")
    for entry in ("h00", "h01", "h10", "h11"):
        default = "1" if entry in ("h00", "h11") else "0"
        con.add_argument(f"--{entry}", default=default, help=f"channel entry (default {default})")
    con.add_argument("--modulation", default="qpsk", help="bpsk, qpsk or qam16")
    con.add_argument("--out", default=None, help="also write fig1 files into this directory")

    sub.add_parser("validate", help="run the built-in self checks")
    return parser


def _cmd_run(args) -> int:
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.seed is not None:
        cfg = replace(cfg, master_seed=args.seed)
    try:
        records = run_sweep(cfg, out_dir=args.out, workers=args.workers)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = Path(args.out)
    print(f"{len(records)} points -> {out / 'results.csv'}")
    for p in sorted(out.glob("fig*")):
        print(f"  {p}")
    return 0


def _cmd_constellation(args) -> int:
    try:
        H = np.array(
            [
                [complex(args.h00), complex(args.h01)],
                [complex(args.h10), complex(args.h11)],
            ]
        )
        cst = make_constellation(args.modulation)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print("c,symbol,re,im")
    for c, i, p in dump_hierarchical_constellation(H, cst):
        print(f"{c},{i},{p.real:.6g},{p.imag:.6g}")
    if args.out is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for path in write_constellation_figure(H, cst, out):
            print(f"wrote {path}", file=sys.stderr)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "constellation":
        return _cmd_constellation(args)
    return 0 if run_checks() else 1


if __name__ == "__main__":
    sys.exit(main(argv=sys.argv[1:]))
