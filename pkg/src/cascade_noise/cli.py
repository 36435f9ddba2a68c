"""Command line interface.

    cascade-noise analyze  CHAIN [--format table|csv] [--output PATH]
    cascade-noise compare  CHAIN [--format table|csv] [--output PATH]
    cascade-noise sweep    CHAIN --target PATH --from A --to B --steps K
    cascade-noise simulate CHAIN --samples K --seed S

Exit status: 0 on success, 2 on usage, parse or validation errors, 1 on
anything unexpected. Diagnostics go to stderr only.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .chain import ChainValidationError, CascadeChain, resolve_chain
from .document import ChainParseError, parse_chain_document
from .factors import compare_factors, sweep
from .montecarlo import SimulationConfig, simulate_chain
from .propagation import propagate
from .report import ReportFormat, emit_analysis, emit_report, emit_simulation, emit_sweep

PROG = "cascade-noise"


class UsageError(Exception):
    pass


def load_chain(path: str) -> CascadeChain:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read chain file {path!r}: {exc.strerror or exc}") from exc
    source, raw = parse_chain_document(text)
    return resolve_chain(source, raw)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("chain", help="chain description file (JSON)")
    common.add_argument("--format", choices=[f.value for f in ReportFormat], default=None,
                        help="output format")
    common.add_argument("--output", default=None, help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog=PROG, description="Cascade network noise factor analysis")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    sub.add_parser("analyze", parents=[common], help="propagation ledger and factor report")
    sub.add_parser("compare", parents=[common], help="Friis versus corrected stage factors")

    p = sub.add_parser("sweep", parents=[common], help="factor report over a range of one parameter")
    p.add_argument("--target", required=True,
                   help="source.signal, source.noise, stages.<x>.gain or stages.<x>.added_noise")
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo check of the analytic results")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    return parser


def _run(args) -> str:
    chain = load_chain(args.chain)
    if args.command == "analyze":
        return emit_analysis(propagate(chain), compare_factors(chain), args.format or "table")
    if args.command == "compare":
        return emit_report(compare_factors(chain), args.format or "table")
    if args.command == "sweep":
        if args.steps < 1:
            raise UsageError("--steps must be >= 1")
        values = np.linspace(args.start, args.stop, args.steps).tolist()
        return emit_sweep(args.target, sweep(chain, args.target, values, workers=args.workers),
                          args.format or "csv")
    config = SimulationConfig(sample_count=args.samples, seed=args.seed)
    return emit_simulation(simulate_chain(chain, config, workers=args.workers), args.format or "table")


def run_cli(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        text = _run(args)
    except (UsageError, ChainParseError, ChainValidationError, ValueError) as exc:
        print(f"{PROG}: error: {exc}", file=stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"{PROG}: internal error: {type(exc).__name__}: {exc}", file=stderr)
        return 1

    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"{PROG}: error: cannot write {args.output!r}: {exc.strerror or exc}", file=stderr)
            return 2
    else:
        stdout.write(text)
        stdout.flush()
    return 0


def main() -> None:
    sys.exit(run_cli())
