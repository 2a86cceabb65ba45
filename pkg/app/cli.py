"""
Command line entry point.

    run <scenario> [--out DIR]           simulate and write a result bundle
    plot <bundle> --panels a,b           draw charts from a bundle's CSV
    verify <scenario> [--horizon T]      cross-check against the error systems
    accept [suite_dir]                   run the acceptance criteria
    batch <scenario>... [--out DIR]      run several scenarios

Exit codes: 0 success, 1 failure, 2 usage error.
"""
from pathlib import Path
from typing import List, Optional
import argparse
import asyncio
import logging
import sys

from app.config import settings
from app.errors import SimulationError
from app.utils import canonical_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1


def _split_panels(value: str) -> List[str]:
    return [p.strip() for p in value.split(",") if p.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mas-sim", description="Leader-following multi-agent tracking simulator")
    parser.add_argument("--log-level", default=settings.LOG_LEVEL, help="Logging level (default: %(default)s)")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run one scenario and write its bundle")
    run.add_argument("scenario", type=Path)
    run.add_argument("--out", type=Path, default=None, help="Bundle directory (default: OUTPUT_DIR/<scenario>)")
    run.add_argument("--strict-gains", action="store_true", help="Reject scenarios violating the gain conditions")

    plot = sub.add_parser("plot", help="Draw SVG charts from a bundle")
    plot.add_argument("bundle", type=Path)
    plot.add_argument("--panels", type=_split_panels, default=[], help="Comma-separated panels or CSV columns")

    verify = sub.add_parser("verify", help="Cross-check a scenario against its reduced error system")
    verify.add_argument("scenario", type=Path)
    verify.add_argument("--horizon", type=float, default=None)
    verify.add_argument("--dt", type=float, default=None)
    verify.add_argument("--max-discrepancy", type=float, default=None, help="Fail when the report exceeds this")

    accept = sub.add_parser("accept", help="Run the acceptance criteria")
    accept.add_argument("suite_dir", type=Path, nargs="?", default=Path(settings.SCENARIO_DIR))
    accept.add_argument("--work-dir", type=Path, default=None)
    accept.add_argument("--only", type=_split_panels, default=None, help="Comma-separated criterion names")

    batch = sub.add_parser("batch", help="Run several scenarios, MAS_SIM_THREADS at a time")
    batch.add_argument("scenarios", type=Path, nargs="+")
    batch.add_argument("--out", type=Path, default=Path(settings.OUTPUT_DIR))
    batch.add_argument("--workers", type=int, default=None)

    return parser


def _cmd_run(args) -> int:
    from app.output.bundle import run_scenario
    from app.scenario import parse_scenario

    cfg = parse_scenario(args.scenario, strict_gains=True if args.strict_gains else None)
    out = args.out or Path(settings.OUTPUT_DIR) / cfg.scenario_id
    bundle = run_scenario(cfg, out)
    print(canonical_json(bundle.metrics), end="")
    return EXIT_OK


def _cmd_plot(args) -> int:
    from app.output.plots import emit_plots

    for path in emit_plots(args.bundle, args.panels):
        print(path)
    return EXIT_OK


def _cmd_verify(args) -> int:
    from app.scenario import parse_scenario
    from app.verify.cross_check import cross_check

    cfg = parse_scenario(args.scenario)
    horizon = args.horizon or cfg.outputs.cross_check_horizon or 10.0
    report = cross_check(cfg, horizon, args.dt)
    print(canonical_json(report.to_dict()), end="")
    if args.max_discrepancy is not None and report.max_discrepancy > args.max_discrepancy:
        logger.error(f"Discrepancy {report.max_discrepancy:.3e} exceeds {args.max_discrepancy:.3e}")
        return EXIT_FAILURE
    return EXIT_OK


def _cmd_accept(args) -> int:
    from app.acceptance.suite import run_acceptance

    report = run_acceptance(args.suite_dir, work_dir=args.work_dir, only=args.only)
    print(canonical_json(report.to_dict()), end="")
    return EXIT_OK if report.passed else EXIT_FAILURE


def _cmd_batch(args) -> int:
    from pipeline.orchestrator import BatchOrchestrator

    orchestrator = BatchOrchestrator(max_workers=args.workers)
    outcomes = asyncio.run(orchestrator.run_batch(args.scenarios, args.out))
    summary = {o.scenario_id: (str(o.bundle.directory) if o.ok else o.error) for o in outcomes}
    print(canonical_json(summary), end="")
    return EXIT_OK if all(o.ok for o in outcomes) else EXIT_FAILURE


COMMANDS = {
    "run": _cmd_run,
    "plot": _cmd_plot,
    "verify": _cmd_verify,
    "accept": _cmd_accept,
    "batch": _cmd_batch,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Parse argv and dispatch. argparse exits with 2 on usage errors."""
    args = build_parser().parse_args(argv)

    logging.basicConfig(
        level=getattr(logging, args.log_level.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )

    try:
        return COMMANDS[args.command](args)
    except (SimulationError, OSError, ValueError) as e:
        logger.error(f"{args.command} failed: {e}", exc_info=logger.isEnabledFor(logging.DEBUG))
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
