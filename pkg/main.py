"""
DecarbPath Command Line

Computes minimum-expenditure decarbonization pathways and the scenario
studies built on them, writing one CSV per table.

Usage:
    python main.py sweep --config scenarios/median.cfg --out results/
    python main.py pathway --workers 4
    python main.py fit-mac --data morris2050.txt --reference-emissions 57.6
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

import config
from model.economy import TimeGrid
from model.errors import DecarbError
from services import (
    ExecutionService,
    FileTools,
    ScenarioConfig,
    SweepService,
    WorkspaceManager,
    load_config,
)

logger = logging.getLogger("decarbpath")

COMMANDS = ("fit-mac", "pathway", "sweep", "cost-curve", "power-law", "delay")


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser with one subcommand per study."""
    parser = argparse.ArgumentParser(
        prog="decarbpath",
        description="Minimum-expenditure decarbonization pathways under cumulative emissions goals",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    for command in COMMANDS:
        sub = subparsers.add_parser(command)
        sub.add_argument("--config", type=Path, help="Scenario document (defaults apply when omitted)")
        sub.add_argument("--out", type=Path, help="Output directory for this run")
        sub.add_argument("--format", choices=["csv"], default="csv", help="Output format")
        sub.add_argument("--workers", type=int, default=config.SWEEP_WORKERS,
                         help="Worker threads for independent cells")
        if command == "fit-mac":
            sub.add_argument("--data", type=Path, required=True,
                             help="Two-column file: reduction (GtCO2/yr), cost")
            sub.add_argument("--reference-emissions", type=float,
                             help="Reference emissions, GtCO2/yr (default 1.6 * m0)")

    return parser


def configure_logging(level: str = config.LOG_LEVEL):
    """Send log records to stderr at the configured level."""
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _load_scenario(path: Optional[Path]) -> ScenarioConfig:
    if path is None:
        return ScenarioConfig(grid=TimeGrid(step=config.DEFAULT_STEP))
    # bare names resolve against the bundled scenarios directory
    if not path.exists() and (config.SCENARIOS_DIR / path).exists():
        path = config.SCENARIOS_DIR / path
    return load_config(path, default_step=config.DEFAULT_STEP)


def run(argv: Optional[List[str]] = None) -> int:
    """
    Run one CLI command.

    Args:
        argv: Arguments without the program name (sys.argv[1:] if None)

    Returns:
        Process exit code
    """
    args = build_parser().parse_args(argv)
    configure_logging()
    logger.debug("[CLI] settings: %s", config.get_config_summary())

    try:
        scenario = _load_scenario(args.config)
        sweep = SweepService(
            ExecutionService(max_workers=args.workers),
            c_max=config.C_MAX,
            max_iter=config.SOLVER_MAX_ITER,
        )

        if args.command == "fit-mac":
            data = FileTools.read_mac_points(args.data)
            if not data["success"]:
                raise DecarbError(data["message"])
            reference = args.reference_emissions or 1.6 * scenario.economy.m0
            _, tables = sweep.mac_fit_tables(data["points"], reference, scenario.economy.mu0)
        elif args.command == "pathway":
            tables = sweep.pathway_tables(scenario)
        elif args.command == "sweep":
            tables = sweep.run_sweep(scenario)
        elif args.command == "cost-curve":
            tables = sweep.cost_curve_tables(scenario)
        elif args.command == "power-law":
            tables = sweep.power_law_tables(scenario)
        else:
            tables = sweep.delay_tables(scenario)

        if args.out is not None:
            workspace = WorkspaceManager(output_root=args.out.parent)
            run_path = workspace.init_run(args.out.name)
        else:
            workspace = WorkspaceManager(output_root=config.OUTPUT_ROOT)
            run_path = workspace.init_run(args.command)

        results = workspace.write_run(run_path, args.command, tables, scenario)
        failures = [r for r in results if not r["success"]]
        if failures:
            raise OSError(failures[0]["message"])

    except (DecarbError, OSError, ValueError) as e:
        print(json.dumps({"error": type(e).__name__, "message": str(e)}), file=sys.stderr)
        return 1

    flagged = sum(1 for table in tables if table.flagged)
    print(f"✅ {args.command}: wrote {len(tables)} table(s) to {run_path}")
    if flagged:
        print(f"⚠️  {flagged} table(s) flagged infeasible, see footers")
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
