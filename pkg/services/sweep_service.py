"""
Sweep Service - Scenario sweeps and per-command table builders

Orchestrates the scenario studies:
1. Expanding a config into independent cells (goal x growth rate x kind)
2. Evaluating cells through the ExecutionService
3. Assembling result tables in a fixed order with provenance footers

Infeasible or failed cells become flagged tables instead of aborting the
sweep.
"""

import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from model.analysis import (
    REFERENCE_GOAL_PGC,
    cost_curve,
    delay_comparison,
    fit_power_law,
    warming_from_goal,
)
from model.economy import EconomyParams, cumulative_emissions
from model.expenditure import discounted_total
from model.mac import MacDataPoint, MacFit, fit_mac, mac_reduction_curve
from model.pathway import (
    DEFAULT_C_MAX,
    DEFAULT_MAX_ITER,
    Pathway,
    constant_rate_pathway,
    quasi_stationary_pathway,
    solve_constant_rate,
    solve_multiplier,
)
from model.units import convert_pgc_gtco2

from .execution_service import ExecutionService
from .result_table import ResultTable
from .scenario_config import OutputKind, PathwayChoice, ScenarioConfig, config_hash

logger = logging.getLogger(__name__)

PATHWAY_COLUMNS = (("t", "yr"), ("K", "1"), ("k", "1/yr"), ("m", "GtCO2/yr"), ("M_cum", "GtCO2"))
EXPENDITURE_COLUMNS = (
    ("t", "yr"), ("p_mu", "billion$/yr"), ("p_g", "billion$/yr"), ("E", "billion$"),
    ("carbon_price", "$/tCO2"), ("expansion_ratio", "1"),
)
BURDEN_COLUMNS = (("t", "yr"), ("burden", "1"), ("exponent", "1"))
COST_CURVE_COLUMNS = (("k", "1/yr"), ("M", "GtCO2"), ("E", "billion$"), ("m_T", "GtCO2/yr"), ("chi", "1/yr"))
POWER_LAW_COLUMNS = (("goal", "PgC"), ("goal", "GtCO2"), ("f", "1"), ("f_fit", "1"))
DELAY_COLUMNS = (
    ("t", "yr"), ("burden_qs", "1"), ("burden_ck", "1"), ("k_qs", "1/yr"), ("k_ck", "1/yr"),
)
MAC_POINT_COLUMNS = (
    ("reduction", "GtCO2/yr"), ("cost", "billion$/(GtCO2/yr)"), ("intensity_ratio", "1"),
    ("cost_fit", "billion$/(GtCO2/yr)"), ("log_residual", "1"),
)
MAC_CURVE_COLUMNS = (("reduction_fraction", "1"), ("mac", "billion$/(GtCO2/yr)"))

PATHWAY_OUTPUTS = (OutputKind.PATHWAY, OutputKind.EXPENDITURE, OutputKind.BURDEN)


def _label(value: float) -> str:
    return format(value, "g")


class SweepService:
    """
    Builds result tables for every DecarbPath command.

    Attributes:
        execution: ExecutionService evaluating independent cells
        c_max: Upper bound for the multiplier search
        max_iter: Root-finder iteration cap
    """

    def __init__(
        self,
        execution_service: Optional[ExecutionService] = None,
        c_max: float = DEFAULT_C_MAX,
        max_iter: int = DEFAULT_MAX_ITER,
    ):
        """
        Initialize the sweep service.

        Args:
            execution_service: Cell runner; a single-threaded one by default
            c_max: Largest multiplier c tried by the solver
            max_iter: Iteration cap for the solver
        """
        self.execution = execution_service or ExecutionService()
        self.c_max = c_max
        self.max_iter = max_iter

    # =========================================================================
    # Pathway Cells
    # =========================================================================

    def _solve_pathway(
        self, kind: PathwayChoice, goal_gt: float, config: ScenarioConfig, economy: EconomyParams,
    ) -> Tuple[Pathway, Dict[str, float]]:
        grid = config.grid
        if kind == PathwayChoice.QUASI_STATIONARY:
            solution = solve_multiplier(goal_gt, grid, economy, c_max=self.c_max, max_iter=self.max_iter)
            pathway = quasi_stationary_pathway(solution.c, grid, economy)
            return pathway, {"multiplier_c": solution.c, "residual_gtco2": solution.residual}
        k_const = solve_constant_rate(goal_gt, grid, economy)
        pathway = constant_rate_pathway(k_const, grid, economy)
        residual = cumulative_emissions(pathway, grid.horizon) - goal_gt
        return pathway, {"k_const": k_const, "residual_gtco2": residual}

    def _pathway_kinds(self, config: ScenarioConfig) -> List[PathwayChoice]:
        if config.pathway_kind == PathwayChoice.BOTH:
            return [PathwayChoice.QUASI_STATIONARY, PathwayChoice.CONSTANT_RATE]
        return [config.pathway_kind]

    def _cell_tables(
        self,
        result: Dict,
        config: ScenarioConfig,
        economy: EconomyParams,
        base_footer: List[str],
        suffix: str,
    ) -> List[ResultTable]:
        requested = [kind for kind in PATHWAY_OUTPUTS if kind in config.outputs]
        specs = {
            OutputKind.PATHWAY: PATHWAY_COLUMNS,
            OutputKind.EXPENDITURE: EXPENDITURE_COLUMNS,
            OutputKind.BURDEN: BURDEN_COLUMNS,
        }
        tables = {
            kind: ResultTable.build(f"{kind.value}_{suffix}", kind.value, specs[kind], base_footer)
            for kind in requested
        }

        if not result["success"]:
            for table in tables.values():
                table.add_flagged_row()
                table.add_footer("error", f"{result['error_type']}: {result['error']}")
            return list(tables.values())

        pathway, info = result["value"]
        footer = [f"{key}: {value!r}" for key, value in info.items()]
        footer.append(f"heuristic_sigma: {pathway.heuristic_sigma}")
        t = pathway.t

        if OutputKind.PATHWAY in tables:
            tables[OutputKind.PATHWAY].add_columns(t, pathway.K, pathway.k, pathway.m, pathway.M_cum)
        if OutputKind.EXPENDITURE in tables or OutputKind.BURDEN in tables:
            series = discounted_total(pathway, economy, config.curve)
            if OutputKind.EXPENDITURE in tables:
                tables[OutputKind.EXPENDITURE].add_columns(
                    t, series.p_mu, series.p_g, series.discounted_cumulative,
                    series.carbon_price, series.expansion_ratio,
                )
            if OutputKind.BURDEN in tables:
                tables[OutputKind.BURDEN].add_columns(t, series.burden, series.exponent)

        for table in tables.values():
            table.footer.extend(footer)
        return list(tables.values())

    # =========================================================================
    # Sweep
    # =========================================================================

    def run_sweep(self, config: ScenarioConfig) -> List[ResultTable]:
        """
        Evaluate every requested output of a scenario.

        Pathway, expenditure and burden tables come goal-major, then growth
        rate, then pathway kind; they are followed by cost-curve and
        power-law tables per (growth rate, discount rate, MAC exponent)
        cell and delay tables per goal and rate.

        Args:
            config: Validated scenario

        Returns:
            Result tables in deterministic order
        """
        digest = config_hash(config)
        jobs: List[Tuple[Callable[[], object], Callable[[Dict], List[ResultTable]]]] = []

        if any(kind in config.outputs for kind in PATHWAY_OUTPUTS):
            for goal in config.goals_pgc:
                goal_gt = convert_pgc_gtco2(goal)
                for r in config.growth_rates:
                    economy = config.economy_for(r)
                    for kind in self._pathway_kinds(config):
                        footer = [
                            f"config_hash: {digest}",
                            f"goal_pgc: {goal!r}",
                            f"goal_gtco2: {goal_gt!r}",
                            f"growth_rate: {r!r}",
                            f"pathway_kind: {kind.value}",
                            f"warming_K: {warming_from_goal(goal, config.tcre, config.baseline_warming)!r}",
                        ]
                        suffix = f"goal{_label(goal)}_r{_label(r)}_{kind.value}"
                        jobs.append((
                            lambda kind=kind, goal_gt=goal_gt, economy=economy:
                                self._solve_pathway(kind, goal_gt, config, economy),
                            lambda result, economy=economy, footer=footer, suffix=suffix:
                                self._cell_tables(result, config, economy, footer, suffix),
                        ))

        if OutputKind.COST_CURVE in config.outputs:
            for r in config.growth_rates:
                jobs.append(self._cost_curve_job(config, r, digest))

        if OutputKind.POWER_LAW in config.outputs:
            goals = [g for g in config.goals_pgc if g <= REFERENCE_GOAL_PGC]
            for r, delta, nu in config.parameter_grid():
                jobs.append(self._power_law_job(config, goals, r, delta, nu, digest))

        if OutputKind.DELAY in config.outputs:
            for goal in config.goals_pgc:
                for r in config.growth_rates:
                    jobs.append(self._delay_job(config, goal, r, digest))

        logger.info("[Sweep] evaluating %d cells with %d worker(s)", len(jobs), self.execution.max_workers)
        results = self.execution.run_cells([compute for compute, _ in jobs])

        tables: List[ResultTable] = []
        for (_, assemble), result in zip(jobs, results):
            tables.extend(assemble(result))
        failed = sum(1 for result in results if not result["success"])
        if failed:
            logger.warning("[Sweep] %d of %d cells failed and were flagged", failed, len(results))
        return tables

    def pathway_tables(self, config: ScenarioConfig) -> List[ResultTable]:
        """Pathway, expenditure and burden tables for every goal and rate."""
        return self.run_sweep(config.model_copy(update={"outputs": PATHWAY_OUTPUTS}))

    def cost_curve_tables(self, config: ScenarioConfig) -> List[ResultTable]:
        return self.run_sweep(config.model_copy(update={"outputs": (OutputKind.COST_CURVE,)}))

    def power_law_tables(self, config: ScenarioConfig) -> List[ResultTable]:
        return self.run_sweep(config.model_copy(update={"outputs": (OutputKind.POWER_LAW,)}))

    def delay_tables(self, config: ScenarioConfig) -> List[ResultTable]:
        return self.run_sweep(config.model_copy(update={"outputs": (OutputKind.DELAY,)}))

    # =========================================================================
    # Analysis Jobs
    # =========================================================================

    def _failed(self, table: ResultTable, result: Dict) -> List[ResultTable]:
        table.add_flagged_row()
        table.add_footer("error", f"{result['error_type']}: {result['error']}")
        return [table]

    def _cost_curve_job(self, config: ScenarioConfig, r: float, digest: str):
        economy = config.economy_for(r)
        T = config.grid.horizon

        def compute():
            return cost_curve(config.k_values, T, economy, config.curve)

        def assemble(result: Dict) -> List[ResultTable]:
            table = ResultTable.build(
                f"cost_curve_r{_label(r)}", OutputKind.COST_CURVE.value, COST_CURVE_COLUMNS,
                [f"config_hash: {digest}", f"growth_rate: {r!r}", f"horizon_yr: {T!r}"],
            )
            if not result["success"]:
                return self._failed(table, result)
            for point in result["value"]:
                table.add_row((point.k_const, point.M, point.E, point.m_T,
                               point.k_const + economy.sigma - economy.r))
            return [table]

        return compute, assemble

    def _power_law_job(self, config: ScenarioConfig, goals: Sequence[float], r: float,
                       delta: float, nu: float, digest: str):
        economy = config.economy_for(r, delta)
        curve = config.curve_for(nu)

        def compute():
            return fit_power_law(goals, config.grid.horizon, economy, curve, step=config.grid.step)

        def assemble(result: Dict) -> List[ResultTable]:
            table = ResultTable.build(
                f"power_law_r{_label(r)}_d{_label(delta)}_nu{_label(nu)}", OutputKind.POWER_LAW.value,
                POWER_LAW_COLUMNS,
                [f"config_hash: {digest}", f"growth_rate: {r!r}", f"delta: {delta!r}", f"mac_nu: {nu!r}"],
            )
            if not result["success"]:
                return self._failed(table, result)
            fit = result["value"]
            for goal, f in zip(fit.goals_pgc, fit.fractions):
                table.add_row((goal, convert_pgc_gtco2(goal), f, fit.f1 * (goal / fit.M01) ** (-fit.n)))
            table.add_footer("f1", repr(fit.f1))
            table.add_footer("n", repr(fit.n))
            table.add_footer("M01_pgc", repr(fit.M01))
            table.add_footer("r_squared", repr(fit.r_squared))
            table.add_footer("halving_factor", repr(fit.halving_factor))
            return [table]

        return compute, assemble

    def _delay_job(self, config: ScenarioConfig, goal: float, r: float, digest: str):
        economy = config.economy_for(r)
        goal_gt = convert_pgc_gtco2(goal)

        def compute():
            return delay_comparison(goal_gt, config.grid, economy, config.curve)

        def assemble(result: Dict) -> List[ResultTable]:
            table = ResultTable.build(
                f"delay_goal{_label(goal)}_r{_label(r)}", OutputKind.DELAY.value, DELAY_COLUMNS,
                [f"config_hash: {digest}", f"goal_pgc: {goal!r}", f"growth_rate: {r!r}"],
            )
            if not result["success"]:
                return self._failed(table, result)
            comparison = result["value"]
            qs, ck = comparison.quasi_stationary, comparison.constant_rate
            table.add_columns(
                qs.t, comparison.qs_expenditure.burden, comparison.ck_expenditure.burden, qs.k, ck.k,
            )
            table.add_footer("multiplier_c", repr(comparison.multiplier))
            table.add_footer("k_const", repr(comparison.k_const))
            table.add_footer("present_saving", repr(comparison.present_saving))
            table.add_footer("terminal_gap", repr(comparison.terminal_gap))
            return [table]

        return compute, assemble

    # =========================================================================
    # MAC Fit
    # =========================================================================

    def mac_fit_tables(
        self,
        points: Sequence[MacDataPoint],
        reference_emissions: float,
        mu0: float,
        curve_points: int = 91,
    ) -> Tuple[MacFit, List[ResultTable]]:
        """
        Fit a MAC curve and tabulate the data, fit and residuals.

        Args:
            points: Observed (reduction, cost) pairs
            reference_emissions: Reference emissions, Gt CO2/yr
            mu0: Reference intensity attached to the fitted curve
            curve_points: Samples of the fitted curve on [0, 0.9]

        Returns:
            (fit, [points table, curve table])
        """
        fit = fit_mac(points, reference_emissions, mu0=mu0)
        footer = [
            f"reference_emissions_gtco2_per_yr: {reference_emissions!r}",
            f"alpha: {fit.curve.alpha!r}",
            f"alpha_stderr: {fit.alpha_stderr!r}",
            f"nu: {fit.curve.nu!r}",
            f"nu_stderr: {fit.nu_stderr!r}",
            f"residual_std_error: {fit.residual_std_error!r}",
            f"r_squared: {fit.r_squared!r}",
        ]

        point_table = ResultTable.build("mac_points", "mac_fit", MAC_POINT_COLUMNS, footer)
        fitted = mac_reduction_curve(1.0 - fit.intensity_ratios, fit.curve)
        point_table.add_columns(
            [p.reduction for p in points], [p.marginal_cost for p in points],
            fit.intensity_ratios, fitted, fit.log_residuals,
        )

        fractions = np.linspace(0.0, 0.9, curve_points)
        curve_table = ResultTable.build("mac_curve", "mac_fit", MAC_CURVE_COLUMNS, footer)
        curve_table.add_columns(fractions, mac_reduction_curve(fractions, fit.curve))
        return fit, [point_table, curve_table]
