"""
Scenario Analysis - Cost curves, cost fractions, power laws and delay

Derived studies built on the pathway and expenditure models: expenditure
versus cumulative emissions for constant-rate pathways, the discounted
cost fraction of quasi-stationary pathways and its power-law dependence on
the goal, the burden penalty of delaying mitigation, and the TCRE warming
readout of a cumulative goal.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from .economy import EconomyParams, TimeGrid, constant_rate_cumulative, ggdp
from .errors import DomainError, FitError
from .expenditure import (
    ExpenditureSeries,
    constant_k_closed_form,
    discounted_expenditure,
    discounted_total,
    growth_integral,
)
from .mac import MacCurve
from .pathway import (
    Pathway,
    constant_rate_pathway,
    quasi_stationary_pathway,
    solve_constant_rate,
    solve_multiplier,
)
from .quadrature import integrate
from .units import BILLION_PER_TRILLION, convert_pgc_gtco2

logger = logging.getLogger(__name__)

REFERENCE_GOAL_PGC = 1000.0
DEFAULT_TCRE = 1.65
DEFAULT_POWER_LAW_GOALS = (300.0, 450.0, 600.0, 750.0, 900.0)


@dataclass(frozen=True)
class CostCurvePoint:
    """
    One constant-rate pathway on the expenditure versus emissions curve.

    Attributes:
        k_const: Constant decarbonization rate, 1/year
        M: Cumulative emissions over the horizon, Gt CO2
        E: Discounted expenditure over the horizon, billion $
        m_T: Emission rate reached at the horizon, Gt CO2 / year
    """
    k_const: float
    M: float
    E: float
    m_T: float


@dataclass(frozen=True)
class PowerLawFit:
    """Fit of f(M0) = f1 (M0 / M01)**(-n)."""
    f1: float
    n: float
    M01: float
    r_squared: float
    goals_pgc: Tuple[float, ...] = ()
    fractions: Tuple[float, ...] = ()

    @property
    def halving_factor(self) -> float:
        """Cost multiplier for halving the goal, 2**n."""
        return 2.0 ** self.n


@dataclass(frozen=True)
class DelayComparison:
    """Quasi-stationary against constant-rate pathway for the same goal."""
    goal: float
    multiplier: float
    k_const: float
    quasi_stationary: Pathway
    constant_rate: Pathway
    qs_expenditure: ExpenditureSeries
    ck_expenditure: ExpenditureSeries

    @property
    def present_saving(self) -> float:
        """Burden saved now by the constant-rate pathway, b_qs(0) - b_ck(0)."""
        return float(self.qs_expenditure.burden[0] - self.ck_expenditure.burden[0])

    @property
    def terminal_gap(self) -> float:
        """Extra burden at the horizon from delaying, b_ck(T) - b_qs(T)."""
        return float(self.ck_expenditure.burden[-1] - self.qs_expenditure.burden[-1])


def cost_curve(
    k_values: Sequence[float],
    T: float,
    economy: EconomyParams,
    curve: MacCurve,
) -> List[CostCurvePoint]:
    """
    Expenditure against cumulative emissions for constant-rate pathways.

    Args:
        k_values: Non-negative rates in increasing order
        T: Horizon in years
        economy: Economy parameters
        curve: MAC parameters

    Returns:
        One CostCurvePoint per rate, in input order
    """
    ks = np.asarray(k_values, dtype=float)
    if np.any(ks < 0):
        raise DomainError("cost-curve rates must be non-negative")
    if np.any(np.diff(ks) < 0):
        raise DomainError("cost-curve rates must be sorted")
    m_scale = economy.m0 * np.exp((economy.r - economy.sigma) * T)
    return [
        CostCurvePoint(
            k_const=float(k),
            M=float(constant_rate_cumulative(k, T, economy)),
            E=constant_k_closed_form(float(k), T, economy, curve),
            m_T=float(m_scale * np.exp(-k * T)),
        )
        for k in ks
    ]


def long_horizon_approx(
    M: float,
    T: float,
    economy: EconomyParams,
    curve: MacCurve,
    keep_exponential: bool = True,
) -> float:
    """
    Expenditure as a function of cumulative emissions in the long-horizon regime.

    With exp(-chi T) negligible M ~ m0 / chi, so the rate is eliminated as
    k = m0 / M - sigma + r. By default that rate is substituted into the
    large-k closed form beta g0 (k + r/(nu-1)) F((nu-1) k + r - rho). With
    keep_exponential=False the growth factor F(r - rho) is used instead,
    beta g0 F(r - rho) (m0/M + r nu/(nu-1) - sigma).

    Returns:
        Discounted expenditure in billion $
    """
    if M <= 0:
        raise DomainError(f"cumulative emissions must be positive, got {M}")
    if abs(curve.nu - 1.0) < 1e-12:
        raise DomainError("the long-horizon relation needs nu != 1")
    scale = BILLION_PER_TRILLION * curve.beta * economy.g0
    b = economy.r - economy.rho
    if not keep_exponential:
        return scale * growth_integral(b, T) * (
            economy.m0 / M + economy.r * curve.nu / (curve.nu - 1.0) - economy.sigma
        )
    k_eff = economy.m0 / M - economy.sigma + economy.r
    return scale * (k_eff + economy.r / (curve.nu - 1.0)) * growth_integral(
        (curve.nu - 1.0) * k_eff + b, T
    )


def short_horizon_slope(T: float, curve: MacCurve) -> Tuple[float, float]:
    """
    Small-k slopes of the cost curve over a short horizon.

    Returns:
        (dE/dM, dE/dm_T): -2 alpha / T against cumulative emissions and
        -alpha against the emission rate reached at T, in billion $ per Gt CO2
        and billion $ per (Gt CO2 / year)
    """
    if T <= 0:
        raise DomainError(f"horizon must be positive, got {T}")
    return -2.0 * curve.alpha / T, -curve.alpha


def cost_fraction(pathway: Pathway, economy: EconomyParams, curve: MacCurve) -> float:
    """Discounted expenditure over discounted GGDP, a pure fraction."""
    t = pathway.grid.nodes
    denominator = BILLION_PER_TRILLION * integrate(
        np.exp(-economy.delta * t) * ggdp(t, economy), pathway.grid.step
    )
    return discounted_expenditure(pathway, economy, curve) / denominator


def power_law_regression(
    goals_pgc: Sequence[float],
    fractions: Sequence[float],
    M01: float = REFERENCE_GOAL_PGC,
) -> PowerLawFit:
    """
    OLS of ln f on -ln(M0 / M01).

    Raises:
        FitError: Fewer than two points, non-positive values or identical goals
    """
    goals = np.asarray(goals_pgc, dtype=float)
    f = np.asarray(fractions, dtype=float)
    if goals.shape != f.shape or len(goals) < 2:
        raise FitError("need at least two (goal, fraction) pairs of equal length")
    if np.any(goals <= 0) or np.any(f <= 0) or M01 <= 0:
        raise FitError("goals, fractions and the reference goal must be positive")
    x = -np.log(goals / M01)
    if np.ptp(x) == 0:
        raise FitError("all goals are identical")
    result = stats.linregress(x, np.log(f))
    return PowerLawFit(
        f1=float(np.exp(result.intercept)),
        n=float(result.slope),
        M01=M01,
        r_squared=float(result.rvalue ** 2),
        goals_pgc=tuple(float(g) for g in goals),
        fractions=tuple(float(v) for v in f),
    )


def fit_power_law(
    goals_pgc: Sequence[float],
    T: float,
    economy: EconomyParams,
    curve: MacCurve,
    delta: Optional[float] = None,
    step: float = 0.05,
) -> PowerLawFit:
    """
    Cost-fraction power law over quasi-stationary pathways.

    Args:
        goals_pgc: At least three goals, each at most 1000 PgC
        T: Horizon in years
        economy: Economy parameters
        curve: MAC parameters
        delta: Discount rate overriding economy.delta
        step: Grid spacing in years

    Returns:
        PowerLawFit with M01 = 1000 PgC

    Raises:
        DomainError: Too few goals or goals above 1000 PgC
        InfeasibleGoalError: A goal cannot be met
    """
    if len(goals_pgc) < 3:
        raise DomainError(f"need at least 3 goals, got {len(goals_pgc)}")
    if any(g <= 0 or g > REFERENCE_GOAL_PGC for g in goals_pgc):
        raise DomainError("power-law goals must lie in (0, 1000] PgC")
    if delta is not None:
        economy = economy.model_copy(update={"delta": delta})
    grid = TimeGrid(horizon=T, step=step)

    fractions = []
    for goal in goals_pgc:
        solution = solve_multiplier(convert_pgc_gtco2(goal), grid, economy)
        pathway = quasi_stationary_pathway(solution.c, grid, economy)
        fractions.append(cost_fraction(pathway, economy, curve))
        logger.debug("[Analysis] goal %g PgC -> cost fraction %.6g", goal, fractions[-1])
    return power_law_regression(goals_pgc, fractions)


def delay_comparison(
    M0_goal: float,
    grid: TimeGrid,
    economy: EconomyParams,
    curve: MacCurve,
) -> DelayComparison:
    """
    Compare early (quasi-stationary) and steady (constant-rate) mitigation.

    Args:
        M0_goal: Cumulative goal in Gt CO2, feasible for both pathway kinds
        grid: Time grid
        economy: Economy parameters
        curve: MAC parameters

    Returns:
        DelayComparison holding both pathways and their expenditure series
    """
    solution = solve_multiplier(M0_goal, grid, economy)
    qs = quasi_stationary_pathway(solution.c, grid, economy)
    k_const = solve_constant_rate(M0_goal, grid, economy)
    ck = constant_rate_pathway(k_const, grid, economy)
    return DelayComparison(
        goal=M0_goal,
        multiplier=solution.c,
        k_const=k_const,
        quasi_stationary=qs,
        constant_rate=ck,
        qs_expenditure=discounted_total(qs, economy, curve),
        ck_expenditure=discounted_total(ck, economy, curve),
    )


def warming_from_goal(M0: float, tcre: float = DEFAULT_TCRE, baseline_warming: float = 1.0) -> float:
    """
    Warming implied by a cumulative carbon goal.

    Example:
        >>> round(warming_from_goal(300.0), 3)
        1.495
    """
    if M0 < 0:
        raise DomainError(f"cumulative carbon must be non-negative, got {M0}")
    if tcre <= 0:
        raise DomainError(f"TCRE must be positive, got {tcre}")
    return baseline_warming + tcre * M0 / REFERENCE_GOAL_PGC
