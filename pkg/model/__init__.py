"""
DecarbPath Model Package

Numerical core: economy, MAC curve, expenditures, pathways and analyses.
"""

from .errors import (
    ConfigError,
    DecarbError,
    DomainError,
    FitError,
    GridError,
    InfeasibleGoalError,
    SolverError,
)
from .units import BILLION_PER_TRILLION, GTCO2_PER_PGC, convert_pgc_gtco2
from .economy import (
    EconomyParams,
    TimeGrid,
    bau_emissions,
    constant_rate_cumulative,
    cumulative_emissions,
    emissions,
    exogenous_rate,
    ggdp,
    integrated_ggdp,
)
from .mac import MacCurve, MacDataPoint, MacFit, carbon_price, fit_mac, mac_reduction_curve, mac_value
from .expenditure import (
    ExpenditureSeries,
    annual_expansion_expenditure,
    annual_intensity_expenditure,
    burden,
    burden_increasing_condition,
    constant_k_closed_form,
    constant_k_components,
    discounted_total,
)
from .pathway import (
    MultiplierSolution,
    Pathway,
    PathwayKind,
    appendix2_expansion,
    constant_rate_pathway,
    custom_pathway,
    decreasing_threshold,
    integrate_el_ode,
    quasi_stationary_pathway,
    solve_constant_rate,
    solve_multiplier,
)
from .analysis import (
    CostCurvePoint,
    DelayComparison,
    PowerLawFit,
    cost_curve,
    cost_fraction,
    delay_comparison,
    fit_power_law,
    long_horizon_approx,
    power_law_regression,
    short_horizon_slope,
    warming_from_goal,
)

__all__ = [
    "ConfigError", "DecarbError", "DomainError", "FitError", "GridError",
    "InfeasibleGoalError", "SolverError",
    "BILLION_PER_TRILLION", "GTCO2_PER_PGC", "convert_pgc_gtco2",
    "EconomyParams", "TimeGrid", "bau_emissions", "constant_rate_cumulative",
    "cumulative_emissions", "emissions", "exogenous_rate", "ggdp", "integrated_ggdp",
    "MacCurve", "MacDataPoint", "MacFit", "carbon_price", "fit_mac",
    "mac_reduction_curve", "mac_value",
    "ExpenditureSeries", "annual_expansion_expenditure", "annual_intensity_expenditure",
    "burden", "burden_increasing_condition", "constant_k_closed_form",
    "constant_k_components", "discounted_total",
    "MultiplierSolution", "Pathway", "PathwayKind", "appendix2_expansion",
    "constant_rate_pathway", "custom_pathway", "decreasing_threshold",
    "integrate_el_ode", "quasi_stationary_pathway", "solve_constant_rate",
    "solve_multiplier",
    "CostCurvePoint", "DelayComparison", "PowerLawFit", "cost_curve", "cost_fraction",
    "delay_comparison", "fit_power_law", "long_horizon_approx",
    "power_law_regression", "short_horizon_slope", "warming_from_goal",
]
