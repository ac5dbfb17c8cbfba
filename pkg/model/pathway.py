"""
Decarbonization Pathways - Quasi-stationary, constant-rate and custom

The minimum-expenditure (quasi-stationary) pathway under a cumulative
emissions goal depends on the Lagrange multipliers only through
c = lambda1 * mu0 / lambda2:

    K(t) = ln(1 + c G(t)),    k(t) = c g(t) / (1 + c G(t))

with G the integrated GGDP. solve_multiplier finds c for a goal; the
regularized Euler-Lagrange ODE and its small-sigma expansion are provided
as diagnostics.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np
from scipy import optimize

from .economy import (
    EconomyParams,
    TimeGrid,
    constant_rate_cumulative,
    discounted_ggdp_integral,
    emissions,
    integrated_ggdp,
)
from .errors import DomainError, GridError, InfeasibleGoalError, SolverError
from .mac import MacCurve
from .quadrature import integrate, running_integral

logger = logging.getLogger(__name__)

C_MIN = 1e-12
DEFAULT_C_MAX = 1e9
DEFAULT_MAX_ITER = 200
SIGMA_WARN_LEVEL = 0.05


class PathwayKind(str, Enum):
    """How a pathway was constructed."""
    QUASI_STATIONARY = "quasi_stationary"
    CONSTANT_RATE = "constant_rate"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Pathway:
    """
    Time-gridded decarbonization trajectory.

    Attributes:
        grid: Time grid shared by every series
        K: Integrated decarbonization rate, K[0] = 0
        k: Decarbonization rate, 1/year
        m: Emissions, Gt CO2 / year
        M_cum: Running cumulative emissions, Gt CO2
        kind: Construction method
        parameter: c for quasi-stationary pathways, k for constant-rate ones
        heuristic_sigma: Quasi-stationary form used where it is not stationary
            (sigma > 0 or delta > 0)
    """
    grid: TimeGrid
    K: np.ndarray
    k: np.ndarray
    m: np.ndarray
    M_cum: np.ndarray
    kind: PathwayKind
    parameter: float = 0.0
    heuristic_sigma: bool = False

    @property
    def t(self) -> np.ndarray:
        return self.grid.nodes

    @property
    def cumulative(self) -> float:
        """Cumulative emissions over the full horizon, Gt CO2."""
        return float(self.M_cum[-1])

    def integration_residual(self) -> float:
        """Largest gap between K and the running Simpson integral of k."""
        return float(np.max(np.abs(self.K - running_integral(self.k, self.grid.step))))


@dataclass(frozen=True)
class MultiplierSolution:
    """Solved multiplier combination c = lambda1 mu0 / lambda2."""
    c: float
    lambda_ratio: float
    residual: float
    iterations: int
    bau_cumulative: float


@dataclass(frozen=True)
class ElOdeSolution:
    """RK4 solution x(t) = exp(K(t)) of the regularized Euler-Lagrange equation."""
    t: np.ndarray
    x: np.ndarray
    stopped: bool
    stop_time: Optional[float] = None

    @property
    def K(self) -> np.ndarray:
        return np.log(self.x)


@dataclass(frozen=True)
class PerturbationSeries:
    """Small-sigma expansion x ~ x0 + sigma x1 and its linearized form."""
    t: np.ndarray
    x0: np.ndarray
    x1: np.ndarray
    x_approx: np.ndarray
    x_simplified: np.ndarray


def _build(grid: TimeGrid, K: np.ndarray, k: np.ndarray, economy: EconomyParams,
           kind: PathwayKind, parameter: float, heuristic: bool = False) -> Pathway:
    t = grid.nodes
    m = emissions(t, K, economy)
    return Pathway(
        grid=grid,
        K=K,
        k=k,
        m=m,
        M_cum=running_integral(m, grid.step),
        kind=kind,
        parameter=parameter,
        heuristic_sigma=heuristic,
    )


def quasi_stationary_pathway(c: float, grid: TimeGrid, economy: EconomyParams) -> Pathway:
    """
    Quasi-stationary pathway for multiplier combination c.

    Args:
        c: lambda1 mu0 / lambda2, per trillion $; must be > 0
        grid: Time grid
        economy: Economy parameters; sigma enters the emissions model

    Returns:
        Pathway of kind quasi_stationary
    """
    if not c > 0:
        raise DomainError(f"multiplier c must be positive, got {c}")
    t = grid.nodes
    G = integrated_ggdp(t, economy)
    g = economy.g0 * np.exp(economy.r * t)
    heuristic = economy.sigma > 0 or economy.delta > 0
    if heuristic:
        logger.debug(
            "[Pathway] quasi-stationary form used heuristically (sigma=%g, delta=%g)",
            economy.sigma, economy.delta,
        )
    return _build(
        grid,
        K=np.log1p(c * G),
        k=c * g / (1.0 + c * G),
        economy=economy,
        kind=PathwayKind.QUASI_STATIONARY,
        parameter=c,
        heuristic=heuristic,
    )


def constant_rate_pathway(k_const: float, grid: TimeGrid, economy: EconomyParams) -> Pathway:
    """Pathway with K(t) = k_const * t."""
    if k_const < 0:
        raise DomainError(f"decarbonization rate must be non-negative, got {k_const}")
    t = grid.nodes
    return _build(
        grid,
        K=k_const * t,
        k=np.full(t.shape, float(k_const)),
        economy=economy,
        kind=PathwayKind.CONSTANT_RATE,
        parameter=float(k_const),
    )


def custom_pathway(k_values: Sequence[float], grid: TimeGrid, economy: EconomyParams) -> Pathway:
    """
    Pathway from an arbitrary rate series sampled on the grid.

    K is the running Simpson integral of k.
    """
    k = np.asarray(k_values, dtype=float)
    if k.shape != (grid.n_intervals + 1,):
        raise GridError(f"expected {grid.n_intervals + 1} rate samples, got {k.shape}")
    if not np.all(np.isfinite(k)) or np.any(k < 0):
        raise DomainError("decarbonization rates must be finite and non-negative")
    return _build(grid, running_integral(k, grid.step), k, economy, PathwayKind.CUSTOM, 0.0)


def _goal_tolerance(goal: float) -> float:
    return max(1e-9 * goal, 1e-6)


def solve_multiplier(
    M0_goal: float,
    grid: TimeGrid,
    economy: EconomyParams,
    c_max: float = DEFAULT_C_MAX,
    max_iter: int = DEFAULT_MAX_ITER,
) -> MultiplierSolution:
    """
    Find c such that the quasi-stationary pathway meets a cumulative goal.

    M(c) is checked to be strictly decreasing on a log-spaced grid, the
    bracketing interval is read off that grid, and Brent's method refines c
    in log space.

    Args:
        M0_goal: Cumulative emissions goal over the grid horizon, Gt CO2
        grid: Time grid
        economy: Economy parameters
        c_max: Largest admissible c, per trillion $
        max_iter: Iteration cap for the root finder

    Returns:
        MultiplierSolution with c and the constraint residual

    Raises:
        InfeasibleGoalError: Goal at or above BAU, or unreachable with c <= c_max
        SolverError: Non-monotone map or no convergence
    """
    if not M0_goal > 0:
        raise DomainError(f"emissions goal must be positive, got {M0_goal}")
    t = grid.nodes
    G = integrated_ggdp(t, economy)

    def cumulative(c: float) -> float:
        return integrate(emissions(t, np.log1p(c * G), economy), grid.step)

    bau = integrate(emissions(t, 0.0, economy), grid.step)
    if M0_goal >= bau:
        raise InfeasibleGoalError(
            f"goal {M0_goal:.6g} Gt CO2 is not below business-as-usual {bau:.6g} Gt CO2",
            goal=M0_goal, bau=bau,
        )

    decades = max(int(math.ceil(math.log10(c_max / C_MIN))), 1)
    c_grid = np.geomspace(C_MIN, c_max, decades + 1)
    m_grid = np.array([cumulative(c) for c in c_grid])
    if not np.all(np.diff(m_grid) < 0):
        raise SolverError("cumulative emissions are not strictly decreasing in c")
    if m_grid[-1] > M0_goal:
        raise InfeasibleGoalError(
            f"goal {M0_goal:.6g} Gt CO2 needs c above c_max={c_max:g}",
            goal=M0_goal, bau=bau,
        )

    if m_grid[0] <= M0_goal:
        # goal sits just below BAU: widen the bracket downwards
        hi = C_MIN
        lo = C_MIN / 1e3
        while cumulative(lo) < M0_goal:
            hi, lo = lo, lo / 1e3
            if lo < 1e-300:
                raise SolverError("could not bracket a goal this close to BAU")
    else:
        i = int(np.argmax(m_grid <= M0_goal))
        lo, hi = float(c_grid[i - 1]), float(c_grid[i])

    def objective(log_c: float) -> float:
        return cumulative(math.exp(log_c)) - M0_goal

    f_lo = objective(math.log(lo))
    if f_lo == 0.0:
        c, iterations = lo, 0
    else:
        log_c, info = optimize.brentq(
            objective, math.log(lo), math.log(hi),
            xtol=1e-14, maxiter=max_iter, full_output=True, disp=False,
        )
        if not info.converged:
            raise SolverError(f"root finder did not converge: {info.flag}")
        c, iterations = math.exp(log_c), info.iterations

    residual = cumulative(c) - M0_goal
    if abs(residual) > _goal_tolerance(M0_goal):
        raise SolverError(f"constraint residual {residual:.3g} Gt CO2 exceeds tolerance")

    logger.debug("[Pathway] solved c=%.10g in %d iterations, residual %.3g", c, iterations, residual)
    return MultiplierSolution(
        c=c,
        lambda_ratio=c / economy.mu0,
        residual=residual,
        iterations=iterations,
        bau_cumulative=bau,
    )


def solve_constant_rate(M0_goal: float, grid: TimeGrid, economy: EconomyParams) -> float:
    """
    Constant decarbonization rate meeting a cumulative goal.

    Solves m0 (1 - exp(-chi T)) / chi = M0_goal for k, chi = k + sigma - r.
    A goal equal to BAU (within tolerance) gives k = 0.

    Raises:
        InfeasibleGoalError: Goal above business-as-usual
    """
    if not M0_goal > 0:
        raise DomainError(f"emissions goal must be positive, got {M0_goal}")
    T = grid.horizon

    def objective(k: float) -> float:
        return constant_rate_cumulative(k, T, economy) - M0_goal

    bau = constant_rate_cumulative(0.0, T, economy)
    if abs(bau - M0_goal) <= 1e-6:
        return 0.0
    if M0_goal > bau:
        raise InfeasibleGoalError(
            f"goal {M0_goal:.6g} Gt CO2 is above business-as-usual {bau:.6g} Gt CO2",
            goal=M0_goal, bau=bau,
        )

    k_hi = 1.0
    while objective(k_hi) > 0:
        k_hi *= 2.0
        if k_hi > 1e9:
            raise InfeasibleGoalError(f"goal {M0_goal:.6g} Gt CO2 is unreachable", goal=M0_goal, bau=bau)

    k = optimize.brentq(objective, 0.0, k_hi, xtol=1e-15, maxiter=DEFAULT_MAX_ITER)
    residual = objective(k)
    if abs(residual) > 1e-6:
        raise SolverError(f"constant-rate residual {residual:.3g} Gt CO2 exceeds tolerance")
    return float(k)


def integrate_el_ode(
    lambda1: float,
    lambda2: float,
    gamma: float,
    economy: EconomyParams,
    curve: MacCurve,
    grid: TimeGrid,
) -> ElOdeSolution:
    """
    Classical RK4 integration of the regularized Euler-Lagrange equation.

        x' = (lambda1 mu0 / lambda2) exp(-sigma t) g
             - ((delta + sigma) beta / lambda2) exp(-(delta + sigma) t) g x**nu

    with x = exp(K) and x(0) = 1. The exp(-gamma t) terms of the
    regularization are dropped, so gamma only has to be positive.
    Integration stops at the first non-positive x.
    """
    if lambda2 <= 0:
        raise DomainError(f"lambda2 must be positive, got {lambda2}")
    if gamma <= 0:
        raise DomainError(f"gamma must be positive, got {gamma}")

    a = lambda1 * economy.mu0 / lambda2
    rho = economy.delta + economy.sigma
    b = rho * curve.beta / lambda2
    g0, r, sigma, nu = economy.g0, economy.r, economy.sigma, curve.nu

    def rhs(s: float, x: float) -> float:
        if x <= 0:
            return math.nan
        g = g0 * math.exp(r * s)
        try:
            damping = x ** nu
        except OverflowError:
            return -math.inf
        return a * math.exp(-sigma * s) * g - b * math.exp(-rho * s) * g * damping

    t = grid.nodes
    h = grid.step
    x = np.empty_like(t)
    x[0] = 1.0
    for i in range(len(t) - 1):
        s, xi = t[i], x[i]
        k1 = rhs(s, xi)
        k2 = rhs(s + 0.5 * h, xi + 0.5 * h * k1)
        k3 = rhs(s + 0.5 * h, xi + 0.5 * h * k2)
        k4 = rhs(s + h, xi + h * k3)
        x_next = xi + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
        if not math.isfinite(x_next) or x_next <= 0:
            logger.warning("[Pathway] x(t) left the positive region at t=%.6g", t[i + 1])
            return ElOdeSolution(t=t[: i + 1], x=x[: i + 1], stopped=True, stop_time=float(t[i + 1]))
        x[i + 1] = x_next
    return ElOdeSolution(t=t, x=x, stopped=False)


def decreasing_threshold(economy: EconomyParams, curve: MacCurve) -> float:
    """lambda1 below sigma beta / mu0 makes x(t) start off decreasing."""
    return economy.sigma * curve.beta / economy.mu0


def appendix2_expansion(
    lambda1: float,
    lambda2: float,
    economy: EconomyParams,
    curve: MacCurve,
    grid: TimeGrid,
) -> PerturbationSeries:
    """
    First-order expansion in sigma of the Euler-Lagrange solution.

    x0 = 1 + (lambda1 mu0 / lambda2) N(t), N(t) = integral of exp(-sigma s) g(s)
    x1 = -(beta / ((nu+1) lambda1 mu0)) (x0**(nu+1) - 1), or -(beta/lambda2) N at lambda1 = 0
    x_simplified = 1 + (mu0 / lambda2) (lambda1 - sigma beta / mu0) N

    Raises:
        DomainError: lambda2 <= 0 or delta > 0 (the expansion assumes no discounting)
    """
    if lambda2 <= 0:
        raise DomainError(f"lambda2 must be positive, got {lambda2}")
    if economy.delta > 0:
        raise DomainError("the small-sigma expansion assumes delta = 0")
    if economy.sigma > SIGMA_WARN_LEVEL:
        logger.warning("[Pathway] sigma=%.3g is large for a first-order expansion", economy.sigma)

    t = grid.nodes
    N = discounted_ggdp_integral(t, economy)
    a = lambda1 * economy.mu0 / lambda2
    x0 = 1.0 + a * N
    if lambda1 == 0:
        x1 = -(curve.beta / lambda2) * N
    else:
        x1 = -curve.beta / ((curve.nu + 1.0) * lambda1 * economy.mu0) * np.expm1(
            (curve.nu + 1.0) * np.log1p(a * N)
        )
    simplified = 1.0 + (economy.mu0 / lambda2) * (lambda1 - decreasing_threshold(economy, curve)) * N
    return PerturbationSeries(
        t=t, x0=x0, x1=x1, x_approx=x0 + economy.sigma * x1, x_simplified=simplified,
    )
