"""
Marginal abatement cost (MAC) curve.

The cost of lowering emissions intensity by one more unit is

    C = alpha / (mu / (mu0 exp(-sigma t)))**nu

so it starts at alpha for the first unit below business-as-usual and rises
steeply as intensity is pushed down. alpha and nu are estimated by least
squares in log space from (reduction, cost) data points.
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy import stats

from .errors import DomainError, FitError
from .units import BILLION_PER_TRILLION

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

RATIO_SLACK = 1e-12


class MacCurve(BaseModel):
    """Parameters (alpha, nu, mu0) of the MAC surface."""
    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    alpha: float = Field(10.4, gt=0, description="Present MAC, billion $ / (Gt CO2 / year)")
    nu: float = Field(2.4, gt=0, description="MAC exponent")
    mu0: float = Field(0.46, gt=0, description="Reference intensity at t=0, Gt CO2 / trillion $")

    @property
    def beta(self) -> float:
        """alpha * mu0 expressed in years."""
        return self.alpha * self.mu0 / BILLION_PER_TRILLION


class MacDataPoint(BaseModel):
    """One observed (reduction, marginal cost) pair."""
    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    reduction: float = Field(..., ge=0, description="Reduction below reference, Gt CO2 / year")
    marginal_cost: float = Field(..., gt=0, description="billion $ / (Gt CO2 / year)")


@dataclass(frozen=True)
class MacFit:
    """Least-squares MAC estimate with its diagnostics."""
    curve: MacCurve
    alpha_stderr: float
    nu_stderr: float
    residual_std_error: float
    r_squared: float
    intensity_ratios: np.ndarray
    log_residuals: np.ndarray

    @property
    def n_points(self) -> int:
        return len(self.intensity_ratios)


def mac_value(mu: ArrayLike, t: ArrayLike, curve: MacCurve, sigma: float) -> ArrayLike:
    """
    MAC at intensity mu and time t.

    Args:
        mu: Emissions intensity, 0 < mu <= mu0 exp(-sigma t)
        t: Time in years
        curve: MAC parameters
        sigma: Exogenous decarbonization rate

    Returns:
        Marginal cost in billion $ / (Gt CO2 / year)

    Raises:
        DomainError: If mu <= 0 or mu exceeds the business-as-usual intensity
    """
    mu = np.asarray(mu, dtype=float)
    if np.any(mu <= 0):
        raise DomainError("intensity must be positive")
    ratio = mu / (curve.mu0 * np.exp(-sigma * np.asarray(t, dtype=float)))
    if np.any(ratio > 1.0 + RATIO_SLACK):
        raise DomainError("intensity exceeds the business-as-usual intensity")
    value = curve.alpha / ratio ** curve.nu
    return float(value) if np.ndim(value) == 0 else value


def carbon_price(K: ArrayLike, curve: MacCurve) -> ArrayLike:
    """Carbon price alpha * exp(nu K) implied by mitigation level K."""
    value = curve.alpha * np.exp(curve.nu * np.asarray(K, dtype=float))
    return float(value) if np.ndim(value) == 0 else value


def mac_reduction_curve(reduction_fractions: ArrayLike, curve: MacCurve) -> np.ndarray:
    """
    MAC as a function of the fractional reduction 1 - rho below reference.

    Used to draw a fitted curve next to its data points.
    """
    fractions = np.asarray(reduction_fractions, dtype=float)
    if np.any(fractions < 0) or np.any(fractions >= 1):
        raise DomainError("reduction fractions must lie in [0, 1)")
    return curve.alpha / (1.0 - fractions) ** curve.nu


def fit_mac(
    points: Sequence[MacDataPoint],
    reference_emissions: float,
    mu0: float = 0.46,
) -> MacFit:
    """
    Estimate (alpha, nu) from abatement-cost data.

    Each reduction is turned into an intensity ratio
    rho_i = 1 - reduction_i / reference_emissions, then ln(cost_i) is
    regressed on -ln(rho_i): the slope is nu and the intercept ln(alpha).

    Args:
        points: At least two data points with distinct reductions
        reference_emissions: Reference (no-policy) emissions, Gt CO2 / year
        mu0: Intensity attached to the returned curve

    Returns:
        MacFit with the curve and OLS standard errors

    Raises:
        FitError: Too few points, a non-positive ratio, or identical ratios
    """
    if len(points) < 2:
        raise FitError(f"need at least 2 data points, got {len(points)}")
    if reference_emissions <= 0:
        raise FitError("reference emissions must be positive")

    reductions = np.array([p.reduction for p in points], dtype=float)
    costs = np.array([p.marginal_cost for p in points], dtype=float)
    ratios = 1.0 - reductions / reference_emissions
    if np.any(ratios <= 0):
        raise FitError("every reduction must be below the reference emissions")

    x = -np.log(ratios)
    y = np.log(costs)
    if np.ptp(x) == 0:
        raise FitError("regression is rank deficient: all reductions are equal")

    result = stats.linregress(x, y)
    residuals = y - (result.intercept + result.slope * x)
    dof = len(x) - 2
    rse = float(np.sqrt(np.sum(residuals ** 2) / dof)) if dof > 0 else 0.0

    nu = float(result.slope)
    if nu <= 0:
        raise FitError(f"fitted MAC exponent is not positive: {nu}")
    alpha = float(np.exp(result.intercept))
    # delta method for alpha = exp(intercept)
    alpha_stderr = alpha * float(result.intercept_stderr)

    logger.debug("[MAC] fitted alpha=%.6g nu=%.6g from %d points", alpha, nu, len(x))

    return MacFit(
        curve=MacCurve(alpha=alpha, nu=nu, mu0=mu0),
        alpha_stderr=alpha_stderr,
        nu_stderr=float(result.stderr),
        residual_std_error=rse,
        r_squared=float(result.rvalue ** 2),
        intensity_ratios=ratios,
        log_residuals=residuals,
    )
