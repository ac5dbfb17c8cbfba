"""
Economy Model - Baseline GGDP growth and CO2 emissions

GGDP grows exponentially at a constant rate r. Emissions intensity falls
exogenously at sigma = (1 - theta) * r and, under deliberate mitigation, by
the integrated decarbonization rate K(t):

    m(t) = mu0 * g(t) * exp(-K(t)) * exp(-sigma * t)
"""

import math
from typing import TYPE_CHECKING, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.special import exprel

from .errors import DomainError, GridError
from .quadrature import integrate

if TYPE_CHECKING:
    from .pathway import Pathway


ArrayLike = Union[float, np.ndarray]

GRID_TOLERANCE = 1e-9


class EconomyParams(BaseModel):
    """
    Parameters of the baseline global economy.

    Defaults are the median estimates used throughout the scenario analysis.
    """
    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    g0: float = Field(77.8, gt=0, description="GGDP at t=0, trillion $ / year")
    r: float = Field(0.024, ge=0, description="Annual GGDP growth rate, 1/year")
    theta: float = Field(0.75, ge=0, le=1, description="Income elasticity of CO2 emissions")
    mu0: float = Field(0.46, gt=0, description="Emissions intensity at t=0, Gt CO2 / trillion $")
    delta: float = Field(0.0, ge=0, description="Time-discount rate, 1/year")

    @model_validator(mode="after")
    def _check_m0(self) -> "EconomyParams":
        if not math.isfinite(self.m0) or self.m0 <= 0:
            raise ValueError(f"m0 = mu0 * g0 must be finite and positive, got {self.m0}")
        return self

    @property
    def sigma(self) -> float:
        """Exogenous decarbonization rate (1 - theta) * r."""
        return exogenous_rate(self.theta, self.r)

    @property
    def m0(self) -> float:
        """Present emissions mu0 * g0, Gt CO2 / year."""
        return self.mu0 * self.g0

    @property
    def rho(self) -> float:
        """Combined rate sigma + delta weighting expenditures."""
        return self.sigma + self.delta


class TimeGrid(BaseModel):
    """Uniform time grid t_i = i * step, i = 0..N, with t_N = horizon."""
    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    horizon: float = Field(100.0, gt=0, description="Years from present")
    step: float = Field(0.05, gt=0, description="Node spacing in years")

    @model_validator(mode="after")
    def _check_multiple(self) -> "TimeGrid":
        n = round(self.horizon / self.step)
        if n < 1 or abs(n * self.step - self.horizon) > GRID_TOLERANCE:
            raise ValueError(
                f"horizon {self.horizon} is not an integer multiple of step {self.step}"
            )
        return self

    @property
    def n_intervals(self) -> int:
        return int(round(self.horizon / self.step))

    @property
    def nodes(self) -> np.ndarray:
        t = np.arange(self.n_intervals + 1, dtype=float) * self.step
        t[-1] = self.horizon
        return t

    def index_of(self, t: float) -> int:
        """
        Index of the node at time t.

        Raises:
            GridError: If t is outside [0, horizon] or not on a node
        """
        if t < -GRID_TOLERANCE or t > self.horizon + GRID_TOLERANCE:
            raise GridError(f"time {t} is outside the grid [0, {self.horizon}]")
        i = int(round(t / self.step))
        if abs(i * self.step - t) > GRID_TOLERANCE:
            raise GridError(f"time {t} is not a node of a grid with step {self.step}")
        return min(i, self.n_intervals)


def exogenous_rate(theta: float, r: float) -> float:
    """
    Exogenous decarbonization rate sigma = (1 - theta) * r.

    Args:
        theta: Income elasticity of emissions, in [0, 1]
        r: GGDP growth rate, >= 0

    Returns:
        sigma in 1/year

    Example:
        >>> exogenous_rate(0.75, 0.04)
        0.01
    """
    if not 0.0 <= theta <= 1.0:
        raise DomainError(f"theta must lie in [0, 1], got {theta}")
    if r < 0:
        raise DomainError(f"growth rate must be non-negative, got {r}")
    return (1.0 - theta) * r


def _check_times(t: ArrayLike) -> np.ndarray:
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0):
        raise DomainError("time must be non-negative")
    return arr


def _as_output(arr: np.ndarray) -> ArrayLike:
    return float(arr) if arr.ndim == 0 else arr


def ggdp(t: ArrayLike, params: EconomyParams) -> ArrayLike:
    """GGDP g(t) = g0 * exp(r t), trillion $ / year."""
    t = _check_times(t)
    return _as_output(params.g0 * np.exp(params.r * t))


def integrated_ggdp(t: ArrayLike, params: EconomyParams) -> ArrayLike:
    """
    Integrated GGDP G(t) = g0 (exp(r t) - 1) / r, trillion $.

    The r -> 0 limit g0 * t is handled by exprel.
    """
    t = _check_times(t)
    return _as_output(params.g0 * t * exprel(params.r * t))


def discounted_ggdp_integral(t: ArrayLike, params: EconomyParams) -> ArrayLike:
    """N(t) = integral of exp(-sigma s) g(s) over [0, t], trillion $."""
    t = _check_times(t)
    return _as_output(params.g0 * t * exprel((params.r - params.sigma) * t))


def emissions(t: ArrayLike, K: ArrayLike, params: EconomyParams) -> ArrayLike:
    """
    Emissions m = mu0 * g(t) * exp(-K) * exp(-sigma t), Gt CO2 / year.

    Args:
        t: Time(s) in years, >= 0
        K: Integrated decarbonization rate at t (broadcast against t)
        params: Economy parameters
    """
    t = _check_times(t)
    K = np.asarray(K, dtype=float)
    return _as_output(params.mu0 * params.g0 * np.exp((params.r - params.sigma) * t - K))


def bau_emissions(t: ArrayLike, params: EconomyParams) -> ArrayLike:
    """Business-as-usual emissions (K = 0)."""
    return emissions(t, 0.0, params)


def cumulative_emissions(pathway: "Pathway", T: float) -> float:
    """
    Cumulative emissions M(T) of a pathway by Simpson quadrature.

    Args:
        pathway: Pathway whose grid covers [0, T]
        T: Horizon in years, must be a node of the pathway grid

    Returns:
        M(T) in Gt CO2
    """
    i = pathway.grid.index_of(T)
    if len(pathway.m) != pathway.grid.n_intervals + 1:
        raise GridError("pathway series do not match its grid")
    return integrate(pathway.m[: i + 1], pathway.grid.step)


def constant_rate_cumulative(k: ArrayLike, T: float, params: EconomyParams) -> ArrayLike:
    """
    Closed-form cumulative emissions for a constant decarbonization rate.

    M(T) = m0 (1 - exp(-chi T)) / chi with chi = k + sigma - r, and the
    chi -> 0 limit m0 * T.
    """
    if T < 0:
        raise DomainError(f"horizon must be non-negative, got {T}")
    chi = np.asarray(k, dtype=float) + params.sigma - params.r
    return _as_output(params.m0 * T * exprel(-chi * T))
