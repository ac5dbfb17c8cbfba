"""
Mitigation Expenditures - Annual spend, discounted totals and burden

Two terms make up annual expenditure:

    P_mu = alpha mu0 exp(-sigma t) g k exp((nu-1) K)                  reducing intensity
    P_g  = alpha mu0 exp(-sigma t) g_dot (exp((nu-1) K) - 1)/(nu-1)   expanding mitigation

Both are in billion $/year. Dividing by GGDP (trillion $/year) gives the
burden, a pure fraction of GGDP. The nu -> 1 limits are handled through
exprel, K (exp((nu-1)K) - 1)/((nu-1)K).
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
from scipy.special import exprel

from .economy import EconomyParams, TimeGrid, ggdp
from .errors import DomainError, GridError
from .mac import MacCurve, carbon_price
from .quadrature import integrate, running_integral
from .units import BILLION_PER_TRILLION

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

MU0_TOLERANCE = 1e-12
SMALL_EXPONENT = 1e-3


@dataclass(frozen=True)
class ExpenditureSeries:
    """Per-node expenditure series of one pathway."""
    grid: TimeGrid
    p_mu: np.ndarray
    p_g: np.ndarray
    burden: np.ndarray
    discounted_cumulative: np.ndarray
    carbon_price: np.ndarray
    expansion_ratio: np.ndarray
    exponent: np.ndarray

    @property
    def total(self) -> float:
        """Discounted expenditure over the whole horizon, billion $."""
        return float(self.discounted_cumulative[-1])


def _check_curve(economy: EconomyParams, curve: MacCurve) -> None:
    if abs(economy.mu0 - curve.mu0) > MU0_TOLERANCE * economy.mu0:
        raise DomainError(
            f"MAC reference intensity {curve.mu0} differs from economy mu0 {economy.mu0}"
        )


def _scaled(value: np.ndarray) -> ArrayLike:
    return float(value) if np.ndim(value) == 0 else value


def _expansion_factor(K: np.ndarray, nu: float) -> np.ndarray:
    """(exp((nu-1) K) - 1) / (nu - 1), equal to K when nu = 1."""
    return K * exprel((nu - 1.0) * K)


def annual_intensity_expenditure(
    t: ArrayLike,
    K: ArrayLike,
    k: ArrayLike,
    economy: EconomyParams,
    curve: MacCurve,
) -> ArrayLike:
    """
    Annual expenditure from reducing emissions intensity, billion $ / year.

    Example:
        At t=0, K=0 this is alpha * m0 * k; with alpha=10.4, m0=36, k=0.01
        it is 3.744.
    """
    _check_curve(economy, curve)
    t = np.asarray(t, dtype=float)
    K = np.asarray(K, dtype=float)
    k = np.asarray(k, dtype=float)
    value = (
        BILLION_PER_TRILLION * curve.beta * np.exp(-economy.sigma * t)
        * np.asarray(ggdp(t, economy)) * k * np.exp((curve.nu - 1.0) * K)
    )
    return _scaled(value)


def annual_expansion_expenditure(
    t: ArrayLike,
    K: ArrayLike,
    economy: EconomyParams,
    curve: MacCurve,
) -> ArrayLike:
    """Annual expenditure from expansion of mitigation, billion $ / year."""
    _check_curve(economy, curve)
    t = np.asarray(t, dtype=float)
    K = np.asarray(K, dtype=float)
    value = (
        BILLION_PER_TRILLION * curve.beta * np.exp(-economy.sigma * t)
        * economy.r * np.asarray(ggdp(t, economy)) * _expansion_factor(K, curve.nu)
    )
    return _scaled(value)


def burden(
    t: ArrayLike,
    K: ArrayLike,
    k: ArrayLike,
    economy: EconomyParams,
    curve: MacCurve,
) -> ArrayLike:
    """
    Annual expenditure as a fraction of GGDP.

    b = beta exp(-sigma t) [k exp((nu-1) K) + r (exp((nu-1) K) - 1)/(nu-1)]
    """
    _check_curve(economy, curve)
    t = np.asarray(t, dtype=float)
    K = np.asarray(K, dtype=float)
    k = np.asarray(k, dtype=float)
    value = curve.beta * np.exp(-economy.sigma * t) * (
        k * np.exp((curve.nu - 1.0) * K) + economy.r * _expansion_factor(K, curve.nu)
    )
    return _scaled(value)


def burden_exponent(t: ArrayLike, K: ArrayLike, economy: EconomyParams, curve: MacCurve) -> ArrayLike:
    """Exponent (nu-1) K - sigma t governing the late-time burden."""
    value = (curve.nu - 1.0) * np.asarray(K, dtype=float) - economy.sigma * np.asarray(t, dtype=float)
    return _scaled(value)


def expansion_ratio(K: ArrayLike, k: ArrayLike, economy: EconomyParams, curve: MacCurve) -> ArrayLike:
    """
    Ratio P_g / P_mu of expansion to intensity expenditure.

    Equals r K exprel((nu-1) K) exp(-(nu-1) K) / k; nodes with k = 0 report 0.
    """
    K = np.asarray(K, dtype=float)
    k = np.asarray(k, dtype=float)
    numerator = economy.r * _expansion_factor(K, curve.nu) * np.exp(-(curve.nu - 1.0) * K)
    k_b = np.broadcast_to(k, np.broadcast(K, k).shape)
    value = np.divide(numerator, k_b, out=np.zeros(k_b.shape), where=k_b > 0)
    return _scaled(value)


def discounted_total(pathway, economy: EconomyParams, curve: MacCurve) -> ExpenditureSeries:
    """
    Expenditure series of a pathway with the running discounted total.

    E(t_i) is the Simpson running integral of exp(-delta s) (P_mu + P_g).

    Args:
        pathway: Pathway carrying K and k on its grid
        economy: Economy parameters (delta taken from here)
        curve: MAC parameters

    Returns:
        ExpenditureSeries on the pathway grid

    Raises:
        GridError: If the pathway series do not match its grid
    """
    grid = pathway.grid
    n = grid.n_intervals + 1
    if len(pathway.K) != n or len(pathway.k) != n:
        raise GridError(
            f"pathway has {len(pathway.K)} nodes but its grid has {n}"
        )
    t = grid.nodes
    p_mu = annual_intensity_expenditure(t, pathway.K, pathway.k, economy, curve)
    p_g = annual_expansion_expenditure(t, pathway.K, economy, curve)
    discounted = running_integral(np.exp(-economy.delta * t) * (p_mu + p_g), grid.step)
    logger.debug("[Expenditure] discounted total %.6g billion $ over %g years", discounted[-1], grid.horizon)
    return ExpenditureSeries(
        grid=grid,
        p_mu=p_mu,
        p_g=p_g,
        burden=burden(t, pathway.K, pathway.k, economy, curve),
        discounted_cumulative=discounted,
        carbon_price=np.asarray(carbon_price(pathway.K, curve)),
        expansion_ratio=expansion_ratio(pathway.K, pathway.k, economy, curve),
        exponent=burden_exponent(t, pathway.K, economy, curve),
    )


def discounted_expenditure(pathway, economy: EconomyParams, curve: MacCurve) -> float:
    """Discounted expenditure over the full horizon by Simpson quadrature, billion $."""
    t = pathway.grid.nodes
    integrand = np.exp(-economy.delta * t) * (
        annual_intensity_expenditure(t, pathway.K, pathway.k, economy, curve)
        + annual_expansion_expenditure(t, pathway.K, economy, curve)
    )
    return integrate(integrand, pathway.grid.step)


def growth_integral(x: float, T: float) -> float:
    """F(x) = (exp(x T) - 1) / x, with F(0) = T."""
    return T * float(exprel(x * T))


def growth_integral_slope(x: float, T: float) -> float:
    """dF/dx = integral of s exp(x s) over [0, T]."""
    z = x * T
    if abs(z) < SMALL_EXPONENT:
        shape = 0.5 + z / 3.0 + z * z / 8.0 + z ** 3 / 30.0
    else:
        shape = (math.exp(z) * (z - 1.0) + 1.0) / (z * z)
    return T * T * shape


def constant_k_components(
    k: float,
    T: float,
    economy: EconomyParams,
    curve: MacCurve,
) -> Tuple[float, float]:
    """
    Closed-form discounted expenditure split for a constant rate k.

    Args:
        k: Constant decarbonization rate, >= 0
        T: Horizon in years
        economy: Economy parameters
        curve: MAC parameters

    Returns:
        (E_mu, E_g) in billion $
    """
    _check_curve(economy, curve)
    if k < 0:
        raise DomainError(f"decarbonization rate must be non-negative, got {k}")
    scale = BILLION_PER_TRILLION * curve.beta * economy.g0
    b = economy.r - economy.rho
    a = (curve.nu - 1.0) * k + b
    e_mu = scale * k * growth_integral(a, T)
    # r/(nu-1) * (F(a) - F(b)) written as r k times a divided difference
    if abs(a - b) * T < 1e-8:
        divided = growth_integral_slope(b, T)
    else:
        divided = (growth_integral(a, T) - growth_integral(b, T)) / (a - b)
    e_g = scale * economy.r * k * divided
    return e_mu, e_g


def constant_k_closed_form(k: float, T: float, economy: EconomyParams, curve: MacCurve) -> float:
    """
    Discounted expenditure E(T) of a constant-rate pathway, billion $.

    Example:
        >>> constant_k_closed_form(0.0, 100.0, EconomyParams(), MacCurve())
        0.0
    """
    e_mu, e_g = constant_k_components(k, T, economy, curve)
    return e_mu + e_g


def burden_increasing_condition(k: float, economy: EconomyParams, curve: MacCurve) -> bool:
    """True iff nu > 1 + sigma / k, the steep-MAC condition for rising burden."""
    if k <= 0:
        raise DomainError(f"decarbonization rate must be positive, got {k}")
    return curve.nu > 1.0 + economy.sigma / k
