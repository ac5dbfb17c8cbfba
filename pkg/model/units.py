"""
Unit constants.

Monetary amounts are constant 1990 USD. GGDP is in trillion $/yr, emissions
in Gt CO2/yr, MAC values in billion $ per (Gt CO2/yr). The MAC coefficient
alpha times the intensity mu0 therefore carries a billion/trillion factor:
beta = alpha * mu0 / BILLION_PER_TRILLION is in years, burden is a pure
fraction, and annual expenditures come out in billion $/yr.
"""

from typing import Union

import numpy as np

from .errors import DomainError

BILLION_PER_TRILLION = 1.0e3

# molar mass ratio CO2 / C
GTCO2_PER_PGC = 44.0 / 12.0

ArrayLike = Union[float, np.ndarray]


def convert_pgc_gtco2(value: ArrayLike) -> ArrayLike:
    """
    Convert a carbon amount in PgC to Gt CO2.
    
    Args:
        value: Amount in PgC, must be >= 0
        
    Returns:
        Amount in Gt CO2 (value * 44/12)
        
    Example:
        >>> convert_pgc_gtco2(300)
        1100.0
    """
    arr = np.asarray(value, dtype=float)
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise DomainError(f"carbon amount must be finite and non-negative, got {value}")
    result = arr * GTCO2_PER_PGC
    return float(result) if result.ndim == 0 else result
