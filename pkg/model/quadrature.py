"""
Composite Simpson quadrature on a uniform grid.

Short series fall back to the trapezoid rule because Simpson needs at
least three nodes.
"""

import numpy as np
from scipy import integrate as sp_integrate


def integrate(values: np.ndarray, step: float) -> float:
    """Integral of uniformly sampled values over the whole grid."""
    values = np.asarray(values, dtype=float)
    n = values.shape[-1]
    if n < 2:
        return 0.0
    if n == 2:
        return float(0.5 * step * (values[0] + values[1]))
    return float(sp_integrate.simpson(values, dx=step))


def running_integral(values: np.ndarray, step: float) -> np.ndarray:
    """
    Running integral from the first node, same length as the input.
    
    Args:
        values: Samples on a uniform grid
        step: Grid spacing
        
    Returns:
        Array whose i-th entry is the integral over [t_0, t_i]
    """
    values = np.asarray(values, dtype=float)
    n = values.shape[-1]
    if n == 0:
        return np.zeros(0)
    if n == 1:
        return np.zeros(1)
    if n == 2:
        return np.array([0.0, 0.5 * step * (values[0] + values[1])])
    return sp_integrate.cumulative_simpson(values, dx=step, initial=0.0)
