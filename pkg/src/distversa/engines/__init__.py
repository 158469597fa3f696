"""Numerical expectation engines.

`discrete` sums over the integer support with Euler-Maclaurin/quadrature
tail acceleration; `loggrid` integrates over [0, inf) on a trapezoid grid
in ln(y); `priorgrid` builds Gauss-Hermite (and truncated/Monte-Carlo)
grids for expectations over the independent Lognormal(0,1) parameter
prior.
"""

from .moments import MomentRequest, Moments, component_layout, component_values
from .discrete import discrete_moments
from .loggrid import continuous_moments
from .priorgrid import (
    lognormal_grid,
    lognormal_tensor_grid,
    lognormal_mc_points,
    truncated_lognormal_grid,
)

__all__ = [
    "MomentRequest",
    "Moments",
    "component_layout",
    "component_values",
    "discrete_moments",
    "continuous_moments",
    "lognormal_grid",
    "lognormal_tensor_grid",
    "lognormal_mc_points",
    "truncated_lognormal_grid",
]
