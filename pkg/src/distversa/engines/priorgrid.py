"""Quadrature grids for expectations over the Lognormal(0,1) prior.

With A ~ Lognormal(0,1) and u = ln(A) ~ N(0,1), Gauss-Hermite nodes t_i
give  E[g(A)] ~= sum_i (w_i/sqrt(pi)) g(exp(sqrt(2) t_i)),  which is the
exact change of variables for the lognormal weight.  Tensor grids cover
independent parameters; a seeded Sobol transform covers dimensions
beyond the tensor budget.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import product

import numpy as np
from scipy import stats

SQRT2 = math.sqrt(2.0)
SQRTPI = math.sqrt(math.pi)


@lru_cache(maxsize=64)
def _hermgauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    t, w = np.polynomial.hermite.hermgauss(n)
    return t, w


def lognormal_grid(n: int) -> tuple[np.ndarray, np.ndarray]:
    """1-d nodes/weights: E[g(A)] ~= weights @ g(nodes)."""
    t, w = _hermgauss(n)
    return np.exp(SQRT2 * t), w / SQRTPI


def lognormal_tensor_grid(k: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """(N, k) node matrix and (N,) weights for k independent LN(0,1) factors."""
    nodes, weights = lognormal_grid(n)
    if k == 1:
        return nodes[:, None], weights
    grids = np.meshgrid(*([nodes] * k), indexing="ij")
    wgrids = np.meshgrid(*([weights] * k), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    wts = np.ones(pts.shape[0])
    for wg in wgrids:
        wts *= wg.ravel()
    return pts, wts


def truncated_lognormal_grid(
    n: int, upper: float = 1.0, lower_log: float = -12.0
) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights for E[g(A) | A < upper] under LN(0,1), renormalized.

    Gauss-Legendre on u = ln(a) over [lower_log, ln(upper)] with the
    normal density folded into the weights; the interval floor is deep
    enough that the omitted mass is < 1e-33.
    """
    lo, hi = lower_log, math.log(upper)
    t, w = np.polynomial.legendre.leggauss(max(int(n), 16))
    u = 0.5 * (hi + lo) + 0.5 * (hi - lo) * t
    du = 0.5 * (hi - lo) * w
    dens = np.exp(-0.5 * u * u) / math.sqrt(2.0 * math.pi)
    mass = stats.norm.cdf(hi) - stats.norm.cdf(lo)
    return np.exp(u), dens * du / mass


def lognormal_mc_points(k: int, n: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Seeded Sobol'-transformed points for k > tensor-budget dimensions."""
    sampler = stats.qmc.Sobol(d=k, scramble=True, seed=seed)
    m = max(int(math.ceil(math.log2(max(n, 2)))), 1)
    u = sampler.random_base2(m)[:n]
    # guard the open interval before the normal inverse CDF
    u = np.clip(u, 1e-12, 1.0 - 1e-12)
    pts = np.exp(stats.norm.ppf(u))
    wts = np.full(pts.shape[0], 1.0 / pts.shape[0])
    return pts, wts
