"""Dispatch from public specs to the expectation engines."""

from __future__ import annotations

import numpy as np

from .engines import MomentRequest, Moments, continuous_moments, discrete_moments
from .families import DistributionSpec
from .params import ParamVector


def spec_moments(spec: DistributionSpec, a: ParamVector, req: MomentRequest) -> Moments:
    """Engine moments for the *full* implementation at the merged point."""
    full = spec.merge_values(a)
    if spec.support.is_discrete:
        return discrete_moments(spec.impl, full, req)
    return continuous_moments(spec.impl, full, req)


def free_products(spec: DistributionSpec, mom: Moments) -> np.ndarray:
    """Score-product matrix restricted to the spec's free parameters."""
    idx = list(spec.free_indices)
    return mom.product_matrix()[np.ix_(idx, idx)]


def free_score_means(spec: DistributionSpec, mom: Moments) -> np.ndarray:
    idx = list(spec.free_indices)
    return mom.score_means()[idx]
