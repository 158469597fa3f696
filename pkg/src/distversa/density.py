"""Density evaluation and normalization checks for catalog specs."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .compute import spec_moments
from .engines import MomentRequest
from .errors import NonNormalizableError
from .families import DistributionSpec
from .params import ParamVector


def eval_log_density(spec: DistributionSpec, w, a: ParamVector):
    """ln f(w | a); -inf at zero-density points, +inf at a density pole."""
    return spec.log_density(w, a)


@dataclass(frozen=True)
class NormalizationReport:
    ok: bool
    residual: float
    error_estimate: float
    flags: tuple[str, ...]


def check_normalization(
    spec: DistributionSpec, a: ParamVector, tol: float = 1e-9
) -> NormalizationReport:
    """|total mass - 1| under the package-wide summation/quadrature policy.

    Raises NonNormalizableError when the accumulation itself diverges;
    a convergent deficit (generalized Poisson with sigma >= 1) is
    reported, not raised.
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    mom = spec_moments(spec, a, MomentRequest(scores=False, products=False))
    residual = abs(mom.mass - 1.0)
    if not math.isfinite(mom.mass):
        raise NonNormalizableError(f"{spec.label}: mass accumulation diverged")
    return NormalizationReport(
        ok=bool(residual <= tol),
        residual=residual,
        error_estimate=mom.error,
        flags=mom.flags,
    )
