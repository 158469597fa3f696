"""Fisher information: scores, information matrices, Jeffreys density,
and the Cramér-Rao variance floor.

The information matrix is the expected outer product of the score
(gradient of the log-density in the family's information coordinates).
Families with closed forms use them as the default fast path; the
numeric path computes the same expectations through the summation and
quadrature engines and doubles as the oracle-vs-engine consistency
check.  The mathematically equivalent negated-Hessian expectation is
available as a cross-validation (`fisher_hessian_check`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .compute import free_products, spec_moments
from .engines import MomentRequest, continuous_moments, discrete_moments
from .errors import NumericPSDError, ParameterArityError, ScoreUndefinedError
from .families import DistributionSpec, FamilyImpl
from .params import ParamVector

SYMMETRY_RTOL = 1e-10
PSD_RTOL = 1e-8


@dataclass(frozen=True)
class FisherMatrix:
    k: int
    entries: np.ndarray  # (k, k)
    method: str  # "analytic" | "numeric-score" | "numeric-hessian"
    error_estimate: float
    flags: tuple[str, ...] = ()

    @property
    def scale(self) -> float:
        return float(np.max(np.abs(self.entries)))

    def symmetry_defect(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.T)))

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(0.5 * (self.entries + self.entries.T))[0])

    def det(self) -> float:
        if self.k == 1:
            return float(self.entries[0, 0])
        return float(np.linalg.det(self.entries))


def score(spec: DistributionSpec, w, a: ParamVector):
    """d ln f / d(coords) at outcome w; undefined at zero-density points."""
    logf = spec.log_density(w, a)
    if np.any(np.asarray(logf) == -math.inf):
        raise ScoreUndefinedError(f"{spec.label}: zero density at w={w}")
    return spec.score(w, a)


def fisher_matrix(
    spec: DistributionSpec, a: ParamVector, *, method: str = "auto"
) -> FisherMatrix:
    """k x k matrix of expected score products at a fixed parameter point."""
    if method not in ("auto", "analytic", "numeric"):
        raise ValueError(f"unknown method {method!r}")
    if method in ("auto", "analytic"):
        analytic = spec.analytic_fisher(a)
        if analytic is not None:
            return FisherMatrix(spec.k, analytic, "analytic", 0.0)
        if method == "analytic":
            raise ParameterArityError(f"{spec.label} has no analytic information matrix")
    mom = spec_moments(spec, a, MomentRequest(scores=True, products=True))
    if not np.all(np.isfinite(mom.raw)):
        bad = np.where(~np.isfinite(mom.raw))[0]
        raise NumericPSDError(
            f"{spec.label}: information expectation diverged (component {bad[0]})"
        )
    entries = free_products(spec, mom)
    return FisherMatrix(spec.k, entries, "numeric-score", mom.error, mom.flags)


def fisher_scalar(spec: DistributionSpec, a: ParamVector, **kw) -> float:
    """E[(d ln f/da)^2] for one-parameter specs."""
    if spec.k != 1:
        raise ParameterArityError(f"fisher_scalar requires k=1, got k={spec.k}")
    return float(fisher_matrix(spec, a, **kw).entries[0, 0])


class _HessianProxy(FamilyImpl):
    """Presents finite-difference second derivatives of ln f as 'scores'
    so the expectation engines can average them.

    Diagonal terms use the 5-point stencil, mixed terms the 4-point
    cross, both in information coordinates with steps relative to the
    coordinate magnitude.
    """

    tail_kind = "none"

    def __init__(self, impl: FamilyImpl, full: np.ndarray):
        self.base = impl
        self.full = np.asarray(full, dtype=float)
        self.family_id = impl.family_id
        self.label = f"{impl.label}+hessian"
        self.support = impl.support
        kk = impl.k
        self.pairs = [(i, j) for i in range(kk) for j in range(i, kk)]
        self.param_names = tuple(f"h{i}{j}" for i, j in self.pairs)
        self.info_coords = ("identity",) * len(self.pairs)
        self.coords0 = impl.coords(self.full)
        self.steps = np.maximum(2e-3 * np.abs(self.coords0), 1e-5)

    @property
    def k(self) -> int:
        return len(self.pairs)

    def _logf(self, x, shift: dict[int, float]):
        c = self.coords0.copy()
        for i, dv in shift.items():
            c[i] += dv
        return self.base.log_density(x, self.base.from_coords(c))

    def log_density(self, x, a):
        return self.base.log_density(x, self.full)

    def scores(self, x, a):
        rows = []
        for i, j in self.pairs:
            hi, hj = self.steps[i], self.steps[j]
            if i == j:
                f1 = self._logf(x, {i: 2 * hi})
                f2 = self._logf(x, {i: hi})
                f3 = self._logf(x, {})
                f4 = self._logf(x, {i: -hi})
                f5 = self._logf(x, {i: -2 * hi})
                rows.append(
                    (-f1 + 16 * f2 - 30 * f3 + 16 * f4 - f5) / (12 * hi * hi)
                )
            else:
                fpp = self._logf(x, {i: hi, j: hj})
                fpm = self._logf(x, {i: hi, j: -hj})
                fmp = self._logf(x, {i: -hi, j: hj})
                fmm = self._logf(x, {i: -hi, j: -hj})
                rows.append((fpp - fpm - fmp + fmm) / (4 * hi * hj))
        return np.vstack(rows)

    def cut(self, a):
        return self.base.cut(self.full)

    def peak_hint(self, a):
        return self.base.peak_hint(self.full)

    # --- tail delegation -------------------------------------------------
    # FD-hessian components decay like the density times a slowly varying
    # factor, so the base family's tail coordinate remains the right one.
    @property
    def tail_kind(self) -> str:  # type: ignore[override]
        kind = self.base.tail_kind
        return kind if kind in ("exp", "log") else "none"

    def tail_rate(self, a):
        return self.base.tail_rate(self.full)

    def bump(self, a):
        base_bump = getattr(self.base, "bump", None)
        return base_bump(self.full) if base_bump is not None else None

    def tail_log_rate(self, a):
        return self.base.tail_log_rate(self.full)

    def tail_far(self, a, req):
        """Far-limit constants: ln f -> ln A(c) - (1+alpha) ln x with the
        ln-x term linear in the coordinates, so every second derivative
        tends to the corresponding second derivative of ln A."""
        from .engines.moments import component_layout

        amp = math.exp(self.base.tail_log_amplitude(self.full))
        rate = self.base.tail_log_rate(self.full)

        def log_amp_at(shift: dict[int, float]) -> float:
            c = self.coords0.copy()
            for i, dv in shift.items():
                c[i] += dv
            return self.base.tail_log_amplitude(self.base.from_coords(c))

        consts = []
        for i, j in self.pairs:
            hi, hj = self.steps[i], self.steps[j]
            if i == j:
                vals = [log_amp_at({i: s * hi}) for s in (2, 1, 0, -1, -2)]
                consts.append(
                    (-vals[0] + 16 * vals[1] - 30 * vals[2] + 16 * vals[3] - vals[4])
                    / (12 * hi * hi)
                )
            else:
                consts.append(
                    (
                        log_amp_at({i: hi, j: hj})
                        - log_amp_at({i: hi, j: -hj})
                        - log_amp_at({i: -hi, j: hj})
                        + log_amp_at({i: -hi, j: -hj})
                    )
                    / (4 * hi * hj)
                )

        out = []
        for tag in component_layout(self.k, MomentRequest(scores=True, products=False)):
            if tag == "mass":
                out.append((amp, rate, (1.0,)))
            else:
                out.append((amp, rate, (consts[tag[1]],)))
        return out


def fisher_hessian_matrix(spec: DistributionSpec, a: ParamVector) -> FisherMatrix:
    """Information matrix from -E[d^2 ln f], by numeric second differences."""
    full = spec.merge_values(a)
    proxy = _HessianProxy(spec.impl, full)
    req = MomentRequest(scores=True, products=False)
    if spec.support.is_discrete:
        mom = discrete_moments(proxy, full, req)
    else:
        mom = continuous_moments(proxy, full, req)
    means = mom.score_means()
    kk = spec.impl.k
    hess = np.zeros((kk, kk))
    for (i, j), v in zip(proxy.pairs, means):
        hess[i, j] = hess[j, i] = -v
    idx = list(spec.free_indices)
    return FisherMatrix(
        spec.k, hess[np.ix_(idx, idx)], "numeric-hessian", mom.error, mom.flags
    )


def fisher_hessian_check(spec: DistributionSpec, a: ParamVector) -> float:
    """Max relative deviation between the score-product and negated-Hessian
    forms of the information matrix."""
    score_form = fisher_matrix(spec, a)
    hess_form = fisher_hessian_matrix(spec, a)
    scale = max(score_form.scale, 1e-300)
    return float(np.max(np.abs(score_form.entries - hess_form.entries)) / scale)


def jeffreys_density(spec: DistributionSpec, a: ParamVector, **kw) -> float:
    """Unnormalized Jeffreys prior density sqrt(det I(a))."""
    fim = fisher_matrix(spec, a, **kw)
    det = fim.det()
    if det < 0.0:
        if abs(det) > PSD_RTOL * max(fim.scale, 1e-300) ** spec.k:
            raise NumericPSDError(
                f"{spec.label}: information determinant {det} < 0 beyond tolerance"
            )
        det = 0.0
    return math.sqrt(det)


def cramer_rao_bound(spec: DistributionSpec, a: ParamVector, n: int = 1) -> float:
    """1/(n I(a)) variance floor for k=1; +inf at zero information."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    info = fisher_scalar(spec, a)
    if info <= 0.0:
        return math.inf
    return 1.0 / (n * info)
