"""Shared moment bookkeeping for the summation/quadrature engines.

A moment computation accumulates, in one pass, the raw (unnormalized)
sums/integrals of a stack of component functions against the density:

    mass        f
    s_i         score_i * f                     (i = 1..k)
    p_ij        score_i * score_j * f           (upper triangle)
    nll         -ln(f) * f
    pow         f^(1+p)                         (optional, one p)

Sums are raw on purpose: a proper density has mass ~= 1, and improper
cases (generalized Poisson with sigma >= 1) report their mass deficit
instead of silently renormalizing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class MomentRequest:
    scores: bool = True
    products: bool = True
    nll: bool = False
    power: float | None = None

    def n_components(self, k: int) -> int:
        n = 1
        if self.scores:
            n += k
        if self.products:
            n += k * (k + 1) // 2
        if self.nll:
            n += 1
        if self.power is not None:
            n += 1
        return n


def component_layout(k: int, req: MomentRequest) -> list:
    """Ordered component tags: 'mass', ('s', i), ('p', i, j), 'nll', 'pow'."""
    tags: list = ["mass"]
    if req.scores:
        tags += [("s", i) for i in range(k)]
    if req.products:
        tags += [("p", i, j) for i in range(k) for j in range(i, k)]
    if req.nll:
        tags.append("nll")
    if req.power is not None:
        tags.append("pow")
    return tags


def component_values(impl, a: np.ndarray, x: np.ndarray, req: MomentRequest) -> np.ndarray:
    """Stack of component values at outcomes ``x`` (shape (ncomp, n)).

    Built generically from the family's log-density and scores; the
    discrete-Weibull tail uses a bespoke stabilized variant instead.
    """
    k = impl.k
    logf = impl.log_density(x, a)
    with np.errstate(over="ignore"):
        f = np.exp(logf)
    rows = [f]
    if req.scores or req.products:
        s = impl.scores(x, a)
    if req.scores:
        for i in range(k):
            rows.append(s[i] * f)
    if req.products:
        for i in range(k):
            for j in range(i, k):
                rows.append(s[i] * s[j] * f)
    if req.nll:
        safe_logf = np.where(f > 0.0, logf, 0.0)
        rows.append(-safe_logf * f)
    if req.power is not None:
        with np.errstate(over="ignore"):
            rows.append(np.exp((1.0 + req.power) * logf))
    return np.vstack(rows)


@dataclass
class Moments:
    """Raw component sums plus diagnostics."""

    k: int
    request: MomentRequest
    raw: np.ndarray  # (ncomp,)
    error: float = 0.0  # summary relative error (see summarize_error)
    error_vec: np.ndarray | None = None  # per-component absolute estimates
    flags: tuple[str, ...] = ()

    @staticmethod
    def summarize_error(raw: np.ndarray, abs_err: np.ndarray) -> float:
        """Max componentwise error, relative to the component magnitude or,
        for components that are legitimately ~0 (score means of a proper
        density), to the overall component scale."""
        finite = np.isfinite(raw)
        if not np.any(finite):
            return 0.0
        scale = np.max(np.abs(raw[finite]), initial=0.0)
        denom = np.maximum(np.abs(raw), 1e-2 * max(scale, 1e-300))
        vals = (abs_err / denom)[finite & np.isfinite(abs_err)]
        return float(np.max(vals, initial=0.0))

    def _index(self, tag) -> int:
        return component_layout(self.k, self.request).index(tag)

    @property
    def mass(self) -> float:
        return float(self.raw[0])

    def score_mean(self, i: int) -> float:
        return float(self.raw[self._index(("s", i))])

    def score_means(self) -> np.ndarray:
        return np.array([self.score_mean(i) for i in range(self.k)])

    def product(self, i: int, j: int) -> float:
        if i > j:
            i, j = j, i
        return float(self.raw[self._index(("p", i, j))])

    def product_matrix(self) -> np.ndarray:
        out = np.empty((self.k, self.k))
        for i in range(self.k):
            for j in range(i, self.k):
                out[i, j] = out[j, i] = self.product(i, j)
        return out

    @property
    def nll(self) -> float:
        return float(self.raw[self._index("nll")])

    @property
    def power(self) -> float:
        return float(self.raw[self._index("pow")])
