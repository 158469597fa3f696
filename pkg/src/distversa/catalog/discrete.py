"""Discrete frequency families on {0, 1, 2, ...}.

All evaluators accept real-valued ``x`` arrays: each log-PMF is written
through ``gammaln``/``digamma`` so that it extends smoothly off the
integers, which is what lets the summation engine trade far tails for
Euler-Maclaurin boundary terms plus quadrature of the continued summand.

Tail regimes, by family:

* geometric / negative binomial / Poisson / generalized Poisson decay
  (at worst) geometrically: ``tail_kind = "exp"`` with an analytic
  asymptotic rate;
* Waring decays like x^-(alpha+1): ``tail_kind = "log"`` (handled in log-x
  space by the engine);
* discrete Weibull decays like exp(-L*x^tau): ``tail_kind = "stretched"``
  with bespoke stabilized score formulas below.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special

from ..engines.numerics import lgamma_ratio
from ..families import FamilyImpl
from ..params import SupportKind

CUT_CAP = 400_000  # exact-summation budget per parameter point


def _stack(*rows) -> np.ndarray:
    return np.vstack([np.asarray(r, dtype=float) for r in rows])


def _clip_cut(estimate: float) -> int:
    return int(min(max(512.0, estimate), CUT_CAP))


class Poisson(FamilyImpl):
    """f(x) = exp(-lam) lam^x / x!."""

    family_id = "poisson"
    label = "standard"
    support = SupportKind.DISCRETE
    param_names = ("lam",)
    info_coords = ("identity",)
    tail_kind = "exp"

    def log_density(self, x, a):
        (lam,) = a
        return special.xlogy(x, lam) - lam - special.gammaln(x + 1.0)

    def scores(self, x, a):
        (lam,) = a
        return _stack(x / lam - 1.0)

    def analytic_fisher(self, a):
        (lam,) = a
        return np.array([[1.0 / lam]])

    def cut(self, a):
        (lam,) = a
        return _clip_cut(lam + 12.0 * math.sqrt(lam) + 32.0)

    def tail_rate(self, a):
        (lam,) = a
        return max(math.log((self.cut(a) + 1.0) / lam), 0.05)


class Geometric(FamilyImpl):
    """Geometric on {0,1,...} with success probability written through the
    positive parameter m.

    form "mean-inverse": P(success) = m/(m+1), so E[X] = 1/m.
    form "mean":         P(success) = 1/(m+1), so E[X] = m.
    """

    family_id = "geometric"
    support = SupportKind.DISCRETE
    param_names = ("m",)
    info_coords = ("identity",)
    tail_kind = "exp"

    def __init__(self, form: str):
        assert form in ("mean-inverse", "mean")
        self.form = form
        self.label = form

    def _logq_log1mq(self, m: float) -> tuple[float, float]:
        if self.form == "mean-inverse":
            return -math.log1p(1.0 / m), -math.log1p(m)
        return -math.log1p(m), -math.log1p(1.0 / m)

    def log_density(self, x, a):
        (m,) = a
        logq, log1mq = self._logq_log1mq(m)
        return logq + x * log1mq

    def scores(self, x, a):
        (m,) = a
        if self.form == "mean-inverse":
            return _stack(1.0 / m - (x + 1.0) / (m + 1.0))
        return _stack(x / m - (x + 1.0) / (m + 1.0))

    def analytic_fisher(self, a):
        (m,) = a
        if self.form == "mean-inverse":
            return np.array([[1.0 / (m * m * (m + 1.0))]])
        return np.array([[1.0 / (m * (m + 1.0))]])

    def cut(self, a):
        return 512

    def tail_rate(self, a):
        (m,) = a
        _, log1mq = self._logq_log1mq(m)
        return -log1mq


class NegBinom(FamilyImpl):
    """f(x) = C(x+r-1, x) q^r (1-q)^x with q expressed through m.

    form "mean-inverse": q = m/(m+1), E[X] = r/m.
    form "mean":         q = 1/(m+1), E[X] = r*m.
    """

    family_id = "negbinom"
    support = SupportKind.DISCRETE
    param_names = ("r", "m")
    info_coords = ("identity", "identity")
    tail_kind = "exp"

    def __init__(self, form: str):
        assert form in ("mean-inverse", "mean")
        self.form = form
        self.label = form

    def _logq_log1mq(self, m: float) -> tuple[float, float]:
        if self.form == "mean-inverse":
            return -math.log1p(1.0 / m), -math.log1p(m)
        return -math.log1p(m), -math.log1p(1.0 / m)

    def log_density(self, x, a):
        r, m = a
        logq, log1mq = self._logq_log1mq(m)
        return (
            lgamma_ratio(np.asarray(x, dtype=float), r, 1.0)
            - special.gammaln(r)
            + r * logq
            + x * log1mq
        )

    def scores(self, x, a):
        r, m = a
        logq, _ = self._logq_log1mq(m)
        s_r = special.digamma(x + r) - special.digamma(r) + logq
        if self.form == "mean-inverse":
            s_m = r / m - (r + x) / (m + 1.0)
        else:
            s_m = x / m - (r + x) / (m + 1.0)
        return _stack(s_r, s_m)

    def _moments(self, a):
        r, m = a
        if self.form == "mean-inverse":
            mean = r / m
            var = r * (m + 1.0) / m**2
        else:
            mean = r * m
            var = r * m * (m + 1.0)
        return mean, math.sqrt(var)

    def cut(self, a):
        mean, sd = self._moments(a)
        return _clip_cut(mean + 10.0 * sd + 512.0)

    def bump(self, a):
        """(center, width) of the far probability bump when over the cap."""
        mean, sd = self._moments(a)
        if mean + 10.0 * sd + 512.0 >= CUT_CAP:
            return mean, sd
        return None

    def tail_rate(self, a):
        _, m = a
        return math.log1p(m) if self.form == "mean-inverse" else math.log1p(1.0 / m)


class Waring(FamilyImpl):
    """f(x) = alpha G(alpha+theta) G(x+theta) / (G(theta) G(x+alpha+theta+1)).

    Heavy tailed: f ~ C x^-(alpha+1); moments of order >= alpha diverge.
    """

    family_id = "waring"
    label = "standard"
    support = SupportKind.DISCRETE
    param_names = ("alpha", "theta")
    info_coords = ("identity", "identity")
    tail_kind = "log"

    def log_density(self, x, a):
        alpha, theta = a
        return (
            math.log(alpha)
            + special.gammaln(alpha + theta)
            - special.gammaln(theta)
            + lgamma_ratio(np.asarray(x, dtype=float), theta, alpha + theta + 1.0)
        )

    def scores(self, x, a):
        alpha, theta = a
        psi_xc = special.digamma(x + alpha + theta + 1.0)
        psi_at = special.digamma(alpha + theta)
        return _stack(
            1.0 / alpha + psi_at - psi_xc,
            psi_at - special.digamma(theta) + special.digamma(x + theta) - psi_xc,
        )

    def cut(self, a):
        return 512

    # log-amplitude of the tail: f(x) ~ exp(amp) * x^-(alpha+1)
    def tail_log_amplitude(self, a) -> float:
        alpha, theta = a
        return (
            math.log(alpha)
            + special.gammaln(alpha + theta)
            - special.gammaln(theta)
        )

    def tail_log_rate(self, a) -> float:
        return float(a[0])

    def tail_far(self, a, req) -> list[tuple[float, float, tuple[float, ...]]]:
        """(amplitude, rate, poly-in-ln-x coefficients) per component for the
        limiting tail beyond the float horizon:

            f(x) -> A x^-(alpha+1),  s_a -> K_a - ln x,  s_t -> K_t.
        """
        from ..engines.moments import component_layout

        alpha, theta = a
        log_amp = self.tail_log_amplitude(a)
        amp = math.exp(log_amp)
        k_a = 1.0 / alpha + float(special.digamma(alpha + theta))
        k_t = float(special.digamma(alpha + theta) - special.digamma(theta))
        polys = {
            "mass": (1.0,),
            ("s", 0): (k_a, -1.0),
            ("s", 1): (k_t,),
            ("p", 0, 0): (k_a * k_a, -2.0 * k_a, 1.0),
            ("p", 0, 1): (k_a * k_t, -k_t),
            ("p", 1, 1): (k_t * k_t,),
            "nll": (-log_amp, 1.0 + alpha),
        }
        out = []
        for tag in component_layout(self.k, req):
            if tag == "pow":
                p = req.power
                rate2 = (1.0 + p) * (1.0 + alpha) - 1.0
                out.append((math.exp((1.0 + p) * log_amp), rate2, (1.0,)))
            else:
                out.append((amp, alpha, polys[tag]))
        return out


class DiscreteWeibull(FamilyImpl):
    """f(x) = b^(x^tau) - b^((x+1)^tau) with survival base b through m.

    form "mean-inverse": b = 1/(m+1)  (tau=1 gives Geometric mean-inverse).
    form "mean":         b = m/(m+1)  (tau=1 gives Geometric mean).
    """

    family_id = "discreteweibull"
    support = SupportKind.DISCRETE
    param_names = ("m", "tau")
    info_coords = ("identity", "identity")
    tail_kind = "stretched"

    def __init__(self, form: str):
        assert form in ("mean-inverse", "mean")
        self.form = form
        self.label = form

    def base_rate(self, m: float) -> tuple[float, float]:
        """(L, dL/dm) with survival S(x) = exp(-L x^tau)."""
        if self.form == "mean-inverse":
            return math.log1p(m), 1.0 / (m + 1.0)
        return math.log1p(1.0 / m), -1.0 / (m * (m + 1.0))

    @staticmethod
    def _svd_terms(x: np.ndarray, L: float, tau: float):
        """Stable per-x quantities (s, rho, delta) for x >= 1.

        s = L x^tau, rho = tau*ln(1+1/x), delta = ln S(x) - ln S(x+1) >= 0.
        Overflow (huge tau) saturates to inf, which downstream maps to a
        dead zero-mass point.
        """
        with np.errstate(over="ignore"):
            xt = np.power(x, tau)
            s = L * xt
            rho = tau * np.log1p(1.0 / x)
            delta = s * np.expm1(rho)
        return s, rho, delta

    def log_density(self, x, a):
        m, tau = a
        L, _ = self.base_rate(m)
        x = np.asarray(x, dtype=float)
        out = np.empty(x.shape)
        zero = x == 0.0
        if np.any(zero):
            out[zero] = math.log(-math.expm1(-L))
        pos = ~zero
        if np.any(pos):
            s, _, delta = self._svd_terms(x[pos], L, tau)
            with np.errstate(divide="ignore"):
                out[pos] = -s + np.log(-np.expm1(-delta))
        return out

    def scores(self, x, a):
        m, tau = a
        L, dLdm = self.base_rate(m)
        x = np.asarray(x, dtype=float)
        s_m = np.empty(x.shape)
        s_t = np.empty(x.shape)
        zero = x == 0.0
        if np.any(zero):
            # f(0) = 1 - exp(-L)
            s_m[zero] = dLdm * math.exp(-L) / (-math.expm1(-L))
            s_t[zero] = 0.0
        pos = ~zero
        if np.any(pos):
            xp = x[pos]
            s, rho, delta = self._svd_terms(xp, L, tau)
            denom = -np.expm1(-delta)
            small = delta < 1e-11
            with np.errstate(divide="ignore", invalid="ignore"):
                em = np.expm1(rho - delta)
                sm = dLdm * (s / L) * em / denom
                st = s * (np.log(xp) * em + (rho / tau) * np.exp(rho - delta)) / denom
            if np.any(small):
                # delta -> 0 limits: s_m -> dLdm*(1-s)/L, s_t -> ln(x)(1-s)+1/tau
                sm = np.where(small, dLdm * (1.0 - s) / L, sm)
                st = np.where(small, np.log(xp) * (1.0 - s) + 1.0 / tau, st)
            # dead zero-mass points (s overflow): any finite value works
            dead = ~np.isfinite(s) | (s > 800.0)
            if np.any(dead):
                sm = np.where(dead, 0.0, sm)
                st = np.where(dead, 0.0, st)
            s_m[pos] = sm
            s_t[pos] = st
        return _stack(s_m, s_t)

    def cut(self, a):
        return 512

    def tail_start(self, a, x0: int) -> float:
        m, tau = a
        L, _ = self.base_rate(m)
        with np.errstate(over="ignore"):
            return float(L * float(x0) ** tau)

    def tail_components(self, s: np.ndarray, a, req) -> np.ndarray:
        """Tail integrand stack in s = L x^tau coordinates.

        Rows are g_c(x(s)) * f(x(s)) * dx/ds with the pieces evaluated
        from (s, v = ln x) only, so the computation survives arbitrarily
        small tau where x itself would overflow a float:

            f * dx/ds = exp(-s) * W,  W = (1 - e^-delta) x / (tau s) -> 1.
        """
        from ..engines.moments import component_layout

        m, tau = a
        L, dLdm = self.base_rate(m)
        s = np.asarray(s, dtype=float)
        v = np.log(s / L) / tau
        inv_x = np.exp(-v)
        rho = tau * np.log1p(inv_x)
        delta = s * np.expm1(rho)

        n = s.size
        s_m = np.empty(n)
        s_t = np.empty(n)
        W = np.empty(n)
        log_denom = np.empty(n)  # ln(1 - exp(-delta))

        tiny = delta < 1e-11
        full = ~tiny
        if np.any(full):
            sf, vf, rf, df = s[full], v[full], rho[full], delta[full]
            denom = -np.expm1(-df)
            em = np.expm1(rf - df)
            s_m[full] = dLdm * (sf / L) * em / denom
            s_t[full] = sf * (vf * em + (rf / tau) * np.exp(rf - df)) / denom
            W[full] = denom * np.exp(vf) / (tau * sf)
            log_denom[full] = np.log(denom)
        if np.any(tiny):
            st_, vt_, rt_ = s[tiny], v[tiny], rho[tiny]
            s_m[tiny] = dLdm * (1.0 - st_) / L
            s_t[tiny] = vt_ * (1.0 - st_) + 1.0 / tau
            W[tiny] = 1.0
            with np.errstate(divide="ignore"):
                log_denom[tiny] = np.where(
                    rt_ > 0.0,
                    np.log(st_) + np.log(np.expm1(rt_)),
                    np.log(st_ * tau) - vt_,
                )

        fbar = np.exp(-s) * W
        rows = {"mass": fbar}
        if req.scores or req.products:
            rows[("s", 0)] = s_m * fbar
            rows[("s", 1)] = s_t * fbar
            rows[("p", 0, 0)] = s_m * s_m * fbar
            rows[("p", 0, 1)] = s_m * s_t * fbar
            rows[("p", 1, 1)] = s_t * s_t * fbar
        if req.nll:
            rows["nll"] = (s - log_denom) * fbar
        if req.power is not None:
            p = req.power
            rows["pow"] = np.exp(-(1.0 + p) * s + p * log_denom) * W
        return np.vstack([rows[tag] for tag in component_layout(self.k, req)])


class GenPoisson(FamilyImpl):
    """f(x) = lam (lam + sigma x)^(x-1) exp(-(lam + sigma x)) / x!.

    A proper distribution for sigma < 1; for sigma >= 1 the total mass is
    strictly below 1 (the summation engine reports the deficit and the
    prior layer applies an explicit policy).
    """

    family_id = "genpoisson"
    label = "standard"
    support = SupportKind.DISCRETE
    param_names = ("lam", "sigma")
    info_coords = ("identity", "identity")
    tail_kind = "exp"

    def log_density(self, x, a):
        lam, sig = a
        t = lam + sig * x
        return (
            math.log(lam)
            + (x - 1.0) * np.log(t)
            - t
            - special.gammaln(x + 1.0)
        )

    def scores(self, x, a):
        lam, sig = a
        t = lam + sig * x
        return _stack(
            1.0 / lam - 1.0 + (x - 1.0) / t,
            -x + x * (x - 1.0) / t,
        )

    def cut(self, a):
        lam, sig = a
        if sig < 1.0:
            mean = lam / (1.0 - sig)
            sd = math.sqrt(lam) / (1.0 - sig) ** 1.5
            return _clip_cut(mean + 10.0 * sd + 512.0)
        return _clip_cut(3.0 * lam + 512.0)

    def bump(self, a):
        lam, sig = a
        if sig < 1.0:
            mean = lam / (1.0 - sig)
            sd = math.sqrt(lam) / (1.0 - sig) ** 1.5
            if mean + 10.0 * sd + 512.0 >= CUT_CAP:
                return mean, sd
        return None

    def tail_rate(self, a):
        _, sig = a
        # asymptotic decay of ln f: -(sigma - 1 - ln sigma), zero at sigma=1
        return max(sig - 1.0 - math.log(sig), 0.0)
