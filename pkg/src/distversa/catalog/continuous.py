"""Continuous severity families on [0, inf).

Every family provides closed-form scores and, where available, a
closed-form Fisher information matrix used both as the production fast
path and as an oracle for the generic quadrature engine.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special

from ..families import FamilyImpl
from ..params import SupportKind

EULER = float(np.euler_gamma)
PI2_6 = math.pi**2 / 6.0
LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


def _stack(*rows: np.ndarray) -> np.ndarray:
    return np.vstack([np.asarray(r, dtype=float) for r in rows])


class ExponentialRate(FamilyImpl):
    """f(y) = lam * exp(-lam*y), the rate parameterization."""

    family_id = "exponential"
    label = "rate"
    support = SupportKind.CONTINUOUS
    param_names = ("lam",)
    info_coords = ("identity",)

    def log_density(self, y, a):
        (lam,) = a
        return math.log(lam) - lam * y

    def scores(self, y, a):
        (lam,) = a
        return _stack(1.0 / lam - y)

    def analytic_fisher(self, a):
        (lam,) = a
        return np.array([[lam**-2.0]])

    def peak_hint(self, a):
        return -math.log(a[0]), 1.0


class ExponentialMean(FamilyImpl):
    """f(y) = exp(-y/theta)/theta, the mean parameterization."""

    family_id = "exponential"
    label = "mean"
    support = SupportKind.CONTINUOUS
    param_names = ("theta",)
    info_coords = ("identity",)

    def log_density(self, y, a):
        (theta,) = a
        return -math.log(theta) - y / theta

    def scores(self, y, a):
        (theta,) = a
        return _stack(-1.0 / theta + y / theta**2)

    def analytic_fisher(self, a):
        (theta,) = a
        return np.array([[theta**-2.0]])

    def peak_hint(self, a):
        return math.log(a[0]), 1.0


class ExponentialPower(FamilyImpl):
    """Exponential with rate beta**p for a fixed exponent p.

    Not a catalog member; used to exercise reparameterization behavior
    (versatility scales by p, Jeffreys densities transform covariantly).
    """

    family_id = "exponential-power"
    support = SupportKind.CONTINUOUS
    param_names = ("beta",)
    info_coords = ("identity",)

    def __init__(self, p: float):
        self.p = float(p)
        self.label = f"rate-power-{p:g}"

    def log_density(self, y, a):
        (beta,) = a
        return self.p * math.log(beta) - beta**self.p * y

    def scores(self, y, a):
        (beta,) = a
        return _stack(self.p / beta - self.p * beta ** (self.p - 1.0) * y)

    def analytic_fisher(self, a):
        (beta,) = a
        return np.array([[(self.p / beta) ** 2]])

    def peak_hint(self, a):
        return -self.p * math.log(a[0]), 1.0


class Gamma(FamilyImpl):
    """f(y) = lam^r y^(r-1) exp(-lam*y) / Gamma(r)."""

    family_id = "gamma"
    label = "standard"
    support = SupportKind.CONTINUOUS
    param_names = ("r", "lam")
    info_coords = ("identity", "identity")

    def log_density(self, y, a):
        r, lam = a
        return (
            r * math.log(lam)
            + special.xlogy(r - 1.0, y)
            - lam * y
            - special.gammaln(r)
        )

    def scores(self, y, a):
        r, lam = a
        with np.errstate(divide="ignore"):
            ln_y = np.log(y)
        return _stack(
            math.log(lam) + ln_y - special.digamma(r),
            r / lam - y,
        )

    def analytic_fisher(self, a):
        r, lam = a
        psi1 = float(special.polygamma(1, r))
        return np.array([[psi1, -1.0 / lam], [-1.0 / lam, r / lam**2]])

    def peak_hint(self, a):
        r, lam = a
        return math.log(max(r, 0.25) / lam), max(0.05, 1.0 / math.sqrt(max(r, 1.0)))


class Weibull(FamilyImpl):
    """f(y) = tau*lam*y^(tau-1)*exp(-lam*y^tau)."""

    family_id = "weibull"
    label = "standard"
    support = SupportKind.CONTINUOUS
    param_names = ("lam", "tau")
    info_coords = ("identity", "identity")

    def log_density(self, y, a):
        lam, tau = a
        return (
            math.log(tau)
            + math.log(lam)
            + special.xlogy(tau - 1.0, y)
            - lam * np.power(y, tau)
        )

    def scores(self, y, a):
        lam, tau = a
        yt = np.power(y, tau)
        with np.errstate(divide="ignore", invalid="ignore"):
            ln_y = np.log(y)
            s_tau = 1.0 / tau + ln_y * (1.0 - lam * yt)
        return _stack(1.0 / lam - yt, s_tau)

    def analytic_fisher(self, a):
        lam, tau = a
        c = 1.0 - EULER - math.log(lam)
        return np.array(
            [
                [lam**-2.0, c / (lam * tau)],
                [c / (lam * tau), (c**2 + PI2_6) / tau**2],
            ]
        )

    def peak_hint(self, a):
        lam, tau = a
        return -math.log(lam) / tau, max(0.05, 1.0 / tau)


class Pareto2(FamilyImpl):
    """f(y) = alpha*theta^alpha / (y+theta)^(alpha+1)."""

    family_id = "pareto2"
    label = "standard"
    support = SupportKind.CONTINUOUS
    param_names = ("alpha", "theta")
    info_coords = ("identity", "identity")

    def log_density(self, y, a):
        alpha, theta = a
        return (
            math.log(alpha)
            + alpha * math.log(theta)
            - (alpha + 1.0) * np.log(y + theta)
        )

    def scores(self, y, a):
        alpha, theta = a
        return _stack(
            1.0 / alpha + math.log(theta) - np.log(y + theta),
            alpha / theta - (alpha + 1.0) / (y + theta),
        )

    def analytic_fisher(self, a):
        alpha, theta = a
        return np.array(
            [
                [alpha**-2.0, -1.0 / (theta * (alpha + 1.0))],
                [
                    -1.0 / (theta * (alpha + 1.0)),
                    alpha / (theta**2 * (alpha + 2.0)),
                ],
            ]
        )

    def peak_hint(self, a):
        alpha, theta = a
        return math.log(theta), 1.0


class Lognormal(FamilyImpl):
    """f(y) = exp(-(ln y - ln nu)^2/(2 sigma^2)) / (sqrt(2 pi) sigma y).

    The information coordinate of ``nu`` is ``ln(nu)`` (the location of
    the distribution of ln Y); the parameter prior is placed on ``nu``.
    """

    family_id = "lognormal"
    label = "standard"
    support = SupportKind.CONTINUOUS
    param_names = ("nu", "sigma")
    info_coords = ("log", "identity")

    def log_density(self, y, a):
        nu, sigma = a
        y = np.asarray(y, dtype=float)
        out = np.full(y.shape, -math.inf)
        pos = y > 0
        ln_y = np.log(y[pos])
        z = (ln_y - math.log(nu)) / sigma
        out[pos] = -0.5 * z**2 - math.log(sigma) - ln_y - LOG_SQRT_2PI
        return out

    def scores(self, y, a):
        nu, sigma = a
        with np.errstate(divide="ignore"):
            z = (np.log(y) - math.log(nu)) / sigma
        return _stack(z / sigma, (z**2 - 1.0) / sigma)

    def analytic_fisher(self, a):
        nu, sigma = a
        return np.array([[sigma**-2.0, 0.0], [0.0, 2.0 * sigma**-2.0]])

    def peak_hint(self, a):
        nu, sigma = a
        return math.log(nu), sigma


class GenGamma(FamilyImpl):
    """f(y) = tau*lam^r*y^(tau*r-1)*exp(-lam*y^tau)/Gamma(r).

    Umbrella family; reduces to Exponential (r=1, tau=1), Gamma (tau=1),
    and Weibull (r=1).
    """

    family_id = "gengamma"
    label = "standard"
    support = SupportKind.CONTINUOUS
    param_names = ("r", "lam", "tau")
    info_coords = ("identity", "identity", "identity")

    def log_density(self, y, a):
        r, lam, tau = a
        return (
            math.log(tau)
            + r * math.log(lam)
            + special.xlogy(tau * r - 1.0, y)
            - lam * np.power(y, tau)
            - special.gammaln(r)
        )

    def scores(self, y, a):
        r, lam, tau = a
        yt = np.power(y, tau)
        with np.errstate(divide="ignore", invalid="ignore"):
            ln_y = np.log(y)
            s_tau = 1.0 / tau + (r - lam * yt) * ln_y
        return _stack(
            math.log(lam) + tau * ln_y - special.digamma(r),
            r / lam - yt,
            s_tau,
        )

    def analytic_fisher(self, a):
        # Entries follow from moments of z = lam*y^tau ~ Gamma(r, 1) and
        # the log-moment identities E[z ln z] = r*psi(r)+1, etc.
        r, lam, tau = a
        psi = float(special.digamma(r))
        psi1 = float(special.polygamma(1, r))
        ll = math.log(lam)
        i_rr = psi1
        i_rl = -1.0 / lam
        i_rt = (ll - psi) / tau
        i_ll = r / lam**2
        i_lt = (r * psi + 1.0 - r * ll) / (lam * tau)
        i_tt = (
            1.0
            + 2.0 * psi
            + r * (psi**2 + psi1)
            - 2.0 * ll * (r * psi + 1.0)
            + r * ll**2
        ) / tau**2
        return np.array(
            [[i_rr, i_rl, i_rt], [i_rl, i_ll, i_lt], [i_rt, i_lt, i_tt]]
        )

    def peak_hint(self, a):
        r, lam, tau = a
        v0 = (math.log(max(r, 0.25)) - math.log(lam)) / tau
        return v0, max(0.05, 1.0 / (tau * math.sqrt(max(r, 1.0))))
