# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled summation kernels for the discrete families.

Each kernel accumulates, over the integer range [x0, x0+n), the full
component stack [mass, score_i..., score_i*score_j..., -ln(f)*f] with
Kahan-compensated sums.  Formulas mirror the NumPy reference
implementations; equivalence is pinned by tests.
"""

from libc.math cimport exp, expm1, lgamma, log, log1p, pow

ctypedef double (*dg_t)(double)


cdef inline double c_digamma(double z) nogil:
    # recurrence to z >= 8, then the standard asymptotic series
    cdef double acc = 0.0
    cdef double f
    while z < 8.0:
        acc -= 1.0 / z
        z += 1.0
    f = 1.0 / (z * z)
    return acc + log(z) - 0.5 / z - f * (
        1.0 / 12.0
        - f * (1.0 / 120.0 - f * (1.0 / 252.0 - f * (1.0 / 240.0 - f / 132.0)))
    )


cdef inline void _acc(double[::1] out, double[::1] comp, double *carry, int ncomp) nogil:
    # one Kahan step per component
    cdef int i
    cdef double y, t
    for i in range(ncomp):
        y = comp[i] - carry[i]
        t = out[i] + y
        carry[i] = (t - out[i]) - y
        out[i] = t


cdef inline void _fill2(double[::1] comp, double f, double logf, double s1, double s2) nogil:
    comp[0] = f
    comp[1] = s1 * f
    comp[2] = s2 * f
    comp[3] = s1 * s1 * f
    comp[4] = s1 * s2 * f
    comp[5] = s2 * s2 * f
    comp[6] = -logf * f if f > 0.0 else 0.0


cdef inline void _fill1(double[::1] comp, double f, double logf, double s1) nogil:
    comp[0] = f
    comp[1] = s1 * f
    comp[2] = s1 * s1 * f
    comp[3] = -logf * f if f > 0.0 else 0.0


def poisson_block(double lam, double x0, long n, double[::1] out):
    cdef double carry[4]
    cdef double comp_arr[4]
    cdef double[::1] comp = comp_arr
    cdef long i
    cdef double x, logf, f
    cdef double llam = log(lam)
    for i in range(4):
        carry[i] = 0.0
    with nogil:
        for i in range(n):
            x = x0 + i
            logf = x * llam - lam - lgamma(x + 1.0)
            f = exp(logf)
            _fill1(comp, f, logf, x / lam - 1.0)
            _acc(out, comp, carry, 4)


def geometric_block(double m, int mean_form, double x0, long n, double[::1] out):
    cdef double carry[4]
    cdef double comp_arr[4]
    cdef double[::1] comp = comp_arr
    cdef long i
    cdef double x, logf, f, s
    cdef double logq, log1mq
    if mean_form:
        logq = -log1p(m)
        log1mq = -log1p(1.0 / m)
    else:
        logq = -log1p(1.0 / m)
        log1mq = -log1p(m)
    for i in range(4):
        carry[i] = 0.0
    with nogil:
        for i in range(n):
            x = x0 + i
            logf = logq + x * log1mq
            f = exp(logf)
            if mean_form:
                s = x / m - (x + 1.0) / (m + 1.0)
            else:
                s = 1.0 / m - (x + 1.0) / (m + 1.0)
            _fill1(comp, f, logf, s)
            _acc(out, comp, carry, 4)


def negbinom_block(double r, double m, int mean_form, double x0, long n, double[::1] out):
    cdef double carry[7]
    cdef double comp_arr[7]
    cdef double[::1] comp = comp_arr
    cdef long i
    cdef double x, logf, f, s_r, s_m
    cdef double logq, log1mq
    cdef double lg_r = lgamma(r)
    cdef double dg_r = c_digamma(r)
    if mean_form:
        logq = -log1p(m)
        log1mq = -log1p(1.0 / m)
    else:
        logq = -log1p(1.0 / m)
        log1mq = -log1p(m)
    for i in range(7):
        carry[i] = 0.0
    with nogil:
        for i in range(n):
            x = x0 + i
            logf = lgamma(x + r) - lg_r - lgamma(x + 1.0) + r * logq + x * log1mq
            f = exp(logf)
            s_r = c_digamma(x + r) - dg_r + logq
            if mean_form:
                s_m = x / m - (r + x) / (m + 1.0)
            else:
                s_m = r / m - (r + x) / (m + 1.0)
            _fill2(comp, f, logf, s_r, s_m)
            _acc(out, comp, carry, 7)


def waring_block(double alpha, double theta, double x0, long n, double[::1] out):
    cdef double carry[7]
    cdef double comp_arr[7]
    cdef double[::1] comp = comp_arr
    cdef long i
    cdef double x, logf, f, s_a, s_t, psi_xc
    cdef double c = alpha + theta + 1.0
    cdef double lead = log(alpha) + lgamma(alpha + theta) - lgamma(theta)
    cdef double psi_at = c_digamma(alpha + theta)
    cdef double psi_t = c_digamma(theta)
    for i in range(7):
        carry[i] = 0.0
    with nogil:
        for i in range(n):
            x = x0 + i
            logf = lead + lgamma(x + theta) - lgamma(x + c)
            f = exp(logf)
            psi_xc = c_digamma(x + c)
            s_a = 1.0 / alpha + psi_at - psi_xc
            s_t = psi_at - psi_t + c_digamma(x + theta) - psi_xc
            _fill2(comp, f, logf, s_a, s_t)
            _acc(out, comp, carry, 7)


def genpoisson_block(double lam, double sig, double x0, long n, double[::1] out):
    cdef double carry[7]
    cdef double comp_arr[7]
    cdef double[::1] comp = comp_arr
    cdef long i
    cdef double x, t, logf, f, s_l, s_s
    cdef double llam = log(lam)
    for i in range(7):
        carry[i] = 0.0
    with nogil:
        for i in range(n):
            x = x0 + i
            t = lam + sig * x
            logf = llam + (x - 1.0) * log(t) - t - lgamma(x + 1.0)
            f = exp(logf)
            s_l = 1.0 / lam - 1.0 + (x - 1.0) / t
            s_s = -x + x * (x - 1.0) / t
            _fill2(comp, f, logf, s_l, s_s)
            _acc(out, comp, carry, 7)


def dweibull_block(double m, double tau, int mean_form, double x0, long n, double[::1] out):
    cdef double carry[7]
    cdef double comp_arr[7]
    cdef double[::1] comp = comp_arr
    cdef long i
    cdef double x, logf, f, s_m, s_t
    cdef double s, rho, delta, denom, em, lnx
    cdef double L, dLdm
    if mean_form:
        L = log1p(1.0 / m)
        dLdm = -1.0 / (m * (m + 1.0))
    else:
        L = log1p(m)
        dLdm = 1.0 / (m + 1.0)
    for i in range(7):
        carry[i] = 0.0
    with nogil:
        for i in range(n):
            x = x0 + i
            if x == 0.0:
                f = -expm1(-L)
                logf = log(f)
                s_m = dLdm * exp(-L) / f
                s_t = 0.0
            else:
                lnx = log(x)
                s = L * pow(x, tau)
                rho = tau * log1p(1.0 / x)
                delta = s * expm1(rho)
                denom = -expm1(-delta)
                logf = -s + log(denom)
                f = exp(logf)
                if delta < 1e-11:
                    s_m = dLdm * (1.0 - s) / L
                    s_t = lnx * (1.0 - s) + 1.0 / tau
                else:
                    em = expm1(rho - delta)
                    s_m = dLdm * (s / L) * em / denom
                    s_t = s * (lnx * em + (rho / tau) * exp(rho - delta)) / denom
            _fill2(comp, f, logf, s_m, s_t)
            _acc(out, comp, carry, 7)
