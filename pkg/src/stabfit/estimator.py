"""Sign/log-magnitude estimation of stable-law parameters.

The strictly stable pipeline turns a sample into the statistics of
U = sign Y and V = log|Y| and reads (nu, theta, tau) estimates off their
sample means and variances. General stable samples first pass through the
three-point decimation Y' = Y1 - (Y2 + Y3)/2, which lands in the strictly
stable class without changing alpha; the strict estimates of the decimated
sample are then clamped and mapped back to (alpha, beta, lambda). gamma is
not estimable this way: the transform erases it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import EULER_GAMMA, _ONE_SNAP, tanpi, theta_bound

# Below this, tan(pi alpha/2) is numerically zero and beta is unidentifiable.
_BETA_TAN_EPS = 1e-8


@dataclass(frozen=True)
class UVStats:
    """Sample means and unbiased variances of the sign/log statistics."""

    a_u: float
    a_v: float
    b2_u: float
    b2_v: float
    n: int


@dataclass(frozen=True)
class StrictEstimate:
    """Raw and clamped (nu, theta, tau) estimates for one strict sample."""

    nu_hat: float
    nu_tilde: float
    theta_tilde: float
    tau_tilde: float
    clamped: bool


@dataclass(frozen=True)
class GeneralEstimate:
    """Back-converted (alpha, beta, lambda) estimates with diagnostics.

    ``strict`` holds the post-clamp estimates of the decimated sample:
    nu_tilde and tau_tilde straight from the strict pipeline, theta_tilde
    after the |theta| cap. ``m`` is the decimated sample size actually
    consumed, after ``dropped_zeros`` exact zeros were removed.
    """

    alpha_tilde: float
    beta_tilde: float
    lambda_tilde: float
    strict: StrictEstimate
    n: int
    m: int
    dropped_zeros: int
    theta_clamped: bool
    beta_indeterminate: bool


def uv_stats(sample) -> UVStats:
    """Means and unbiased variances of sign(Y) and log|Y|.

    Rejects samples shorter than 2 and any exact zero: log|0| is undefined
    and P(Y = 0) = 0 for stable laws, so a zero signals bad input.
    """
    y = np.asarray(sample, dtype=float)
    if y.ndim != 1:
        raise ValueError("sample must be one-dimensional")
    n = y.size
    if n < 2:
        raise ValueError("sample length >= 2 required")
    if np.any(y == 0.0) or not np.all(np.isfinite(y)):
        raise ValueError("sample contains zeros or non-finite values")
    u = np.sign(y)
    v = np.log(np.abs(y))
    return UVStats(
        a_u=float(u.mean()),
        a_v=float(v.mean()),
        b2_u=float(u.var(ddof=1)),
        b2_v=float(v.var(ddof=1)),
        n=int(n),
    )


def estimate_strict(sample) -> StrictEstimate:
    """(nu, theta, tau) estimates from a strictly stable sample.

    theta_tilde and tau_tilde are the sample means of U and V; nu_hat is
    (6/pi^2) B_V^2 - (3/2) B_U^2 + 1 and nu_tilde lifts it onto the
    admissible region nu >= (1 + |theta|)^2 / 4.
    """
    st = uv_stats(sample)
    theta_t = st.a_u
    nu_hat = 6.0 / math.pi ** 2 * st.b2_v - 1.5 * st.b2_u + 1.0
    floor = (1.0 + abs(theta_t)) ** 2 / 4.0
    clamped = nu_hat < floor
    return StrictEstimate(
        nu_hat=nu_hat,
        nu_tilde=floor if clamped else nu_hat,
        theta_tilde=theta_t,
        tau_tilde=st.a_v,
        clamped=clamped,
    )


def triplet_transform(sample) -> np.ndarray:
    """Y'_j = Y_{3j-2} - (Y_{3j-1} + Y_{3j})/2 over disjoint triples.

    Uses floor(n/3) disjoint triples; the 1-2 leftover observations are
    discarded. Output values can be exactly zero and must be handled
    downstream.
    """
    y = np.asarray(sample, dtype=float)
    n = y.size
    if n < 3:
        raise ValueError("sample length >= 3 required")
    m = n // 3
    blocks = y[: 3 * m].reshape(m, 3)
    return blocks[:, 0] - 0.5 * (blocks[:, 1] + blocks[:, 2])


def estimate_general(sample) -> GeneralEstimate:
    """Full pipeline for a general stable sample: decimate, estimate, clamp,
    and map back to (alpha, beta, lambda).

    Exact zeros produced by the decimation are dropped before the log
    statistics (they occur with probability zero in theory but positive
    probability in floating point) and counted in the report.
    """
    y = np.asarray(sample, dtype=float)
    if y.size < 6:
        raise ValueError("sample length >= 6 required (two decimated points)")
    t = triplet_transform(y)
    nz = t[t != 0.0]
    dropped = int(t.size - nz.size)
    if nz.size < 2:
        raise ValueError("fewer than 2 nonzero decimated points remain")
    st = estimate_strict(nz)
    cap = theta_bound(st.nu_tilde)
    theta_star = math.copysign(min(cap, abs(st.theta_tilde)), st.theta_tilde)
    theta_clamped = abs(st.theta_tilde) > cap
    nu_star = st.nu_tilde
    tau_star = st.tau_tilde
    beta_indeterminate = False
    if abs(nu_star - 1.0) < _ONE_SNAP:
        alpha_t = 1.0
        beta_t = -math.pi / math.log(2.0) * tanpi(theta_star / 2.0)
        lam_t = 0.5 * math.exp(tau_star) * math.cos(math.pi * theta_star / 2.0)
    else:
        alpha_t = 1.0 / math.sqrt(nu_star)
        f = 2.0 ** (1.0 - alpha_t)
        ta = tanpi(alpha_t / 2.0)
        if abs(ta) < _BETA_TAN_EPS:
            # alpha at the Gaussian end: the law does not depend on beta.
            beta_t = 0.0
            beta_indeterminate = True
        else:
            one_minus_f = -math.expm1((1.0 - alpha_t) * math.log(2.0))
            beta_t = (1.0 + f) / one_minus_f * tanpi(theta_star * alpha_t / 2.0) / ta
        lam_t = (math.cos(math.pi * theta_star * alpha_t / 2.0) / (1.0 + f)
                 * math.exp(tau_star * alpha_t + EULER_GAMMA * (alpha_t - 1.0)))
    return GeneralEstimate(
        alpha_tilde=alpha_t,
        beta_tilde=beta_t,
        lambda_tilde=lam_t,
        strict=StrictEstimate(
            nu_hat=st.nu_hat,
            nu_tilde=nu_star,
            theta_tilde=theta_star,
            tau_tilde=tau_star,
            clamped=st.clamped,
        ),
        n=int(y.size),
        m=int(nz.size),
        dropped_zeros=dropped,
        theta_clamped=theta_clamped,
        beta_indeterminate=beta_indeterminate,
    )
