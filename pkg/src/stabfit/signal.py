"""Signal pipeline: flux composition, extrema increments, density comparison.

A uniformly sampled probe signal is reduced to the increments between its
successive local extrema; those increments are treated as an approximately
independent heavy-tailed sample, fitted with the general stable estimator,
and the fitted density is compared against the empirical histogram and the
empirical tail slope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .density import stable_pdf, survival_series
from .estimator import GeneralEstimate, estimate_general
from .params import FormAParams

__all__ = [
    "SignalSeries", "FluxConstants", "DensityComparison",
    "compose_flux", "extract_extrema", "extrema_increments",
    "tail_slope", "analyze", "stable_pdf",
]


@dataclass(frozen=True)
class SignalSeries:
    """Uniformly sampled channel: values, sampling interval dt (s), start t0 (s)."""

    values: np.ndarray
    dt: float
    t0: float = 0.0
    channel: str = ""

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1:
            raise ValueError("values must be one-dimensional")
        object.__setattr__(self, "values", v)
        if not (math.isfinite(self.dt) and self.dt > 0.0):
            raise ValueError("dt must be a positive real")
        if not math.isfinite(self.t0):
            raise ValueError("t0 must be finite")

    def __len__(self):
        return self.values.size

    def times(self):
        return self.t0 + self.dt * np.arange(self.values.size)


@dataclass(frozen=True)
class FluxConstants:
    c_light: float
    b_field: float
    delta_theta: float
    r_mean: float

    def __post_init__(self):
        for name in ("c_light", "b_field", "delta_theta", "r_mean"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0.0):
                raise ValueError(f"{name} must be strictly positive")


@dataclass(frozen=True)
class DensityComparison:
    """Empirical vs fitted density of extrema increments.

    histogram and theoretical are (bins, 2) arrays of (x, density);
    tail_slope_theoretical is None when the fitted law has no power tail
    (alpha at 2) or too few far-tail points to fit.
    """

    histogram: np.ndarray
    fitted: GeneralEstimate
    theoretical: np.ndarray
    tail_slope_empirical: float
    tail_slope_theoretical: float | None = field(default=None)


def compose_flux(dn: SignalSeries, phi1: SignalSeries, phi2: SignalSeries,
                 k: FluxConstants) -> SignalSeries:
    """Radial fluctuation flux from a density probe and two poloidal potentials.

    Elementwise dn * (c_light/b_field) * (phi1 - phi2)/(delta_theta * r_mean):
    the density fluctuation times the ExB radial velocity estimated from the
    poloidal electric field (potential difference over probe separation).
    """
    for other in (phi1, phi2):
        if (len(other) != len(dn) or other.dt != dn.dt or other.t0 != dn.t0):
            raise ValueError("mismatched series geometry")
    scale = k.c_light / (k.b_field * k.delta_theta * k.r_mean)
    vals = dn.values * scale * (phi1.values - phi2.values)
    return SignalSeries(values=vals, dt=dn.dt, t0=dn.t0, channel="flux")


def extract_extrema(s: SignalSeries) -> list[tuple[int, float]]:
    """Interior local extrema of the series as (index, value) pairs.

    Output strictly alternates maxima and minima; the series endpoints never
    qualify; a flat plateau bordered below (or above) on both sides counts
    once, at its first index. Monotone or too-short input yields [].
    """
    v = s.values
    if v.size < 3:
        return []
    # Compress equal-value runs so plateaus become single points.
    starts = np.concatenate(([0], np.nonzero(np.diff(v) != 0.0)[0] + 1))
    if starts.size < 3:
        return []
    d = np.sign(np.diff(v[starts]))
    turn = d[:-1] != d[1:]
    idx = starts[1:-1][turn]
    return [(int(i), float(v[i])) for i in idx]


def extrema_increments(ext) -> np.ndarray:
    """First differences of extrema values; alternates in sign by construction."""
    if len(ext) < 2:
        raise ValueError("need at least 2 extrema to form increments")
    vals = np.array([value for _, value in ext], dtype=float)
    return np.diff(vals)


def _tail_points(sample, fraction):
    x = np.abs(np.asarray(sample, dtype=float).ravel())
    n = x.size
    if n < 100:
        raise ValueError("tail_slope requires at least 100 points")
    if not (0.0 < fraction < 0.5):
        raise ValueError("fraction must lie in (0, 0.5)")
    m = int(fraction * n)
    if m < 3:
        raise ValueError("fraction keeps fewer than 3 tail points")
    top = np.sort(x)[::-1][:m]
    if top[-1] <= 0.0:
        raise ValueError("tail points must be nonzero")
    return top, n


def tail_slope(sample, fraction) -> float:
    """Log-log slope of the empirical survival of |sample| over its top fraction.

    For a stable sample with alpha < 2 the population value is -alpha.
    """
    top, n = _tail_points(sample, fraction)
    surv = np.arange(1, top.size + 1) / n
    return float(np.polyfit(np.log(top), np.log(surv), 1)[0])


def _theoretical_tail_slope(p: FormAParams, xs) -> float | None:
    # Fit log S(x) vs log x at the same abscissae as the empirical fit,
    # using the far-tail series (valid once the standardized argument
    # clears 2; nearer points are dropped). No power tail at alpha = 2.
    if p.alpha >= 2.0 - 1e-6:
        return None
    if p.alpha == 1.0:
        shift, scale = (2.0 / math.pi) * p.beta * p.lam * math.log(p.lam), p.lam
    else:
        shift, scale = 0.0, p.lam ** (1.0 / p.alpha)
    xs = np.asarray(xs, dtype=float)
    keep = np.minimum(xs - shift, xs + shift) / scale > 2.0
    if keep.sum() < 3:
        return None
    x = xs[keep]
    s = survival_series(p, x, side="abs")
    return float(np.polyfit(np.log(x), np.log(s), 1)[0])


def analyze(s: SignalSeries, bins: int = 60, window=None,
            tail_fraction: float = 0.05) -> DensityComparison:
    """Fit a stable law to the extrema increments of s and compare densities.

    window, if given, is an absolute (t_lo, t_hi) time interval in seconds;
    the analysis restricts to samples inside it. The histogram uses
    equal-width bins over the [0.001, 0.999] quantile range of the
    increments and is renormalized so its trapezoid integral is exactly 1.
    """
    if bins < 4:
        raise ValueError("bins must be at least 4")
    v = s.values
    if window is not None:
        t_lo, t_hi = float(window[0]), float(window[1])
        if t_hi < t_lo:
            raise ValueError("window must satisfy t_lo <= t_hi")
        i0 = max(0, int(math.ceil((t_lo - s.t0) / s.dt - 1e-9)))
        i1 = min(v.size - 1, int(math.floor((t_hi - s.t0) / s.dt + 1e-9)))
        if i1 < i0:
            raise ValueError("window contains no samples")
        s = SignalSeries(values=v[i0:i1 + 1], dt=s.dt,
                         t0=s.t0 + i0 * s.dt, channel=s.channel)
    inc = extrema_increments(extract_extrema(s))
    fitted = estimate_general(inc)

    lo, hi = np.quantile(inc, [0.001, 0.999])
    if not hi > lo:
        raise ValueError("degenerate increment distribution")
    body = inc[(inc >= lo) & (inc <= hi)]
    counts, edges = np.histogram(body, bins=bins, range=(lo, hi), density=True)
    centers = 0.5 * (edges[:-1] + edges[1:])
    mass = np.trapezoid(counts, centers)
    if not mass > 0.0:
        raise ValueError("degenerate histogram")
    emp = counts / mass

    # beta_tilde can stray just outside [-1, 1] in small samples; the fitted
    # report keeps the raw value, the density evaluation needs an admissible one.
    p_fit = FormAParams(alpha=fitted.alpha_tilde,
                        beta=min(1.0, max(-1.0, fitted.beta_tilde)),
                        gamma=0.0, lam=fitted.lambda_tilde)
    theo = stable_pdf(p_fit, centers)

    slope_emp = tail_slope(inc, tail_fraction)
    top, _ = _tail_points(inc, tail_fraction)
    slope_theo = _theoretical_tail_slope(p_fit, top)

    return DensityComparison(
        histogram=np.column_stack((centers, emp)),
        fitted=fitted,
        theoretical=np.column_stack((centers, theo)),
        tail_slope_empirical=slope_emp,
        tail_slope_theoretical=slope_theo,
    )
