"""Stable-law parameterizations and conversions between them.

Two coordinate systems are used throughout the package: the four-parameter
form ``(alpha, beta, gamma, lambda)`` attached to the characteristic function

    exp{lambda (i k gamma - |k|^alpha + i |k|^alpha beta tan(pi alpha / 2) sign k)}

for ``alpha != 1`` (with the usual logarithmic correction at ``alpha = 1``),
and the strictly-stable triple ``(nu, theta, tau)`` with ``nu = alpha^-2``.
This module owns the admissible boxes, the conversions in both directions,
the parameter map induced by the three-point decimation transform, and the
post-transform bound on ``|theta|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Euler's constant, to full double precision.
EULER_GAMMA = 0.5772156649015329

# Inputs this close to the alpha = 1 (nu = 1) branch point are snapped onto
# it; the branch formulas are not term-by-term limits of each other and
# tan(pi alpha / 2) loses all precision in between.
_ONE_SNAP = 1e-9


def tanpi(u):
    """tan(pi * u) with exact zeros at integers and signed poles at half-integers.

    Evaluating ``math.tan(math.pi * u)`` returns about -1.2e-16 at u = 1,
    which is enough to break identities that rely on theta being exactly 0
    at alpha = 2. Reducing the argument first keeps those corners exact.
    """
    r = u - round(u)
    if r == 0.0:
        return 0.0
    if abs(r) == 0.5:
        return math.copysign(math.inf, r)
    return math.tan(math.pi * r)


@dataclass(frozen=True)
class FormAParams:
    """Four-parameter stable law (alpha, beta, gamma, lambda).

    Attributes
    ----------
    alpha : float
        Characteristic exponent, 0 < alpha <= 2. Values within 1e-9 of 1
        are snapped to exactly 1.
    beta : float
        Skewness, -1 <= beta <= 1.
    gamma : float
        Shift-like parameter (unitless).
    lam : float
        Scale-like parameter, lambda > 0. Named ``lam`` because ``lambda``
        is reserved; serialized as ``"lambda"``.
    """

    alpha: float
    beta: float
    gamma: float = 0.0
    lam: float = 1.0

    def __post_init__(self):
        if abs(self.alpha - 1.0) < _ONE_SNAP and self.alpha != 1.0:
            object.__setattr__(self, "alpha", 1.0)

    def as_dict(self):
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "lambda": self.lam,
        }


@dataclass(frozen=True)
class StrictParams:
    """Strictly-stable parameter triple (nu, theta, tau).

    The admissible domain is nu >= 1/4, |theta| <= min(1, 2 sqrt(nu) - 1),
    tau finite. Values of nu within 1e-9 of 1 are snapped to exactly 1,
    mirroring the alpha snap of :class:`FormAParams`.
    """

    nu: float
    theta: float
    tau: float

    def __post_init__(self):
        if abs(self.nu - 1.0) < _ONE_SNAP and self.nu != 1.0:
            object.__setattr__(self, "nu", 1.0)

    def as_dict(self):
        return {"nu": self.nu, "theta": self.theta, "tau": self.tau}


def validate_formA(p: FormAParams) -> list[str]:
    """Return the list of violated box constraints; empty iff admissible."""
    bad = []
    if not (0.0 < p.alpha <= 2.0):
        bad.append("alpha")
    if not (-1.0 <= p.beta <= 1.0):
        bad.append("beta")
    if not math.isfinite(p.gamma):
        bad.append("gamma")
    if not (p.lam > 0.0 and math.isfinite(p.lam)):
        bad.append("lambda")
    return bad


def validate_strict(s: StrictParams) -> list[str]:
    """Return the list of violated domain constraints; empty iff valid."""
    bad = []
    if not (s.nu >= 0.25 and math.isfinite(s.nu)):
        bad.append("nu")
        theta_cap = 1.0
    else:
        theta_cap = min(1.0, 2.0 * math.sqrt(s.nu) - 1.0)
    if not abs(s.theta) <= theta_cap:
        bad.append("theta")
    if not math.isfinite(s.tau):
        bad.append("tau")
    return bad


def to_strict(p: FormAParams) -> StrictParams:
    """Convert a strictly stable form-A law to its (nu, theta, tau) triple.

    Requires gamma = 0 when alpha != 1 and beta = 0 when alpha = 1;
    outside the strictly stable class the relations below do not apply.
    """
    bad = validate_formA(p)
    if bad:
        raise ValueError(f"inadmissible parameters: {', '.join(bad)}")
    nu = p.alpha ** -2
    if p.alpha == 1.0:
        if p.beta != 0.0:
            raise ValueError("alpha = 1 with beta != 0 is not strictly stable")
        theta = (2.0 / math.pi) * math.atan(p.gamma)
        tau = math.log(p.lam) + 0.5 * math.log1p(p.gamma ** 2)
    else:
        if p.gamma != 0.0:
            raise ValueError("alpha != 1 with gamma != 0 is not strictly stable")
        bt = p.beta * tanpi(p.alpha / 2.0)
        theta = (2.0 / (math.pi * p.alpha)) * math.atan(bt)
        # at beta = +-1 the arctan route can land one ulp past the
        # admissibility cap; project back so the result always validates
        cap = min(1.0, 2.0 * math.sqrt(nu) - 1.0)
        if abs(theta) > cap:
            theta = math.copysign(cap, theta)
        # -log cos(arctan(x)) == log1p(x^2) / 2.  The Euler term carries a
        # 1/alpha like the rest of tau; this keeps E log|X| = tau (checked
        # by Monte Carlo against the sampler) and matches the constant in
        # the lambda_tilde back map.
        tau = (math.log(p.lam) + 0.5 * math.log1p(bt ** 2)
               - EULER_GAMMA * (p.alpha - 1.0)) / p.alpha
    return StrictParams(nu, theta, tau)


def from_strict(s: StrictParams) -> FormAParams:
    """Exact algebraic inverse of :func:`to_strict`.

    Round trips to 1e-12 componentwise. The (nu = 1, |theta| = 1) corner is
    rejected: it corresponds to gamma = +-inf.
    """
    bad = validate_strict(s)
    if bad:
        raise ValueError(f"invalid strict parameters: {', '.join(bad)}")
    if s.nu == 1.0:
        if abs(s.theta) == 1.0:
            raise ValueError("nu = 1 with |theta| = 1 is degenerate (gamma infinite)")
        gamma = tanpi(s.theta / 2.0)
        lam = math.exp(s.tau) * math.cos(math.pi * s.theta / 2.0)
        return FormAParams(1.0, 0.0, gamma, lam)
    alpha = 1.0 / math.sqrt(s.nu)
    ta = tanpi(alpha / 2.0)
    if ta == 0.0:
        # alpha = 2, where theta is pinned to 0 and beta is immaterial.
        beta = 0.0
    else:
        beta = tanpi(alpha * s.theta / 2.0) / ta
        if abs(beta) > 1.0:
            # theta at the admissibility cap can overshoot +-1 by an ulp
            beta = math.copysign(1.0, beta)
    lam = math.cos(math.pi * alpha * s.theta / 2.0) * math.exp(
        alpha * s.tau + EULER_GAMMA * (alpha - 1.0)
    )
    return FormAParams(alpha, beta, 0.0, lam)


def transform_params(p: FormAParams) -> FormAParams:
    """Parameters of Y' = Y1 - (Y2 + Y3)/2 for i.i.d. form-A variables Y.

    alpha is unchanged exactly; the output is strictly stable (gamma' = 0
    for alpha != 1, beta' = 0 for alpha = 1) whatever the input gamma.
    """
    bad = validate_formA(p)
    if bad:
        raise ValueError(f"inadmissible parameters: {', '.join(bad)}")
    f = 2.0 ** (1.0 - p.alpha)
    # 1 - 2^(1-alpha) via expm1 keeps beta' exact through alpha = 1.
    one_minus_f = -math.expm1((1.0 - p.alpha) * math.log(2.0))
    beta_t = p.beta * one_minus_f / (1.0 + f)
    lam_t = (1.0 + f) * p.lam
    if p.alpha == 1.0:
        gamma_t = -(math.log(2.0) / math.pi) * p.beta
    else:
        gamma_t = 0.0
    return FormAParams(p.alpha, beta_t, gamma_t, lam_t)


def theta_bound(t: float) -> float:
    """Largest |theta| reachable after the three-point transform at nu = t.

    Returns |H(t)| where H is the two-branch function attached to the
    clamp rule: the t != 1 branch is the image of beta = +-1 under the
    transform followed by the theta relation, and the t = 1 branch is its
    own closed form. H itself is negative for t > 1 (the transform factor
    1 - 2^(1-alpha) changes sign at alpha = 1); the clamp needs the
    magnitude only. No continuity across t = 1 is asserted.
    """
    if not t >= 0.25:
        raise ValueError("theta_bound requires t >= 1/4")
    if t == 1.0:
        return (2.0 / math.pi) * math.atan(math.log(2.0) / math.pi)
    rt = math.sqrt(t)
    f = math.exp((1.0 - 1.0 / rt) * math.log(2.0))
    h = (2.0 / math.pi) * rt * math.atan((1.0 - f) / (1.0 + f) * tanpi(0.5 / rt))
    return abs(h)
