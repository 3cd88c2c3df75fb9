"""Mean-square deviation bound machinery for the exponent estimate.

Everything needed to evaluate the closed-form upper bound on
E(alpha_tilde - alpha)^2 at a given (nu, theta, n): the auxiliary
polynomials P1, P2, P3, P3', the exact mean-square error of the unclamped
nu_hat, the fourth-moment and third-absolute-moment bounds for nu_tilde,
and their assembly into the final bound. All formulas are polynomial; the
(n - 1) powers are computed as exact integers before any division and the
theta polynomials are evaluated by Horner's rule in theta^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .moments import ZETA3, ZETA5, dv
from .params import StrictParams, validate_strict


def _require_valid(s: StrictParams, n: int):
    bad = validate_strict(s)
    if bad:
        raise ValueError(f"invalid strict parameters: {', '.join(bad)}")
    if n < 2:
        raise ValueError("n >= 2 required")


def p1(theta: float, n: int) -> float:
    """Order-1/n^3 polynomial of the fourth central moment of B_U^2.

    Four groups in powers of 1/(n-1). The published display of this
    polynomial does not vanish at theta = +-1 where B_U^2 is degenerate at
    zero; the theta^6 coefficient of the leading group and three
    coefficients of the second group are restored here so that
    b_u4_central reproduces the exact enumeration over sign vectors (the
    theta = 0 column is untouched).
    """
    if not abs(theta) <= 1.0:
        raise ValueError("|theta| <= 1 required")
    if n < 2:
        raise ValueError("n >= 2 required")
    t = theta * theta
    d = n - 1
    g1 = 16.0 * t * (15.0 + t * (-71.0 + t * (101.0 + t * -45.0)))
    g2 = 5.0 + t * (-96.0 + t * (322.0 + t * (-376.0 + t * 145.0)))
    g3 = -33.0 + t * (436.0 + t * (-1238.0 + t * (1300.0 + t * -465.0)))
    g4 = 5.0 + t * (-52.0 + t * (134.0 + t * (-132.0 + t * 45.0)))
    return g1 + 12.0 * g2 / d + 4.0 * g3 / d ** 2 + 16.0 * g4 / d ** 3


def b_u4_central(theta: float, n: int) -> float:
    """E (B_U^2 - E B_U^2)^4 = 48 theta^4 (1 - theta^2)^2 / n^2 + P1 / n^3."""
    t2 = theta * theta
    return 48.0 * t2 * t2 * (1.0 - t2) ** 2 / n ** 2 + p1(theta, n) / n ** 3


def p2(s: StrictParams, n: int) -> float:
    """Order-1/n^3 polynomial of the fourth central moment of B_V^2.

    Evaluated exactly as published, including the 17(1 - theta^6)/128
    group (printed with theta^8 elsewhere; the discrepancy is left as is
    and covered by one-sided Monte Carlo checks only).
    """
    _require_valid(s, n)
    nu, th = s.nu, s.theta
    dn = n - 1
    d = (math.pi ** 2 / 4.0) * (1.0 - th ** 2) + (math.pi ** 2 / 6.0) * (nu - 1.0)
    q4 = math.pi ** 4 * ((1.0 - th ** 4) / 8.0 + (nu ** 2 - 1.0) / 15.0)
    e6 = math.pi ** 6 * ((1.0 - th ** 6) / 32.0 + (nu ** 3 - 1.0) / 63.0)
    z3 = ZETA3 * (nu ** 1.5 - 1.0)
    z5 = ZETA5 * (nu ** 2.5 - 1.0)
    ga = (18.0 * d ** 4 + 39.0 * d ** 2 * q4 + 96.0 * z3 ** 2 * d
          + 8.0 * q4 ** 2 + 48.0 * e6 * d + 384.0 * z3 * z5
          + 2.0 * math.pi ** 8 * (17.0 * (1.0 - th ** 6) / 128.0
                                  + (nu ** 4 - 1.0) / 15.0))
    gb = (15.0 * d ** 4 + 25.0 * d ** 2 * q4 + 16.0 * e6 * d
          + 32.0 * z3 ** 2 * d + 2.0 * q4 ** 2)
    gc = (-32.0 * z3 ** 2 * d - 128.0 * z3 * z5 + 12.0 * d ** 2 * q4
          + 13.0 * d ** 4)
    gd = q4 ** 2 + 6.0 * d ** 4 - 48.0 * z3 ** 2 * d
    return 4.0 * ga + 12.0 * gb / dn + 12.0 * gc / dn ** 2 + 8.0 * gd / dn ** 3


def b_v4_central(s: StrictParams, n: int) -> float:
    """Leading bound (3/n^2)(q4 + 3 DV^2)^2 + P2/n^3 on the fourth central
    moment of B_V^2.

    The squared factor is the raw fourth moment of Vbar, not the centered
    E Vbar^4 - DV^2 that an exact expansion would carry, so this term
    overshoots the true moment; it is consumed only as an upper-bound
    ingredient downstream.
    """
    _require_valid(s, n)
    nu, th = s.nu, s.theta
    d = (math.pi ** 2 / 4.0) * (1.0 - th ** 2) + (math.pi ** 2 / 6.0) * (nu - 1.0)
    q4 = math.pi ** 4 * ((1.0 - th ** 4) / 8.0 + (nu ** 2 - 1.0) / 15.0)
    return 3.0 * (q4 + 3.0 * d ** 2) ** 2 / n ** 2 + p2(s, n) / n ** 3


def p3(s: StrictParams) -> float:
    """P3 = 3 * 3^(1/4) sqrt(theta^2 (1 - theta^2))
    + (6 * 3^(1/4) / pi^2) sqrt(q4 + 3 DV^2)."""
    _require_valid(s, 2)
    nu, th = s.nu, s.theta
    d = (math.pi ** 2 / 4.0) * (1.0 - th ** 2) + (math.pi ** 2 / 6.0) * (nu - 1.0)
    q4 = math.pi ** 4 * ((1.0 - th ** 4) / 8.0 + (nu ** 2 - 1.0) / 15.0)
    root3 = 3.0 ** 0.25
    return (3.0 * root3 * math.sqrt(th ** 2 * (1.0 - th ** 2))
            + 6.0 * root3 / math.pi ** 2 * math.sqrt(q4 + 3.0 * d ** 2))


def p3_prime(s: StrictParams, n: int) -> float:
    """P3' = n^(1/4) [(P3 + (3/2)(|P1|/n)^(1/4) + (6/pi^2)(|P2|/n)^(1/4))^4 - P3^4].

    Nonnegative by construction since both correction terms are.
    """
    _require_valid(s, n)
    base = p3(s)
    bump = (base
            + 1.5 * (abs(p1(s.theta, n)) / n) ** 0.25
            + 6.0 / math.pi ** 2 * (abs(p2(s, n)) / n) ** 0.25)
    return n ** 0.25 * (bump ** 4 - base ** 4)


def mse_nu(s: StrictParams, n: int) -> float:
    """Exact E (nu_hat - nu)^2 for the unclamped estimator at sample size n."""
    _require_valid(s, n)
    nu1 = s.nu - 1.0
    t2 = s.theta ** 2
    lead = (22.0 / 5.0 * nu1 ** 2 + 6.0 / 5.0 * (9.0 - 5.0 * t2) * nu1
            + 3.0 * (1.0 - t2) * (3.0 + t2))
    tail = (2.0 * nu1 ** 2 + 6.0 * (1.0 - t2) * nu1 + 9.0 * (1.0 - t2) ** 2)
    return lead / n + tail / (n * (n - 1))


def bound_nu4(s: StrictParams, n: int) -> float:
    """Upper bound P3^4/n^2 + P3'/n^(9/4) on E (nu_tilde - nu)^4."""
    return p3(s) ** 4 / n ** 2 + p3_prime(s, n) / n ** 2.25


def bound_abs3(s: StrictParams, n: int) -> float:
    """Upper bound sqrt(mse_nu) (P3^2 + sqrt(P3')/n^(1/8)) / n on E |nu_tilde - nu|^3.

    P3' is clipped at zero under the square root; it cannot actually go
    negative, but a real root is required and clipping only tightens an
    upper-bound ingredient.
    """
    pp = p3_prime(s, n)
    return math.sqrt(mse_nu(s, n)) * (p3(s) ** 2
                                      + math.sqrt(max(pp, 0.0)) / n ** 0.125) / n


def alpha_mse_bound(s: StrictParams, n: int) -> float:
    """Upper bound on E (alpha_tilde - alpha)^2 at the true (nu, theta).

    mse_nu/(4 nu^3) + (12/nu^(3/2)) bound_abs3 + 144 bound_nu4, with n the
    strictly-stable sample size actually consumed by the estimator (the
    transformed size floor(len/3) when the three-point transform is used).
    """
    _require_valid(s, n)
    return (mse_nu(s, n) / (4.0 * s.nu ** 3)
            + 12.0 / s.nu ** 1.5 * bound_abs3(s, n)
            + 144.0 * bound_nu4(s, n))


@dataclass(frozen=True)
class BoundReport:
    """All intermediate bound quantities at one (nu, theta, n)."""

    nu: float
    theta: float
    n: int
    dv: float
    p1: float
    p2: float
    p3: float
    p3_prime: float
    mse_nu: float
    bound_nu4: float
    bound_abs3: float
    bound_alpha2: float
    p3_prime_clipped: bool

    def as_dict(self):
        return {
            "nu": self.nu, "theta": self.theta, "n": self.n,
            "dv": self.dv, "p1": self.p1, "p2": self.p2,
            "p3": self.p3, "p3_prime": self.p3_prime,
            "mse_nu": self.mse_nu, "bound_nu4": self.bound_nu4,
            "bound_abs3": self.bound_abs3, "bound_alpha2": self.bound_alpha2,
            "p3_prime_clipped": self.p3_prime_clipped,
        }


def bound_report(s: StrictParams, n: int) -> BoundReport:
    """Evaluate every bound quantity at (s, n) in one pass."""
    _require_valid(s, n)
    pp = p3_prime(s, n)
    return BoundReport(
        nu=s.nu, theta=s.theta, n=int(n),
        dv=dv(s),
        p1=p1(s.theta, n),
        p2=p2(s, n),
        p3=p3(s),
        p3_prime=pp,
        mse_nu=mse_nu(s, n),
        bound_nu4=bound_nu4(s, n),
        bound_abs3=bound_abs3(s, n),
        bound_alpha2=alpha_mse_bound(s, n),
        p3_prime_clipped=pp < 0.0,
    )
