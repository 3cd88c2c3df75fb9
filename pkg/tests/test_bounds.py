"""Bound polynomials: exact oracles, one-sided Monte Carlo, assembly identities."""

import math

import numpy as np
import pytest

from stabfit.bounds import (alpha_mse_bound, b_u4_central, b_v4_central,
                            bound_abs3, bound_nu4, bound_report, mse_nu, p1,
                            p2, p3, p3_prime)
from stabfit.moments import dv
from stabfit.params import StrictParams
from stabfit.study import replicate_strict
from stabfit.sampler import RandomStream


def test_p1_frozen_and_degenerate():
    assert abs(p1(0.0, 11) - 4.76) < 1e-14
    # B_U^2 is deterministic at |theta| = 1, so every group cancels
    for n in (2, 5, 8, 50):
        assert p1(1.0, n) == 0.0
        assert p1(-1.0, n) == 0.0
    with pytest.raises(ValueError):
        p1(1.2, 10)
    with pytest.raises(ValueError):
        p1(0.0, 1)


def _b_u4_enumeration(theta, n):
    # exact weighted enumeration over all 2^n sign vectors
    bits = (np.arange(2 ** n)[:, None] >> np.arange(n)[None, :]) & 1
    u = 2.0 * bits - 1.0
    b2 = u.var(axis=1, ddof=1)
    ones = bits.sum(axis=1)
    w = ((1.0 + theta) / 2.0) ** ones * ((1.0 - theta) / 2.0) ** (n - ones)
    return float(np.sum(w * (b2 - (1.0 - theta ** 2)) ** 4))


def test_b_u4_matches_enumeration():
    for theta, n in ((0.0, 8), (0.5, 6), (-0.75, 7), (0.25, 9)):
        exact = _b_u4_enumeration(theta, n)
        got = b_u4_central(theta, n)
        assert abs(got - exact) <= 1e-12 * exact, (theta, n)


def test_b_u4_degenerate_theta():
    assert b_u4_central(1.0, 8) == 0.0
    assert b_u4_central(-1.0, 5) == 0.0


def test_b_v4_degenerate_point():
    # nu = 1, |theta| = 1 collapses V to a constant
    assert b_v4_central(StrictParams(1.0, 1.0, 0.0), 50) == 0.0
    assert p2(StrictParams(1.0, -1.0, 0.0), 50) == 0.0


def test_b_v4_leading_term():
    # n^2 b_v4 -> 3 q4^2 with a 1/n defect from the P2 correction
    s = StrictParams(1.0, 0.0, 0.0)
    lead = 3.0 * (5.0 * math.pi ** 4 / 16.0) ** 2
    g4 = 10 ** 8 * b_v4_central(s, 10 ** 4) / lead - 1.0
    g6 = 10 ** 12 * b_v4_central(s, 10 ** 6) / lead - 1.0
    assert 0.0 < g4 < 2e-3
    assert 0.0 < g6 < 2e-5
    assert abs(g4 / g6 - 100.0) < 1.0


def test_b_v4_is_one_sided_not_tight():
    # The squared factor uses the raw fourth moment of Vbar, so the formula
    # sits well above the true fourth central moment of B_V^2; pin both the
    # inequality and the size of the overshoot.
    reps, n = 4 * 10 ** 5, 50
    rng = np.random.default_rng(777)

    y = rng.normal(0.0, math.sqrt(2.0), size=(reps, n))  # alpha=2, lam=1
    s = StrictParams(0.25, 0.0, 0.0)
    mc = float(np.mean((np.log(np.abs(y)).var(axis=1, ddof=1) - dv(s)) ** 4))
    ratio = b_v4_central(s, n) / mc
    assert ratio > 1.0
    assert 1.10 < ratio < 1.33

    y = rng.standard_cauchy(size=(reps, n))
    s = StrictParams(1.0, 0.0, 0.0)
    mc = float(np.mean((np.log(np.abs(y)).var(axis=1, ddof=1) - dv(s)) ** 4))
    ratio = b_v4_central(s, n) / mc
    assert ratio > 1.0
    assert 1.22 < ratio < 1.55


def test_p3_closed_form_point():
    got = p3(StrictParams(1.0, 0.0, 0.0))
    assert abs(got - 1.5 * 3.0 ** 0.25 * math.sqrt(5.0)) < 1e-14
    assert abs(got - 4.414246434574068) < 1e-14


def _theta_grid(nu):
    cap = min(1.0, 2.0 * math.sqrt(nu) - 1.0)
    return (0.0, 0.4 * cap, -0.4 * cap, cap, -cap)


def test_p3_prime_nonnegative_and_composed():
    for nu in (0.25, 0.5, 1.0, 2.25, 4.0):
        for th in _theta_grid(nu):
            for n in (10, 100, 3000):
                s = StrictParams(nu, th, 0.0)
                pp = p3_prime(s, n)
                assert pp >= 0.0
                base = p3(s)
                bump = (base + 1.5 * (abs(p1(th, n)) / n) ** 0.25
                        + 6.0 / math.pi ** 2 * (abs(p2(s, n)) / n) ** 0.25)
                want = n ** 0.25 * (bump ** 4 - base ** 4)
                assert abs(pp - want) <= 1e-12 * max(1.0, abs(want))


def test_mse_nu_frozen_values():
    assert abs(mse_nu(StrictParams(1.0, 0.0, 0.0), 100)
               - (9.0 / 100 + 9.0 / 9900)) < 1e-16
    assert abs(mse_nu(StrictParams(0.25, 0.0, 0.0), 100)
               - 0.03431818181818182) < 1e-16
    assert abs(mse_nu(StrictParams(2.25, 0.4, 0.0), 100)
               - 0.2729754747474747) < 1e-15


def test_mse_nu_monte_carlo_smoke():
    s = StrictParams(1.0, 0.0, 0.0)
    r = replicate_strict(s, 50, 2 * 10 ** 4, RandomStream(2026, 9))
    nh = r["nu_hat"][r["valid"]]
    mc = float(np.mean((nh - s.nu) ** 2))
    assert abs(mc / mse_nu(s, 50) - 1.0) < 0.08


def test_bound_assembly_identities():
    for nu in (0.5, 1.0, 2.25):
        for th in (0.0, 0.3):
            for n in (30, 1000):
                s = StrictParams(nu, th, 0.0)
                pp = p3_prime(s, n)
                assert abs(bound_nu4(s, n)
                           - (p3(s) ** 4 / n ** 2 + pp / n ** 2.25)) < 1e-15
                want = (math.sqrt(mse_nu(s, n))
                        * (p3(s) ** 2 + math.sqrt(pp) / n ** 0.125) / n)
                assert abs(bound_abs3(s, n) - want) <= 1e-15 * want
                want = (mse_nu(s, n) / (4.0 * nu ** 3)
                        + 12.0 / nu ** 1.5 * bound_abs3(s, n)
                        + 144.0 * bound_nu4(s, n))
                assert abs(alpha_mse_bound(s, n) - want) <= 1e-15 * want


def test_bound_abs3_dominates_monte_carlo():
    # third-absolute and fourth moments of the clamped estimator at the
    # standard Cauchy point, 1e5 replications of size 100
    s = StrictParams(1.0, 0.0, 0.0)
    n = 100
    r = replicate_strict(s, n, 10 ** 5, RandomStream(2026, 3))
    d = r["nu_tilde"][r["valid"]] - s.nu
    assert float(np.mean(np.abs(d) ** 3)) <= bound_abs3(s, n)
    assert float(np.mean(d ** 4)) <= bound_nu4(s, n)


def test_cauchy_schwarz_direction():
    # bound_abs3 is sqrt(mse) (P3^2 + sqrt(P3')/n^(1/8)) / n; expanding the
    # square shows bound_abs3^2 - mse_nu * bound_nu4 =
    # 2 mse P3^2 sqrt(P3') / n^(2+1/8) >= 0, so the composed bound sits on
    # the large side of the Cauchy-Schwarz product, never below it.
    for nu in (0.25, 0.5, 1.0, 2.25, 4.0):
        for th in _theta_grid(nu):
            for n in (10, 100, 3000):
                s = StrictParams(nu, th, 0.0)
                lhs = bound_abs3(s, n) ** 2
                rhs = mse_nu(s, n) * bound_nu4(s, n)
                assert lhs >= rhs * (1.0 - 1e-12), (nu, th, n)


def test_bound_nonnegativity_grid():
    for nu in (0.25, 0.5, 1.0, 2.25, 4.0, 16.0):
        for th in _theta_grid(min(nu, 4.0)):
            s = StrictParams(nu, th, 0.0)
            for n in (2, 5, 50, 10 ** 4):
                assert bound_nu4(s, n) >= 0.0
                assert bound_abs3(s, n) >= 0.0
                assert alpha_mse_bound(s, n) >= 0.0
                assert mse_nu(s, n) > 0.0 or (nu == 1.0 and abs(th) == 1.0)


def test_asymptotic_regimes():
    s = StrictParams(1.0, 0.0, 0.0)
    # n^2 bound_nu4 -> P3^4 from above at the slow n^(-1/4) rate set by the
    # moment-correction radical
    gaps = [n ** 2 * bound_nu4(s, n) / p3(s) ** 4 - 1.0
            for n in (10 ** 6, 10 ** 8, 10 ** 10)]
    assert all(g > 0.0 for g in gaps)
    assert gaps[0] > gaps[1] > gaps[2]
    assert 0.25 < gaps[1] / gaps[0] < 0.35
    assert 0.28 < gaps[2] / gaps[1] < 0.35
    assert gaps[2] < 0.03
    # n alpha_mse_bound -> n mse_nu / (4 nu^3) from above, defect ~ 1/sqrt(n)
    r10 = alpha_mse_bound(s, 10 ** 10) / (mse_nu(s, 10 ** 10) / 4.0)
    r8 = alpha_mse_bound(s, 10 ** 8) / (mse_nu(s, 10 ** 8) / 4.0)
    assert 1.0 < r10 < r8
    assert r10 - 1.0 < 5e-3


def test_bound_report_consistency():
    s = StrictParams(2.25, 0.4, 0.0)
    rep = bound_report(s, 500)
    assert rep.nu == 2.25 and rep.theta == 0.4 and rep.n == 500
    assert rep.dv == dv(s)
    assert rep.p1 == p1(0.4, 500)
    assert rep.p2 == p2(s, 500)
    assert rep.p3 == p3(s)
    assert rep.p3_prime == p3_prime(s, 500)
    assert rep.mse_nu == mse_nu(s, 500)
    assert rep.bound_nu4 == bound_nu4(s, 500)
    assert rep.bound_abs3 == bound_abs3(s, 500)
    assert rep.bound_alpha2 == alpha_mse_bound(s, 500)
    assert rep.p3_prime_clipped is False
    d = rep.as_dict()
    assert d["bound_alpha2"] == rep.bound_alpha2
    assert set(d) == {"nu", "theta", "n", "dv", "p1", "p2", "p3", "p3_prime",
                      "mse_nu", "bound_nu4", "bound_abs3", "bound_alpha2",
                      "p3_prime_clipped"}


def test_domain_rejections():
    with pytest.raises(ValueError):
        mse_nu(StrictParams(1.0, 0.0, 0.0), 1)
    with pytest.raises(ValueError):
        p2(StrictParams(0.2, 0.0, 0.0), 10)
    with pytest.raises(ValueError):
        alpha_mse_bound(StrictParams(4.0, 1.5, 0.0), 10)
