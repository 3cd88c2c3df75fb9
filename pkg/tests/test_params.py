"""Parameterization conversions, the three-point transform, and theta_bound."""

import math

import pytest

from stabfit.params import (EULER_GAMMA, FormAParams, StrictParams,
                            from_strict, tanpi, theta_bound, to_strict,
                            transform_params, validate_formA, validate_strict)


def test_tanpi_exact_corners():
    assert tanpi(0.0) == 0.0
    assert tanpi(1.0) == 0.0
    assert tanpi(-3.0) == 0.0
    assert tanpi(0.5) == math.inf
    assert tanpi(-0.5) == -math.inf
    assert abs(tanpi(0.25) - 1.0) < 1e-15
    assert abs(tanpi(0.75) + 1.0) < 1e-15


def test_tanpi_matches_tan_away_from_corners():
    for u in (0.1, 0.3, -0.41, 2.23, -7.08):
        assert math.isclose(tanpi(u), math.tan(math.pi * u), rel_tol=1e-12)


def test_alpha_and_nu_snap_to_one():
    assert FormAParams(alpha=1.0 + 2e-10, beta=0.0).alpha == 1.0
    assert FormAParams(alpha=1.0 - 2e-10, beta=0.0).alpha == 1.0
    assert FormAParams(alpha=1.0 + 2e-9, beta=0.0).alpha != 1.0
    assert StrictParams(nu=1.0 - 3e-10, theta=0.0, tau=0.0).nu == 1.0


def test_validators_flag_each_field():
    assert validate_formA(FormAParams(1.5, 0.0)) == []
    assert "alpha" in validate_formA(FormAParams(2.5, 0.0))
    assert "alpha" in validate_formA(FormAParams(0.0, 0.0))
    assert "beta" in validate_formA(FormAParams(1.5, 1.2))
    assert "lambda" in validate_formA(FormAParams(1.5, 0.0, 0.0, -1.0))
    assert "gamma" in validate_formA(FormAParams(1.5, 0.0, math.nan))

    assert validate_strict(StrictParams(1.0, 0.5, 0.0)) == []
    assert "nu" in validate_strict(StrictParams(0.2, 0.0, 0.0))
    # at nu = 0.25 the theta cap 2 sqrt(nu) - 1 closes to 0
    assert "theta" in validate_strict(StrictParams(0.25, 0.1, 0.0))
    assert "theta" in validate_strict(StrictParams(4.0, 1.1, 0.0))
    assert "tau" in validate_strict(StrictParams(1.0, 0.0, math.inf))


def test_to_strict_gaussian():
    s = to_strict(FormAParams(2.0, 0.0, 0.0, 1.0))
    assert s.nu == 0.25
    assert s.theta == 0.0
    assert abs(s.tau - (-EULER_GAMMA / 2.0)) < 1e-15


def test_to_strict_cauchy_with_shift():
    s = to_strict(FormAParams(1.0, 0.0, 0.0, 1.0))
    assert (s.nu, s.theta, s.tau) == (1.0, 0.0, 0.0)
    s = to_strict(FormAParams(1.0, 0.0, 1.0, 1.0))
    assert s.nu == 1.0
    assert abs(s.theta - 0.5) < 1e-15
    assert abs(s.tau - 0.5 * math.log(2.0)) < 1e-15


def test_to_strict_rejects_non_strictly_stable():
    with pytest.raises(ValueError):
        to_strict(FormAParams(1.0, 0.5, 0.0, 1.0))
    with pytest.raises(ValueError):
        to_strict(FormAParams(1.5, 0.0, 1.0, 1.0))
    with pytest.raises(ValueError):
        to_strict(FormAParams(3.0, 0.0))


def test_from_strict_known_points():
    p = from_strict(StrictParams(0.25, 0.0, -EULER_GAMMA / 2.0))
    assert p.alpha == 2.0 and p.beta == 0.0 and p.gamma == 0.0
    assert abs(p.lam - 1.0) < 1e-15

    p = from_strict(StrictParams(1.0, 0.0, 0.0))
    assert (p.alpha, p.beta, p.gamma, p.lam) == (1.0, 0.0, 0.0, 1.0)

    # nu=4 is alpha=1/2; the Euler correction leaves lam = exp(-C/2)
    p = from_strict(StrictParams(4.0, 0.0, 0.0))
    assert abs(p.alpha - 0.5) < 1e-15
    assert p.beta == 0.0
    assert abs(p.lam - 0.749306001288449) < 1e-14


def test_from_strict_rejections():
    with pytest.raises(ValueError):
        from_strict(StrictParams(0.2, 0.0, 0.0))
    with pytest.raises(ValueError):
        from_strict(StrictParams(1.0, 1.0, 0.0))  # gamma would be infinite
    with pytest.raises(ValueError):
        from_strict(StrictParams(4.0, 0.0, math.nan))


def _close(a, b, tol=1e-12):
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def test_round_trip_formA_to_strict():
    grid = []
    for alpha in (0.5, 0.75, 1.3, 1.7, 2.0):
        for beta in (-1.0, -0.5, 0.0, 0.5, 1.0):
            for lam in (0.5, 1.0, 3.0):
                grid.append(FormAParams(alpha, beta, 0.0, lam))
    for gamma in (-2.0, 0.0, 1.5):
        for lam in (0.5, 1.0, 3.0):
            grid.append(FormAParams(1.0, 0.0, gamma, lam))
    for p in grid:
        q = from_strict(to_strict(p))
        assert q.alpha == p.alpha
        assert _close(q.lam, p.lam)
        if p.alpha == 2.0:
            assert q.beta == 0.0  # beta is immaterial at alpha = 2
        else:
            assert _close(q.beta, p.beta)
        assert _close(q.gamma, p.gamma)


def test_round_trip_strict_to_formA():
    for nu in (0.25, 0.5, 1.0, 2.25, 4.0):
        cap = min(1.0, 2.0 * math.sqrt(nu) - 1.0)
        for theta in (-0.9 * cap, 0.0, 0.4 * cap, 0.9 * cap):
            for tau in (-1.0, 0.0, 2.0):
                s = StrictParams(nu, theta, tau)
                t = to_strict(from_strict(s))
                assert _close(t.nu, s.nu)
                assert _close(t.theta, s.theta)
                assert _close(t.tau, s.tau)


def test_transform_known_points():
    q = transform_params(FormAParams(2.0, 1.0, 0.0, 1.0))
    assert q.alpha == 2.0
    assert abs(q.beta - 1.0 / 3.0) < 1e-15
    assert q.gamma == 0.0
    assert q.lam == 1.5

    q = transform_params(FormAParams(1.0, 1.0, 0.0, 1.0))
    assert q.alpha == 1.0
    assert q.beta == 0.0
    assert abs(q.gamma - (-math.log(2.0) / math.pi)) < 1e-15
    assert q.lam == 2.0


def test_transform_output_is_strictly_stable():
    # whatever the input shift, the transform kills it
    for p in (FormAParams(1.5, 0.7, 2.0, 0.8), FormAParams(1.0, -0.4, -1.0, 2.0),
              FormAParams(0.6, 1.0, 5.0, 1.0)):
        q = transform_params(p)
        assert q.alpha == p.alpha
        if p.alpha == 1.0:
            assert q.beta == 0.0
        else:
            assert q.gamma == 0.0
        to_strict(q)  # must not raise


def test_transform_beta_sign_flips_past_alpha_one():
    # the factor 1 - 2^(1-alpha) is negative below alpha = 1
    assert transform_params(FormAParams(1.5, 1.0, 0.0, 1.0)).beta > 0.0
    assert transform_params(FormAParams(0.7, 1.0, 0.0, 1.0)).beta < 0.0
    assert transform_params(FormAParams(1.0, 1.0, 0.0, 1.0)).beta == 0.0


def test_theta_bound_frozen_values():
    assert theta_bound(0.25) == 0.0
    assert abs(theta_bound(1.0) - 0.13824610972610366) < 1e-15
    assert abs(theta_bound(4.0) - 0.21634689593878537) < 1e-15
    with pytest.raises(ValueError):
        theta_bound(0.2)


def test_theta_bound_dominates_transform_image():
    # |theta| of any transformed admissible law stays within theta_bound(nu),
    # with equality approached at beta = +-1.
    for alpha in (0.5, 0.8, 1.2, 1.5, 1.9):
        nu = alpha ** -2
        cap = theta_bound(nu)
        worst = 0.0
        for beta in (-1.0, -0.6, 0.0, 0.6, 1.0):
            s = to_strict(transform_params(FormAParams(alpha, beta)))
            assert abs(s.theta) <= cap + 1e-12
            worst = max(worst, abs(s.theta))
        assert worst >= cap - 1e-12
