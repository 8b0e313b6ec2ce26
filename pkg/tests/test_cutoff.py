import math

import mpmath as mp
import numpy as np
import pytest

from duval_kind.cutoff import (
    CutoffProfile,
    annulus,
    gradient_bound_from_log_norm,
    mu,
    mu_derivative_log_norm,
    mu_from_log_norm,
    mu_gradient_bound,
    radial_profile,
    radial_profile_derivative,
    rho,
)

mp.mp.dps = 30


def log_norm_grid(k: int, points: int = 10_000) -> np.ndarray:
    """Log-spaced norms (linear in log-norm) spanning below the inner
    annulus radius up to well above the outer one."""
    ann = annulus(k)
    return np.linspace(ann.log_inner - 2.0, math.log(0.2), points)


def mu_mp(k: int, lam: mp.mpf) -> mp.mpf:
    """High-precision mu_k in the r-identity regime (norm <= 1/4)."""
    t = mp.log(-lam) - k
    if t <= 0:
        return mp.mpf(1)
    if t >= 1:
        return mp.mpf(0)
    return 1 - (3 * t**2 - 2 * t**3)


# -- profile invariants -------------------------------------------------------

def test_rho_plateaus_and_slope():
    p = CutoffProfile(2)
    xs = np.linspace(-1, 6, 2000)
    vals = [rho(p, x) for x in xs]
    assert all(0.0 <= v <= 1.0 for v in vals)
    assert all(v == 1.0 for x, v in zip(xs, vals) if x <= 2)
    assert all(v == 0.0 for x, v in zip(xs, vals) if x >= 3)
    slopes = np.diff(vals) / np.diff(xs)
    assert np.all(np.abs(slopes) <= 2.0)


def test_radial_profile_invariants():
    xs = np.linspace(0, 2, 4000)
    vals = np.array([radial_profile(x) for x in xs])
    assert np.all((0 <= vals) & (vals <= 0.5))
    assert np.all(np.diff(vals) >= 0)
    assert radial_profile(0.1) == 0.1
    assert radial_profile(0.9) == 0.5
    slopes = np.array([radial_profile_derivative(x) for x in xs])
    assert np.all((0 <= slopes) & (slopes <= 1.0))


def test_annulus_values():
    a1 = annulus(1)
    assert a1.inner == pytest.approx(math.exp(-math.e**2))
    assert a1.outer == pytest.approx(math.exp(-math.e))
    a3 = annulus(3)
    assert a3.log_inner == -math.exp(4)
    assert a3.log_outer == -math.exp(3)


def test_annuli_chain_with_shared_endpoints():
    for k in range(1, 5):
        assert annulus(k).log_inner == annulus(k + 1).log_outer


# -- mu values ----------------------------------------------------------------

def test_mu_is_one_for_large_norm():
    assert mu(CutoffProfile(1), 0.9) == 1.0


def test_mu_rejects_zero_norm():
    with pytest.raises(ValueError):
        mu(CutoffProfile(1), 0.0)
    with pytest.raises(ValueError):
        mu_from_log_norm(CutoffProfile(1), -math.inf)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_mu_support_structure(k):
    p = CutoffProfile(k)
    ann = annulus(k)
    grid = log_norm_grid(k)
    vals = np.array([mu_from_log_norm(p, lam) for lam in grid])
    assert np.all(vals[grid <= ann.log_inner] == 0.0)
    assert np.all(vals[grid >= ann.log_outer] == 1.0)
    assert np.all(np.diff(vals) >= 0.0)  # monotone in the norm


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_mu_boundary_and_interior_values(k):
    p = CutoffProfile(k)
    ann = annulus(k)
    assert mu_from_log_norm(p, ann.log_outer) == 1.0
    assert mu_from_log_norm(p, ann.log_inner) == 0.0
    for frac in np.linspace(0.05, 0.95, 10):
        lam = ann.log_inner + frac * (ann.log_outer - ann.log_inner)
        assert 0.0 <= mu_from_log_norm(p, lam) <= 1.0


def test_mu_family_is_pointwise_nondecreasing_in_k():
    grid = np.linspace(annulus(4).log_inner - 2.0, math.log(0.2), 4000)
    for k in (1, 2, 3):
        lo = [mu_from_log_norm(CutoffProfile(k), lam) for lam in grid]
        hi = [mu_from_log_norm(CutoffProfile(k + 1), lam) for lam in grid]
        assert all(b >= a for a, b in zip(lo, hi))


# -- gradients ----------------------------------------------------------------

@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_gradient_matches_finite_difference_and_respects_bound(k):
    p = CutoffProfile(k)
    ann = annulus(k)
    grid = log_norm_grid(k, points=2000)
    h = mp.mpf("1e-12")
    for lam in grid:
        analytic = mu_derivative_log_norm(p, lam)
        bound = gradient_bound_from_log_norm(p, lam)
        # bound is on |grad mu| in the norm; in log-norm units it is 2/|lam|
        assert abs(analytic) <= 2.0 / abs(lam) + 1e-15
        if not ann.log_inner <= lam <= ann.log_outer:
            assert bound == 0.0
            continue
        assert bound == pytest.approx(2.0 * math.exp(-lam) / abs(lam))
        lam_mp = mp.mpf(lam)
        step = abs(lam_mp) * h
        fd = (mu_mp(k, lam_mp + step) - mu_mp(k, lam_mp - step)) / (2 * step)
        if analytic == 0.0:
            assert abs(fd) <= 1e-12
        else:
            assert abs(float(fd) - analytic) <= 1e-6 * abs(analytic)
        # the gradient bound dominates the actual derivative (norm units)
        assert abs(float(fd)) * math.exp(-lam) <= bound * (1 + 1e-12)


def test_gradient_bound_outside_identity_regime_rejected():
    with pytest.raises(ValueError):
        mu_gradient_bound(CutoffProfile(1), 0.3)
    with pytest.raises(ValueError):
        mu_gradient_bound(CutoffProfile(1), 0.0)


def test_gradient_bound_examples():
    k1 = CutoffProfile(1)
    lam = -math.exp(1.5)
    assert mu_gradient_bound(k1, math.exp(lam)) == pytest.approx(
        2.0 * math.exp(math.exp(1.5)) / math.exp(1.5)
    )
    assert mu_gradient_bound(k1, 0.2) == 0.0  # outside the annulus
    k2 = CutoffProfile(2)
    lam = -math.exp(2.5)
    assert gradient_bound_from_log_norm(k2, lam) == pytest.approx(
        2.0 * math.exp(math.exp(2.5)) / math.exp(2.5)
    )


def test_per_annulus_bounds_below_global_envelope():
    # the k-dependent bounds never exceed the k-independent envelope
    # 2 e^{-lam} / |lam| on the punctured ball of radius e^{-e}
    grid = np.linspace(annulus(5).log_inner, -math.e, 20_000)
    for k in (1, 2, 3, 4):
        p = CutoffProfile(k)
        for lam in grid[::37]:
            bound = gradient_bound_from_log_norm(p, lam)
            envelope = 2.0 * math.exp(-lam) / abs(lam)
            assert bound <= envelope * (1 + 1e-12)
