"""Concrete cut-off family mu_k and the nested annuli D_k.

mu_k(norm) = rho_k(log(-log r(norm))) with C^1 profiles:
rho_k drops from 1 to 0 on [k, k+1] via the smoothstep 3t^2 - 2t^3
(slope bound 3/2), and r is the identity below 1/4, constant 1/2 above
3/4, with a cubic Hermite blend between (slope 1 - t on the blend, so
|r'| <= 1).  All entry points accept log-norms so that k up to 4 stays
inside binary64 range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


GRADIENT_CONSTANT = 2.0  # certified chain-rule constant: |rho_k'| |r'| <= 2


@dataclass(frozen=True)
class CutoffProfile:
    """The k-th cut-off function of the family."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")


@dataclass(frozen=True)
class Annulus:
    """Support annulus of the gradient of mu_k: [e^{-e^{k+1}}, e^{-e^k}]."""

    k: int
    log_inner: float
    log_outer: float

    @property
    def inner(self) -> float:
        return math.exp(self.log_inner)

    @property
    def outer(self) -> float:
        return math.exp(self.log_outer)


def annulus(k: int) -> Annulus:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return Annulus(k=k, log_inner=-math.exp(k + 1), log_outer=-math.exp(k))


def smoothstep(t: float) -> float:
    """3t^2 - 2t^3 clamped to [0, 1]; C^1 with slope bound 3/2."""
    if t <= 0.0:
        return 0.0
    if t >= 1.0:
        return 1.0
    return 3.0 * t * t - 2.0 * t * t * t


def smoothstep_derivative(t: float) -> float:
    if t <= 0.0 or t >= 1.0:
        return 0.0
    return 6.0 * t - 6.0 * t * t


def rho(profile: CutoffProfile, x: float) -> float:
    """Decreasing profile: 1 for x <= k, 0 for x >= k+1."""
    return 1.0 - smoothstep(x - profile.k)


def rho_derivative(profile: CutoffProfile, x: float) -> float:
    return -smoothstep_derivative(x - profile.k)


def radial_profile(x: float) -> float:
    """r(x): identity below 1/4, constant 1/2 above 3/4, Hermite blend
    between; increasing with 0 <= r' <= 1."""
    if x < 0:
        raise ValueError("radial profile defined on non-negative reals")
    if x <= 0.25:
        return x
    if x >= 0.75:
        return 0.5
    # Hermite blend on [1/4, 3/4]: values (1/4, 1/2), slopes (1, 0).
    # Its derivative simplifies to 1 - t with t the normalized coordinate.
    t = (x - 0.25) / 0.5
    return 0.25 + 0.5 * (t - t * t / 2.0)


def radial_profile_derivative(x: float) -> float:
    if x < 0:
        raise ValueError("radial profile defined on non-negative reals")
    if x <= 0.25:
        return 1.0
    if x >= 0.75:
        return 0.0
    return 1.0 - (x - 0.25) / 0.5


def mu_from_log_norm(profile: CutoffProfile, log_norm: float) -> float:
    """mu_k as a function of log ||zeta||; primary entry point.

    Below 1/4 the radial profile is the identity, so log r = log_norm
    and the composition is computed without forming the norm itself.
    """
    if not math.isfinite(log_norm):
        raise ValueError("log_norm must be finite (norm = 0 is rejected)")
    if log_norm <= math.log(0.25):
        log_r = log_norm
    else:
        log_r = math.log(radial_profile(math.exp(log_norm)))
    return rho(profile, math.log(-log_r))


def mu(profile: CutoffProfile, norm: float) -> float:
    """mu_k(||zeta||) for a directly representable positive norm."""
    if norm <= 0:
        raise ValueError("norm must be positive")
    return mu_from_log_norm(profile, math.log(norm))


def mu_derivative_log_norm(profile: CutoffProfile, log_norm: float) -> float:
    """Analytic d(mu_k)/d(log ||zeta||) via the chain rule.

    Equals ||zeta|| * d(mu_k)/d||zeta||; in the r-identity regime it is
    rho_k'(log(-log_norm)) / log_norm.
    """
    if not math.isfinite(log_norm):
        raise ValueError("log_norm must be finite")
    if log_norm <= math.log(0.25):
        log_r = log_norm
        r_factor = 1.0  # x r'(x) / r(x) = 1 when r is the identity
    else:
        x = math.exp(log_norm)
        r_val = radial_profile(x)
        log_r = math.log(r_val)
        r_factor = x * radial_profile_derivative(x) / r_val
    if log_r >= 0.0:
        return 0.0
    return rho_derivative(profile, math.log(-log_r)) * r_factor / log_r


def gradient_bound_from_log_norm(profile: CutoffProfile, log_norm: float) -> float:
    """Certified bound on |grad mu_k| at norm e^{log_norm}:
    2 / (norm |log norm|) inside the annulus, 0 outside.

    Only valid in the r-identity regime (norm <= 1/4).
    """
    if not math.isfinite(log_norm):
        raise ValueError("log_norm must be finite")
    if log_norm > math.log(0.25):
        raise ValueError("bound only certified for norm <= 1/4")
    ann = annulus(profile.k)
    if not ann.log_inner <= log_norm <= ann.log_outer:
        return 0.0
    # 2 / (e^{log_norm} |log_norm|), assembled in log space
    return GRADIENT_CONSTANT * math.exp(-log_norm) / abs(log_norm)


def mu_gradient_bound(profile: CutoffProfile, norm: float) -> float:
    if not 0 < norm <= 0.25:
        raise ValueError("norm must lie in (0, 1/4]")
    return gradient_bound_from_log_norm(profile, math.log(norm))
