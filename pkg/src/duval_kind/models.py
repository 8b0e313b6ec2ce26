"""Built-in du Val hypersurface germs and the A_n covering map.

Equations: A_n: z^{n+1} - xy; D_n: x^2 + y^2 z + z^{n-1};
E_6: x^2 + y^3 + z^4; E_7: x^2 + y^3 + y z^3; E_8: x^2 + y^3 + z^5.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dual_graph import ParameterError
from .poly import Polynomial3, differentiate, parse_polynomial


@dataclass(frozen=True)
class HypersurfaceGerm:
    """A hypersurface equation f with its residue denominator df/dz."""

    label: str
    equation: Polynomial3
    residue_denominator: Polynomial3


@dataclass(frozen=True)
class CoveringMap:
    """The branched (n+1)-to-1 covering (s,t) -> (s^{n+1}, t^{n+1}, st)
    onto the A_n hypersurface."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"covering requires n >= 1, got {self.n}")

    @property
    def degree(self) -> int:
        return self.n + 1


_EQUATIONS = {
    "E6": "x^2 + y^3 + z^4",
    "E7": "x^2 + y^3 + y*z^3",
    "E8": "x^2 + y^3 + z^5",
}


def duval_equation(type_: str, n: int) -> HypersurfaceGerm:
    """The standard normal form for the du Val singularity of given type."""
    type_ = type_.upper()
    if type_ == "A":
        if n < 1:
            raise ParameterError(f"A_n requires n >= 1, got {n}")
        eq = parse_polynomial(f"z^{n + 1} - x*y")
    elif type_ == "D":
        if n < 4:
            raise ParameterError(f"D_n requires n >= 4, got {n}")
        eq = parse_polynomial(f"x^2 + y^2*z + z^{n - 1}")
    elif type_ == "E":
        if n not in (6, 7, 8):
            raise ParameterError(f"E_n requires n in {{6,7,8}}, got {n}")
        eq = parse_polynomial(_EQUATIONS[f"E{n}"])
    else:
        raise ParameterError(f"unknown type {type_!r}, expected A, D or E")
    return HypersurfaceGerm(f"{type_}{n}", eq, differentiate(eq, "z"))


def covering_image(
    c: CoveringMap, s: complex, t: complex
) -> tuple[complex, complex, complex]:
    """Image (s^{n+1}, t^{n+1}, s t) on the A_n hypersurface."""
    return (s ** (c.n + 1), t ** (c.n + 1), s * t)


def ambient_norm_squared_pullback(n: int, rho1: float, rho2: float) -> float:
    """Squared ambient norm of the covering image as a function of the
    moduli rho_i = |s|, |t|: rho1^{2n+2} + rho2^{2n+2} + rho1^2 rho2^2."""
    if n < 1:
        raise ParameterError(f"requires n >= 1, got {n}")
    return rho1 ** (2 * n + 2) + rho2 ** (2 * n + 2) + rho1**2 * rho2**2


def log_ambient_norm_squared_pullback(n: int, u1, u2):
    """Log-space variant: given u_i = log rho_i, return the log of the
    squared ambient norm via log-sum-exp; never underflows.

    Accepts scalars or numpy arrays (broadcast elementwise).
    """
    if n < 1:
        raise ParameterError(f"requires n >= 1, got {n}")
    a = (2 * n + 2) * np.asarray(u1, dtype=float)
    b = (2 * n + 2) * np.asarray(u2, dtype=float)
    c = 2 * np.asarray(u1, dtype=float) + 2 * np.asarray(u2, dtype=float)
    m = np.maximum(np.maximum(a, b), c)
    out = m + np.log(np.exp(a - m) + np.exp(b - m) + np.exp(c - m))
    if np.isscalar(u1) and np.isscalar(u2):
        return float(out)
    return out


def pullback_residue_density(n: int) -> float:
    """Constant density of the pulled-back structure form against the
    Euclidean volume element of C^2: (n+1)^2 (n=0 means the identity
    covering of a smooth point)."""
    if n < 0:
        raise ParameterError(f"requires n >= 0, got {n}")
    return float((n + 1) ** 2)


def solve_on_hypersurface(germ: HypersurfaceGerm, y: complex, z: complex) -> list[complex]:
    """Points (x, y, z) on the germ for given (y, z), solving for x.

    All built-in D/E equations are quadratic (or linear) in x with no
    mixed x-terms; returns both branches where applicable.
    """
    # collect coefficients of x^0, x^1, x^2 at fixed (y, z)
    coeffs = [0j, 0j, 0j]
    for (a, b, c), k in germ.equation.terms.items():
        if a > 2:
            raise ValueError("equation has degree > 2 in x")
        coeffs[a] += k * y**b * z**c
    c0, c1, c2 = coeffs
    if c2 == 0:
        if c1 == 0:
            return []
        return [-c0 / c1]
    disc = c1 * c1 - 4 * c2 * c0
    root = complex(disc) ** 0.5
    return [(-c1 + root) / (2 * c2), (-c1 - root) / (2 * c2)]
