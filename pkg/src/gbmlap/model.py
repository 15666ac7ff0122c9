"""Model parameters and the scalings into asymptotic coordinates.

The raw inputs are volatility sigma (per sqrt-year), drift a (per year),
maturity T (years) and theta (per year).  theta is the Laplace variable of
the transform E[exp(-theta * X_T)]; for zero-coupon bonds it is read as
the initial short rate r0, so bond-facing code passes r0 in this slot.

Two dimensionless coordinate systems are used downstream:

* (b, zeta) with b^2 = sigma^2*theta*T^2/2 and zeta = a*T - the scaling
  regime in which the rate-function asymptotics are exact;
* (y, s) with y = 2*r0/sigma^2 and s = sigma^2*T/2 - the variables of the
  exact zero-drift quadrature.

All types here are immutable values; every function is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._mathutil import require_finite
from .errors import DomainError

__all__ = ["ModelParams", "ScaledParams", "DothanScaled", "scale", "dothan_scale", "t_max"]


@dataclass(frozen=True)
class ModelParams:
    """Raw market/model inputs.

    sigma: volatility, > 0.
    a: drift, any real.
    T: maturity in years, > 0.
    theta: Laplace variable, >= 0 (initial short rate r0 in bond context).
    """

    sigma: float
    a: float
    T: float
    theta: float

    def __post_init__(self):
        require_finite(sigma=self.sigma, a=self.a, T=self.T, theta=self.theta)
        if self.sigma <= 0.0:
            raise DomainError(f"sigma must be > 0, got {self.sigma}")
        if self.T <= 0.0:
            raise DomainError(f"T must be > 0, got {self.T}")
        if self.theta < 0.0:
            raise DomainError(f"theta must be >= 0, got {self.theta}")


@dataclass(frozen=True)
class ScaledParams:
    """Asymptotic coordinates: b >= 0 dimensionless, zeta real."""

    b: float
    zeta: float


@dataclass(frozen=True)
class DothanScaled:
    """Exact-formula coordinates: y = 2*r0/sigma^2 > 0, s = sigma^2*T/2 > 0."""

    y: float
    s: float


def scale(p: ModelParams) -> ScaledParams:
    """Map raw parameters to (b, zeta): b = sqrt(sigma^2*theta/2)*T, zeta = a*T."""
    b = math.sqrt(0.5 * p.sigma * p.sigma * p.theta) * p.T
    return ScaledParams(b=b, zeta=p.a * p.T)


def dothan_scale(p: ModelParams) -> DothanScaled:
    """Map raw parameters to (y, s); requires theta > 0 (read as r0)."""
    if p.theta <= 0.0:
        raise DomainError("dothan_scale requires theta > 0 (interpreted as r0)")
    return DothanScaled(y=2.0 * p.theta / (p.sigma * p.sigma), s=0.5 * p.sigma * p.sigma * p.T)


def t_max(r0: float, sigma: float, threshold: float | None = None) -> float:
    """Largest maturity with sigma^2*r0*T^2 below ``threshold``.

    The default threshold is 2*R_b^2 computed from the series convergence
    radius R_b (the verified bound for the small-b series to converge),
    so T_max marks where the truncated series stops being usable.
    """
    require_finite(r0=r0, sigma=sigma)
    if r0 <= 0.0:
        raise DomainError(f"r0 must be > 0, got {r0}")
    if sigma <= 0.0:
        raise DomainError(f"sigma must be > 0, got {sigma}")
    if threshold is None:
        from .ratefn import convergence_radius

        threshold = 2.0 * convergence_radius()[1] ** 2
    elif not (threshold > 0.0):
        raise DomainError(f"threshold must be > 0, got {threshold}")
    return math.sqrt(threshold / (sigma * sigma * r0))
