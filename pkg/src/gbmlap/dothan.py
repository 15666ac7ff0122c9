"""Zero-coupon bond pricing when the short rate is a geometric Brownian motion.

Five deterministic methods, each returning a BondQuote:

* ``bond_asymptotic``   - exp(-r0*T*R(b, zeta)) from the rate function;
* ``bond_exact_zero_drift`` - the exact a = 0 price as a single oscillatory
  integral, evaluated lobe-by-lobe between the zeros of sin(2*sqrt(y)*sinh z);
* ``bond_small_rate``   - second-order expansion in r0 from the first two
  moments of the time integral;
* ``bond_taylor_small_T`` - short-maturity Taylor expansion of the log price
  (a = 0 only; only those coefficients are known);
* ``bond_perpetual``    - the T -> infinity limit (finite for a < sigma^2/2),
  an inverse-gamma Laplace transform in terms of Bessel K.

The exact integrand is stabilized by absorbing the p -> 2*e^(-z) tail of
the bracket (whose closed-form integral is 1/a - K_1(a)) and by evaluating
e^z * erfc(large) through the scaled function erfcx, so the amplitude decays
like exp(-z^2/s) with no overflow.  Quadrature subdivides at the sine's
zeros z_k = asinh(k*pi/(2*sqrt(y))) with an adaptively refined 15-point
Gauss-Legendre panel per lobe and stops once three consecutive lobes each
contribute less than quad_tol.  Everything here is stateless; table sweeps
may evaluate rows concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np
from scipy import special as _sp

from ._mathutil import expm1_over_x, expm1_over_x_d1, expm1_over_x_d2, require_finite
from .errors import DomainError, QuadratureNotConverged
from .model import ModelParams, dothan_scale, scale
from .ratefn import rate_R
from .specfun import bessel_k, gamma_fn

__all__ = [
    "BondMethod",
    "BondQuote",
    "bond_asymptotic",
    "bond_exact_zero_drift",
    "moment_m1",
    "moment_m2",
    "bond_small_rate",
    "bond_taylor_small_T",
    "bond_perpetual",
    "sin_sinh_quadrature",
]


class BondMethod(str, Enum):
    ASYMPTOTIC = "asymptotic"
    EXACT_QUADRATURE = "exact_quadrature"
    SMALL_RATE = "small_rate"
    TAYLOR_SMALL_T = "taylor_small_t"
    PERPETUAL = "perpetual"
    MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True)
class BondQuote:
    """Price with the method that produced it.

    yield_equiv is -log(price)/T, None for the perpetual bond (no T).
    diagnostics carry method specifics (root, quadrature error estimate,
    series terms, or MC stderr).
    """

    price: float
    method: BondMethod
    yield_equiv: float | None
    diagnostics: dict


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(15)


def _panel(g: Callable[[np.ndarray], np.ndarray], lo: float, hi: float,
           tol: float, depth: int) -> float:
    """Adaptive 15-point Gauss-Legendre integral of g over [lo, hi].

    One evaluation call covers the full panel and both halves; the halved
    sum is kept when it agrees with the full panel, otherwise recurse.
    """
    mid = 0.5 * (lo + hi)
    h_full, h_half = 0.5 * (hi - lo), 0.25 * (hi - lo)
    z = np.concatenate((
        mid + h_full * _GL_NODES,
        0.5 * (lo + mid) + h_half * _GL_NODES,
        0.5 * (mid + hi) + h_half * _GL_NODES,
    ))
    v = g(z)
    coarse = h_full * float(_GL_WEIGHTS @ v[:15])
    fine = h_half * float(_GL_WEIGHTS @ v[15:30] + _GL_WEIGHTS @ v[30:])
    if abs(fine - coarse) <= max(tol, 1e-13 * abs(fine)) or depth >= 12:
        return fine
    return (_panel(g, lo, mid, 0.5 * tol, depth + 1)
            + _panel(g, mid, hi, 0.5 * tol, depth + 1))


def sin_sinh_quadrature(
    amplitude: Callable[[np.ndarray], np.ndarray],
    freq: float,
    tol: float = 1e-9,
    max_lobes: int = 100_000,
) -> tuple[float, float, int]:
    """integral_0^inf sin(freq*sinh(z)) * amplitude(z) dz by signed lobes.

    Lobe k spans [asinh(k*pi/freq), asinh((k+1)*pi/freq)], one half-period
    of the sine.  Summation stops after three consecutive lobes each
    contribute less than ``tol`` in magnitude; the alternating tail is then
    bounded by the last lobe.  Returns (value, error_estimate, n_lobes).

    Raises QuadratureNotConverged past ``max_lobes`` lobes (extreme
    freq/amplitude combinations).
    """
    if not (freq > 0.0):
        raise DomainError(f"freq must be > 0, got {freq}")
    if not (tol > 0.0):
        raise DomainError(f"tol must be > 0, got {tol}")

    def g(z: np.ndarray) -> np.ndarray:
        return np.sin(freq * np.sinh(z)) * amplitude(z)

    total = 0.0
    streak = 0
    last = math.inf
    for k in range(max_lobes):
        lo = math.asinh(k * math.pi / freq)
        hi = math.asinh((k + 1) * math.pi / freq)
        lobe = _panel(g, lo, hi, 0.01 * tol, 0)
        total += lobe
        last = abs(lobe)
        streak = streak + 1 if last < tol else 0
        if streak >= 3:
            return total, max(last, tol), k + 1
    raise QuadratureNotConverged(
        f"lobe contributions still {last:g} > {tol:g} after {max_lobes} lobes"
    )


def _validate_bond_args(r0: float, sigma: float, a: float, T: float) -> None:
    require_finite(r0=r0, sigma=sigma, a=a, T=T)
    if r0 < 0.0:
        raise DomainError(f"r0 must be >= 0, got {r0}")
    if sigma <= 0.0:
        raise DomainError(f"sigma must be > 0, got {sigma}")
    if T <= 0.0:
        raise DomainError(f"T must be > 0, got {T}")


def bond_asymptotic(r0: float, sigma: float, a: float, T: float) -> BondQuote:
    """Price exp(-r0*T*R(b, zeta)) with (b, zeta) from ``model.scale``."""
    _validate_bond_args(r0, sigma, a, T)
    if r0 == 0.0:
        return BondQuote(1.0, BondMethod.ASYMPTOTIC, 0.0, {"b": 0.0, "zeta": a * T})
    sc = scale(ModelParams(sigma=sigma, a=a, T=T, theta=r0))
    ev = rate_R(sc.b, sc.zeta)
    y = r0 * ev.value
    return BondQuote(
        price=math.exp(-y * T),
        method=BondMethod.ASYMPTOTIC,
        yield_equiv=y,
        diagnostics={
            "b": sc.b,
            "zeta": sc.zeta,
            "rate": ev.value,
            "branch": ev.branch.value,
            "root": ev.root,
            "residual": ev.residual,
        },
    )


def bond_exact_zero_drift(
    r0: float, sigma: float, T: float, quad_tol: float = 1e-9
) -> BondQuote:
    """Exact zero-drift price by oscillatory quadrature.

    B = 1 + sqrt(y) * integral_0^inf sin(2*sqrt(y)*sinh z) * p(z) dz with
    y = 2*r0/sigma^2, s = sigma^2*T/2 and the stabilized bracket

        p(z) = -e^(-z)*erfc((2z-s)/(2*sqrt(s)))
               - exp(-s/4 - z^2/s)*erfcx((s+2z)/(2*sqrt(s))),

    algebraically equal to e^(-z)*Erfc((s-2z)/(2 sqrt s))
    - e^z*Erfc((s+2z)/(2 sqrt s)) - 2*e^(-z) but free of cancellation
    and overflow.  The absolute error estimate is <= quad_tol.
    """
    _validate_bond_args(r0, sigma, 0.0, T)
    if r0 == 0.0:
        raise DomainError("bond_exact_zero_drift requires r0 > 0")
    ds = dothan_scale(ModelParams(sigma=sigma, a=0.0, T=T, theta=r0))
    y, s = ds.y, ds.s
    sqrt_y = math.sqrt(y)
    sqrt_s = math.sqrt(s)

    def bracket(z: np.ndarray) -> np.ndarray:
        t1 = -np.exp(-z) * _sp.erfc((2.0 * z - s) / (2.0 * sqrt_s))
        t2 = -np.exp(-0.25 * s - z * z / s) * _sp.erfcx((s + 2.0 * z) / (2.0 * sqrt_s))
        return t1 + t2

    integral, err, n_lobes = sin_sinh_quadrature(bracket, 2.0 * sqrt_y, tol=quad_tol)
    price = 1.0 + sqrt_y * integral
    return BondQuote(
        price=price,
        method=BondMethod.EXACT_QUADRATURE,
        yield_equiv=-math.log(price) / T,
        diagnostics={"y": y, "s": s, "n_lobes": n_lobes, "error_estimate": sqrt_y * err},
    )


def moment_m1(a: float, sigma: float, T: float) -> float:
    """First moment of the time integral: (e^(a*T) - 1)/a, limit T at a = 0."""
    require_finite(a=a, sigma=sigma, T=T)
    if T <= 0.0:
        raise DomainError(f"T must be > 0, got {T}")
    return T * expm1_over_x(a * T)


def moment_m2(a: float, sigma: float, T: float) -> float:
    """Second moment of the time integral.

    m2 = 2/(a+sigma^2) * ((e^((2a+sigma^2)T) - 1)/(2a+sigma^2)
         - (e^(aT) - 1)/a), with every removable singularity (a -> 0,
    2a+sigma^2 -> 0, a+sigma^2 -> 0) handled by series.  Writing
    f(u) = T*(e^(uT) - 1)/(uT), this is the difference quotient
    2*(f(a+c) - f(a))/c at c = a+sigma^2, which degenerates to 2*f'(a)
    as c -> 0.
    """
    require_finite(a=a, sigma=sigma, T=T)
    if T <= 0.0:
        raise DomainError(f"T must be > 0, got {T}")
    c = a + sigma * sigma
    if abs(c * T) < 1e-6:
        return 2.0 * (T * T * expm1_over_x_d1(a * T) + 0.5 * c * T * T * T * expm1_over_x_d2(a * T))
    return 2.0 * (T * expm1_over_x((a + c) * T) - T * expm1_over_x(a * T)) / c


def bond_small_rate(r0: float, sigma: float, a: float, T: float) -> BondQuote:
    """Second-order small-r0 price 1 - r0*m1 + r0^2*m2/2.

    An upper bound on the true price (from e^-x <= 1 - x + x^2/2 inside
    the expectation); only meaningful while r0*m1 is small.
    """
    _validate_bond_args(r0, sigma, a, T)
    m1 = moment_m1(a, sigma, T)
    m2 = moment_m2(a, sigma, T)
    first = r0 * m1
    second = 0.5 * r0 * r0 * m2
    price = 1.0 - first + second
    if price <= 0.0:
        raise DomainError(f"small-rate expansion is invalid here (price {price:g} <= 0)")
    return BondQuote(
        price=price,
        method=BondMethod.SMALL_RATE,
        yield_equiv=-math.log(price) / T,
        diagnostics={"m1": m1, "m2": m2, "first_order_term": first, "second_order_term": second},
    )


def bond_taylor_small_T(r0: float, sigma: float, T: float) -> BondQuote:
    """Short-maturity log-price expansion, zero drift only.

    -(1/(r0*T))*log(price) = 1 - sigma^2*r0*T^2/3! - sigma^4*r0*T^3/4!
    - (sigma^6*r0/5! - sigma^4*r0^2/15)*T^4.  Coefficients beyond this
    order (and any a != 0 terms) are not known in closed form here.
    """
    _validate_bond_args(r0, sigma, 0.0, T)
    s2 = sigma * sigma
    t2 = s2 * r0 * T * T / 6.0
    t3 = s2 * s2 * r0 * T * T * T / 24.0
    t4 = (s2 * s2 * s2 * r0 / 120.0 - s2 * s2 * r0 * r0 / 15.0) * T ** 4
    ratio = 1.0 - t2 - t3 - t4
    y = r0 * ratio
    return BondQuote(
        price=math.exp(-y * T),
        method=BondMethod.TAYLOR_SMALL_T,
        yield_equiv=y,
        diagnostics={"yield_ratio": ratio, "terms": (t2, t3, t4)},
    )


def bond_perpetual(r0: float, sigma: float, a: float) -> BondQuote:
    """Infinite-maturity price, finite iff a < sigma^2/2.

    price = 2/Gamma(nu) * y^(nu/2) * K_nu(2*sqrt(y)) with y = 2*r0/sigma^2
    and nu = 1 - 2*a/sigma^2 (the Laplace transform of the limiting
    inverse-gamma distribution of the integral).
    """
    require_finite(r0=r0, sigma=sigma, a=a)
    if sigma <= 0.0:
        raise DomainError(f"sigma must be > 0, got {sigma}")
    if r0 <= 0.0:
        raise DomainError(f"bond_perpetual requires r0 > 0, got {r0}")
    if a >= 0.5 * sigma * sigma:
        raise DomainError(
            f"no finite perpetual price: a={a} >= sigma^2/2={0.5 * sigma * sigma}"
        )
    y = 2.0 * r0 / (sigma * sigma)
    nu = 1.0 - 2.0 * a / (sigma * sigma)
    price = 2.0 / gamma_fn(nu) * y ** (0.5 * nu) * bessel_k(nu, 2.0 * math.sqrt(y))
    return BondQuote(
        price=price,
        method=BondMethod.PERPETUAL,
        yield_equiv=None,
        diagnostics={"y": y, "nu": nu},
    )
