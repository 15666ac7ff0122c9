"""Distribution-side rate function I_BS and the Asian-option approximation.

I_BS(x) governs the exponential decay of P(X_T/T near x*S0) at speed
1/(sigma^2*T) and vanishes exactly at the forward moneyness
x* = (e^zeta - 1)/zeta with zeta = (r-q)*T.  Out-of-the-money Asian
option prices then satisfy (sigma^2*T)*log(price) -> -I_BS(K/S0), and an
equivalent log-normal volatility

    Sigma_LN^2 = sigma^2 * log^2(K/A_fwd) / (2*I_BS(K/S0))

prices the Asian as a European option on the forward average
A_fwd = S0*(e^zeta - 1)/zeta.  The sigma^2 factor makes the European
proxy's log-price exponent match the asymptotic one (the ATM limit is
the classical sigma/sqrt(3)).

Closed forms come in two branches joined continuously at x = 1 + zeta/2:
hyperbolic (root delta >= 0) for x above, trigonometric (root xi in
(0, pi/2)) below.  All functions are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from ._mathutil import expm1_over_x, require_finite, sinc, sinhc, tanhc
from .errors import BranchError, DomainError, NoRootInInterval, NoSignChange
from .ratefn import Branch, _sine_branch_cap
from .rootfind import RootResult, solve_bracketed
from .specfun import norm_cdf

__all__ = [
    "OptionKind",
    "AsianInputs",
    "IbsEval",
    "OptionQuote",
    "ibs_solve_delta",
    "ibs_solve_xi",
    "rate_ibs",
    "a_fwd",
    "sigma_ln",
    "european_bs_price",
    "asian_price_approx",
    "otm_log_price_limit",
]

_HALF_PI = 0.5 * math.pi
# relative moneyness window around A_fwd inside which the ATM limit is used
_ATM_WINDOW = 1e-4
# relative pivot window at x = 1 + zeta/2 where both roots degenerate to 0
_PIVOT_WINDOW = 1e-13


class OptionKind(str, Enum):
    CALL = "call"
    PUT = "put"


@dataclass(frozen=True)
class AsianInputs:
    """Inputs for an arithmetic-average option on a gBM asset.

    s0/k in currency (> 0), r/q per year, sigma per sqrt-year (> 0),
    t in years (> 0).
    """

    s0: float
    k: float
    r: float
    q: float
    sigma: float
    t: float
    kind: OptionKind

    def __post_init__(self):
        require_finite(s0=self.s0, k=self.k, r=self.r, q=self.q, sigma=self.sigma, t=self.t)
        if self.s0 <= 0.0 or self.k <= 0.0:
            raise DomainError("s0 and k must be > 0")
        if self.sigma <= 0.0:
            raise DomainError(f"sigma must be > 0, got {self.sigma}")
        if self.t <= 0.0:
            raise DomainError(f"t must be > 0, got {self.t}")


@dataclass(frozen=True)
class IbsEval:
    """I_BS value (>= 0) with the branch taken and its solved root."""

    value: float
    branch: Branch
    root: float
    residual: float


@dataclass(frozen=True)
class OptionQuote:
    """Price plus the method that produced it and method diagnostics.

    price is None for the otm-limit method, which yields only the decay
    exponent (in diagnostics), not a price level.
    """

    price: float | None
    method: str
    diagnostics: dict


def ibs_solve_delta(x: float, zeta: float) -> RootResult:
    """Root delta >= 0 of sinh(d)/d + 2*zeta*sinh^2(d/2)/d^2 = x.

    Requires x >= 1 + zeta/2 (the left side's value at delta = 0); the
    left side is increasing, so the upper bracket is found by doubling.
    """
    require_finite(x=x, zeta=zeta)
    if x < (1.0 + 0.5 * zeta) * (1.0 - 1e-12):
        raise BranchError(f"hyperbolic branch needs x >= 1 + zeta/2, got x={x}, zeta={zeta}")

    def f(d: float) -> float:
        sh = sinhc(0.5 * d)
        return sinhc(d) + 0.5 * zeta * sh * sh - x

    if abs(f(0.0)) <= 1e-15 * max(1.0, abs(x)):
        return RootResult(root=0.0, residual=f(0.0), iterations=0, bracket=(0.0, 0.0))
    hi = 1.0
    while f(hi) < 0.0:
        hi *= 2.0
        if hi > 700.0:
            raise NoSignChange(f"no delta bracket below overflow for x={x}, zeta={zeta}")
    return solve_bracketed(f, 0.0, hi, tol=1e-15)


def ibs_solve_xi(x: float, zeta: float) -> RootResult:
    """Root xi in (0, pi/2) of sin(2*xi)/(2*xi)*(1 + zeta*tan(xi)/(2*xi)) = x.

    Requires 0 < x <= 1 + zeta/2.  The left side is evaluated in the
    pole-free form sinc(2*xi) + zeta*sinc(xi)^2/2, which extends
    continuously to xi = pi/2 with value 2*zeta/pi^2; x below the left
    side's infimum raises NoRootInInterval.
    """
    require_finite(x=x, zeta=zeta)
    if x <= 0.0:
        raise DomainError(f"ibs_solve_xi requires x > 0, got {x}")
    if x > (1.0 + 0.5 * zeta) * (1.0 + 1e-12):
        raise BranchError(f"trigonometric branch needs x <= 1 + zeta/2, got x={x}, zeta={zeta}")

    def f(t: float) -> float:
        sc = sinc(t)
        return sinc(2.0 * t) + 0.5 * zeta * sc * sc - x

    if abs(f(0.0)) <= 1e-15 * max(1.0, abs(x)):
        return RootResult(root=0.0, residual=f(0.0), iterations=0, bracket=(0.0, 0.0))
    hi = _HALF_PI if zeta >= 0.0 else min(_HALF_PI, _sine_branch_cap(zeta)) * (1.0 - 1e-12)
    if f(hi) >= 0.0:
        raise NoRootInInterval(
            f"x={x} is below the reachable range of the trigonometric branch for zeta={zeta}"
        )
    return solve_bracketed(f, 0.0, hi, tol=1e-15)


def _ibs_hyp_value(x: float, zeta: float, delta: float) -> float:
    th = tanhc(0.5 * delta)
    ratio = th / (1.0 + 0.5 * zeta * th)
    return (
        0.5 * (delta * delta - zeta * zeta) * (1.0 - ratio)
        - 2.0 * zeta * math.log(math.cosh(0.5 * delta) + 0.5 * zeta * sinhc(0.5 * delta))
        + zeta * zeta
    )


def _ibs_trig_value(x: float, zeta: float, xi: float) -> float:
    # tan(xi)/(xi + zeta*tan(xi)/2) rewritten pole-free as sin/(xi*cos + zeta*sin/2)
    if xi == 0.0:
        ratio = 1.0 / (1.0 + 0.5 * zeta)
    else:
        ratio = math.sin(xi) / (xi * math.cos(xi) + 0.5 * zeta * math.sin(xi))
    return (
        2.0 * (xi * xi + 0.25 * zeta * zeta) * (ratio - 1.0)
        - 2.0 * zeta * math.log(math.cos(xi) + 0.5 * zeta * sinc(xi))
        + zeta * zeta
    )


def rate_ibs(x: float, zeta: float) -> IbsEval:
    """Rate function I_BS(x) >= 0; zero exactly at x = (e^zeta - 1)/zeta."""
    require_finite(x=x, zeta=zeta)
    if x <= 0.0:
        raise DomainError(f"rate_ibs requires x > 0, got {x}")
    pivot = 1.0 + 0.5 * zeta
    if abs(x - pivot) <= _PIVOT_WINDOW * max(1.0, abs(pivot)):
        value = _ibs_trig_value(x, zeta, 0.0)
        return IbsEval(value=max(value, 0.0), branch=Branch.BOUNDARY, root=0.0, residual=0.0)
    if x > pivot:
        res = ibs_solve_delta(x, zeta)
        value = _ibs_hyp_value(x, zeta, res.root)
        branch = Branch.HYPERBOLIC
    else:
        res = ibs_solve_xi(x, zeta)
        value = _ibs_trig_value(x, zeta, res.root)
        branch = Branch.TRIGONOMETRIC
    if -1e-9 < value < 0.0:  # roundoff at the rate function's zero
        value = 0.0
    return IbsEval(value=value, branch=branch, root=res.root, residual=res.residual)


def a_fwd(s0: float, a: float, t: float) -> float:
    """Expected time-average of the asset: s0*(e^(a*t) - 1)/(a*t)."""
    require_finite(s0=s0, a=a, t=t)
    if s0 <= 0.0 or t <= 0.0:
        raise DomainError("a_fwd requires s0 > 0 and t > 0")
    return s0 * expm1_over_x(a * t)


def _ibs_curvature_at_zero(zeta: float, xstar: float) -> float:
    """Second derivative of I_BS at its zero, by central differences."""
    h = 1e-3 * xstar
    ip = rate_ibs(xstar + h, zeta).value
    im = rate_ibs(xstar - h, zeta).value
    return (ip + im) / (h * h)


def sigma_ln(k: float, s0: float, sigma: float, a: float, t: float) -> float:
    """Equivalent log-normal volatility for the European proxy.

    Within a relative window of 1e-4 around K = A_fwd the 0/0 limit is
    taken via the quadratic behaviour of I_BS at its zero, which gives
    sigma/(x* * sqrt(I_BS''(x*))); at zeta = 0 this is sigma/sqrt(3).
    """
    require_finite(k=k, sigma=sigma)
    if k <= 0.0 or s0 <= 0.0:
        raise DomainError("sigma_ln requires k > 0 and s0 > 0")
    if sigma <= 0.0:
        raise DomainError(f"sigma must be > 0, got {sigma}")
    zeta = a * t
    xstar = expm1_over_x(zeta)
    log_m = math.log(k / (s0 * xstar))
    if abs(log_m) < _ATM_WINDOW:
        curv = _ibs_curvature_at_zero(zeta, xstar)
        return sigma / (xstar * math.sqrt(curv))
    ibs = rate_ibs(k / s0, zeta).value
    return sigma * abs(log_m) / math.sqrt(2.0 * ibs)


def european_bs_price(
    f: float, k: float, t: float, vol: float, df: float, kind: OptionKind
) -> float:
    """Undiscounted-forward Black formula: df*(F*N(d1) - K*N(d2)) for calls.

    Puts by parity; vol = 0 degenerates to discounted intrinsic value.
    """
    require_finite(f=f, k=k, t=t, vol=vol, df=df)
    if f <= 0.0 or k <= 0.0 or t <= 0.0 or df <= 0.0:
        raise DomainError("european_bs_price requires f, k, t, df > 0")
    if vol < 0.0:
        raise DomainError(f"vol must be >= 0, got {vol}")
    kind = OptionKind(kind)
    if vol == 0.0:
        intrinsic = max(f - k, 0.0) if kind is OptionKind.CALL else max(k - f, 0.0)
        return df * intrinsic
    sd = vol * math.sqrt(t)
    d1 = math.log(f / k) / sd + 0.5 * sd
    d2 = d1 - sd
    call = df * (f * norm_cdf(d1) - k * norm_cdf(d2))
    if kind is OptionKind.CALL:
        return call
    return call - df * (f - k)


def asian_price_approx(inp: AsianInputs) -> OptionQuote:
    """Asian price as a European option at strike K with vol Sigma_LN."""
    a = inp.r - inp.q
    fwd = a_fwd(inp.s0, a, inp.t)
    vol = sigma_ln(inp.k, inp.s0, inp.sigma, a, inp.t)
    df = math.exp(-inp.r * inp.t)
    price = european_bs_price(fwd, inp.k, inp.t, vol, df, inp.kind)
    return OptionQuote(
        price=price,
        method="approx",
        diagnostics={
            "sigma_ln": vol,
            "a_fwd": fwd,
            "zeta": a * inp.t,
            "moneyness": inp.k / inp.s0,
            "discount_factor": df,
        },
    )


def otm_log_price_limit(
    k: float, s0: float, sigma: float, a: float, t: float, kind: OptionKind
) -> float:
    """Limit of (sigma^2*t)*log(price) for an out-of-the-money option.

    Equals -I_BS(K/S0); requires K >= S0 for calls and K <= S0 for puts
    (at K = S0 this is the rate-function value at unit moneyness, zero
    for zero drift).
    """
    require_finite(k=k, s0=s0, sigma=sigma, a=a, t=t)
    if sigma <= 0.0 or t <= 0.0 or k <= 0.0 or s0 <= 0.0:
        raise DomainError("otm_log_price_limit requires k, s0, sigma, t > 0")
    kind = OptionKind(kind)
    if kind is OptionKind.CALL and k < s0:
        raise DomainError(f"call is not out-of-the-money: k={k} < s0={s0}")
    if kind is OptionKind.PUT and k > s0:
        raise DomainError(f"put is not out-of-the-money: k={k} > s0={s0}")
    return -rate_ibs(k / s0, a * t).value
