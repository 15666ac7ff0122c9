"""Independent ground-truth generators.

Two families, deliberately sharing no code with the closed forms they
check:

* Monte Carlo of the gBM time integral X_T = int_0^T e^(sigma*W_s +
  (a - sigma^2/2)*s) ds with exact Gaussian marginals at the grid nodes
  and a trapezoid rule in time (O(n^-2) bias).  Paths come in antithetic
  pairs; path i draws from a counter-based substream keyed (seed, i), so
  estimates are reproducible bit-for-bit for a given (seed, n_paths,
  n_steps) and paths could be simulated in any order.

* Direct numerical solution of the two variational problems behind the
  rate functions, by shooting on the Euler-Lagrange equation
  h'' = kappa * e^h with h(0) = 0 and natural condition h'(1) = zeta
  (kappa = 2*b^2 on the Laplace side; kappa = -mu with the multiplier mu
  adjusted so that int_0^1 e^h = x on the distribution side).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from ._mathutil import expm1_over_x, require_finite
from .asian import AsianInputs, OptionKind
from .errors import DomainError, ShootingFailed
from .rootfind import solve_bracketed

__all__ = [
    "MCEstimate",
    "ShootingResult",
    "sample_integral_gbm",
    "mc_laplace",
    "mc_asian_price",
    "jb_variational",
    "ibs_variational",
]

_BLOCK = 2048
_U64 = (1 << 64) - 1
# cap on h inside the ODE right-hand side; off-root shots blow up in finite
# time, capping keeps the integration finite with the correct sign of h'(1)
_H_CAP = 40.0


@dataclass(frozen=True)
class MCEstimate:
    """Monte Carlo mean with standard error and full reproduction key."""

    mean: float
    stderr: float
    n_paths: int
    n_steps: int
    seed: int


@dataclass(frozen=True)
class ShootingResult:
    """Variational value with the solved shooting parameters.

    multiplier is 0 for the unconstrained (Laplace-side) problem.
    bc_residual is the boundary-condition defect |h'(1) - zeta|, combined
    with the constraint defect |int e^h - x| for the constrained problem.
    """

    value: float
    initial_slope: float
    multiplier: float
    ode_steps: int
    bc_residual: float


def sample_integral_gbm(sigma: float, a: float, T: float, n_steps: int, rng) -> float:
    """One trapezoid sample of X_T drawn from ``rng`` (a numpy Generator)."""
    require_finite(sigma=sigma, a=a, T=T)
    if n_steps < 2:
        raise DomainError(f"n_steps must be >= 2, got {n_steps}")
    if T <= 0.0 or sigma < 0.0:
        raise DomainError("sample_integral_gbm requires T > 0 and sigma >= 0")
    dt = T / n_steps
    z = rng.standard_normal(n_steps)
    w = np.cumsum(z) * math.sqrt(dt)
    t = dt * np.arange(1, n_steps + 1)
    f = np.exp(sigma * w + (a - 0.5 * sigma * sigma) * t)
    return dt * (0.5 * (1.0 + f[-1]) + f[:-1].sum())


def _substream_template(seed: int):
    """Philox generator plus a reusable state template keyed by (seed, i)."""
    bg = np.random.Philox(key=[seed & _U64, 0])
    gen = np.random.Generator(bg)
    template = bg.state
    return bg, gen, template


def _block_normals(bg, gen, template, seed: int, start: int, count: int, n_steps: int):
    """Draws for paths [start, start+count), one keyed substream per path."""
    z = np.empty((count, n_steps))
    state = template
    for i in range(count):
        state["state"]["key"][1] = (start + i) & _U64
        state["state"]["counter"][:] = 0
        state["buffer_pos"] = 4
        state["has_uint32"] = 0
        bg.state = state
        z[i] = gen.standard_normal(n_steps)
    return z


def _mc_pair_means(payoff, sigma, a, T, n_paths, n_steps, seed, antithetic=True):
    """Per-path payoff means over antithetic pairs; vectorized in blocks."""
    if n_paths < 2:
        raise DomainError(f"n_paths must be >= 2, got {n_paths}")
    if n_steps < 2:
        raise DomainError(f"n_steps must be >= 2, got {n_steps}")
    dt = T / n_steps
    sqdt = math.sqrt(dt)
    drift = (a - 0.5 * sigma * sigma) * dt * np.arange(1, n_steps + 1)
    bg, gen, template = _substream_template(seed)
    out = np.empty(n_paths)
    for start in range(0, n_paths, _BLOCK):
        count = min(_BLOCK, n_paths - start)
        z = _block_normals(bg, gen, template, seed, start, count, n_steps)
        acc = None
        signs = (1.0, -1.0) if antithetic else (1.0,)
        for sgn in signs:
            w = np.cumsum(z, axis=1) * (sgn * sqdt)
            f = np.exp(sigma * w + drift)
            x = dt * (0.5 * (1.0 + f[:, -1]) + f[:, :-1].sum(axis=1))
            p = payoff(x)
            acc = p if acc is None else acc + p
        out[start:start + count] = acc / len(signs)
    return out


def _estimate(values: np.ndarray, n_steps: int, seed: int) -> MCEstimate:
    n = values.size
    return MCEstimate(
        mean=float(values.mean()),
        stderr=float(values.std(ddof=1) / math.sqrt(n)),
        n_paths=n,
        n_steps=n_steps,
        seed=seed,
    )


def mc_laplace(
    theta: float,
    sigma: float,
    a: float,
    T: float,
    n_paths: int,
    n_steps: int,
    seed: int,
    antithetic: bool = True,
) -> MCEstimate:
    """Monte Carlo estimate of E[exp(-theta * X_T)].

    ``n_paths`` counts primary paths; each is averaged with its
    antithetic mirror (same draws negated), so the standard error is over
    n_paths independent pair means.
    """
    require_finite(theta=theta, sigma=sigma, a=a, T=T)
    if theta < 0.0:
        raise DomainError(f"theta must be >= 0, got {theta}")
    if theta == 0.0:
        return MCEstimate(1.0, 0.0, n_paths, n_steps, seed)
    vals = _mc_pair_means(
        lambda x: np.exp(-theta * x), sigma, a, T, n_paths, n_steps, seed, antithetic
    )
    return _estimate(vals, n_steps, seed)


def mc_asian_price(inp: AsianInputs, n_paths: int, n_steps: int, seed: int) -> MCEstimate:
    """Monte Carlo price of an arithmetic-average option (antithetic pairs)."""
    a = inp.r - inp.q
    df = math.exp(-inp.r * inp.t)
    scale_ = inp.s0 / inp.t

    if inp.kind is OptionKind.CALL:
        payoff = lambda x: df * np.maximum(scale_ * x - inp.k, 0.0)
    else:
        payoff = lambda x: df * np.maximum(inp.k - scale_ * x, 0.0)
    vals = _mc_pair_means(payoff, inp.sigma, a, inp.t, n_paths, n_steps, seed)
    return _estimate(vals, n_steps, seed)


def _shoot(kappa: float, zeta: float, slope: float, ode_tol: float):
    """Integrate h'' = kappa*e^h from (0, slope) over [0, 1].

    Returns (h(1), h'(1), int e^h, int (h'-zeta)^2, n_steps); the e^h in
    the right-hand side is capped so off-root blowups stay integrable.
    """

    def rhs(t, y):
        e = math.exp(min(y[0], _H_CAP))
        dh = y[1]
        return (dh, kappa * e, e, (dh - zeta) ** 2)

    sol = solve_ivp(
        rhs,
        (0.0, 1.0),
        (0.0, slope, 0.0, 0.0),
        method="RK45",
        rtol=ode_tol,
        atol=0.01 * ode_tol,
    )
    if not sol.success:
        raise ShootingFailed(f"ODE integration failed: {sol.message}")
    h1, hp1, int_eh, int_kin = sol.y[:, -1]
    return h1, hp1, int_eh, int_kin, sol.t.size


def _solve_slope(kappa: float, zeta: float, ode_tol: float) -> float:
    """Slope c with h'(1; c) = zeta for kappa > 0, where h'(1) is increasing in c.

    A comparison argument gives a rigorous bracket: at c = zeta the defect
    is +kappa*int e^h > 0, and at c = zeta - kappa*(e^zeta - 1)/zeta the
    trajectory stays below zeta*t, so the defect is negative.  Slopes are
    searched within [-50, 50] per the shooting contract.
    """

    def g(c: float) -> float:
        return _shoot(kappa, zeta, c, ode_tol)[1] - zeta

    lo = max(zeta - kappa * expm1_over_x(zeta), -50.0)
    if g(lo) > 0.0:
        raise ShootingFailed(f"slope root below -50 (kappa={kappa}, zeta={zeta})")
    return solve_bracketed(g, lo, zeta, tol=1e-12).root


def jb_variational(b: float, zeta: float, ode_tol: float = 1e-10) -> ShootingResult:
    """Laplace-side rate by direct minimization via the shooting method.

    Minimizes 2*b^2*int e^h + (1/2)*int (h' - zeta)^2 over h(0) = 0 by
    solving h'' = 2*b^2*e^h with h'(1) = zeta and evaluating the
    objective along the trajectory.  Independent of the closed forms in
    ``ratefn``.
    """
    require_finite(b=b, zeta=zeta)
    if b < 0.0:
        raise DomainError(f"jb_variational requires b >= 0, got {b}")
    if b == 0.0:
        return ShootingResult(0.0, zeta, 0.0, 0, 0.0)
    kappa = 2.0 * b * b
    slope = _solve_slope(kappa, zeta, ode_tol)
    _, hp1, int_eh, int_kin, nsteps = _shoot(kappa, zeta, slope, ode_tol)
    return ShootingResult(
        value=kappa * int_eh + 0.5 * int_kin,
        initial_slope=slope,
        multiplier=0.0,
        ode_steps=nsteps,
        bc_residual=abs(hp1 - zeta),
    )


def ibs_variational(x: float, zeta: float, ode_tol: float = 1e-10) -> ShootingResult:
    """Distribution-side rate by constrained shooting.

    Minimizes (1/2)*int (h' - zeta)^2 subject to int_0^1 e^h = x,
    h(0) = 0.  The stationarity system is h'' = -mu*e^h with h'(1) = zeta,
    and integrating h'' once ties the unknowns together:
    c - zeta = mu * int e^h at any solution, so with mu set to
    (c - zeta)/x the single shooting parameter c enforces both the
    boundary condition and the constraint at once.  Near c = zeta the
    defect h'(1) - zeta behaves like (c - zeta)*(1 - x*/x), which fixes
    the bracketing direction.  Independent of the closed forms in
    ``asian``.
    """
    require_finite(x=x, zeta=zeta)
    if x <= 0.0:
        raise DomainError(f"ibs_variational requires x > 0, got {x}")
    xstar = expm1_over_x(zeta)
    if abs(x - xstar) <= 1e-12 * max(1.0, xstar):
        return ShootingResult(0.0, zeta, 0.0, 0, 0.0)

    def defect(c: float) -> float:
        return _shoot(-(c - zeta) / x, zeta, c, ode_tol)[1] - zeta

    ins = 1e-6 * max(1.0, abs(zeta))
    sign = 1.0 if x > xstar else -1.0  # side of zeta on which the root lies
    lo = zeta + sign * ins
    glo = defect(lo)
    hi = lo
    step = 0.5
    ghi = glo
    while ghi > 0.0:
        hi += sign * step
        step *= 2.0
        if abs(hi) > 60.0:
            raise ShootingFailed(f"no slope bracket within |c| <= 60 for x={x}, zeta={zeta}")
        ghi = defect(hi)
    if glo < 0.0:
        raise ShootingFailed(f"no sign change from c={lo} for x={x}, zeta={zeta}")
    c_lo, c_hi = (lo, hi) if lo <= hi else (hi, lo)
    slope = solve_bracketed(defect, c_lo, c_hi, tol=1e-12).root
    mu = (slope - zeta) / x
    _, hp1, int_eh, int_kin, nsteps = _shoot(-mu, zeta, slope, ode_tol)
    return ShootingResult(
        value=0.5 * int_kin,
        initial_slope=slope,
        multiplier=mu,
        ode_steps=nsteps,
        bc_residual=max(abs(hp1 - zeta), abs(int_eh - x)),
    )
