"""Bracketed scalar root solving.

A single safeguarded hybrid solver backs every transcendental equation in
the library.  Secant steps give fast local convergence; whenever a step
leaves the bracket, stalls, or fails to shrink the bracket quickly enough,
the solver falls back to bisection, so the sign-change interval is
maintained at every iteration.  Stateless and safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import MaxIterations, NoSignChange

__all__ = ["RootResult", "solve_bracketed"]


@dataclass(frozen=True)
class RootResult:
    """Outcome of a bracketed solve.

    root lies inside the initial bracket; residual is f(root); bracket is
    the final sign-change interval.
    """

    root: float
    residual: float
    iterations: int
    bracket: tuple[float, float]


def solve_bracketed(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-14,
    max_iter: int = 200,
) -> RootResult:
    """Find a root of ``f`` on ``[lo, hi]``.

    Requires f(lo)*f(hi) <= 0.  Terminates when |f(x)| <= tol or the
    bracket width falls below tol*max(1, |x|).

    Raises:
        NoSignChange: endpoints have the same sign.
        MaxIterations: no convergence within ``max_iter`` evaluations.
    """
    if not (tol > 0.0):
        raise ValueError(f"tol must be positive, got {tol}")
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise ValueError(f"invalid bracket [{lo}, {hi}]")

    a, b = lo, hi
    fa, fb = f(a), f(b)
    evals = 2
    if fa == 0.0:
        return RootResult(a, 0.0, evals, (lo, hi))
    if fb == 0.0:
        return RootResult(b, 0.0, evals, (lo, hi))
    if (fa > 0.0) == (fb > 0.0):
        raise NoSignChange(f"f({lo})={fa:g} and f({hi})={fb:g} have the same sign")

    # b tracks the endpoint with the smaller |f|
    if abs(fa) < abs(fb):
        a, b, fa, fb = b, a, fb, fa
    w1 = w2 = math.inf  # bracket widths one and two iterations ago

    while evals < max_iter:
        width = abs(b - a)
        if abs(fb) <= tol or width <= tol * max(1.0, abs(b)):
            lo_f, hi_f = (a, b) if a <= b else (b, a)
            return RootResult(b, fb, evals, (lo_f, hi_f))

        # secant step from the current endpoints; fall back to bisection when
        # it leaves the bracket or the bracket failed to halve in two steps
        x = b - fb * (b - a) / (fb - fa)
        inner_lo, inner_hi = (a, b) if a < b else (b, a)
        if not (inner_lo < x < inner_hi) or width > 0.5 * w2:
            x = 0.5 * (a + b)
        w1, w2 = width, w1

        fx = f(x)
        evals += 1
        if fx == 0.0:
            lo_f, hi_f = (a, b) if a <= b else (b, a)
            return RootResult(x, 0.0, evals, (lo_f, hi_f))

        # keep the sign change: replace the endpoint matching sign(fx)
        if (fx > 0.0) == (fb > 0.0):
            b, fb = x, fx
        else:
            a, b, fa, fb = b, x, fb, fx
        if abs(fa) < abs(fb):
            a, b, fa, fb = b, a, fb, fa

    raise MaxIterations(
        f"no convergence in {max_iter} evaluations; bracket [{min(a, b)}, {max(a, b)}], f={fb:g}"
    )
