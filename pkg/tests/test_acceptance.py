"""Acceptance criteria, one test per criterion, at the stated tolerances.

Each test prints a single CRITERION line (visible with ``pytest -s``)
before asserting.  Three criteria contain sub-assertions that compare
against published digits which provably truncate rather than round (or,
for the series bound, against a tolerance tighter than the true
truncation term); those tests fail with the computed evidence in the
assertion message and are documented in README "Known deviations".
"""

import math
import time

import numpy as np

from gbmlap import asian, dothan, oracles, ratefn, reference
from gbmlap.asian import AsianInputs, OptionKind
from gbmlap.model import ModelParams, scale
from gbmlap.validation import run_checks


def _report(n: int, ok: bool, detail: str) -> None:
    print(f"CRITERION {n}: {'PASS' if ok else 'FAIL'} - {detail}")


def test_criterion_01_table1_reproduction():
    r0 = reference.TABLE1_SCENARIO["r0"]
    t0 = time.perf_counter()
    bad_b, bad_r = [], []
    for (T, sigma, b_pub, _, r_pub) in reference.TABLE1_ROWS:
        q = dothan.bond_exact_zero_drift(r0, sigma, T)
        if abs(q.price - b_pub) > 2e-6:
            bad_b.append((T, sigma, q.price, b_pub))
        sc = scale(ModelParams(sigma=sigma, a=0.0, T=T, theta=r0))
        pct = 100.0 * r0 * ratefn.rate_R(sc.b, sc.zeta).value
        if abs(pct - r_pub) > 5e-4:
            bad_r.append((T, sigma, round(pct, 7), r_pub))
    elapsed = time.perf_counter() - t0
    ok = not bad_b and not bad_r and elapsed < 10.0
    _report(
        1,
        ok,
        f"15 rows in {elapsed:.2f}s; B column violations: {bad_b or 'none'}; "
        f"R column violations (+-0.0005%): {bad_r or 'none'}",
    )
    assert elapsed < 10.0
    assert not bad_b, f"B_exact outside +-2e-6 of published: {bad_b}"
    assert not bad_r, (
        f"R_asympt outside +-0.0005% of published: {bad_r}. The published column "
        f"prints these cells truncated, not rounded: rows (5, 0.2) and (10, 0.1) "
        f"print the same quantity (b^2 = 0.05, value 9.8396570%) as 9.840 and "
        f"9.839, so both bands cannot hold; row (1, 0.4) is 9.9735025% printed "
        f"as 9.973. See README 'Known deviations'."
    )


def test_criterion_02_table3_reproduction():
    sc3 = reference.TABLE3_SCENARIO
    t0 = time.perf_counter()
    bad = []
    for (T, xi_pub, nlb_pub, b_pub, _) in reference.TABLE3_ROWS:
        s = scale(ModelParams(sigma=sc3["sigma"], a=sc3["a"], T=T, theta=sc3["r0"]))
        ev = ratefn.rate_R(s.b, s.zeta)
        nlb = sc3["r0"] * ev.value
        price = math.exp(-nlb * T)
        if abs(ev.root - xi_pub) > 1e-6:
            bad.append((T, "xi", ev.root, xi_pub))
        if abs(nlb - nlb_pub) > 5e-5:
            bad.append((T, "neg_log_B_over_T", nlb, nlb_pub))
        if abs(price - b_pub) > 5e-4:
            bad.append((T, "B_asympt", round(price, 6), b_pub))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 1.0
    _report(2, ok, f"8 rows in {elapsed:.3f}s; violations: {bad or 'none'}")
    assert elapsed < 1.0
    assert not bad, (
        f"table-3 values outside stated tolerances: {bad}. The published "
        f"B_asympt at T=3 prints truncated: exp(-3*0.06821215) = 0.814944 "
        f"rounds to 0.815 (consistent with the published -log(B)/T column) "
        f"but is printed 0.814. See README 'Known deviations'."
    )


def test_criterion_03_convergence_constants():
    y0, rb = ratefn.convergence_radius()
    ok = abs(y0 - 1.19968) <= 1e-5 and abs(rb - 0.662743) <= 1e-6
    resid = y0 * math.tanh(y0) - 1.0
    ok = ok and abs(resid) <= 1e-12
    _report(3, ok, f"y0={y0:.8f} (+-1e-5 of 1.19968), R_b={rb:.8f} (+-1e-6 of 0.662743)")
    assert abs(y0 - 1.19968) <= 1e-5
    assert abs(rb - 0.662743) <= 1e-6
    assert abs(resid) <= 1e-12


def test_criterion_04_series_behavior():
    inside = []
    for b in (0.05, 0.1, 0.15, 0.2, 0.25, 0.3):
        err = abs(ratefn.rate_R_series(b, 8) - ratefn.rate_R_zero_drift(b).value)
        if err > 1e-6:
            inside.append((b, err))
    exploded = all(
        abs(ratefn.rate_R_series(b, 8) - ratefn.rate_R_zero_drift(b).value) > 1e-2
        for b in (0.9, 1.0, 1.1)
    )
    finite_monotone = True
    prev = math.inf
    for b in np.arange(0.9, 3.01, 0.1):
        v = ratefn.rate_R_zero_drift(float(b)).value
        if not (0.0 < v < prev):
            finite_monotone = False
        prev = v
    ok = not inside and exploded and finite_monotone
    _report(
        4,
        ok,
        f"series<=1e-6 violations for b<=0.3: {inside or 'none'}; "
        f"error>1e-2 for b>=0.9: {exploded}; full solve finite+monotone: {finite_monotone}",
    )
    assert exploded and finite_monotone
    assert not inside, (
        f"8-term series vs full solve exceeds 1e-6: {inside}. The true "
        f"truncation term is ~0.5435*b^10 (next series coefficient "
        f"84752/155925), giving 2.82e-06 at b=0.3; the 1e-6 bound is "
        f"mathematically unattainable at the interval endpoint (it holds for "
        f"b <= 0.25). See README 'Known deviations'."
    )


def test_criterion_05_laplace_oracle_grid():
    t0 = time.perf_counter()
    worst = 0.0
    for b in np.linspace(0.1, 2.0, 5):
        for z in np.linspace(-0.5, 2.0, 5):
            d = abs(
                oracles.jb_variational(float(b), float(z)).value
                - 2.0 * b * b * ratefn.rate_R(float(b), float(z)).value
            )
            worst = max(worst, float(d))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-4 and elapsed < 30.0
    _report(5, ok, f"5x5 grid worst |shooting - 2b^2R| = {worst:.2e} in {elapsed:.1f}s")
    assert worst <= 1e-4
    assert elapsed < 30.0


def test_criterion_06_asian_rate_function():
    worst_zero = 0.0
    for z in (0.0, 0.25, 0.5, 1.0):
        xstar = math.expm1(z) / z if z else 1.0
        worst_zero = max(worst_zero, abs(asian.rate_ibs(xstar, z).value))
    worst_grid = 0.0
    for x in (0.5, 0.8, 1.2, 2.0, 3.0):
        for z in (0.0, 0.5, 1.0):
            d = abs(oracles.ibs_variational(x, z).value - asian.rate_ibs(x, z).value)
            worst_grid = max(worst_grid, d)
    atm = asian.sigma_ln(100.0, 100.0, 0.2, 0.0, 1.0)
    atm_err = abs(atm - 0.2 / math.sqrt(3.0))
    ok = worst_zero <= 1e-10 and worst_grid <= 1e-4 and atm_err <= 1e-3 * 0.2
    _report(
        6,
        ok,
        f"I_BS zero residual {worst_zero:.1e} (<=1e-10); oracle grid {worst_grid:.2e} "
        f"(<=1e-4); ATM limit error {atm_err:.2e} (<=1e-3*sigma)",
    )
    assert worst_zero <= 1e-10
    assert worst_grid <= 1e-4
    assert atm_err <= 1e-3 * 0.2


def test_criterion_07_monte_carlo_cross_checks():
    t0 = time.perf_counter()
    est = oracles.mc_laplace(0.1, 0.1, 0.0, 1.0, 1_000_000, 512, seed=20240811)
    lap_diff = abs(est.mean - 0.904853)
    lap_ok = lap_diff <= 3.0 * est.stderr

    inp = AsianInputs(s0=100.0, k=110.0, r=0.05, q=0.0, sigma=0.3, t=1.0, kind=OptionKind.CALL)
    mc = oracles.mc_asian_price(inp, 200_000, 256, seed=7)
    approx = asian.asian_price_approx(inp).price
    band = max(3.0 * mc.stderr, 0.02 * mc.mean)
    asian_ok = abs(mc.mean - approx) <= band
    elapsed = time.perf_counter() - t0
    ok = lap_ok and asian_ok and elapsed < 60.0
    _report(
        7,
        ok,
        f"laplace MC {est.mean:.8f} vs 0.904853 (diff {lap_diff:.2e}, 3se {3 * est.stderr:.2e}); "
        f"asian MC {mc.mean:.4f} vs approx {approx:.4f} (band {band:.4f}); {elapsed:.0f}s",
    )
    assert lap_ok, (est.mean, est.stderr)
    assert asian_ok, (mc.mean, approx, band)
    assert elapsed < 60.0


def test_criterion_08_small_rate_asymptotics():
    sigma, T = 0.2, 1.0
    m1 = dothan.moment_m1(0.0, sigma, T)
    m2 = dothan.moment_m2(0.0, sigma, T)
    half_m2 = 0.5 * m2
    # Jensen bound on the third moment, m3 <= T^2*(e^(3*sigma^2*T)-1)/(3*sigma^2)
    # (the numerically verified form; m3 = 1.0411 here sits inside it)
    bound3 = T * T * math.expm1(3.0 * sigma * sigma * T) / (3.0 * sigma * sigma)
    gaps = []
    bounds_ok = True
    for r0 in (0.02, 0.01, 0.005):
        b = dothan.bond_exact_zero_drift(r0, sigma, T, quad_tol=1e-11).price
        gaps.append(abs((b - 1.0 + r0 * m1) / (r0 * r0) - half_m2))
        upper = 1.0 - r0 * m1 + r0 * r0 * half_m2
        lower = upper - (r0 ** 3 / 6.0) * bound3
        bounds_ok = bounds_ok and (lower <= b <= upper)
    monotone = gaps[0] > gaps[1] > gaps[2]
    final_ok = gaps[-1] < 1e-2 * half_m2
    ok = monotone and final_ok and bounds_ok
    _report(
        8,
        ok,
        f"limit gaps {gaps[0]:.2e} > {gaps[1]:.2e} > {gaps[2]:.2e} "
        f"(final < 1% of m2/2 = {1e-2 * half_m2:.2e}); two-sided bounds hold: {bounds_ok}",
    )
    assert monotone, gaps
    assert final_ok, gaps
    assert bounds_ok


def test_criterion_09_perpetual_bond():
    r0, sigma = 0.05, 0.5
    perp = dothan.bond_perpetual(r0, sigma, 0.0).price
    gap = abs(dothan.bond_exact_zero_drift(r0, sigma, 200.0).price - perp)
    target = 2.0 * math.sqrt(2.0 * r0 / (sigma * sigma))
    worst = 0.0
    for T in (50.0, 100.0, 500.0, 1000.0, 5000.0):
        sc = scale(ModelParams(sigma=sigma, a=0.0, T=T, theta=r0))
        worst = max(worst, abs(r0 * T * ratefn.rate_R_zero_drift(sc.b).value - target))
    ok = gap <= 1e-3 and worst <= 0.5
    _report(
        9,
        ok,
        f"|B_exact(200) - B_perpetual| = {gap:.2e} (<=1e-3); "
        f"|r0*T*R - 2*sqrt(2r0/sigma^2)| bounded by {worst:.3f} on T in [50, 5000]",
    )
    assert gap <= 1e-3
    assert worst <= 0.5


def test_criterion_10_validate_runtime():
    t0 = time.perf_counter()
    full = run_checks(quick=False)
    t_full = time.perf_counter() - t0
    t0 = time.perf_counter()
    quick = run_checks(quick=True)
    t_quick = time.perf_counter() - t0
    known_red = {"table1_asymptotic_yields", "table3_reproduction", "series_small_b"}
    full_fails = {r.name for r in full if not r.passed}
    quick_fails = {r.name for r in quick if not r.passed}
    ok = (
        t_full < 120.0
        and t_quick < 15.0
        and len(full) == len(quick)
        and full_fails == known_red
        and quick_fails == known_red
    )
    _report(
        10,
        ok,
        f"validate full: {len(full)} checks in {t_full:.1f}s (<120s); quick: {t_quick:.1f}s "
        f"(<15s); failing checks are exactly the documented published-digit deviations",
    )
    assert t_full < 120.0
    assert t_quick < 15.0
    assert full_fails == known_red, full_fails
    assert quick_fails == known_red, quick_fails
