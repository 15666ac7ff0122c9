"""Published benchmark values embedded for reproduction and validation.

Values are quoted digit-for-digit from the published benchmark tables so
the ``reproduce`` and ``validate`` commands can diff computed results
against them without re-typing.  A few cells are known to be printed
truncated rather than rounded at the source (see KNOWN_PRINT_DEVIATIONS);
the validation suite reports them honestly as mismatches at the stated
tolerances.
"""

from __future__ import annotations

# Benchmark table 1: zero-drift scenario, r0 = 0.1, a = 0.
# Columns: (T, sigma, B_exact, R_exact_pct, R_asympt_pct)
TABLE1_SCENARIO = {"r0": 0.1, "a": 0.0}
TABLE1_ROWS: tuple[tuple[float, float, float, float, float], ...] = (
    (1.0, 0.1, 0.904853, 9.998, 9.998),
    (1.0, 0.2, 0.904898, 9.993, 9.993),
    (1.0, 0.3, 0.904976, 9.985, 9.985),
    (1.0, 0.4, 0.905087, 9.972, 9.973),
    (1.0, 0.5, 0.905235, 9.956, 9.959),
    (5.0, 0.1, 0.607799, 9.958, 9.959),
    (5.0, 0.2, 0.611650, 9.832, 9.840),
    (5.0, 0.3, 0.618183, 9.619, 9.655),
    (5.0, 0.4, 0.627431, 9.322, 9.421),
    (5.0, 0.5, 0.639230, 8.950, 9.155),
    (10.0, 0.1, 0.373968, 9.836, 9.839),
    (10.0, 0.2, 0.391646, 9.374, 9.421),
    (10.0, 0.3, 0.418920, 8.701, 8.869),
    (10.0, 0.4, 0.452708, 7.925, 8.282),
    (10.0, 0.5, 0.489961, 7.134, 7.714),
)

# Benchmark table 3: drifted scenario, r0 = 0.06, sigma = 0.3, a = 0.09.
# Columns: (T, xi, neg_log_B_over_T, B_asympt, B_reference); B_reference is
# the scenario's exact evaluation quoted from the source's last column.
TABLE3_SCENARIO = {"r0": 0.06, "sigma": 0.3, "a": 0.09}
TABLE3_ROWS: tuple[tuple[float, float, float, float, float], ...] = (
    (1.0, 0.030345, 0.06272, 0.939, 0.939),
    (2.0, 0.068373, 0.06547, 0.877, 0.877),
    (3.0, 0.112756, 0.06821, 0.814, 0.815),
    (4.0, 0.162295, 0.07091, 0.753, 0.753),
    (5.0, 0.215833, 0.07354, 0.692, 0.693),
    (10.0, 0.507276, 0.08454, 0.429, 0.438),
    (15.0, 0.777869, 0.09113, 0.255, 0.275),
    (20.0, 1.001668, 0.09411, 0.152, 0.179),
)

# Cells where the published digits provably truncate instead of round, so no
# implementation can match them at print precision:
#   * table 1 rows (5, 0.2) and (10, 0.1) print the SAME quantity
#     (b^2 = 0.05 in both) as 9.840 and 9.839; the value is 9.8396570%.
#   * table 1 row (1, 0.4): value 9.9735025% printed as 9.973.
#   * table 3 row T = 3: B_asympt = exp(-3*0.06821215) = 0.814944, which
#     rounds to 0.815 but is printed 0.814.
KNOWN_PRINT_DEVIATIONS = (
    ("table1", (10.0, 0.1), "R_asympt_pct", 9.8396570),
    ("table1", (1.0, 0.4), "R_asympt_pct", 9.9735025),
    ("table3", 3.0, "B_asympt", 0.814944),
)

# Volatility curves used for the maximum-maturity figure.
FIGURE1_SIGMAS = (0.3, 0.5, 1.0)
