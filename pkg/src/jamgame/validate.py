"""Cross-module validation suite: closed forms against the LP solver,
the LP against an independent brute-force mesh oracle, quadrature against
a fixed composite rule, and the simulator against exact expectations.

Each criterion returns a CriterionResult; run_all() executes the lot.
The CLI `validate` command and the acceptance test module both run these.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .analytic import (
    grid_points,
    jammer_opt,
    semi_uniform_equivalence_check,
    threshold,
    transmitter_opt,
)
from .continuous import jth_limit
from .model import (
    ConstraintMode,
    GameConfig,
    MixedStrategy,
    Role,
    expected_payoff,
    make_config,
    payoff_matrix,
    power_vector,
    rate_vector,
    shannon_rate,
)
from .sim import simulate
from .solver import solve_game

REF = make_config(pt=1.0, noise=1.0, j_max=1.0, j_ave=0.0, nt=2)


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    detail: str


def _sweep_configs() -> list[GameConfig]:
    configs = []
    for pt in (0.1, 1.0, 10.0):
        for j_max in (0.5, 1.0, 5.0):
            for nt in (2, 4, 8, 16):
                configs.append(make_config(pt, 1.0, j_max, 0.0, nt))
    return configs


def criterion_grid_point_exactness() -> CriterionResult:
    """Game value at each closed-form grid budget equals the matching rate."""
    worst = 0.0
    checks = 0
    for config in _sweep_configs():
        for point in grid_points(config):
            solution = solve_game(replace(config, j_ave=point.j_ave_m))
            worst = max(worst, abs(solution.value - point.value))
            checks += 1
    passed = worst <= 1e-9
    return CriterionResult(
        "grid-point exactness",
        passed,
        f"{checks} grid points, max |value - R_(m+1)| = {worst:.3e} (tol 1e-9)",
    )


def criterion_strategy_agreement() -> CriterionResult:
    """LP transmitter strategy coincides with the closed-form optimum."""
    worst = 0.0
    checks = 0
    for config in _sweep_configs():
        for point in grid_points(config):
            solution = solve_game(replace(config, j_ave=point.j_ave_m))
            reference = transmitter_opt(config, point.m)
            dev = float(
                np.max(np.abs(solution.x_star.as_array() - reference.as_array()))
            )
            worst = max(worst, dev)
            checks += 1
    passed = worst <= 1e-6
    return CriterionResult(
        "strategy agreement",
        passed,
        f"{checks} grid points, max per-coordinate deviation = {worst:.3e} (tol 1e-6)",
    )


def criterion_powerful_jammer_clamp() -> CriterionResult:
    """At and above the threshold budget the value clamps to the lowest
    rate and the transmitter plays the lowest rate purely.
    """
    worst_value = 0.0
    min_mass = 1.0
    failures = []
    for config in _sweep_configs():
        r_low = rate_vector(config).rates[config.nt]
        j_th = threshold(config).j_th
        for j_ave in (j_th, (j_th + config.j_max) / 2.0, config.j_max):
            solution = solve_game(replace(config, j_ave=j_ave))
            value_err = abs(solution.value - r_low)
            mass = solution.x_star.probs[config.nt]
            worst_value = max(worst_value, value_err)
            min_mass = min(min_mass, mass)
            if value_err > 1e-9 or mass < 1.0 - 1e-8:
                failures.append(
                    f"pt={config.pt} jmax={config.j_max} nt={config.nt} "
                    f"j_ave={j_ave:.6g}: value_err={value_err:.2e} mass={mass:.3g}"
                )
    passed = not failures
    detail = (
        f"max value error = {worst_value:.3e} (tol 1e-9), "
        f"min mass on lowest rate = {min_mass:.3g} (need >= 1-1e-8)"
    )
    if failures:
        detail += f"; {len(failures)} failing points, first: {failures[0]}"
    return CriterionResult("powerful-jammer clamp", passed, detail)


def criterion_bound_ordering() -> CriterionResult:
    """Threshold never exceeds its semi-uniform upper bound, and the
    deviation bounds behind that upper bound decrease strictly.
    """
    rng = np.random.default_rng(20120417)
    violations = 0
    for _ in range(1000):
        config = make_config(
            pt=float(10.0 ** rng.uniform(-1.0, 1.0)),
            noise=1.0,
            j_max=float(10.0 ** rng.uniform(-0.7, 0.7)),
            j_ave=0.0,
            nt=int(rng.integers(2, 33)),
        )
        report = threshold(config)
        if report.j_th > report.j_th_upper:
            violations += 1
            continue
        z = report.z_profile
        if any(z[i + 1] >= z[i] for i in range(len(z) - 1)):
            violations += 1
    return CriterionResult(
        "bound ordering",
        violations == 0,
        f"1000 random configs, {violations} violations of "
        f"j_th <= j_th_upper / strictly decreasing z-profile",
    )


def _random_simplex(rng: np.random.Generator, size: int) -> np.ndarray:
    w = rng.exponential(1.0, size)
    return w / w.sum()


def _random_budget_exact(rng: np.random.Generator, levels: np.ndarray, target: float) -> np.ndarray:
    """Random point of the simplex with mean power exactly target, built by
    mixing a random simplex point with a pure strategy on the right side
    of the budget.
    """
    y = _random_simplex(rng, len(levels))
    power = float(y @ levels)
    if power >= target:
        lam = target / power if power > 0 else 0.0
        mix = lam * y
        mix[0] += 1.0 - lam
    else:
        j_max = levels[-1]
        lam = (j_max - target) / (j_max - power)
        mix = lam * y
        mix[-1] += 1.0 - lam
    return mix


def criterion_minimax_guarantee_pair() -> CriterionResult:
    """The closed-form jammer mix holds any transmitter to at most
    R_{m+1}; the closed-form transmitter mix extracts at least R_{m+1}
    from any budget-exact jammer.
    """
    rng = np.random.default_rng(19510901)
    worst_hi = -np.inf
    worst_lo = np.inf
    violations = 0
    for config in _sweep_configs():
        entries = payoff_matrix(config).entries
        levels = power_vector(config).as_array()
        for point in grid_points(config):
            y_hat = jammer_opt(config, point.m).as_array()
            x_hat = transmitter_opt(config, point.m).as_array()
            col = entries @ y_hat
            row = x_hat @ entries
            for _ in range(100):
                x = _random_simplex(rng, config.nt + 1)
                hi = float(x @ col) - point.value
                worst_hi = max(worst_hi, hi)
                y = _random_budget_exact(rng, levels, point.j_ave_m)
                lo = float(row @ y) - point.value
                worst_lo = min(worst_lo, lo)
                if hi > 1e-10 or lo < -1e-10:
                    violations += 1
    return CriterionResult(
        "minimax guarantee pair",
        violations == 0,
        f"max guarantee excess = {worst_hi:.3e}, "
        f"min achievability slack = {worst_lo:.3e} (tol 1e-10), "
        f"{violations} violations",
    )


def criterion_semi_uniform_equivalence() -> CriterionResult:
    """Truncated semi-uniform pmf and the optimal jammer mix tie against
    the optimal transmitter at every grid point.
    """
    worst = 0.0
    for config in _sweep_configs():
        for m in range(config.nt):
            worst = max(worst, semi_uniform_equivalence_check(config, m))
    return CriterionResult(
        "semi-uniform equivalence",
        worst < 1e-10,
        f"max payoff residual = {worst:.3e} (tol 1e-10)",
    )


def mesh_minimax(config: GameConfig, j_ave: float, step: float = 1e-3) -> float:
    """Brute-force oracle: minimize max_i (C y)_i over all jammer mixes on
    a regular mesh of the budgeted simplex (AT_MOST mode), independent of
    the LP. Written in terms of the cumulative weights s_i = y_0+..+y_i,
    which makes the transmitter's best response max_i R_i s_i and the
    budget (j_max/nt) * sum_i (1 - s_i).
    """
    nt = config.nt
    if nt > 3:
        raise ValueError("mesh oracle supports nt <= 3")
    rates = rate_vector(config).as_array()
    grid = np.linspace(0.0, 1.0, round(1.0 / step) + 1)
    scale = config.j_max / nt
    best = np.inf
    if nt == 1:
        feasible = scale * (1.0 - grid) <= j_ave
        if feasible.any():
            best = np.maximum(rates[0] * grid[feasible], rates[1]).min()
        return float(best)
    if nt == 2:
        s0, s1 = np.meshgrid(grid, grid, indexing="ij")
        keep = (s1 >= s0) & (scale * ((1.0 - s0) + (1.0 - s1)) <= j_ave)
        if keep.any():
            f = np.maximum(rates[0] * s0, np.maximum(rates[1] * s1, rates[2]))
            best = f[keep].min()
        return float(best)
    s1g, s2g = np.meshgrid(grid, grid, indexing="ij")
    keep = s2g >= s1g
    s1f, s2f = s1g[keep], s2g[keep]
    inner = np.maximum(rates[1] * s1f, np.maximum(rates[2] * s2f, rates[3]))
    budget_tail = (1.0 - s1f) + (1.0 - s2f)
    for s0 in grid:
        feasible = (s1f >= s0) & (scale * (budget_tail + (1.0 - s0)) <= j_ave)
        if feasible.any():
            best = min(best, max(rates[0] * s0, float(inner[feasible].min())))
    return float(best)


def criterion_small_instance_oracle() -> CriterionResult:
    """LP value against the brute-force mesh minimax on small grids."""
    worst = 0.0
    checks = 0
    for nt in (1, 2, 3):
        config = make_config(1.0, 1.0, 1.0, 0.0, nt)
        for j_ave in (0.1, 0.25, 0.5):
            lp_value = solve_game(replace(config, j_ave=j_ave)).value
            mesh_value = mesh_minimax(config, j_ave, step=1e-3)
            worst = max(worst, abs(lp_value - mesh_value))
            checks += 1
    return CriterionResult(
        "small-instance oracle",
        worst <= 2e-3,
        f"{checks} instances, max |LP - mesh minimax| = {worst:.3e} (tol 2e-3)",
    )


def midpoint_integral(config: GameConfig, panels: int = 1_000_000) -> float:
    """Fixed-resolution composite midpoint rule for the 1/R integral,
    independent of the adaptive scheme.
    """
    h = config.j_max / panels
    j = (np.arange(panels) + 0.5) * h
    rates = 0.5 * np.log1p(config.pt / (config.noise + j)) / np.log(config.log_base)
    return float(np.sum(h / rates))


def criterion_continuum_convergence() -> CriterionResult:
    """Discrete thresholds approach the continuum threshold monotonically
    and land within 1% at nt = 256; adaptive quadrature agrees with the
    fixed midpoint rule.
    """
    report = jth_limit(REF)
    oracle = REF.j_max - shannon_rate(REF, REF.j_max) * midpoint_integral(REF)
    quad_err = abs(report.j_th_lim - oracle)
    errors = []
    for nt in (8, 16, 32, 64, 128, 256):
        j_th = threshold(replace(REF, nt=nt)).j_th
        errors.append(abs(j_th - report.j_th_lim))
    monotone = all(b < a for a, b in zip(errors, errors[1:]))
    tail_ok = errors[-1] < 0.01 * report.j_th_lim
    passed = monotone and tail_ok and quad_err <= 1e-8
    return CriterionResult(
        "continuum convergence",
        passed,
        f"errors {['%.2e' % e for e in errors]} monotone={monotone}, "
        f"final/limit = {errors[-1] / report.j_th_lim:.3%} (< 1%), "
        f"quadrature cross-check = {quad_err:.3e} (tol 1e-8)",
    )


def criterion_simulator_unbiasedness() -> CriterionResult:
    """Empirical throughput and jammer power track their exact
    expectations within four standard errors, reproducibly.
    """
    rng = np.random.default_rng(80211)
    config = replace(REF, nt=3)
    matrix = payoff_matrix(config)
    levels = power_vector(config).as_array()
    packets = 1_000_000
    failures = 0
    worst_sigma = 0.0
    for trial in range(20):
        x = MixedStrategy(tuple(_random_simplex(rng, 4)), Role.TRANSMITTER)
        y = MixedStrategy(tuple(_random_simplex(rng, 4)), Role.JAMMER)
        seed = int(rng.integers(0, 2**63))
        report = simulate(config, x, y, packets, seed)
        again = simulate(config, x, y, packets, seed)
        if report != again:
            failures += 1
            continue
        exact = expected_payoff(matrix, x, y)
        if report.std_error > 0:
            worst_sigma = max(worst_sigma, abs(report.mean_throughput - exact) / report.std_error)
        if abs(report.mean_throughput - exact) > 4.0 * report.std_error:
            failures += 1
            continue
        mean_power = float(y.as_array() @ levels)
        power_sd = float(np.sqrt(y.as_array() @ levels**2 - mean_power**2))
        if abs(report.empirical_jammer_power - mean_power) > 4.0 * power_sd / np.sqrt(packets):
            failures += 1
    return CriterionResult(
        "simulator unbiasedness",
        failures == 0,
        f"20 strategy pairs x {packets} packets, worst |mean - exact| = "
        f"{worst_sigma:.2f} std errors (limit 4), {failures} failures",
    )


def criterion_monotonicity_and_nesting() -> CriterionResult:
    """Value is non-increasing in the budget under AT_MOST and never
    exceeds the EQUALITY value at the same budget.
    """
    budgets = np.linspace(0.0, REF.j_max, 200)
    le_values = [
        solve_game(replace(REF, j_ave=float(b), constraint_mode=ConstraintMode.AT_MOST)).value
        for b in budgets
    ]
    eq_values = [
        solve_game(replace(REF, j_ave=float(b), constraint_mode=ConstraintMode.EQUALITY)).value
        for b in budgets
    ]
    monotone_bad = sum(b > a + 1e-12 for a, b in zip(le_values, le_values[1:]))
    nesting_bad = sum(le > eq + 1e-9 for le, eq in zip(le_values, eq_values))
    worst_gap = max(le - eq for le, eq in zip(le_values, eq_values))
    return CriterionResult(
        "monotonicity and nesting",
        monotone_bad == 0 and nesting_bad == 0,
        f"200-point sweep: {monotone_bad} monotonicity violations, "
        f"{nesting_bad} nesting violations (max AT_MOST - EQUALITY = {worst_gap:.3e})",
    )


ALL_CRITERIA = (
    ("1", criterion_grid_point_exactness),
    ("2", criterion_strategy_agreement),
    ("3", criterion_powerful_jammer_clamp),
    ("4", criterion_bound_ordering),
    ("5", criterion_minimax_guarantee_pair),
    ("6", criterion_semi_uniform_equivalence),
    ("7", criterion_small_instance_oracle),
    ("8", criterion_continuum_convergence),
    ("9", criterion_simulator_unbiasedness),
    ("10", criterion_monotonicity_and_nesting),
)


def run_all(only: set[str] | None = None) -> list[tuple[str, CriterionResult]]:
    results = []
    for key, fn in ALL_CRITERIA:
        if only is not None and key not in only:
            continue
        results.append((key, fn()))
    return results
