"""Exact solution of the budget-constrained zero-sum game by linear
programming: game value plus an equilibrium strategy pair under either
budget mode.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import lp
from .errors import DimensionMismatch, Infeasible, JamGameError
from .model import (
    ConstraintMode,
    GameConfig,
    MixedStrategy,
    PayoffMatrix,
    PowerVector,
    Role,
    payoff_matrix,
    power_vector,
)


@dataclass(frozen=True)
class SolveDiagnostics:
    lp_status: str
    feasibility_residual: float
    duality_gap: float
    complementarity_residual: float


@dataclass(frozen=True)
class GameSolution:
    """Game value with an equilibrium pair (x_star, y_star).

    Equilibria need not be unique; the solver pins one deterministically
    via its fixed pivot rule. jammer_average_power is the realized
    y_star . J, which equals the budget under EQUALITY and never exceeds
    it under AT_MOST.
    """

    value: float
    x_star: MixedStrategy
    y_star: MixedStrategy
    jammer_average_power: float
    mode: ConstraintMode
    diagnostics: SolveDiagnostics


@dataclass(frozen=True)
class SweepPoint:
    """One budget of a sweep; either a solution or an inline error."""

    j_ave: float
    solution: GameSolution | None = None
    error: str | None = None


def _clean_probs(v: np.ndarray) -> np.ndarray:
    w = np.clip(v, 0.0, None)
    return w / w.sum()


def solve_matrix_game(
    matrix: PayoffMatrix,
    powers: PowerVector,
    j_ave: float,
    mode: ConstraintMode,
):
    """Solve min_y max_x x^T C y over the budgeted jammer polytope.

    The LP minimizes t subject to (C y)_i <= t per transmitter row,
    sum(y) = 1, y >= 0, and y . J constrained to the budget. The
    transmitter equilibrium is the (normalized) vector of dual
    multipliers on the row constraints.

    At the handful of budgets where the equilibrium set is degenerate
    (the closed-form grid budgets), ties are broken as if the budget were
    infinitesimally smaller, so the returned pair varies continuously
    with the budget from below. The solved problem itself is unchanged.

    Returns (value, x, y, diagnostics) with x, y as plain arrays.
    """
    entries = matrix.entries
    n_rows, n_cols = entries.shape
    if len(powers) != n_cols:
        raise DimensionMismatch(f"{n_cols} matrix columns vs {len(powers)} power levels")
    levels = powers.as_array()

    n_vars = n_cols + 1  # y_0..y_n, then t
    objective = [0.0] * n_cols + [1.0]
    constraints = []
    for i in range(n_rows):
        constraints.append((tuple(entries[i]) + (-1.0,), lp.LE, 0.0))
    constraints.append(((1.0,) * n_cols + (0.0,), lp.EQ, 1.0))
    budget_rel = lp.EQ if mode == ConstraintMode.EQUALITY else lp.LE
    constraints.append((tuple(levels) + (0.0,), budget_rel, float(j_ave)))

    tie_break = None
    if j_ave > 0.0:
        tie_break = (0.0,) * (n_rows + 1) + (-1.0,)
    problem = lp.LpProblem(
        objective=tuple(objective),
        constraints=tuple(constraints),
        free_vars=frozenset({n_vars - 1}),
        rhs_tie_break=tie_break,
    )
    solution = lp.solve_lp(problem)
    if solution.status == lp.LpStatus.INFEASIBLE:
        raise Infeasible(f"no jammer strategy meets budget {j_ave} in mode {mode.value}")
    if solution.status != lp.LpStatus.OPTIMAL:
        raise JamGameError(f"unexpected LP status {solution.status}")

    y = _clean_probs(solution.primal[:n_cols])
    # Row constraints are "<=" in a minimization, so their duals are <= 0;
    # the transmitter mix is their negation, normalized.
    x = _clean_probs(np.clip(-solution.dual[:n_rows], 0.0, None))
    diagnostics = SolveDiagnostics(
        lp_status=solution.status.value,
        feasibility_residual=solution.feasibility_residual,
        duality_gap=solution.duality_gap,
        complementarity_residual=solution.complementarity_residual,
    )
    return float(solution.objective_value), x, y, diagnostics


def solve_game(config: GameConfig) -> GameSolution:
    """Equilibrium of the game defined by config, at config.j_ave."""
    matrix = payoff_matrix(config)
    powers = power_vector(config)
    value, x, y, diagnostics = solve_matrix_game(
        matrix, powers, config.j_ave, config.constraint_mode
    )
    y_star = MixedStrategy(probs=tuple(y), role=Role.JAMMER)
    x_star = MixedStrategy(probs=tuple(x), role=Role.TRANSMITTER)
    return GameSolution(
        value=value,
        x_star=x_star,
        y_star=y_star,
        jammer_average_power=float(y_star.as_array() @ powers.as_array()),
        mode=config.constraint_mode,
        diagnostics=diagnostics,
    )


def best_response_transmitter(matrix: PayoffMatrix, y: MixedStrategy) -> tuple[int, float]:
    """Row maximizing the payoff against a fixed jammer strategy.

    Ties break toward the larger index (the lower, safer rate) so the
    result is deterministic.
    """
    n_rows, n_cols = matrix.shape
    if len(y) != n_cols:
        raise DimensionMismatch(f"y has {len(y)} entries, matrix has {n_cols} columns")
    row_values = matrix.entries @ y.as_array()
    best = n_rows - 1 - int(np.argmax(row_values[::-1]))
    return best, float(row_values[best])


def best_response_jammer(
    matrix: PayoffMatrix,
    x: MixedStrategy,
    j_ave: float,
    powers: PowerVector,
    mode: ConstraintMode,
) -> tuple[MixedStrategy, float]:
    """Budget-feasible jammer strategy minimizing x^T C y, via one LP."""
    n_rows, n_cols = matrix.shape
    if len(x) != n_rows:
        raise DimensionMismatch(f"x has {len(x)} entries, matrix has {n_rows} rows")
    if len(powers) != n_cols:
        raise DimensionMismatch(f"{n_cols} matrix columns vs {len(powers)} power levels")
    costs = x.as_array() @ matrix.entries
    budget_rel = lp.EQ if mode == ConstraintMode.EQUALITY else lp.LE
    problem = lp.LpProblem(
        objective=tuple(costs),
        constraints=(
            ((1.0,) * n_cols, lp.EQ, 1.0),
            (tuple(powers.levels), budget_rel, float(j_ave)),
        ),
    )
    solution = lp.solve_lp(problem)
    if solution.status == lp.LpStatus.INFEASIBLE:
        raise Infeasible(f"no jammer strategy meets budget {j_ave} in mode {mode.value}")
    y = MixedStrategy(probs=tuple(_clean_probs(solution.primal)), role=Role.JAMMER)
    return y, float(solution.objective_value)


def sweep(config: GameConfig, j_ave_list) -> list[SweepPoint]:
    """Solve the game across budgets, preserving order; a failing budget
    yields an inline error entry instead of aborting the sweep.
    """
    points = []
    for j_ave in j_ave_list:
        try:
            solution = solve_game(replace(config, j_ave=float(j_ave)))
            points.append(SweepPoint(j_ave=float(j_ave), solution=solution))
        except JamGameError as exc:
            points.append(SweepPoint(j_ave=float(j_ave), error=str(exc)))
    return points
