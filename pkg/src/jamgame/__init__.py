"""Solver library for the packetized-link jamming game: capacity payoff
matrices, constrained Nash equilibria by LP, closed-form thresholds and
optimal strategies, continuum limits, and a seeded packet simulator.
"""

from . import errors
from .model import (
    AlphaTable,
    ConstraintMode,
    DominanceReduction,
    GameConfig,
    MixedStrategy,
    PayoffMatrix,
    PowerVector,
    RateVector,
    Role,
    alpha_table,
    average_power,
    build_payoff_matrix,
    expected_payoff,
    make_config,
    payoff,
    payoff_matrix,
    power_vector,
    pure_strategy,
    rate_vector,
    reduce_dominated,
    shannon_rate,
)
from .solver import (
    GameSolution,
    SweepPoint,
    best_response_jammer,
    best_response_transmitter,
    solve_game,
    solve_matrix_game,
    sweep,
)
from .analytic import (
    EffectivenessReport,
    GridPoint,
    ThresholdReport,
    effectiveness,
    grid_points,
    jammer_opt,
    semi_uniform,
    semi_uniform_equivalence_check,
    threshold,
    transmitter_opt,
)
from .continuous import ContinuousReport, convergence_curve, jth_limit, rate_continuous
from .sim import JammerPreset, SimReport, simulate, simulate_preset_jammer

__all__ = [name for name in dir() if not name.startswith("_")]
