"""Domain types for the packetized jamming game: channel configuration,
power/rate grids, mixed strategies, and the lower-triangular payoff matrix.

All types are immutable after construction and every operation is a pure
function, so concurrent read access is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    BudgetOutOfRange,
    DimensionMismatch,
    InvalidStrategy,
    NonPositiveParameter,
    PowerOutOfRange,
    UnsupportedGrid,
    ZeroGrid,
)

# Mixed-strategy probabilities are renormalized when the deviation from a
# valid pmf is below this tolerance, rejected otherwise.
PROB_TOL = 1e-12

# Relative tolerance used to recognize uniform power grids.
GRID_TOL = 1e-12


class ConstraintMode(Enum):
    """Jammer budget constraint: exact average power, or at most."""

    EQUALITY = "eq"
    AT_MOST = "le"


class Role(Enum):
    TRANSMITTER = "transmitter"
    JAMMER = "jammer"


@dataclass(frozen=True)
class GameConfig:
    """Channel and game parameters (all powers linear, not dB).

    pt: transmitter power, > 0.
    noise: receiver noise power, > 0.
    j_max: peak jamming power per packet, > 0.
    j_ave: average jamming power budget, in [0, j_max].
    nt: strategy-grid size; both players use nt + 1 uniformly spaced
        pure strategies (the jammer grid is taken equal to the
        transmitter grid, which loses no generality after dominance
        reduction).
    constraint_mode: whether the budget binds with equality or as an
        upper bound.
    log_base: base of the capacity logarithm; rates scale uniformly with
        the base, so equilibrium strategies do not depend on it.
    """

    pt: float
    noise: float
    j_max: float
    j_ave: float
    nt: int
    constraint_mode: ConstraintMode = ConstraintMode.AT_MOST
    log_base: float = 2.0

    def __post_init__(self):
        for name in ("pt", "noise", "j_max"):
            if not getattr(self, name) > 0.0:
                raise NonPositiveParameter(f"{name} must be > 0, got {getattr(self, name)!r}")
        if not (0.0 <= self.j_ave <= self.j_max):
            raise BudgetOutOfRange(f"j_ave must lie in [0, j_max], got {self.j_ave!r}")
        if self.nt < 1:
            raise ZeroGrid(f"nt must be >= 1, got {self.nt!r}")
        if not self.log_base > 1.0:
            raise NonPositiveParameter(f"log_base must be > 1, got {self.log_base!r}")


def make_config(pt, noise, j_max, j_ave, nt, constraint_mode=ConstraintMode.AT_MOST, log_base=2.0):
    """Validate parameters and build a GameConfig; never clamps silently."""
    if isinstance(constraint_mode, str):
        constraint_mode = ConstraintMode(constraint_mode)
    return GameConfig(
        pt=float(pt),
        noise=float(noise),
        j_max=float(j_max),
        j_ave=float(j_ave),
        nt=int(nt),
        constraint_mode=constraint_mode,
        log_base=float(log_base),
    )


def shannon_rate(config: GameConfig, j: float) -> float:
    """Capacity per real channel use at jamming power j:
    (1/2) * log(1 + pt / (noise + j)) in the configured log base.
    """
    return 0.5 * math.log1p(config.pt / (config.noise + j)) / math.log(config.log_base)


@dataclass(frozen=True)
class PowerVector:
    """Uniform jamming power grid 0, j_max/n, ..., j_max."""

    levels: tuple[float, ...]

    def __len__(self):
        return len(self.levels)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.levels, dtype=float)


@dataclass(frozen=True)
class RateVector:
    """Transmission rates R_i and the jamming power each rate assumes."""

    rates: tuple[float, ...]
    assumed_powers: tuple[float, ...]

    def __len__(self):
        return len(self.rates)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.rates, dtype=float)


def power_vector(config: GameConfig, n_levels: int | None = None) -> PowerVector:
    """Jammer pure strategies: n_levels + 1 powers uniform over [0, j_max]."""
    n = config.nt if n_levels is None else int(n_levels)
    if n < 1:
        raise ZeroGrid(f"grid size must be >= 1, got {n}")
    return PowerVector(levels=tuple((j / n) * config.j_max for j in range(n + 1)))


def rate_vector(config: GameConfig, n_rates: int | None = None) -> RateVector:
    """Transmitter pure strategies: rates at assumed powers (i/n) * j_max,
    strictly decreasing in i.
    """
    n = config.nt if n_rates is None else int(n_rates)
    if n < 1:
        raise ZeroGrid(f"grid size must be >= 1, got {n}")
    assumed = tuple((i / n) * config.j_max for i in range(n + 1))
    return RateVector(rates=tuple(shannon_rate(config, j) for j in assumed), assumed_powers=assumed)


def payoff(j_t: float, j: float, config: GameConfig) -> float:
    """Per-packet payoff: the packet survives at rate R(j_t) when the
    assumed power covers the actual power (ties survive), else it is lost.
    """
    if not (0.0 <= j_t <= config.j_max):
        raise PowerOutOfRange(f"assumed power {j_t!r} outside [0, {config.j_max}]")
    if not (0.0 <= j <= config.j_max):
        raise PowerOutOfRange(f"jamming power {j!r} outside [0, {config.j_max}]")
    return shannon_rate(config, j_t) if j_t >= j else 0.0


@dataclass(frozen=True)
class PayoffMatrix:
    """Payoff matrix C; rows are transmitter strategies, columns jammer
    powers. entries[i][j] = R_i if the assumed power of row i covers
    column j's power, else 0. Square uniform grids make it lower
    triangular with constant rows on the filled part.
    """

    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape


def build_payoff_matrix(rates: RateVector, powers: PowerVector) -> PayoffMatrix:
    """Payoff matrix for arbitrary (possibly unequal) strategy grids."""
    assumed = np.asarray(rates.assumed_powers)
    levels = powers.as_array()
    survive = assumed[:, None] >= levels[None, :]
    return PayoffMatrix(entries=np.where(survive, rates.as_array()[:, None], 0.0))


def payoff_matrix(config: GameConfig) -> PayoffMatrix:
    """The (nt+1) x (nt+1) lower-triangular capacity matrix."""
    return build_payoff_matrix(rate_vector(config), power_vector(config))


@dataclass(frozen=True)
class MixedStrategy:
    """Probability vector over pure strategies.

    Entries may deviate from a valid pmf by at most PROB_TOL, in which
    case they are renormalized; larger deviations raise InvalidStrategy.
    """

    probs: tuple[float, ...]
    role: Role

    def __post_init__(self):
        p = list(self.probs)
        if not p:
            raise InvalidStrategy("empty probability vector")
        for v in p:
            if not math.isfinite(v) or v < -PROB_TOL or v > 1.0 + PROB_TOL:
                raise InvalidStrategy(f"probability {v!r} outside [0, 1]")
        p = [min(max(v, 0.0), 1.0) for v in p]
        total = math.fsum(p)
        if abs(total - 1.0) > PROB_TOL:
            raise InvalidStrategy(f"probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "probs", tuple(v / total for v in p))

    def __len__(self):
        return len(self.probs)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.probs, dtype=float)


def pure_strategy(index: int, size: int, role: Role) -> MixedStrategy:
    """Point mass on one pure strategy."""
    if not 0 <= index < size:
        raise DimensionMismatch(f"index {index} outside grid of size {size}")
    return MixedStrategy(probs=tuple(1.0 if i == index else 0.0 for i in range(size)), role=role)


def expected_payoff(matrix: PayoffMatrix, x: MixedStrategy, y: MixedStrategy) -> float:
    """Bilinear form x^T C y: the long-run throughput of the strategy pair."""
    n_rows, n_cols = matrix.shape
    if len(x) != n_rows:
        raise DimensionMismatch(f"x has {len(x)} entries, matrix has {n_rows} rows")
    if len(y) != n_cols:
        raise DimensionMismatch(f"y has {len(y)} entries, matrix has {n_cols} columns")
    return float(x.as_array() @ matrix.entries @ y.as_array())


def average_power(y: MixedStrategy, powers: PowerVector) -> float:
    """Mean jamming power y^T J of a jammer strategy."""
    if len(y) != len(powers):
        raise DimensionMismatch(f"y has {len(y)} entries, power grid has {len(powers)}")
    return float(y.as_array() @ powers.as_array())


@dataclass(frozen=True)
class AlphaTable:
    """Cumulative inverse rates: inv_alpha[m] = sum_{i<=m} 1/R_i.

    1/inv_alpha[m] is the normalizing constant of the optimal transmitter
    mix over the top m+1 rates; inv_alpha[nt-1] drives the power threshold.
    """

    inv_alpha: tuple[float, ...]


def alpha_table(config: GameConfig) -> AlphaTable:
    rates = rate_vector(config).rates
    return AlphaTable(inv_alpha=tuple(float(v) for v in np.cumsum([1.0 / r for r in rates])))


@dataclass(frozen=True)
class DominanceReduction:
    """Square game left after removing dominated strategies, with maps
    from reduced indices back to the original grids.
    """

    matrix: PayoffMatrix
    row_indices: tuple[int, ...]
    col_indices: tuple[int, ...]


def _check_uniform(values, j_max: float, what: str):
    n = len(values) - 1
    for k, v in enumerate(values):
        if abs(v - (k / n) * j_max) > GRID_TOL * max(j_max, 1.0):
            raise UnsupportedGrid(f"{what} grid is not uniform over [0, {j_max}]")


def reduce_dominated(matrix: PayoffMatrix, powers: PowerVector, rates: RateVector) -> DominanceReduction:
    """Remove dominated pure strategies from a rectangular game built on
    uniform grids, leaving a square matrix of size min(N_T, N_J) + 1.

    With more jammer levels than rates, only the cheapest power that
    strictly exceeds each assumed power survives (plus staying silent);
    with more rates than jammer levels, only the highest rate that
    survives each power does. Non-uniform grids are rejected.
    """
    n_t = len(rates) - 1
    n_j = len(powers) - 1
    if matrix.shape != (n_t + 1, n_j + 1):
        raise DimensionMismatch(
            f"matrix shape {matrix.shape} does not match grids ({n_t + 1}, {n_j + 1})"
        )
    j_max = powers.levels[-1]
    if abs(rates.assumed_powers[-1] - j_max) > GRID_TOL * max(j_max, 1.0):
        raise UnsupportedGrid("rate and power grids span different peak powers")
    _check_uniform(powers.levels, j_max, "jammer")
    _check_uniform(rates.assumed_powers, j_max, "transmitter")

    if n_t <= n_j:
        rows = list(range(n_t + 1))
        cols = [0]
        for i in range(n_t):
            p_i = rates.assumed_powers[i]
            cols.append(next(j for j, lv in enumerate(powers.levels) if lv > p_i))
    else:
        cols = list(range(n_j + 1))
        rows = []
        for j in range(n_j + 1):
            lv = powers.levels[j]
            rows.append(next(i for i, p in enumerate(rates.assumed_powers) if p >= lv))

    sub = matrix.entries[np.ix_(rows, cols)]
    return DominanceReduction(
        matrix=PayoffMatrix(entries=sub),
        row_indices=tuple(rows),
        col_indices=tuple(cols),
    )
