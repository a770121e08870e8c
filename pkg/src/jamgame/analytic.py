"""Closed-form objects of the game: semi-uniform jammer pmfs, the jamming
power threshold and its semi-uniform upper bound, the budget grid where
the game value equals a pure rate, the optimal strategy pair at those
grid points, and the jamming effectiveness factor.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IndexOutOfRange, InfeasibleSemiUniform, NotOnGrid, PowerOutOfRange
from .model import (
    GameConfig,
    MixedStrategy,
    Role,
    alpha_table,
    payoff_matrix,
    power_vector,
    rate_vector,
)

GRID_MATCH_TOL = 1e-9  # absolute tolerance for matching a budget to a grid power


@dataclass(frozen=True)
class ThresholdReport:
    """Jamming power threshold j_th, its semi-uniform upper bound, and the
    per-rate deviation bounds z_profile they derive from (strictly
    decreasing; z_profile[0] is the upper bound).
    """

    j_th: float
    j_th_upper: float
    z_profile: tuple[float, ...]


@dataclass(frozen=True)
class GridPoint:
    """Budget j_ave_m at which the game value is exactly R_{m+1}."""

    m: int
    j_ave_m: float
    value: float


@dataclass(frozen=True)
class EffectivenessReport:
    """Effective (equivalent-barrage) jamming power and its ratio to the
    actual average power; above 1 whenever randomization pays.
    """

    j_eff: float
    e_factor: float


def semi_uniform(config: GameConfig, j_ave: float, support_top: int) -> MixedStrategy:
    """Jammer pmf with an atom at zero power and uniform mass over power
    levels 1..support_top, tuned so the average power is exactly j_ave:

        y_0 = 1 - (2 nt / (k+1)) * j_ave / j_max
        y_j = 2 nt / (k (k+1)) * j_ave / j_max   for 1 <= j <= k

    Raises InfeasibleSemiUniform when y_0 would be negative.
    """
    k = int(support_top)
    if not 1 <= k <= config.nt:
        raise IndexOutOfRange(f"support_top must be in 1..{config.nt}, got {support_top}")
    if not 0.0 <= j_ave <= config.j_max:
        raise PowerOutOfRange(f"j_ave {j_ave!r} outside [0, {config.j_max}]")
    ratio = j_ave / config.j_max
    y0 = 1.0 - (2.0 * config.nt / (k + 1)) * ratio
    if y0 < 0.0:
        raise InfeasibleSemiUniform(
            f"budget {j_ave} needs zero-power mass {y0:.3g} < 0 at support_top {k}"
        )
    body = (2.0 * config.nt / (k * (k + 1))) * ratio
    probs = [y0] + [body] * k + [0.0] * (config.nt - k)
    return MixedStrategy(probs=tuple(probs), role=Role.JAMMER)


def threshold(config: GameConfig) -> ThresholdReport:
    """Minimum average budget that forces the transmitter to the lowest
    rate, plus the semi-uniform upper bound on it:

        j_th    = (1 - inv_alpha * R_nt / nt) * j_max,
                  inv_alpha = sum_{i < nt} 1/R_i
        z_i     = (1/2) j_max (nt+1)/(nt-i) (1 - R_nt / R_i)
        j_th_up = z_0
    """
    nt = config.nt
    rates = rate_vector(config).rates
    inv_alpha = alpha_table(config).inv_alpha[nt - 1]
    j_th = (1.0 - inv_alpha * rates[nt] / nt) * config.j_max
    z_profile = tuple(
        0.5 * config.j_max * (nt + 1) / (nt - i) * (1.0 - rates[nt] / rates[i])
        for i in range(nt)
    )
    return ThresholdReport(j_th=j_th, j_th_upper=z_profile[0], z_profile=z_profile)


def grid_points(config: GameConfig) -> list[GridPoint]:
    """The nt budgets where the value reduces to a pure rate:

        j_ave_m = (m + 1 - alpha_m^-1 R_{m+1}) * j_max / nt

    with alpha_m^-1 = sum_{i <= m} 1/R_i; the last grid budget is the
    threshold itself.
    """
    rates = rate_vector(config).rates
    inv_alpha = alpha_table(config).inv_alpha
    return [
        GridPoint(
            m=m,
            j_ave_m=(m + 1 - inv_alpha[m] * rates[m + 1]) * config.j_max / config.nt,
            value=rates[m + 1],
        )
        for m in range(config.nt)
    ]


def transmitter_opt(config: GameConfig, m: int) -> MixedStrategy:
    """Optimal transmitter mix at grid point m: probability alpha_m / R_i
    on each of the top m+1 rates, zero elsewhere. The weights sum to one
    by the definition of alpha_m.
    """
    if not 0 <= m < config.nt:
        raise IndexOutOfRange(f"m must be in 0..{config.nt - 1}, got {m}")
    rates = rate_vector(config).rates
    alpha_m = 1.0 / alpha_table(config).inv_alpha[m]
    probs = [alpha_m / rates[i] for i in range(m + 1)] + [0.0] * (config.nt - m)
    return MixedStrategy(probs=tuple(probs), role=Role.TRANSMITTER)


def jammer_opt(config: GameConfig, m: int) -> MixedStrategy:
    """Optimal jammer mix at grid point m:

        y_0 = R_{m+1} / R_0
        y_j = (1/R_j - 1/R_{j-1}) R_{m+1}   for 1 <= j <= m+1

    Its average power is exactly j_ave_m and it holds every transmitter
    strategy to at most R_{m+1}.
    """
    if not 0 <= m < config.nt:
        raise IndexOutOfRange(f"m must be in 0..{config.nt - 1}, got {m}")
    rates = rate_vector(config).rates
    probs = [rates[m + 1] / rates[0]]
    probs += [(1.0 / rates[j] - 1.0 / rates[j - 1]) * rates[m + 1] for j in range(1, m + 2)]
    probs += [0.0] * (config.nt - m - 1)
    return MixedStrategy(probs=tuple(probs), role=Role.JAMMER)


def effectiveness(config: GameConfig, j_ave: float) -> EffectivenessReport:
    """Effective jamming power and effectiveness factor E = j_eff / j_ave.

    Defined in closed form only at the grid budgets (j_eff rises to the
    next grid power) and at or above the threshold (j_eff = j_max);
    anywhere else raises NotOnGrid.
    """
    if not 0.0 < j_ave <= config.j_max:
        raise PowerOutOfRange(f"j_ave {j_ave!r} outside (0, {config.j_max}]")
    for point in grid_points(config):
        if abs(j_ave - point.j_ave_m) <= GRID_MATCH_TOL:
            j_eff = (point.m + 1) / config.nt * config.j_max
            return EffectivenessReport(j_eff=j_eff, e_factor=j_eff / j_ave)
    if j_ave >= threshold(config).j_th:
        return EffectivenessReport(j_eff=config.j_max, e_factor=config.j_max / j_ave)
    raise NotOnGrid(f"budget {j_ave!r} is below threshold and matches no grid power")


def semi_uniform_equivalence_check(config: GameConfig, m: int) -> float:
    """Payoff gap between the optimal jammer mix at grid point m and the
    semi-uniform pmf with the same support and average power, both played
    against the optimal transmitter mix. Equal in exact arithmetic; the
    returned residual is the numerical difference.
    """
    x_hat = transmitter_opt(config, m)
    y_hat = jammer_opt(config, m)
    j_ave_m = float(y_hat.as_array() @ power_vector(config).as_array())
    y_su = semi_uniform(config, j_ave_m, support_top=m + 1)
    entries = payoff_matrix(config).entries
    row = x_hat.as_array() @ entries
    return float(abs(row @ y_su.as_array() - row @ y_hat.as_array()))
