"""Seeded packet-level Monte Carlo: plays a transmitter mix against a
jammer mix under the per-packet survive/lose rule and reports empirical
throughput, loss, and jammer power.

Randomness comes from SplitMix64 driven as a counter-based generator, so
a run is a pure function of (config, strategies, packets, seed) and
reports are bit-identical across platforms. Packet p consumes counters
2p (transmitter draw) and 2p+1 (jammer draw); indices come from the
inverse CDF over the strategy's cumulative weights with strict-less
comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import analytic
from .errors import DimensionMismatch, ZeroPackets
from .model import GameConfig, MixedStrategy, Role, power_vector, pure_strategy, rate_vector

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def _uniforms(seed: int, start: int, count: int) -> np.ndarray:
    """count doubles in [0, 1) from the SplitMix64 counters start..start+count-1."""
    idx = np.arange(start, start + count, dtype=np.uint64)
    z = np.uint64(seed & 0xFFFFFFFFFFFFFFFF) + idx * _GOLDEN
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * 2.0**-53


def _sample_indices(strategy: MixedStrategy, u: np.ndarray) -> np.ndarray:
    cum = np.cumsum(strategy.as_array())
    return np.minimum(np.searchsorted(cum, u, side="right"), len(cum) - 1)


@dataclass(frozen=True)
class SimReport:
    packets: int
    mean_throughput: float
    loss_rate: float
    empirical_jammer_power: float
    std_error: float
    seed: int


class JammerPreset(Enum):
    BARRAGE = "barrage"
    SEMI_UNIFORM = "semi-uniform"
    OPTIMAL_GRID = "grid"


def simulate(
    config: GameConfig,
    x: MixedStrategy,
    y: MixedStrategy,
    packets: int,
    seed: int,
) -> SimReport:
    """Play packets i.i.d.: draw a rate index from x and a power index
    from y independently; the packet pays its rate when the assumed power
    covers the drawn power, else zero.

    The jammer draws i.i.d. against its long-run average budget; the
    empirical power is reported so callers can check it.
    """
    n = config.nt + 1
    if len(x) != n or len(y) != n:
        raise DimensionMismatch(
            f"strategies of sizes {len(x)}, {len(y)} do not match grid size {n}"
        )
    if packets < 1:
        raise ZeroPackets(f"packets must be >= 1, got {packets}")

    u = _uniforms(seed, 0, 2 * packets)
    tx_idx = _sample_indices(x, u[0::2])
    jam_idx = _sample_indices(y, u[1::2])

    rates = rate_vector(config).as_array()
    levels = power_vector(config).as_array()
    delivered = jam_idx <= tx_idx
    pay = np.where(delivered, rates[tx_idx], 0.0)

    std_error = 0.0 if packets == 1 else float(np.std(pay, ddof=1) / np.sqrt(packets))
    return SimReport(
        packets=int(packets),
        mean_throughput=float(np.mean(pay)),
        loss_rate=float(np.mean(~delivered)),
        empirical_jammer_power=float(np.mean(levels[jam_idx])),
        std_error=std_error,
        seed=int(seed),
    )


def make_preset_jammer(config: GameConfig, preset: JammerPreset, m: int | None = None) -> MixedStrategy:
    """Construct one of the named jammer strategies on the config's grid:
    constant peak power (barrage), the semi-uniform pmf at the config
    budget with full support, or the optimal grid-point mix for index m.
    """
    if preset == JammerPreset.BARRAGE:
        return pure_strategy(config.nt, config.nt + 1, Role.JAMMER)
    if preset == JammerPreset.SEMI_UNIFORM:
        return analytic.semi_uniform(config, config.j_ave, support_top=config.nt)
    if preset == JammerPreset.OPTIMAL_GRID:
        if m is None:
            raise ValueError("OPTIMAL_GRID preset needs a grid index m")
        return analytic.jammer_opt(config, m)
    raise ValueError(f"unknown preset {preset!r}")


def simulate_preset_jammer(
    config: GameConfig,
    x: MixedStrategy,
    preset: JammerPreset,
    packets: int,
    seed: int,
    m: int | None = None,
) -> SimReport:
    """simulate() against a named jammer preset."""
    return simulate(config, x, make_preset_jammer(config, preset, m), packets, seed)
