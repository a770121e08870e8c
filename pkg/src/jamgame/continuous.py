"""Continuum-strategy limits: the jamming threshold when both players
draw from intervals instead of grids, computed by adaptive quadrature,
and the convergence of the discrete thresholds toward it.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .analytic import threshold
from .errors import DomainTooExtreme, PowerOutOfRange, QuadratureNonConvergence
from .model import GameConfig, shannon_rate

REL_TOL = 1e-12
MAX_PANELS = 1_000_000

# Below pt ~ 1e-6 * noise the rate is so close to zero that 1/R(J) loses
# all precision; the continuous ops refuse rather than return garbage.
MIN_PT_OVER_NOISE = 1e-6


@dataclass(frozen=True)
class ContinuousReport:
    """Continuous-case threshold, its semi-uniform upper bound, and the
    absolute error bound of the quadrature behind the threshold.
    """

    j_th_lim: float
    j_th_lim_ub: float
    quadrature_error_estimate: float


def rate_continuous(config: GameConfig, j: float) -> float:
    """R(J) on the continuum; matches the discrete rate grid exactly at
    the grid powers.
    """
    if not 0.0 <= j <= config.j_max:
        raise PowerOutOfRange(f"power {j!r} outside [0, {config.j_max}]")
    return shannon_rate(config, j)


def _simpson(f, a, fa, m, fm, b, fb):
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _adaptive_simpson(f, a: float, b: float, rel_tol: float, max_panels: int):
    """Adaptive Simpson with interval bisection; each accepted panel is
    Richardson-extrapolated and contributes |S2 - S1| / 15 to the error
    estimate. Panel results are summed in left-to-right order so the
    value does not depend on the processing order.
    """
    # Coarse composite pass fixes the absolute error budget.
    n0 = 64
    h0 = (b - a) / n0
    rough = 0.0
    for k in range(n0):
        x0 = a + k * h0
        x2 = a + (k + 1) * h0
        x1 = 0.5 * (x0 + x2)
        rough += _simpson(f, x0, f(x0), x1, f(x1), x2, f(x2))
    budget = rel_tol * abs(rough)

    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    stack = [(a, fa, m, fm, b, fb, _simpson(f, a, fa, m, fm, b, fb))]
    pieces = []
    err_total = 0.0
    panels = 0
    span = b - a
    while stack:
        x0, f0, x1, f1, x2, f2, s_whole = stack.pop()
        panels += 1
        if panels > max_panels:
            raise QuadratureNonConvergence(
                f"quadrature exceeded {max_panels} panels without reaching tolerance"
            )
        left_mid = 0.5 * (x0 + x1)
        right_mid = 0.5 * (x1 + x2)
        f_lm, f_rm = f(left_mid), f(right_mid)
        s_left = _simpson(f, x0, f0, left_mid, f_lm, x1, f1)
        s_right = _simpson(f, x1, f1, right_mid, f_rm, x2, f2)
        err = (s_left + s_right - s_whole) / 15.0
        if abs(err) <= budget * (x2 - x0) / span or (x2 - x0) < 1e-14 * span:
            pieces.append((x0, s_left + s_right + err))
            err_total += abs(err)
        else:
            stack.append((x1, f1, right_mid, f_rm, x2, f2, s_right))
            stack.append((x0, f0, left_mid, f_lm, x1, f1, s_left))
    pieces.sort(key=lambda p: p[0])
    return sum(v for _, v in pieces), err_total


def jth_limit(config: GameConfig, max_panels: int = MAX_PANELS) -> ContinuousReport:
    """Threshold in the continuum limit:

        j_th_lim    = j_max - R(j_max) * integral_0^j_max dJ / R(J)
        j_th_lim_ub = (1/2) (1 - R(j_max) / R(0)) * j_max

    The integrand is smooth and strictly positive on the closed interval,
    so the integral is evaluated to relative tolerance 1e-12.
    """
    if config.pt < MIN_PT_OVER_NOISE * config.noise:
        raise DomainTooExtreme(
            f"pt/noise = {config.pt / config.noise:.3g} below guarded minimum {MIN_PT_OVER_NOISE}"
        )
    integral, err = _adaptive_simpson(
        lambda j: 1.0 / shannon_rate(config, j), 0.0, config.j_max, REL_TOL, max_panels
    )
    r_max = shannon_rate(config, config.j_max)
    r_zero = shannon_rate(config, 0.0)
    return ContinuousReport(
        j_th_lim=config.j_max - r_max * integral,
        j_th_lim_ub=0.5 * (1.0 - r_max / r_zero) * config.j_max,
        quadrature_error_estimate=err,
    )


def convergence_curve(config: GameConfig, nt_list) -> list[tuple[int, float]]:
    """Discrete threshold as a function of grid size, for studying its
    approach to the continuum value. Convergence is reported, not assumed.
    """
    nts = [int(n) for n in nt_list]
    if any(b <= a for a, b in zip(nts, nts[1:])):
        raise ValueError(f"nt_list must be strictly ascending, got {nt_list!r}")
    return [(n, threshold(replace(config, nt=n)).j_th) for n in nts]
