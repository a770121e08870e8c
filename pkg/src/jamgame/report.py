"""Report rendering: the figure-ready data behind the standard analyses
(value vs. budget, threshold vs. grid size, equilibrium strategies) as
CSV files, with matplotlib renderings written alongside.
"""

from __future__ import annotations

import json
from dataclasses import replace
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .analytic import grid_points, threshold
from .continuous import convergence_curve, jth_limit
from .model import ConstraintMode, GameConfig, rate_vector
from .solver import solve_game, sweep

_NT_CURVE = (2, 4, 8, 16, 32, 64, 128, 256)


def _fmt(value: float) -> str:
    return f"{float(value):.12g}"


def _write(path: Path, lines) -> Path:
    path.write_text("\n".join(lines) + "\n")
    return path


def render_report(config: GameConfig, out_dir, sweep_steps: int = 81) -> list[str]:
    """Run the standard analyses for config and write CSV/JSON data plus
    PNG figures into out_dir. Returns the written paths in order.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    grid = rate_vector(config)
    written.append(
        _write(
            out / "rates.csv",
            ["i,assumed_power,rate"]
            + [
                f"{i},{_fmt(p)},{_fmt(r)}"
                for i, (p, r) in enumerate(zip(grid.assumed_powers, grid.rates))
            ],
        )
    )

    budgets = np.linspace(0.0, config.j_max, sweep_steps)
    curves = {}
    rows = ["j_ave,value,x_star,y_star,jammer_average_power,mode"]
    for mode in (ConstraintMode.AT_MOST, ConstraintMode.EQUALITY):
        values = []
        for point in sweep(replace(config, constraint_mode=mode), budgets):
            s = point.solution
            values.append(s.value)
            rows.append(
                ",".join(
                    [
                        _fmt(point.j_ave),
                        _fmt(s.value),
                        ";".join(_fmt(p) for p in s.x_star.probs),
                        ";".join(_fmt(p) for p in s.y_star.probs),
                        _fmt(s.jammer_average_power),
                        s.mode.value,
                    ]
                )
            )
        curves[mode] = values
    written.append(_write(out / "sweep.csv", rows))

    th = threshold(config)
    continuum = jth_limit(config)
    gps = grid_points(config)
    written.append(
        _write(
            out / "thresholds.json",
            [
                json.dumps(
                    {
                        "j_th": float(_fmt(th.j_th)),
                        "j_th_upper": float(_fmt(th.j_th_upper)),
                        "z_profile": [float(_fmt(z)) for z in th.z_profile],
                        "j_th_lim": float(_fmt(continuum.j_th_lim)),
                        "j_th_lim_ub": float(_fmt(continuum.j_th_lim_ub)),
                        "grid_budgets": [float(_fmt(g.j_ave_m)) for g in gps],
                    }
                )
            ],
        )
    )

    curve = convergence_curve(config, _NT_CURVE)
    upper = [threshold(replace(config, nt=n)).j_th_upper for n, _ in curve]
    written.append(
        _write(
            out / "convergence.csv",
            ["nt,j_th,j_th_upper"]
            + [f"{n},{_fmt(v)},{_fmt(u)}" for (n, v), u in zip(curve, upper)],
        )
    )

    # Figure: game value against the jammer budget, both modes, with the
    # closed-form grid points and the threshold marked.
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(budgets, curves[ConstraintMode.AT_MOST], label="budget cap (Y_LE)")
    ax.plot(budgets, curves[ConstraintMode.EQUALITY], "--", label="exact budget (Y_E)")
    ax.plot(
        [g.j_ave_m for g in gps],
        [g.value for g in gps],
        "o",
        color="black",
        markersize=4,
        label="closed-form grid",
    )
    ax.axvline(th.j_th, color="gray", linestyle=":", label="threshold")
    ax.set_xlabel("average jamming power")
    ax.set_ylabel("game value (rate)")
    ax.legend()
    fig.tight_layout()
    value_png = out / "value_vs_budget.png"
    fig.savefig(value_png, dpi=150)
    plt.close(fig)
    written.append(value_png)

    # Figure: discrete thresholds and bounds against grid size, with the
    # continuum limits.
    fig, ax = plt.subplots(figsize=(7, 4.5))
    nts = [n for n, _ in curve]
    ax.plot(nts, [v for _, v in curve], "o-", label="threshold")
    ax.plot(nts, upper, "s-", label="semi-uniform upper bound")
    ax.axhline(continuum.j_th_lim, color="gray", linestyle=":", label="continuum threshold")
    ax.axhline(continuum.j_th_lim_ub, color="gray", linestyle="--", label="continuum upper bound")
    ax.set_xscale("log", base=2)
    ax.set_xlabel("grid size")
    ax.set_ylabel("average jamming power")
    ax.legend()
    fig.tight_layout()
    conv_png = out / "threshold_convergence.png"
    fig.savefig(conv_png, dpi=150)
    plt.close(fig)
    written.append(conv_png)

    # Figure: equilibrium strategy pair at the configured budget.
    solution = solve_game(config)
    idx = np.arange(config.nt + 1)
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.8), sharey=True)
    axes[0].bar(idx, solution.x_star.probs, color="tab:blue")
    axes[0].set_title("transmitter mix over rates")
    axes[0].set_xlabel("rate index")
    axes[0].set_ylabel("probability")
    axes[1].bar(idx, solution.y_star.probs, color="tab:red")
    axes[1].set_title("jammer mix over power levels")
    axes[1].set_xlabel("power index")
    fig.suptitle(f"equilibrium at j_ave = {_fmt(config.j_ave)} (value {_fmt(solution.value)})")
    fig.tight_layout()
    strat_png = out / "equilibrium_strategies.png"
    fig.savefig(strat_png, dpi=150)
    plt.close(fig)
    written.append(strat_png)

    return [str(p) for p in written]
