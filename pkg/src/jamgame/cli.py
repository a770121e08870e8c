"""Command-line front end.

Every command writes its data to stdout (CSV or JSON, floats at 12
significant digits with a lowercase exponent) and keeps diagnostics on
stderr. Exit codes: 0 ok, 1 validation failure, 2 bad flags or inputs,
3 numerical error.
"""

from __future__ import annotations

import json
import sys

import click
import numpy as np

from . import validate as validation
from .analytic import jammer_opt, semi_uniform, threshold
from .continuous import jth_limit
from .errors import (
    Infeasible,
    InvalidStrategy,
    JamGameError,
    NumericalBreakdown,
    QuadratureNonConvergence,
)
from .model import (
    ConstraintMode,
    GameConfig,
    MixedStrategy,
    Role,
    make_config,
    pure_strategy,
    rate_vector,
)
from .sim import simulate
from .solver import GameSolution, solve_game, sweep

USAGE_EXIT, VALIDATION_EXIT, NUMERICAL_EXIT = 2, 1, 3
_NUMERICAL_ERRORS = (NumericalBreakdown, QuadratureNonConvergence, Infeasible)


def fmt(value: float) -> str:
    """12 significant digits, plain decimal point, lowercase exponent."""
    return f"{float(value):.12g}"


def _jsonable(value):
    if isinstance(value, float):
        return float(fmt(value))
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def emit_json(payload):
    click.echo(json.dumps(_jsonable(payload)))


def emit_rows(header: str, rows: list[list], out_format: str):
    """Tabular output: CSV (one header line) or JSON (array of objects)."""
    if out_format == "csv":
        click.echo(header)
        for row in rows:
            click.echo(",".join(_cell(v) for v in row))
    else:
        keys = header.split(",")
        emit_json([dict(zip(keys, row)) for row in rows])


def _cell(value) -> str:
    if isinstance(value, float):
        return fmt(value)
    if isinstance(value, (list, tuple)):
        return ";".join(fmt(v) for v in value)
    return str(value)


def format_option(default: str):
    return click.option(
        "--format",
        "out_format",
        type=click.Choice(["csv", "json"]),
        default=default,
        show_default=True,
        help="Output format on stdout.",
    )


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def handle_errors(fn):
    """Map domain errors to the documented exit codes."""

    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except _NUMERICAL_ERRORS as exc:
            _fail(NUMERICAL_EXIT, str(exc))
        except JamGameError as exc:
            _fail(USAGE_EXIT, str(exc))

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def channel_options(fn):
    for option in reversed(
        [
            click.option("--pt", type=float, required=True, help="Transmitter power (linear)."),
            click.option("--noise", type=float, required=True, help="Receiver noise power (linear)."),
            click.option("--jmax", type=float, required=True, help="Peak jamming power per packet."),
            click.option("--nt", type=int, required=True, help="Strategy grid size N_T."),
            click.option("--log-base", type=float, default=2.0, show_default=True, help="Capacity log base."),
        ]
    ):
        fn = option(fn)
    return fn


def budget_options(fn):
    for option in reversed(
        [
            click.option("--jave", type=float, required=True, help="Average jamming power budget."),
            click.option(
                "--mode",
                type=click.Choice(["eq", "le"]),
                default="le",
                show_default=True,
                help="Budget mode: eq holds the average exactly, le caps it.",
            ),
        ]
    ):
        fn = option(fn)
    return fn


def _config(pt, noise, jmax, nt, log_base, jave=0.0, mode="le") -> GameConfig:
    return make_config(pt, noise, jmax, jave, nt, ConstraintMode(mode), log_base)


def _solution_payload(solution: GameSolution) -> dict:
    return {
        "value": solution.value,
        "x_star": list(solution.x_star.probs),
        "y_star": list(solution.y_star.probs),
        "jammer_average_power": solution.jammer_average_power,
        "mode": solution.mode.value,
        "residuals": {
            "lp_status": solution.diagnostics.lp_status,
            "feasibility": solution.diagnostics.feasibility_residual,
            "duality_gap": solution.diagnostics.duality_gap,
            "complementarity": solution.diagnostics.complementarity_residual,
        },
    }


@click.group()
def cli():
    """Capacity games against a power-constrained jammer: payoff matrices,
    LP equilibria, closed-form thresholds, continuum limits, and a seeded
    packet-level simulator.
    """


@cli.command()
@channel_options
@format_option("csv")
@handle_errors
def rates(pt, noise, jmax, nt, log_base, out_format):
    """Print the rate grid: index, assumed power, rate."""
    config = _config(pt, noise, jmax, nt, log_base)
    grid = rate_vector(config)
    rows = [[i, p, r] for i, (p, r) in enumerate(zip(grid.assumed_powers, grid.rates))]
    emit_rows("i,assumed_power,rate", rows, out_format)


@cli.command()
@channel_options
@budget_options
@format_option("json")
@handle_errors
def solve(pt, noise, jmax, nt, log_base, jave, mode, out_format):
    """Solve the constrained game; print the GameSolution."""
    config = _config(pt, noise, jmax, nt, log_base, jave, mode)
    solution = solve_game(config)
    if out_format == "json":
        emit_json(_solution_payload(solution))
    else:
        emit_rows(
            "j_ave,value,x_star,y_star,jammer_average_power,mode",
            [
                [
                    config.j_ave,
                    solution.value,
                    list(solution.x_star.probs),
                    list(solution.y_star.probs),
                    solution.jammer_average_power,
                    solution.mode.value,
                ]
            ],
            out_format,
        )


@cli.command(name="threshold")
@channel_options
@format_option("json")
@handle_errors
def threshold_cmd(pt, noise, jmax, nt, log_base, out_format):
    """Print the jamming power threshold report."""
    config = _config(pt, noise, jmax, nt, log_base)
    report = threshold(config)
    if out_format == "json":
        emit_json(
            {
                "j_th": report.j_th,
                "j_th_upper": report.j_th_upper,
                "z_profile": list(report.z_profile),
            }
        )
    else:
        emit_rows(
            "j_th,j_th_upper,z_profile",
            [[report.j_th, report.j_th_upper, list(report.z_profile)]],
            out_format,
        )


@cli.command(name="continuous")
@channel_options
@format_option("json")
@handle_errors
def continuous_cmd(pt, noise, jmax, nt, log_base, out_format):
    """Print the continuum-limit threshold report."""
    config = _config(pt, noise, jmax, nt, log_base)
    report = jth_limit(config)
    payload = {
        "j_th_lim": report.j_th_lim,
        "j_th_lim_ub": report.j_th_lim_ub,
        "quadrature_error_estimate": report.quadrature_error_estimate,
    }
    if out_format == "json":
        emit_json(payload)
    else:
        emit_rows(",".join(payload), [list(payload.values())], out_format)


def sweep_table(config: GameConfig, budgets) -> list[list]:
    rows = []
    for point in sweep(config, budgets):
        if point.error is not None:
            click.echo(f"warning: j_ave={fmt(point.j_ave)}: {point.error}", err=True)
            continue
        s = point.solution
        rows.append(
            [
                point.j_ave,
                s.value,
                list(s.x_star.probs),
                list(s.y_star.probs),
                s.jammer_average_power,
                s.mode.value,
            ]
        )
    return rows


@cli.command(name="sweep")
@channel_options
@click.option("--jave-min", type=float, required=True, help="First budget of the sweep.")
@click.option("--jave-max", type=float, required=True, help="Last budget of the sweep (inclusive).")
@click.option("--steps", type=int, required=True, help="Number of budgets.")
@click.option(
    "--mode",
    type=click.Choice(["eq", "le"]),
    default="le",
    show_default=True,
    help="Budget mode: eq holds the average exactly, le caps it.",
)
@format_option("csv")
@handle_errors
def sweep_cmd(pt, noise, jmax, nt, log_base, jave_min, jave_max, steps, mode, out_format):
    """Solve the game across a budget range; one SweepRow per budget."""
    if steps < 1:
        _fail(USAGE_EXIT, f"--steps must be >= 1, got {steps}")
    if steps == 1:
        budgets = [jave_min]
    else:
        budgets = list(np.linspace(jave_min, jave_max, steps))
    config = _config(pt, noise, jmax, nt, log_base, 0.0, mode)
    emit_rows(
        "j_ave,value,x_star,y_star,jammer_average_power,mode",
        sweep_table(config, budgets),
        out_format,
    )


def _load_strategy_file(path: str, size: int, role: Role) -> MixedStrategy:
    try:
        with open(path) as handle:
            probs = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidStrategy(f"cannot read strategy file {path}: {exc}") from exc
    if not isinstance(probs, list):
        raise InvalidStrategy(f"strategy file {path} must hold a JSON array")
    if len(probs) != size:
        raise InvalidStrategy(f"strategy in {path} has {len(probs)} entries, expected {size}")
    try:
        values = tuple(float(p) for p in probs)
    except (TypeError, ValueError) as exc:
        raise InvalidStrategy(f"strategy file {path} holds a non-numeric entry") from exc
    return MixedStrategy(probs=values, role=role)


def _preset_jammer(config: GameConfig, preset: str) -> MixedStrategy:
    if preset == "barrage":
        return pure_strategy(config.nt, config.nt + 1, Role.JAMMER)
    if preset == "semi-uniform":
        return semi_uniform(config, config.j_ave, support_top=config.nt)
    if preset.startswith("grid:"):
        return jammer_opt(config, int(preset.split(":", 1)[1]))
    raise InvalidStrategy(f"unknown preset {preset!r}; use barrage, semi-uniform, or grid:<m>")


@cli.command(name="simulate")
@channel_options
@budget_options
@click.option("--packets", type=int, required=True, help="Number of packets to play.")
@click.option("--seed", type=int, required=True, help="RNG seed; reports are bitwise reproducible.")
@click.option("--x-file", type=click.Path(), default=None, help="Transmitter strategy (JSON array).")
@click.option("--y-file", type=click.Path(), default=None, help="Jammer strategy (JSON array).")
@click.option("--preset", default=None, help="Jammer preset: barrage | semi-uniform | grid:<m>.")
@format_option("json")
@handle_errors
def simulate_cmd(pt, noise, jmax, nt, log_base, jave, mode, packets, seed, x_file, y_file, preset, out_format):
    """Run the seeded packet simulator; print the SimReport."""
    config = _config(pt, noise, jmax, nt, log_base, jave, mode)
    size = config.nt + 1
    if (y_file is None) == (preset is None):
        _fail(USAGE_EXIT, "give exactly one of --y-file or --preset")
    if x_file is not None:
        x = _load_strategy_file(x_file, size, Role.TRANSMITTER)
    else:
        x = solve_game(config).x_star
        click.echo("note: no --x-file given, using the equilibrium transmitter mix", err=True)
    y = _load_strategy_file(y_file, size, Role.JAMMER) if y_file else _preset_jammer(config, preset)
    report = simulate(config, x, y, packets, seed)
    payload = {
        "packets": report.packets,
        "mean_throughput": report.mean_throughput,
        "loss_rate": report.loss_rate,
        "empirical_jammer_power": report.empirical_jammer_power,
        "std_error": report.std_error,
        "seed": report.seed,
    }
    if out_format == "json":
        emit_json(payload)
    else:
        emit_rows(",".join(payload), [list(payload.values())], out_format)


@cli.command(name="validate")
@click.option(
    "--only",
    default=None,
    help="Comma-separated criterion numbers to run (default: all ten).",
)
def validate_cmd(only):
    """Run the validation suite; one pass/fail line per criterion.

    Exits 0 when every criterion passes, 1 otherwise.
    """
    selected = None
    if only:
        selected = {token.strip() for token in only.split(",") if token.strip()}
        known = {key for key, _ in validation.ALL_CRITERIA}
        unknown = selected - known
        if unknown:
            _fail(USAGE_EXIT, f"unknown criteria {sorted(unknown)}; known: {sorted(known)}")
    try:
        results = validation.run_all(selected)
    except _NUMERICAL_ERRORS as exc:
        _fail(NUMERICAL_EXIT, str(exc))
    failed = 0
    for key, result in results:
        status = "PASS" if result.passed else "FAIL"
        failed += not result.passed
        click.echo(f"[{status}] criterion {key} ({result.name}): {result.detail}")
    if failed:
        click.echo(f"{failed} of {len(results)} criteria failed", err=True)
        sys.exit(VALIDATION_EXIT)


@cli.command(name="report")
@channel_options
@budget_options
@click.option("--out-dir", type=click.Path(), required=True, help="Directory for CSVs and figures.")
@click.option("--sweep-steps", type=int, default=81, show_default=True, help="Budgets in the sweep.")
@handle_errors
def report_cmd(pt, noise, jmax, nt, log_base, jave, mode, out_dir, sweep_steps):
    """Render the standard report: sweep and convergence CSVs plus
    matplotlib figures, written under --out-dir; prints the manifest.
    """
    from .report import render_report

    config = _config(pt, noise, jmax, nt, log_base, jave, mode)
    for path in render_report(config, out_dir, sweep_steps=sweep_steps):
        click.echo(path)


def main():
    cli()


if __name__ == "__main__":
    main()
