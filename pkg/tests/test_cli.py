import json
import re

import numpy as np
import pytest
from click.testing import CliRunner

from jamgame.cli import cli
from jamgame.model import ConstraintMode, make_config
from jamgame.solver import solve_game

REF_FLAGS = ["--pt", "1", "--noise", "1", "--jmax", "1", "--nt", "2"]
NUMBER = re.compile(r"^-?\d+(\.\d+)?(e-?\d+)?$")


@pytest.fixture()
def runner():
    return CliRunner()


def run(runner, args, **kwargs):
    return runner.invoke(cli, args, catch_exceptions=False, **kwargs)


class TestRates:
    def test_ref_table(self, runner):
        result = run(runner, ["rates", *REF_FLAGS])
        assert result.exit_code == 0
        lines = result.stdout.strip().splitlines()
        assert lines[0] == "i,assumed_power,rate"
        assert len(lines) == 4
        rates = [float(line.split(",")[2]) for line in lines[1:]]
        assert rates == pytest.approx([0.5, 0.368482797083, 0.292481250361], abs=1e-12)
        for line in lines[1:]:
            for cell in line.split(",")[1:]:
                assert NUMBER.match(cell), cell

    def test_two_rows_for_single_step(self, runner):
        result = run(runner, ["rates", "--pt", "1", "--noise", "1", "--jmax", "1", "--nt", "1"])
        assert len(result.stdout.strip().splitlines()) == 3

    def test_missing_flag_exits_two(self, runner):
        result = runner.invoke(cli, ["rates", "--noise", "1", "--jmax", "1", "--nt", "2"])
        assert result.exit_code == 2
        assert result.stdout == ""

    def test_invalid_domain_exits_two(self, runner):
        result = runner.invoke(cli, ["rates", "--pt", "0", "--noise", "1", "--jmax", "1", "--nt", "2"])
        assert result.exit_code == 2
        assert result.stdout == ""
        assert "pt" in result.stderr


class TestSolve:
    def test_zero_budget(self, runner):
        result = run(runner, ["solve", *REF_FLAGS, "--jave", "0"])
        payload = json.loads(result.stdout)
        assert payload["value"] == pytest.approx(0.5, abs=1e-12)
        assert set(payload) == {
            "value",
            "x_star",
            "y_star",
            "jammer_average_power",
            "mode",
            "residuals",
        }

    def test_grid_budget(self, runner):
        result = run(runner, ["solve", *REF_FLAGS, "--jave", "0.13151720291689689"])
        payload = json.loads(result.stdout)
        assert payload["value"] == pytest.approx(0.368482797083, abs=1e-9)

    def test_above_threshold(self, runner):
        result = run(runner, ["solve", *REF_FLAGS, "--jave", "0.5"])
        payload = json.loads(result.stdout)
        assert payload["value"] == pytest.approx(0.292481250361, abs=1e-9)
        assert payload["mode"] == "le"

    def test_equality_mode(self, runner):
        result = run(runner, ["solve", *REF_FLAGS, "--jave", "1", "--mode", "eq"])
        payload = json.loads(result.stdout)
        assert payload["jammer_average_power"] == pytest.approx(1.0, abs=1e-9)


class TestThresholdAndContinuous:
    def test_threshold(self, runner):
        result = run(runner, ["threshold", *REF_FLAGS])
        payload = json.loads(result.stdout)
        assert payload["j_th"] == pytest.approx(0.310646422524, abs=1e-12)
        assert payload["j_th_upper"] == pytest.approx(0.311278124459, abs=1e-12)
        assert len(payload["z_profile"]) == 2

    def test_continuous(self, runner):
        result = run(runner, ["continuous", *REF_FLAGS])
        payload = json.loads(result.stdout)
        assert payload["j_th_lim_ub"] == pytest.approx(0.207518749639, abs=1e-12)
        assert 0 < payload["j_th_lim"] < 1
        assert payload["quadrature_error_estimate"] < 1e-10


class TestSweep:
    def test_row_count_and_grid(self, runner):
        result = run(
            runner,
            ["sweep", *REF_FLAGS, "--jave-min", "0", "--jave-max", "1", "--steps", "21"],
        )
        lines = result.stdout.strip().splitlines()
        assert lines[0] == "j_ave,value,x_star,y_star,jammer_average_power,mode"
        assert len(lines) == 22
        budgets = [float(line.split(",")[0]) for line in lines[1:]]
        assert budgets == pytest.approx(list(np.linspace(0, 1, 21)), abs=1e-12)
        values = [float(line.split(",")[1]) for line in lines[1:]]
        assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))

    def test_round_trip_matches_library(self, runner):
        result = run(
            runner,
            ["sweep", *REF_FLAGS, "--jave-min", "0", "--jave-max", "0.4", "--steps", "5"],
        )
        for line in result.stdout.strip().splitlines()[1:]:
            j_ave, value = (float(v) for v in line.split(",")[:2])
            config = make_config(1, 1, 1, j_ave, 2, ConstraintMode.AT_MOST)
            assert solve_game(config).value == pytest.approx(value, abs=1e-12)

    def test_bad_steps(self, runner):
        result = runner.invoke(
            cli, ["sweep", *REF_FLAGS, "--jave-min", "0", "--jave-max", "1", "--steps", "0"]
        )
        assert result.exit_code == 2


class TestSimulate:
    def test_preset_run(self, runner):
        result = run(
            runner,
            [
                "simulate",
                *REF_FLAGS,
                "--jave",
                "0.3",
                "--packets",
                "20000",
                "--seed",
                "5",
                "--preset",
                "semi-uniform",
            ],
        )
        payload = json.loads(result.stdout)
        assert payload["packets"] == 20000
        assert payload["seed"] == 5
        assert 0 <= payload["loss_rate"] <= 1

    def test_strategy_files_round_trip(self, runner, tmp_path):
        solve_result = run(runner, ["solve", *REF_FLAGS, "--jave", "0.3"])
        payload = json.loads(solve_result.stdout)
        x_file = tmp_path / "x.json"
        y_file = tmp_path / "y.json"
        x_file.write_text(json.dumps(payload["x_star"]))
        y_file.write_text(json.dumps(payload["y_star"]))
        sim_result = run(
            runner,
            [
                "simulate",
                *REF_FLAGS,
                "--jave",
                "0.3",
                "--packets",
                "200000",
                "--seed",
                "3",
                "--x-file",
                str(x_file),
                "--y-file",
                str(y_file),
            ],
        )
        report = json.loads(sim_result.stdout)
        assert abs(report["mean_throughput"] - payload["value"]) <= 4 * report["std_error"]

    def test_identical_seeds_identical_output(self, runner):
        args = [
            "simulate", *REF_FLAGS, "--jave", "0.3",
            "--packets", "5000", "--seed", "42", "--preset", "barrage",
        ]
        assert run(runner, args).stdout == run(runner, args).stdout

    def test_invalid_strategy_file(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("[0.9, 0.9, 0.9]")
        result = runner.invoke(
            cli,
            [
                "simulate", *REF_FLAGS, "--jave", "0.3",
                "--packets", "10", "--seed", "1", "--y-file", str(bad),
            ],
        )
        assert result.exit_code == 2
        assert result.stdout == ""

    def test_requires_one_jammer_source(self, runner):
        result = runner.invoke(
            cli, ["simulate", *REF_FLAGS, "--jave", "0.3", "--packets", "10", "--seed", "1"]
        )
        assert result.exit_code == 2

    def test_infeasible_preset_budget(self, runner):
        result = runner.invoke(
            cli,
            [
                "simulate", *REF_FLAGS, "--jave", "0.9",
                "--packets", "10", "--seed", "1", "--preset", "semi-uniform",
            ],
        )
        assert result.exit_code == 2


class TestFormats:
    def test_rates_json(self, runner):
        result = run(runner, ["rates", *REF_FLAGS, "--format", "json"])
        payload = json.loads(result.stdout)
        assert [row["i"] for row in payload] == [0, 1, 2]
        assert payload[0]["rate"] == 0.5

    def test_solve_csv(self, runner):
        result = run(runner, ["solve", *REF_FLAGS, "--jave", "0", "--format", "csv"])
        lines = result.stdout.strip().splitlines()
        assert lines[0] == "j_ave,value,x_star,y_star,jammer_average_power,mode"
        cells = lines[1].split(",")
        assert float(cells[1]) == 0.5
        assert cells[2] == "1;0;0"

    def test_sweep_json(self, runner):
        result = run(
            runner,
            [
                "sweep", *REF_FLAGS, "--jave-min", "0", "--jave-max", "1",
                "--steps", "3", "--format", "json",
            ],
        )
        payload = json.loads(result.stdout)
        assert len(payload) == 3
        assert payload[0]["value"] == 0.5
        assert isinstance(payload[0]["y_star"], list)

    def test_simulate_csv(self, runner):
        result = run(
            runner,
            [
                "simulate", *REF_FLAGS, "--jave", "0.3", "--packets", "100",
                "--seed", "1", "--preset", "barrage", "--format", "csv",
            ],
        )
        lines = result.stdout.strip().splitlines()
        assert lines[0].startswith("packets,mean_throughput,loss_rate")
        assert lines[1].split(",")[0] == "100"

    def test_rejects_unknown_format(self, runner):
        result = runner.invoke(cli, ["rates", *REF_FLAGS, "--format", "xml"])
        assert result.exit_code == 2


class TestValidateCommand:
    def test_fast_subset_passes(self, runner):
        result = run(runner, ["validate", "--only", "4,6,10"])
        assert result.exit_code == 0
        lines = result.stdout.strip().splitlines()
        assert len(lines) == 3
        assert all(line.startswith("[PASS]") for line in lines)

    def test_unknown_criterion(self, runner):
        result = runner.invoke(cli, ["validate", "--only", "99"])
        assert result.exit_code == 2


class TestReport:
    def test_writes_data_and_figures(self, runner, tmp_path):
        out = tmp_path / "report"
        result = run(
            runner,
            [
                "report", *REF_FLAGS, "--jave", "0.25",
                "--out-dir", str(out), "--sweep-steps", "9",
            ],
        )
        assert result.exit_code == 0
        manifest = result.stdout.strip().splitlines()
        assert len(manifest) >= 7
        for name in (
            "rates.csv",
            "sweep.csv",
            "thresholds.json",
            "convergence.csv",
            "value_vs_budget.png",
            "threshold_convergence.png",
            "equilibrium_strategies.png",
        ):
            path = out / name
            assert path.exists() and path.stat().st_size > 0
            assert str(path) in manifest
        sweep_lines = (out / "sweep.csv").read_text().strip().splitlines()
        assert len(sweep_lines) == 1 + 2 * 9  # both budget modes
        json.loads((out / "thresholds.json").read_text())
