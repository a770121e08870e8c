import numpy as np
import pytest

from jamgame import lp


def solve(objective, constraints, **kwargs):
    return lp.solve_lp(lp.LpProblem(tuple(objective), tuple(constraints), **kwargs))


class TestBasics:
    def test_single_lower_bounded_constraint(self):
        sol = solve([1.0], [((1.0,), lp.GE, 3.0)])
        assert sol.status is lp.LpStatus.OPTIMAL
        assert sol.objective_value == pytest.approx(3.0, abs=1e-12)
        assert sol.primal[0] == pytest.approx(3.0, abs=1e-12)

    def test_deterministic_vertex_on_tied_face(self):
        # minimize -x - y over x + y <= 1: the whole edge is optimal, the
        # pivot rule must pin the (1, 0) vertex.
        sol = solve([-1.0, -1.0], [((1.0, 1.0), lp.LE, 1.0)])
        assert sol.objective_value == pytest.approx(-1.0, abs=1e-12)
        assert sol.primal[0] == pytest.approx(1.0, abs=1e-12)
        assert sol.primal[1] == pytest.approx(0.0, abs=1e-12)

    def test_identity_matrix_game(self):
        # Game LP for payoff [[1,0],[0,1]]: min t with rows C y <= t,
        # probabilities summing to one. Mixed equilibrium value is 1/2.
        constraints = [
            ((1.0, 0.0, -1.0), lp.LE, 0.0),
            ((0.0, 1.0, -1.0), lp.LE, 0.0),
            ((1.0, 1.0, 0.0), lp.EQ, 1.0),
        ]
        sol = solve([0.0, 0.0, 1.0], constraints, free_vars=frozenset({2}))
        assert sol.objective_value == pytest.approx(0.5, abs=1e-12)
        assert np.allclose(sol.primal[:2], [0.5, 0.5], atol=1e-12)
        # Row duals recover the row player's mixed strategy.
        assert np.allclose(-sol.dual[:2], [0.5, 0.5], atol=1e-12)

    def test_equality_dual(self):
        sol = solve([1.0, 1.0], [((1.0, 1.0), lp.EQ, 1.0)])
        assert sol.objective_value == pytest.approx(1.0, abs=1e-12)
        assert sol.dual[0] == pytest.approx(1.0, abs=1e-12)

    def test_free_variable(self):
        sol = solve([1.0], [((1.0,), lp.GE, -5.0)], free_vars=frozenset({0}))
        assert sol.objective_value == pytest.approx(-5.0, abs=1e-12)

    def test_nonzero_lower_bound(self):
        sol = solve([1.0, 2.0], [((1.0, 1.0), lp.GE, 3.0)], lower_bounds=(2.0, 0.5))
        assert sol.status is lp.LpStatus.OPTIMAL
        assert sol.primal[1] == pytest.approx(0.5, abs=1e-12)
        assert sol.primal[0] == pytest.approx(2.5, abs=1e-12)

    def test_no_constraints(self):
        sol = solve([1.0, 0.0], [])
        assert sol.status is lp.LpStatus.OPTIMAL
        assert np.allclose(sol.primal, [0.0, 0.0])


class TestStatuses:
    def test_infeasible(self):
        sol = solve([1.0], [((1.0,), lp.LE, -1.0)])
        assert sol.status is lp.LpStatus.INFEASIBLE
        assert sol.certificate is not None

    def test_infeasible_conflicting_rows(self):
        sol = solve([0.0], [((1.0,), lp.GE, 2.0), ((1.0,), lp.LE, 1.0)])
        assert sol.status is lp.LpStatus.INFEASIBLE

    def test_unbounded(self):
        sol = solve([-1.0], [((0.0,), lp.LE, 1.0)])
        assert sol.status is lp.LpStatus.UNBOUNDED
        ray = sol.certificate
        assert ray is not None and ray[0] > 0.0

    def test_unbounded_without_constraints(self):
        sol = solve([-1.0], [])
        assert sol.status is lp.LpStatus.UNBOUNDED


class TestCertification:
    def test_strong_duality_and_feasibility(self):
        rng = np.random.default_rng(11)
        for _ in range(60):
            n = int(rng.integers(2, 7))
            m = int(rng.integers(1, 9))
            a = rng.normal(size=(m, n))
            x0 = np.abs(rng.normal(size=n))
            slack = np.abs(rng.normal(size=m))
            b = a @ x0 + slack
            c = rng.normal(size=n)
            c = np.abs(c)  # bounded below on x >= 0
            constraints = [(tuple(row), lp.LE, float(rhs)) for row, rhs in zip(a, b)]
            sol = solve(list(c), constraints)
            assert sol.status is lp.LpStatus.OPTIMAL
            assert sol.feasibility_residual < 1e-9
            assert sol.duality_gap < 1e-8
            assert sol.complementarity_residual < 1e-8

    def test_determinism(self):
        constraints = [
            ((1.0, 2.0, 1.0), lp.LE, 4.0),
            ((3.0, 1.0, 0.0), lp.LE, 6.0),
            ((1.0, 1.0, 1.0), lp.GE, 1.0),
        ]
        first = solve([-1.0, -2.0, 0.5], constraints)
        second = solve([-1.0, -2.0, 0.5], constraints)
        assert first.objective_value == second.objective_value
        assert np.array_equal(first.primal, second.primal)
        assert np.array_equal(first.dual, second.dual)


class TestTieBreak:
    def test_rhs_direction_selects_dual_vertex(self):
        # Duplicate rows make the optimal dual a whole segment
        # (y0 + y1 = -1, y <= 0). Tie-breaking toward an infinitesimally
        # smaller rhs on one row makes that row the binding one, so the
        # dual weight must land entirely on it.
        constraints = [
            ((1.0,), lp.LE, 1.0),
            ((1.0,), lp.LE, 1.0),
        ]
        on_first = solve([-1.0], constraints, rhs_tie_break=(-1.0, 0.0))
        on_second = solve([-1.0], constraints, rhs_tie_break=(0.0, -1.0))
        for sol in (on_first, on_second):
            assert sol.status is lp.LpStatus.OPTIMAL
            assert sol.objective_value == pytest.approx(-1.0, abs=1e-12)
        assert on_first.dual[0] == pytest.approx(-1.0, abs=1e-12)
        assert on_first.dual[1] == pytest.approx(0.0, abs=1e-12)
        assert on_second.dual[0] == pytest.approx(0.0, abs=1e-12)
        assert on_second.dual[1] == pytest.approx(-1.0, abs=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            lp.LpProblem((1.0,), (((1.0,), lp.LE, 1.0),), rhs_tie_break=(1.0, 2.0))
        with pytest.raises(ValueError):
            lp.LpProblem((1.0,), (((1.0, 2.0), lp.LE, 1.0),))
        with pytest.raises(ValueError):
            lp.LpProblem((1.0,), (((float("inf"),), lp.LE, 1.0),))
        with pytest.raises(ValueError):
            lp.LpProblem((1.0,), (((1.0,), "<", 1.0),))
