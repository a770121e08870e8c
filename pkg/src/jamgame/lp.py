"""Self-contained dense linear-program solver.

Two-phase primal simplex on an explicit tableau, sized for the game LPs
here (tens of variables). Dantzig pricing with lowest-index tie breaking;
Bland's rule takes over once a run of degenerate pivots trips the
anti-cycling counter, which keeps the pivot sequence deterministic and
finite. Duals are recovered from the final basis and reported per
original constraint row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import NumericalBreakdown

PIVOT_TOL = 1e-12
OPT_TOL = 1e-9
FEAS_TOL = 1e-9

LE, EQ, GE = "<=", "=", ">="
_RELATIONS = (LE, EQ, GE)


class LpStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpProblem:
    """minimize objective . x subject to the listed constraints.

    constraints: sequence of (coefficients, relation, rhs) with relation
    one of "<=", "=", ">=". Variables default to lower bound 0; entries
    of lower_bounds override per variable, and indices in free_vars have
    no bound at all.

    rhs_tie_break, when given, pins which optimal basis a degenerate
    problem terminates in: ratio-test ties are resolved as if the
    right-hand side were rhs + eps * rhs_tie_break for an infinitesimal
    eps > 0. The reported solution still solves the unperturbed problem;
    only the choice among equally optimal bases (and hence the duals)
    is affected.
    """

    objective: tuple[float, ...]
    constraints: tuple[tuple[tuple[float, ...], str, float], ...]
    lower_bounds: tuple[float, ...] | None = None
    free_vars: frozenset[int] = field(default_factory=frozenset)
    rhs_tie_break: tuple[float, ...] | None = None

    def __post_init__(self):
        obj = tuple(float(v) for v in self.objective)
        object.__setattr__(self, "objective", obj)
        n = len(obj)
        cons = []
        for coeffs, rel, rhs in self.constraints:
            coeffs = tuple(float(v) for v in coeffs)
            if len(coeffs) != n:
                raise ValueError(f"constraint width {len(coeffs)} != objective width {n}")
            if rel not in _RELATIONS:
                raise ValueError(f"unknown relation {rel!r}")
            if not all(math.isfinite(v) for v in coeffs) or not math.isfinite(rhs):
                raise ValueError("non-finite coefficient in constraint")
            cons.append((coeffs, rel, float(rhs)))
        object.__setattr__(self, "constraints", tuple(cons))
        if self.lower_bounds is not None:
            lb = tuple(float(v) for v in self.lower_bounds)
            if len(lb) != n:
                raise ValueError("lower_bounds width mismatch")
            object.__setattr__(self, "lower_bounds", lb)
        object.__setattr__(self, "free_vars", frozenset(int(i) for i in self.free_vars))
        if self.rhs_tie_break is not None:
            d = tuple(float(v) for v in self.rhs_tie_break)
            if len(d) != len(cons):
                raise ValueError("rhs_tie_break width must match constraint count")
            object.__setattr__(self, "rhs_tie_break", d)


@dataclass(frozen=True)
class LpSolution:
    """Solver result. For OPTIMAL, primal/dual/objective_value are set and
    the residual fields certify the solution; for UNBOUNDED, certificate
    is an improving ray; for INFEASIBLE, it is the phase-1 dual vector.

    Dual sign convention (minimization): dual[i] <= 0 for "<=" rows,
    dual[i] >= 0 for ">=" rows, free for "=" rows, and the dual objective
    sum_i dual[i] * rhs[i] + contributions of nonzero lower bounds equals
    the primal objective at optimality.
    """

    status: LpStatus
    primal: np.ndarray | None
    dual: np.ndarray | None
    objective_value: float
    feasibility_residual: float = 0.0
    duality_gap: float = 0.0
    complementarity_residual: float = 0.0
    certificate: np.ndarray | None = None


class _Tableau:
    """Standard-form tableau min c.x, Ax = b, x >= 0 with per-row artificials."""

    def __init__(self, problem: LpProblem):
        n = len(problem.objective)
        m = len(problem.constraints)
        self.problem = problem
        self.n_orig = n

        # Column layout: structural columns (free variables split into a
        # +/- pair), then slack/surplus columns, then artificials.
        self.col_of_var: list[list[tuple[int, float]]] = []
        self.shift = np.zeros(n)
        cols = 0
        for j in range(n):
            if j in problem.free_vars:
                self.col_of_var.append([(cols, 1.0), (cols + 1, -1.0)])
                cols += 2
            else:
                if problem.lower_bounds is not None:
                    self.shift[j] = problem.lower_bounds[j]
                self.col_of_var.append([(cols, 1.0)])
                cols += 1
        self.n_struct = cols

        a_rows = []
        b = np.zeros(m)
        self.row_sign = np.ones(m)
        slack_rows = [i for i, (_, rel, _) in enumerate(problem.constraints) if rel != EQ]
        n_slack = len(slack_rows)
        slack_col = {row: self.n_struct + k for k, row in enumerate(slack_rows)}

        for i, (coeffs, rel, rhs) in enumerate(problem.constraints):
            row = np.zeros(self.n_struct + n_slack)
            for j, v in enumerate(coeffs):
                for col, sign in self.col_of_var[j]:
                    row[col] = sign * v
            rhs_shifted = rhs - float(np.dot(coeffs, self.shift))
            if rel == LE:
                row[slack_col[i]] = 1.0
            elif rel == GE:
                row[slack_col[i]] = -1.0
            if rhs_shifted < 0.0:
                row = -row
                rhs_shifted = -rhs_shifted
                self.row_sign[i] = -1.0
            a_rows.append(row)
            b[i] = rhs_shifted

        self.m = m
        self.art_start = self.n_struct + n_slack
        self.n_cols = self.art_start + m
        self.T = np.zeros((m, self.n_cols + 1))
        if m:
            self.T[:, : self.art_start] = np.vstack(a_rows)
        self.T[:, self.art_start : self.n_cols] = np.eye(m)
        self.T[:, -1] = b
        self.b0 = b.copy()
        self.basis = list(range(self.art_start, self.n_cols))
        if problem.rhs_tie_break is None:
            self.W = None
        else:
            self.W = np.asarray(problem.rhs_tie_break) * self.row_sign

        self.cost = np.zeros(self.n_cols)
        obj = np.asarray(problem.objective)
        for j in range(n):
            for col, sign in self.col_of_var[j]:
                self.cost[col] = sign * obj[j]

    # -- simplex core ------------------------------------------------------

    def _pivot(self, leave: int, enter: int):
        T = self.T
        pivot = T[leave, enter]
        T[leave] /= pivot
        factors = T[:, enter].copy()
        factors[leave] = 0.0
        T -= np.outer(factors, T[leave])
        T[:, enter] = 0.0
        T[leave, enter] = 1.0
        if self.W is not None:
            self.W[leave] /= pivot
            self.W -= factors * self.W[leave]
        self.basis[leave] = enter

    def _choose_leaving(self, col: np.ndarray, positive: np.ndarray, bland: bool):
        ratios = np.where(positive, self.T[:, -1] / np.where(positive, col, 1.0), np.inf)
        best = ratios.min()
        if bland:
            ties = np.flatnonzero(ratios == best)
            return int(ties[np.argmin(np.asarray(self.basis)[ties])]), best
        if self.W is not None:
            # Resolve ties as if rhs were rhs + eps * W: among (near-)minimal
            # primary ratios, take the minimal perturbation ratio.
            ties = np.flatnonzero(positive & (ratios <= best + 1e-10 * max(1.0, abs(best))))
            if ties.size > 1:
                secondary = self.W[ties] / col[ties]
                sec_best = secondary.min()
                sub = ties[secondary <= sec_best + 1e-10 * max(1.0, abs(sec_best))]
                return int(sub[0]), best
            return int(ties[0]), best
        return int(np.argmin(ratios)), best

    def run(self, cost: np.ndarray, allowed: np.ndarray):
        """Minimize cost over the current basis; returns ("optimal", None)
        or ("unbounded", entering_column). Mutates T and basis in place.
        """
        T, basis = self.T, self.basis
        m, n_cols = self.m, self.n_cols
        reduced = cost - cost[basis] @ T[:, :n_cols]
        reduced[basis] = 0.0
        degenerate_run = 0
        bland = False
        trip = 2 * (m + n_cols) + 16
        max_iters = 200 * (m + n_cols) + 10_000

        for _ in range(max_iters):
            eligible = allowed & (reduced < -OPT_TOL)
            if not eligible.any():
                return "optimal", None
            if bland:
                enter = int(np.flatnonzero(eligible)[0])
            else:
                masked = np.where(eligible, reduced, np.inf)
                enter = int(np.argmin(masked))

            col = T[:, enter]
            positive = col > PIVOT_TOL
            if not positive.any():
                if (col > 0.0).any():
                    raise NumericalBreakdown(
                        "all candidate pivots below tolerance in entering column"
                    )
                return "unbounded", enter

            leave, theta = self._choose_leaving(col, positive, bland)
            old_reduced = reduced[enter]
            self._pivot(leave, enter)
            reduced = reduced - old_reduced * T[leave, :n_cols]
            reduced[enter] = 0.0

            if theta <= FEAS_TOL:
                degenerate_run += 1
                if degenerate_run > trip:
                    bland = True
            else:
                degenerate_run = 0
        raise NumericalBreakdown("simplex iteration limit exceeded")

    def drive_out_artificials(self, allowed: np.ndarray):
        """Pivot basic artificials (at level ~0) onto structural columns
        where possible; rows with no eligible column are redundant and keep
        their artificial basic at zero.
        """
        for row in range(self.m):
            if self.basis[row] < self.art_start:
                continue
            candidates = np.flatnonzero(
                allowed & (np.abs(self.T[row, : self.n_cols]) > PIVOT_TOL)
            )
            if candidates.size == 0:
                continue
            self._pivot(row, int(candidates[0]))

    # -- extraction --------------------------------------------------------

    def duals(self) -> np.ndarray:
        """Row duals c_B . B^-1, read from the artificial block (= B^-1),
        mapped back to the original row orientation.
        """
        y = self.cost[self.basis] @ self.T[:, self.art_start : self.n_cols]
        return y * self.row_sign

    def primal(self) -> np.ndarray:
        x_std = np.zeros(self.n_cols)
        x_std[self.basis] = self.T[:, -1]
        x = np.empty(self.n_orig)
        for j, cols in enumerate(self.col_of_var):
            x[j] = sum(sign * x_std[col] for col, sign in cols) + self.shift[j]
        return x

    def std_objective(self) -> float:
        x_std = np.zeros(self.n_cols)
        x_std[self.basis] = self.T[:, -1]
        return float(self.cost @ x_std)

    def ray(self, enter: int) -> np.ndarray:
        d_std = np.zeros(self.n_cols)
        d_std[enter] = 1.0
        for row, bcol in enumerate(self.basis):
            d_std[bcol] = -self.T[row, enter]
        d = np.zeros(self.n_orig)
        for j, cols in enumerate(self.col_of_var):
            d[j] = sum(sign * d_std[col] for col, sign in cols)
        return d


def _residuals(problem: LpProblem, x: np.ndarray):
    feas = 0.0
    for coeffs, rel, rhs in problem.constraints:
        lhs = float(np.dot(coeffs, x))
        if rel == LE:
            feas = max(feas, lhs - rhs)
        elif rel == GE:
            feas = max(feas, rhs - lhs)
        else:
            feas = max(feas, abs(lhs - rhs))
    for j, v in enumerate(x):
        if j in problem.free_vars:
            continue
        lb = problem.lower_bounds[j] if problem.lower_bounds is not None else 0.0
        feas = max(feas, lb - v)
    return feas


def solve_lp(problem: LpProblem) -> LpSolution:
    """Solve the LP to optimality, or report INFEASIBLE/UNBOUNDED with a
    certificate. Deterministic: identical problems produce identical
    solutions. Raises NumericalBreakdown when no acceptable pivot exists.
    """
    n = len(problem.objective)
    if len(problem.constraints) == 0:
        # Only variable bounds: each variable sits at its cheapest end.
        x = np.zeros(n)
        for j in range(n):
            c = problem.objective[j]
            if j in problem.free_vars:
                if c != 0.0:
                    ray = np.zeros(n)
                    ray[j] = -math.copysign(1.0, c)
                    return LpSolution(LpStatus.UNBOUNDED, None, None, -math.inf, certificate=ray)
            else:
                lb = problem.lower_bounds[j] if problem.lower_bounds is not None else 0.0
                if c < 0.0:
                    ray = np.zeros(n)
                    ray[j] = 1.0
                    return LpSolution(LpStatus.UNBOUNDED, None, None, -math.inf, certificate=ray)
                x[j] = lb
        obj = float(np.dot(problem.objective, x))
        return LpSolution(LpStatus.OPTIMAL, x, np.zeros(0), obj)

    tab = _Tableau(problem)

    phase1_cost = np.zeros(tab.n_cols)
    phase1_cost[tab.art_start :] = 1.0
    allowed = np.ones(tab.n_cols, dtype=bool)
    allowed[tab.art_start :] = False
    status, _ = tab.run(phase1_cost, allowed)
    if status != "optimal" or float(phase1_cost[tab.basis] @ tab.T[:, -1]) > FEAS_TOL:
        farkas = phase1_cost[tab.basis] @ tab.T[:, tab.art_start : tab.n_cols] * tab.row_sign
        return LpSolution(LpStatus.INFEASIBLE, None, None, math.nan, certificate=farkas)
    tab.drive_out_artificials(allowed)

    status, enter = tab.run(tab.cost, allowed)
    if status == "unbounded":
        return LpSolution(
            LpStatus.UNBOUNDED, None, None, -math.inf, certificate=tab.ray(enter)
        )

    x = tab.primal()
    y = tab.duals()
    objective_value = float(np.dot(problem.objective, x))

    feas = _residuals(problem, x)
    y_std = y * tab.row_sign
    gap = abs(tab.std_objective() - float(y_std @ tab.b0))
    reduced = tab.cost - tab.cost[tab.basis] @ tab.T[:, : tab.n_cols]
    x_std = np.zeros(tab.n_cols)
    x_std[tab.basis] = tab.T[:, -1]
    compl = float(np.max(np.abs(x_std * reduced))) if tab.n_cols else 0.0

    if feas > FEAS_TOL or gap > 1e-8 or compl > 1e-8:
        raise NumericalBreakdown(
            f"optimal basis fails certification: feas={feas:.3e} gap={gap:.3e} compl={compl:.3e}"
        )
    return LpSolution(
        status=LpStatus.OPTIMAL,
        primal=x,
        dual=y,
        objective_value=objective_value,
        feasibility_residual=feas,
        duality_gap=gap,
        complementarity_residual=compl,
    )
