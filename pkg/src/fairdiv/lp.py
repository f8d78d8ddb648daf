"""Exact rational linear programming, sized for this package's tiny systems.

Phase-1 simplex over `fractions.Fraction` with Bland's anti-cycling rule.
Feasibility, basic feasible points (vertices) and a maximization entry point
are all the solvers here ever need; no sparsity, no scaling, no tolerances.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import as_fraction


class Relation(enum.Enum):
    LE = "<="
    EQ = "=="
    GE = ">="


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: Relation
    rhs: Fraction


@dataclass(frozen=True)
class LinearProgram:
    """num_vars variables, optional per-variable nonnegativity (default: all)."""

    num_vars: int
    constraints: tuple[Constraint, ...]
    nonneg: tuple[bool, ...] | None = None

    def __post_init__(self) -> None:
        for c in self.constraints:
            if len(c.coeffs) != self.num_vars:
                raise ValueError("constraint length does not match variable count")
        if self.nonneg is not None and len(self.nonneg) != self.num_vars:
            raise ValueError("nonneg flag length does not match variable count")

    def nonneg_flags(self) -> tuple[bool, ...]:
        return self.nonneg if self.nonneg is not None else (True,) * self.num_vars

    def check(self, point: Sequence[Fraction]) -> bool:
        """Exact re-check of a point against the raw constraint list."""
        if len(point) != self.num_vars:
            return False
        for flag, x in zip(self.nonneg_flags(), point):
            if flag and x < 0:
                return False
        for c in self.constraints:
            lhs = sum((a * x for a, x in zip(c.coeffs, point)), Fraction(0))
            if c.relation is Relation.LE and lhs > c.rhs:
                return False
            if c.relation is Relation.GE and lhs < c.rhs:
                return False
            if c.relation is Relation.EQ and lhs != c.rhs:
                return False
        return True


def constraint(coeffs: Sequence, relation: Relation, rhs) -> Constraint:
    return Constraint(tuple(as_fraction(a) for a in coeffs), relation, as_fraction(rhs))


class UnboundedError(RuntimeError):
    pass


class _Tableau:
    """Dense simplex tableau; column layout: structural vars, then artificials."""

    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], num_struct: int):
        self.num_struct = num_struct
        self.num_rows = len(rows)
        self.num_cols = num_struct + self.num_rows  # one artificial per row
        zero = Fraction(0)
        one = Fraction(1)
        self.rows: list[list[Fraction]] = []
        self.basis: list[int] = []
        for r, row in enumerate(rows):
            art = [zero] * self.num_rows
            art[r] = one
            self.rows.append(row + art + [rhs[r]])
            self.basis.append(num_struct + r)

    def _pivot(self, row: int, col: int) -> None:
        rows = self.rows
        pivot_row = rows[row]
        factor = pivot_row[col]
        rows[row] = pivot_row = [x / factor for x in pivot_row]
        for r, other in enumerate(rows):
            if r == row:
                continue
            scale = other[col]
            if scale:
                rows[r] = [a - scale * b for a, b in zip(other, pivot_row)]
        self.basis[row] = col

    def _iterate(self, cost: list[Fraction], allowed: int) -> None:
        """Minimize cost over columns [0, allowed) with Bland's rule."""
        rows = self.rows
        rhs_idx = self.num_cols
        while True:
            # reduced costs for the current basis
            dual = [cost[self.basis[r]] for r in range(self.num_rows)]
            entering = -1
            for j in range(allowed):
                if j in self.basis:
                    continue
                reduced = cost[j] - sum(dual[r] * rows[r][j] for r in range(self.num_rows))
                if reduced < 0:
                    entering = j
                    break
            if entering < 0:
                return
            leaving = -1
            best_ratio: Fraction | None = None
            for r in range(self.num_rows):
                a = rows[r][entering]
                if a > 0:
                    ratio = rows[r][rhs_idx] / a
                    if best_ratio is None or ratio < best_ratio or (
                        ratio == best_ratio and self.basis[r] < self.basis[leaving]
                    ):
                        best_ratio = ratio
                        leaving = r
            if leaving < 0:
                raise UnboundedError("objective is unbounded")
            self._pivot(leaving, entering)

    def solve_phase1(self) -> bool:
        """Drive the artificial variables to zero; False means infeasible."""
        zero = Fraction(0)
        one = Fraction(1)
        cost = [zero] * self.num_struct + [one] * self.num_rows
        self._iterate(cost, self.num_cols)
        rhs_idx = self.num_cols
        total = sum(
            self.rows[r][rhs_idx] for r in range(self.num_rows) if self.basis[r] >= self.num_struct
        )
        if total != 0:
            return False
        self._drive_out_artificials()
        return True

    def _drive_out_artificials(self) -> None:
        r = 0
        while r < self.num_rows:
            if self.basis[r] < self.num_struct:
                r += 1
                continue
            pivot_col = next(
                (j for j in range(self.num_struct) if self.rows[r][j] != 0), None
            )
            if pivot_col is None:
                # redundant constraint: the row is zero over structural columns
                del self.rows[r]
                del self.basis[r]
                self.num_rows -= 1
            else:
                self._pivot(r, pivot_col)  # degenerate pivot; rhs is 0 here
                r += 1

    def solve_phase2(self, objective: list[Fraction]) -> None:
        """Maximize the structural objective from a feasible basis."""
        zero = Fraction(0)
        cost = [-c for c in objective] + [zero] * (self.num_cols - self.num_struct)
        self._iterate(cost, self.num_struct)

    def solution(self) -> list[Fraction]:
        point = [Fraction(0)] * self.num_struct
        rhs_idx = self.num_cols
        for r, col in enumerate(self.basis):
            if col < self.num_struct:
                point[col] = self.rows[r][rhs_idx]
        return point


def _standard_form(lp: LinearProgram) -> tuple[_Tableau, list[tuple[int, int | None]]]:
    """Equality tableau with nonnegative variables and nonnegative right sides.

    Returns the tableau plus, per original variable, its column (and the
    column of the negated half when the variable is free).
    """
    columns: list[tuple[int, int | None]] = []
    num_struct = 0
    for flag in lp.nonneg_flags():
        if flag:
            columns.append((num_struct, None))
            num_struct += 1
        else:
            columns.append((num_struct, num_struct + 1))
            num_struct += 2
    num_slacks = sum(1 for c in lp.constraints if c.relation is not Relation.EQ)
    total = num_struct + num_slacks

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    zero = Fraction(0)
    slack_at = num_struct
    for c in lp.constraints:
        row = [zero] * total
        for coeff, (pos, neg) in zip(c.coeffs, columns):
            row[pos] += coeff
            if neg is not None:
                row[neg] -= coeff
        if c.relation is Relation.LE:
            row[slack_at] = Fraction(1)
            slack_at += 1
        elif c.relation is Relation.GE:
            row[slack_at] = Fraction(-1)
            slack_at += 1
        b = c.rhs
        if b < 0:
            row = [-x for x in row]
            b = -b
        rows.append(row)
        rhs.append(b)
    return _Tableau(rows, rhs, total), columns


def _extract(lp: LinearProgram, tableau: _Tableau, columns) -> tuple[Fraction, ...]:
    point = tableau.solution()
    out = []
    for pos, neg in columns:
        value = point[pos] - (point[neg] if neg is not None else Fraction(0))
        out.append(value)
    result = tuple(out)
    assert lp.check(result), "simplex produced a point violating the raw constraints"
    return result


def feasible_point(lp: LinearProgram) -> tuple[Fraction, ...] | None:
    """An exact feasible point, or None when the system is infeasible."""
    tableau, columns = _standard_form(lp)
    if not tableau.solve_phase1():
        return None
    return _extract(lp, tableau, columns)


def basic_feasible_point(lp: LinearProgram) -> tuple[Fraction, ...] | None:
    """A vertex of the feasible region; requires all variables nonnegative.

    The returned point has at most as many nonzero entries as the equality
    system has rows (slacks included in the accounting, so the bound on the
    original variables is only helped by inequality rows).
    """
    if not all(lp.nonneg_flags()):
        raise ValueError("basic feasible points require sign-constrained variables")
    tableau, columns = _standard_form(lp)
    if not tableau.solve_phase1():
        return None
    point = _extract(lp, tableau, columns)
    assert sum(1 for x in point if x != 0) <= len(lp.constraints)
    return point


def maximize(
    lp: LinearProgram, objective: Sequence[Fraction]
) -> tuple[Fraction, tuple[Fraction, ...]] | None:
    """Maximize objective . x over the LP; None if infeasible.

    Used by the brute-force Pareto-domination check; raises UnboundedError on
    unbounded systems (which that check never produces).
    """
    if len(objective) != lp.num_vars:
        raise ValueError("objective length does not match variable count")
    tableau, columns = _standard_form(lp)
    if not tableau.solve_phase1():
        return None
    obj = [Fraction(0)] * tableau.num_struct
    for coeff, (pos, neg) in zip(objective, columns):
        obj[pos] += coeff
        if neg is not None:
            obj[neg] -= coeff
    tableau.solve_phase2(obj)
    point = _extract(lp, tableau, columns)
    value = sum((c * x for c, x in zip(objective, point)), Fraction(0))
    return value, point
