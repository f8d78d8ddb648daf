"""Independent brute-force ground truth for small instances.

These oracles certify the clever machinery: support enumeration by exhaustion,
sharing minimization by trying every Pareto-optimal support, and Pareto
optimality itself by a welfare-maximization LP over all n*m shares, a code
path that never touches the exchange-graph logic.
"""

from __future__ import annotations

import os
from fractions import Fraction

from .core import Allocation, FairnessSpec, Instance, Objective, is_fair, utilities
from .enumeration import FpoGraphSet
from .graph import is_fpo_graph
from .lp import LinearProgram, Relation, constraint, feasible_point, maximize
from .solver import allocation_from_point, fairness_lp_for_graph, graph_objective

DEFAULT_SUPPORT_BUDGET = 10**6
BUDGET_ENV_VAR = "FAIRDIV_BUDGET"


class BudgetExceededError(RuntimeError):
    """The instance has too many supports for exhaustive search."""


def support_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    raw = os.environ.get(BUDGET_ENV_VAR)
    return int(raw) if raw else DEFAULT_SUPPORT_BUDGET


def brute_fpo_graphs(inst: Instance, budget: int | None = None) -> FpoGraphSet:
    """Every Pareto-optimal support, found by filtering all (2^n - 1)^m supports.

    Supports that hand a good to a non-positive valuer (or a neutral object to
    a nonzero valuer) fail the filter outright, so the iteration enumerates
    only per-object consumer sets that respect those rules; everything else
    goes through the full graph test.
    """
    n, m = inst.n, inst.m
    nominal = (2**n - 1) ** m
    limit = support_budget(budget)
    if nominal > limit:
        raise BudgetExceededError(f"{nominal} supports exceed the budget of {limit}")

    per_object: list[list[int]] = []
    for o in range(m):
        column = [inst.values[i][o] for i in range(n)]
        if any(v > 0 for v in column):
            allowed_bits = [i for i, v in enumerate(column) if v > 0]
        elif all(v < 0 for v in column):
            allowed_bits = list(range(n))
        else:
            allowed_bits = [i for i, v in enumerate(column) if v == 0]
        masks = []
        for subset in range(1, 1 << len(allowed_bits)):
            mask = 0
            for pos, agent in enumerate(allowed_bits):
                if subset >> pos & 1:
                    mask |= 1 << agent
            masks.append(mask)
        per_object.append(sorted(masks))

    found: list[tuple[int, ...]] = []
    stack: list[int] = []

    def descend(depth: int) -> None:
        if depth == m:
            graph = tuple(stack)
            if is_fpo_graph(inst, graph):
                found.append(graph)
            return
        for mask in per_object[depth]:
            stack.append(mask)
            descend(depth + 1)
            stack.pop()

    descend(0)
    return FpoGraphSet(inst, n, tuple(sorted(found)))


def brute_min_objective(
    inst: Instance,
    spec: FairnessSpec,
    objective: Objective,
    budget: int | None = None,
    graphs: FpoGraphSet | None = None,
) -> int | Fraction | None:
    """Minimal objective over all fair allocations on Pareto-optimal supports.

    Runs the solver's own fairness LP on every brute-forced support (no
    sharing-count skip), re-verifies each feasible point against the raw
    fairness definition, and returns the smallest objective; None if no
    support admits a fair allocation.
    """
    if graphs is None:
        graphs = brute_fpo_graphs(inst, budget)
    best: int | Fraction | None = None
    for graph in graphs:
        lp, variables = fairness_lp_for_graph(inst, graph, spec)
        point = feasible_point(lp)
        if point is None:
            continue
        alloc = allocation_from_point(inst, graph, point, variables)
        assert is_fair(inst, alloc, spec), "LP-feasible point must satisfy the raw definition"
        value = graph_objective(inst, graph, objective)
        if best is None or value < best:
            best = value
    return best


def domination_check(inst: Instance, alloc: Allocation) -> bool:
    """Pareto-optimality by LP: can total utility rise without hurting anyone?

    Maximizes the utilitarian sum over all feasible allocations subject to
    every agent keeping at least their current utility.  The allocation is
    fractionally Pareto-optimal iff the optimum equals the current sum.
    """
    n, m = inst.n, inst.m
    current = utilities(inst, alloc)
    num_vars = n * m

    rows = []
    for o in range(m):
        coeffs = [Fraction(0)] * num_vars
        for i in range(n):
            coeffs[i * m + o] = Fraction(1)
        rows.append(constraint(coeffs, Relation.EQ, 1))
    for i in range(n):
        coeffs = [Fraction(0)] * num_vars
        for o in range(m):
            coeffs[i * m + o] = inst.values[i][o]
        rows.append(constraint(coeffs, Relation.GE, current[i]))

    objective = [Fraction(0)] * num_vars
    for i in range(n):
        for o in range(m):
            objective[i * m + o] = inst.values[i][o]

    result = maximize(LinearProgram(num_vars, tuple(rows)), objective)
    assert result is not None, "the allocation itself is always feasible"
    value, _ = result
    return value == sum(current, Fraction(0))
