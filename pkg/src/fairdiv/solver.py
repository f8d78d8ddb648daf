"""Top-level solvers: sharing minimization, the two-agent fast path, consensus.

The general solver enumerates the consumption graphs of Pareto-optimal
allocations, poses each graph's fairness conditions as a tiny exact LP over
the shared objects' shares, and picks the feasible graph with the smallest
objective.  Scanning graphs in (objective, canonical encoding) order makes
the first feasible hit the answer and the tie-break reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Allocation,
    FairnessKind,
    FairnessSpec,
    Instance,
    Objective,
    ObjectClass,
    SharingStats,
    bundle_value,
    classify_object,
    degeneracy,
    is_fair,
    sharing_stats,
    utilities,
)
from .enumeration import (
    DEFAULT_DEGENERACY_BUDGET,
    enumerate_fpo_graphs,
)
from .graph import (
    ConsumptionGraph,
    Cycle,
    WeightCertificate,
    dcg_of,
    find_violating_cycle,
    graph_consumers,
    graph_shared_value,
    graph_shared_objects,
    graph_sharings,
    is_fpo_graph,
    is_nonmalicious,
    po_weights,
    ucg_of,
)
from .lp import LinearProgram, Relation, basic_feasible_point, constraint, feasible_point


class NoFairAllocationError(RuntimeError):
    """No Pareto-optimal support admits the requested fair allocation.

    Cannot happen for unweighted envy-freeness or for proportionality with any
    entitlements; unequal-entitlement envy-freeness has no such guarantee.
    """


class FastPathError(ValueError):
    """The two-agent fast path was invoked outside its preconditions."""


@dataclass(frozen=True)
class SolveResult:
    allocation: Allocation
    stats: SharingStats
    certificate: WeightCertificate
    graphs_examined: int
    objective_value: int | Fraction


Variables = tuple[tuple[int, int], ...]


def fairness_lp_for_graph(
    inst: Instance, graph: ConsumptionGraph, spec: FairnessSpec
) -> tuple[LinearProgram, Variables]:
    """Fairness feasibility LP restricted to a consumption graph.

    One variable per (consumer, shared object) pair; unshared objects go
    entirely to their sole consumer and contribute constants.  Constraints:
    each shared object's shares sum to 1, plus one inequality per fairness
    condition (n for proportionality, n(n-1) for envy-freeness).
    """
    n, m = inst.n, inst.m
    w = spec.resolved_weights(n)
    variables: list[tuple[int, int]] = []
    for o in range(m):
        if graph[o].bit_count() >= 2:
            variables.extend((i, o) for i in graph_consumers(graph, o))
    index = {pair: pos for pos, pair in enumerate(variables)}
    num_vars = len(variables)
    zero = Fraction(0)

    owner: dict[int, int] = {}
    for o in range(m):
        if graph[o].bit_count() == 1:
            owner[o] = graph[o].bit_length() - 1

    rows = []
    for o in range(m):
        if graph[o].bit_count() < 2:
            continue
        coeffs = [zero] * num_vars
        for i in graph_consumers(graph, o):
            coeffs[index[(i, o)]] = Fraction(1)
        rows.append(constraint(coeffs, Relation.EQ, 1))

    def own_fixed(i: int) -> Fraction:
        return sum((inst.values[i][o] for o, holder in owner.items() if holder == i), zero)

    def cross_fixed(i: int, j: int) -> Fraction:
        return sum((inst.values[i][o] for o, holder in owner.items() if holder == j), zero)

    if spec.kind is FairnessKind.PROPORTIONAL:
        for i in range(n):
            coeffs = [zero] * num_vars
            for (agent, o), pos in index.items():
                if agent == i:
                    coeffs[pos] = inst.values[i][o]
            rows.append(
                constraint(coeffs, Relation.GE, w[i] * inst.total_value(i) - own_fixed(i))
            )
    else:
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                coeffs = [zero] * num_vars
                for (agent, o), pos in index.items():
                    if agent == i:
                        coeffs[pos] += w[j] * inst.values[i][o]
                    if agent == j:
                        coeffs[pos] -= w[i] * inst.values[i][o]
                rhs = w[i] * cross_fixed(i, j) - w[j] * own_fixed(i)
                rows.append(constraint(coeffs, Relation.GE, rhs))

    return LinearProgram(num_vars, tuple(rows)), tuple(variables)


def allocation_from_point(
    inst: Instance, graph: ConsumptionGraph, point, variables: Variables
) -> Allocation:
    shares = [[Fraction(0)] * inst.m for _ in range(inst.n)]
    for o in range(inst.m):
        if graph[o].bit_count() == 1:
            shares[graph[o].bit_length() - 1][o] = Fraction(1)
    for (i, o), value in zip(variables, point):
        shares[i][o] = value
    return Allocation(tuple(tuple(row) for row in shares))


def graph_objective(
    inst: Instance, graph: ConsumptionGraph, objective: Objective
) -> int | Fraction:
    if objective is Objective.SHARINGS or objective is Objective.ANY_FEASIBLE:
        return graph_sharings(graph)
    if objective is Objective.SHARED_OBJECTS:
        return graph_shared_objects(graph)
    return graph_shared_value(inst, graph)


def _objective_of_stats(stats: SharingStats, objective: Objective) -> int | Fraction:
    if objective is Objective.SHARED_OBJECTS:
        return stats.num_shared_objects
    if objective is Objective.SHARED_VALUE:
        return stats.shared_value
    return stats.num_sharings


def solve_min_sharing(
    inst: Instance,
    spec: FairnessSpec,
    objective: Objective = Objective.SHARINGS,
    *,
    degeneracy_budget: int = DEFAULT_DEGENERACY_BUDGET,
    threads: int = 1,
) -> SolveResult:
    """Fair, fractionally Pareto-optimal allocation minimizing the objective.

    When minimizing sharings under proportionality (any entitlements) or
    unweighted envy-freeness, graphs with more than n-1 sharings are skipped:
    a fair optimum within that bound is guaranteed to exist.  Weighted
    envy-freeness carries no such guarantee, so there the whole graph set is
    scanned and infeasibility is reported honestly.  Other objectives never
    skip.
    """
    cap = None
    if objective is Objective.SHARINGS and (
        spec.kind is FairnessKind.PROPORTIONAL or not spec.is_weighted
    ):
        cap = inst.n - 1
    graphs = enumerate_fpo_graphs(inst, max_sharings=cap, degeneracy_budget=degeneracy_budget)
    ordered = sorted(graphs, key=lambda g: (graph_objective(inst, g, objective), g))

    def attempt(graph: ConsumptionGraph):
        lp, variables = fairness_lp_for_graph(inst, graph, spec)
        point = feasible_point(lp)
        if point is None:
            return None
        return allocation_from_point(inst, graph, point, variables)

    chosen: Allocation | None = None
    position = len(ordered)
    if threads <= 1:
        for pos, graph in enumerate(ordered):
            alloc = attempt(graph)
            if alloc is not None:
                chosen, position = alloc, pos
                break
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            block = max(4 * threads, 8)
            for start in range(0, len(ordered), block):
                chunk = ordered[start : start + block]
                for offset, alloc in enumerate(pool.map(attempt, chunk)):
                    if alloc is not None:
                        chosen, position = alloc, start + offset
                        break
                if chosen is not None:
                    break

    if chosen is None:
        raise NoFairAllocationError(
            f"no {spec.kind.value} allocation exists on any Pareto-optimal support"
        )
    stats = sharing_stats(inst, chosen)
    return SolveResult(
        allocation=chosen,
        stats=stats,
        certificate=po_weights(inst, chosen),
        graphs_examined=position + 1,
        objective_value=_objective_of_stats(stats, objective),
    )


def solve_two_agents_fast(inst: Instance, spec: FairnessSpec) -> SolveResult:
    """Two-agent, pure-good, non-degenerate fast path.

    Sorts goods by the ratio of the agents' values.  Every Pareto-optimal
    division is a cut of this order with at most one good split at the cut,
    so fairness is checked on the m+1 whole-good cuts and then, per cut good,
    on a one-variable system of fairness inequalities.
    """
    if inst.n != 2:
        raise FastPathError("fast path requires exactly two agents")
    if any(classify_object(inst, o) is not ObjectClass.PURE_GOOD for o in range(inst.m)):
        raise FastPathError("fast path requires all objects to be pure goods")
    if degeneracy(inst) != 0:
        raise FastPathError("fast path requires a non-degenerate instance")

    m = inst.m
    order = sorted(range(m), key=lambda o: inst.values[0][o] / inst.values[1][o], reverse=True)
    examined = 0

    for k in range(m + 1):
        owners = [0] * m
        for o in order[k:]:
            owners[o] = 1
        alloc = Allocation.from_owners(owners, 2)
        examined += 1
        if is_fair(inst, alloc, spec):
            return _fast_result(inst, alloc, examined)

    w = spec.resolved_weights(2)
    for cut in range(m):
        examined += 1
        split = order[cut]
        base0 = [Fraction(0)] * m
        base1 = [Fraction(0)] * m
        for o in order[:cut]:
            base0[o] = Fraction(1)
        for o in order[cut + 1 :]:
            base1[o] = Fraction(1)

        # utilities as linear functions a + b*x of agent 0's share x of the cut good
        def linear(agent: int, rows: list[Fraction], through_x: bool) -> tuple[Fraction, Fraction]:
            const = sum(
                (inst.values[agent][o] * rows[o] for o in range(m)), Fraction(0)
            )
            slope = inst.values[agent][split]
            return (const, slope) if through_x else (const + slope, -slope)

        own0 = linear(0, base0, True)
        other0 = linear(0, base1, False)
        own1 = linear(1, base1, False)
        other1 = linear(1, base0, True)

        if spec.kind is FairnessKind.PROPORTIONAL:
            conditions = [
                (own0[1], w[0] * inst.total_value(0) - own0[0]),
                (own1[1], w[1] * inst.total_value(1) - own1[0]),
            ]
        else:
            conditions = [
                (w[1] * own0[1] - w[0] * other0[1], w[0] * other0[0] - w[1] * own0[0]),
                (w[0] * own1[1] - w[1] * other1[1], w[1] * other1[0] - w[0] * own1[0]),
            ]
        lo, hi = Fraction(0), Fraction(1)
        feasible = True
        for slope, bound in conditions:  # slope * x >= bound
            if slope > 0:
                lo = max(lo, bound / slope)
            elif slope < 0:
                hi = min(hi, bound / slope)
            elif bound > 0:
                feasible = False
        if feasible and lo <= hi:
            x = (lo + hi) / 2
            shares0, shares1 = list(base0), list(base1)
            shares0[split] = x
            shares1[split] = 1 - x
            alloc = Allocation.from_rows([shares0, shares1])
            assert is_fair(inst, alloc, spec)
            return _fast_result(inst, alloc, examined)
    raise NoFairAllocationError("no fair division exists even with one sharing")


def _fast_result(inst: Instance, alloc: Allocation, examined: int) -> SolveResult:
    stats = sharing_stats(inst, alloc)
    return SolveResult(
        allocation=alloc,
        stats=stats,
        certificate=po_weights(inst, alloc),
        graphs_examined=examined,
        objective_value=stats.num_sharings,
    )


def solve_consensus(inst: Instance) -> Allocation:
    """Allocation every agent values as a perfect n-way split, sharing-bounded.

    Consensus means u_i(bundle_j) = V_i/n for all i, j.  The defining linear
    system (m full-allocation rows plus n(n-1) consensus rows; the n-th
    bundle's rows are implied) always contains the equal division, and a
    basic feasible solution of it has at most m + n(n-1) nonzero shares,
    hence at most n(n-1) sharings.
    """
    n, m = inst.n, inst.m
    num_vars = n * m
    rows = []
    for o in range(m):
        coeffs = [Fraction(0)] * num_vars
        for i in range(n):
            coeffs[i * m + o] = Fraction(1)
        rows.append(constraint(coeffs, Relation.EQ, 1))
    for i in range(n):
        share = inst.total_value(i) / n
        for j in range(n - 1):
            coeffs = [Fraction(0)] * num_vars
            for o in range(m):
                coeffs[j * m + o] = inst.values[i][o]
            rows.append(constraint(coeffs, Relation.EQ, share))

    point = basic_feasible_point(LinearProgram(num_vars, tuple(rows)))
    assert point is not None, "the equal division always satisfies the system"
    alloc = Allocation(
        tuple(tuple(point[i * m + o] for o in range(m)) for i in range(n))
    )
    for i in range(n):
        target = inst.total_value(i) / n
        assert all(bundle_value(inst, alloc, i, j) == target for j in range(n))
    assert sharing_stats(inst, alloc).num_sharings <= n * (n - 1)
    return alloc


@dataclass(frozen=True)
class AllocationReport:
    fair: bool
    fpo: bool
    nonmalicious: bool
    stats: SharingStats
    utilities: tuple[Fraction, ...]
    certificate: WeightCertificate | None
    violating_cycle: Cycle | None


def check_allocation(inst: Instance, alloc: Allocation, spec: FairnessSpec) -> AllocationReport:
    """Full diagnostic: fairness, Pareto optimality, sharing statistics.

    Pareto-optimal allocations come back with a weight certificate; dominated
    ones with an improving cycle (unless the defect is malicious consumption,
    which needs no cycle to witness it).
    """
    if alloc.n != inst.n or alloc.m != inst.m:
        raise ValueError("allocation dimensions do not match the instance")
    graph = ucg_of(alloc)
    fair = is_fair(inst, alloc, spec)
    nonmalicious = is_nonmalicious(inst, graph)
    fpo = is_fpo_graph(inst, graph)
    certificate = po_weights(inst, alloc) if fpo else None
    cycle = None
    if not fpo:
        cycle = find_violating_cycle(dcg_of(inst, graph))
    return AllocationReport(
        fair=fair,
        fpo=fpo,
        nonmalicious=nonmalicious,
        stats=sharing_stats(inst, alloc),
        utilities=utilities(inst, alloc),
        certificate=certificate,
        violating_cycle=cycle,
    )
