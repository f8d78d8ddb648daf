"""Pareto-improvement machinery.

`eliminate_cycles` turns any allocation into one that weakly dominates it, is
fractionally Pareto-optimal, has an acyclic (undirected) consumption graph and
therefore at most n-1 sharings.  The engine is cyclic trading: a directed
cycle with multiplicative weight at most 1 can be executed as a sequence of
transfers that leaves every participant indifferent except the first, who
weakly gains; transfer sizes are pushed to the largest feasible scale, which
zeroes out at least one donor's share.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .core import (
    Allocation,
    Instance,
    ObjectClass,
    classify_object,
    mutable_shares,
    freeze_shares,
    utilities,
)
from .graph import dcg_of, find_violating_cycle

Shares = list[list[Fraction]]

TradePairs = tuple[tuple[int, int], ...]


def repair_malicious(inst: Instance, alloc: Allocation) -> Allocation:
    """Reallocate shares that violate non-maliciousness.

    Shares of a good held by agents valuing it at zero or less move to the
    lowest-index agent with positive value; shares of a neutral object held by
    negative valuers move to the lowest-index zero valuer.  Every agent's
    utility weakly increases.
    """
    shares = mutable_shares(alloc)
    _repair_in_place(inst, shares)
    return freeze_shares(shares)


def _repair_in_place(inst: Instance, shares: Shares) -> None:
    for o in range(inst.m):
        cls = classify_object(inst, o)
        if cls in (ObjectClass.PURE_GOOD, ObjectClass.GOOD):
            target = next(i for i in range(inst.n) if inst.values[i][o] > 0)
            movers = [i for i in range(inst.n) if inst.values[i][o] <= 0]
        elif cls is ObjectClass.NEUTRAL:
            target = next(i for i in range(inst.n) if inst.values[i][o] == 0)
            movers = [i for i in range(inst.n) if inst.values[i][o] < 0]
        else:
            continue
        for i in movers:
            if shares[i][o] > 0:
                shares[target][o] += shares[i][o]
                shares[i][o] = Fraction(0)


def _consolidate_neutrals(inst: Instance, shares: Shares) -> None:
    """Hand each shared neutral object entirely to one of its (zero-value) consumers.

    Utilities are unchanged.  Needed because a neutral object has no outgoing
    exchange edges, so undirected cycles through it cannot be removed by any
    cyclic trade.
    """
    for o in range(inst.m):
        if classify_object(inst, o) is not ObjectClass.NEUTRAL:
            continue
        consumers = [i for i in range(inst.n) if shares[i][o] > 0]
        if len(consumers) < 2:
            continue
        keeper = consumers[0]
        for i in consumers[1:]:
            shares[keeper][o] += shares[i][o]
            shares[i][o] = Fraction(0)


def _execute_trade(inst: Instance, shares: Shares, pairs: TradePairs) -> None:
    """Run the cyclic trade along pairs ((a_0,o_0), (a_1,o_1), ...).

    Agent a_k passes object o_k onward to a_{k+1}: a good moves from a_k to
    a_{k+1}; a bad moves the other way (a_k relieves a_{k+1} of it).  Transfer
    sizes keep every agent except a_0 exactly indifferent and are scaled to
    the largest value at which no donor overdraws, so at least one donated
    share lands exactly on zero.
    """
    length = len(pairs)
    donors: list[int] = []
    receivers: list[int] = []
    caps: list[Fraction] = []
    for k, (agent, obj) in enumerate(pairs):
        v = inst.values[agent][obj]
        assert v != 0, "zero-valued consumption cannot sit on a trading cycle"
        nxt = pairs[(k + 1) % length][0]
        if v > 0:
            donors.append(agent)
            receivers.append(nxt)
            caps.append(shares[agent][obj])
        else:
            donors.append(nxt)
            receivers.append(agent)
            caps.append(shares[nxt][obj])
    ratios = [Fraction(1)]
    for k in range(1, length):
        agent = pairs[k][0]
        prev_obj = pairs[k - 1][1]
        obj = pairs[k][1]
        ratios.append(
            ratios[-1] * abs(inst.values[agent][prev_obj]) / abs(inst.values[agent][obj])
        )
    scale = min(cap / ratio for cap, ratio in zip(caps, ratios))
    assert scale > 0, "every donor on the cycle must hold a positive share"
    for k, (agent, obj) in enumerate(pairs):
        amount = scale * ratios[k]
        shares[donors[k]][obj] -= amount
        shares[receivers[k]][obj] += amount
        assert 0 <= shares[donors[k]][obj] and shares[receivers[k]][obj] <= 1
    assert any(shares[donors[k]][pairs[k][1]] == 0 for k in range(length))


def _cycle_product(inst: Instance, pairs: TradePairs) -> Fraction:
    product = Fraction(1)
    length = len(pairs)
    for k, (agent, obj) in enumerate(pairs):
        nxt = pairs[(k + 1) % length][0]
        product *= abs(inst.values[agent][obj]) / abs(inst.values[nxt][obj])
    return product


def _undirected_cycle(inst: Instance, shares: Shares) -> TradePairs | None:
    """Find a cycle in the undirected consumption graph, as trade pairs.

    Nodes are agents and objects; an edge means a positive share.  The cycle
    is returned oriented so that its trade product is at most 1.
    """
    n, m = inst.n, inst.m
    adjacency: list[list[int]] = [[] for _ in range(n + m)]
    for o in range(m):
        for i in range(n):
            if shares[i][o] > 0:
                adjacency[i].append(n + o)
                adjacency[n + o].append(i)
    parent: dict[int, int | None] = {}
    for root in range(n + m):
        if root in parent:
            continue
        parent[root] = None
        stack = [(root, iter(adjacency[root]))]
        while stack:
            node, it = stack[-1]
            advanced = False
            for neigh in it:
                if neigh == parent[node]:
                    continue
                if neigh in parent:
                    return _orient(inst, _walk_cycle(parent, node, neigh))
                parent[neigh] = node
                stack.append((neigh, iter(adjacency[neigh])))
                advanced = True
                break
            if not advanced:
                stack.pop()
    return None


def _walk_cycle(parent: dict[int, int | None], node: int, ancestor: int) -> list[int]:
    path = [node]
    while path[-1] != ancestor:
        up = parent[path[-1]]
        assert up is not None
        path.append(up)
    return path


def _orient(inst: Instance, nodes: list[int]) -> TradePairs:
    n = inst.n
    if nodes[0] >= n:  # rotate to start at an agent
        nodes = nodes[1:] + nodes[:1]
    agents = nodes[0::2]
    objects = [x - n for x in nodes[1::2]]
    pairs = tuple(zip(agents, objects))
    if _cycle_product(inst, pairs) <= 1:
        return pairs
    reversed_nodes = nodes[:1] + nodes[1:][::-1]
    agents = reversed_nodes[0::2]
    objects = [x - n for x in reversed_nodes[1::2]]
    return tuple(zip(agents, objects))


def _graph_acyclic(graph: Sequence[int], n: int) -> bool:
    parent = list(range(n + len(graph)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for o, mask in enumerate(graph):
        for i in range(n):
            if mask >> i & 1:
                ra, rb = find(i), find(n + o)
                if ra == rb:
                    return False
                parent[ra] = rb
    return True


def eliminate_cycles(inst: Instance, alloc: Allocation) -> Allocation:
    """Weakly dominating, fractionally Pareto-optimal allocation with <= n-1 sharings.

    Repairs maliciousness, consolidates shared neutral objects, then trades
    away improving cycles (product < 1) and finally the remaining undirected
    cycles (which at that point trade at product exactly 1, leaving all
    utilities unchanged).  An acyclic consumption graph over n + m nodes has
    at most n + m - 1 edges, hence at most n - 1 sharings.
    """
    shares = mutable_shares(alloc)
    _repair_in_place(inst, shares)
    _consolidate_neutrals(inst, shares)

    # Improving-cycle phase.  Each trade zeroes a donated share, but a
    # receiver holding nothing may start consuming, so the edge count need
    # not drop monotonically; a generous budget plus a guaranteed fallback
    # keeps the whole operation total.
    budget = 20 * inst.n * inst.m + 100
    for _ in range(budget):
        cycle = find_violating_cycle(dcg_of(inst, _support(inst, shares)))
        if cycle is None:
            break
        _execute_trade(inst, shares, cycle.pairs())
    else:
        return _dominating_fpo_by_search(inst, freeze_shares(shares))

    # Undirected-cycle phase: every participant already consumes, so each
    # trade strictly removes an edge and never creates improving cycles.
    while True:
        pairs = _undirected_cycle(inst, shares)
        if pairs is None:
            break
        _execute_trade(inst, shares, pairs)

    return freeze_shares(shares)


def _support(inst: Instance, shares: Shares) -> tuple[int, ...]:
    masks = []
    for o in range(inst.m):
        mask = 0
        for i in range(inst.n):
            if shares[i][o] > 0:
                mask |= 1 << i
        masks.append(mask)
    return tuple(masks)


def _dominating_fpo_by_search(inst: Instance, alloc: Allocation) -> Allocation:
    """Fallback: search the enumerated Pareto-optimal supports directly.

    Scans acyclic supports with at most n-1 sharings for one admitting an
    allocation that weakly dominates `alloc`; such a support always exists.
    Only reachable if the trading loop above fails to settle within budget.
    """
    from .enumeration import enumerate_fpo_graphs
    from .lp import LinearProgram, Relation, constraint, feasible_point

    targets = utilities(inst, alloc)
    graphs = enumerate_fpo_graphs(inst, max_sharings=inst.n - 1)
    for graph in graphs:
        if not _graph_acyclic(graph, inst.n):
            continue
        variables = [(i, o) for o in range(inst.m) for i in range(inst.n) if graph[o] >> i & 1]
        index = {pair: pos for pos, pair in enumerate(variables)}
        rows = []
        for o in range(inst.m):
            coeffs = [Fraction(0)] * len(variables)
            for i in range(inst.n):
                if graph[o] >> i & 1:
                    coeffs[index[(i, o)]] = Fraction(1)
            rows.append(constraint(coeffs, Relation.EQ, 1))
        for i in range(inst.n):
            coeffs = [Fraction(0)] * len(variables)
            for (agent, o), pos in index.items():
                if agent == i:
                    coeffs[pos] = inst.values[i][o]
            rows.append(constraint(coeffs, Relation.GE, targets[i]))
        point = feasible_point(LinearProgram(len(variables), tuple(rows)))
        if point is None:
            continue
        shares = [[Fraction(0)] * inst.m for _ in range(inst.n)]
        for (i, o), pos in index.items():
            shares[i][o] = point[pos]
        return freeze_shares(shares)
    raise AssertionError("a dominating Pareto-optimal allocation always exists")


def prop_fpo_simple(inst: Instance) -> Allocation:
    """Proportional, fractionally Pareto-optimal allocation with <= n-1 sharings.

    Starts from the equal split (which is proportional by definition) and
    Pareto-improves it; improvements preserve proportionality.
    """
    return eliminate_cycles(inst, Allocation.equal_split(inst.n, inst.m))
