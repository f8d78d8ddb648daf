"""Enumeration of all consumption graphs of fractionally Pareto-optimal allocations.

Two-agent sets come from the threshold structure: sort same-sign objects by
the ratio of the agents' absolute values; every optimal support cuts the order
at some ratio, sends the high side to agent 1 for goods (agent 2 for bads),
the low side the other way, and splits objects exactly at the ratio freely.
Larger instances are built one agent at a time: every optimal support over
k+1 agents arises from one over k agents by letting the newcomer take part of
each incumbent's bundle in a two-agent-optimal way.  The composed candidates
include some non-optimal supports, so each is filtered through the graph test
before deduplication.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .core import Instance, degeneracy
from .graph import ConsumptionGraph, graph_sharings, is_fpo_graph

DEFAULT_DEGENERACY_BUDGET = 24


class DegeneracyBudgetError(RuntimeError):
    """Raised instead of attempting an enumeration that is exponentially large."""


@dataclass(frozen=True)
class FpoGraphSet:
    """Deduplicated, canonically sorted set of Pareto-optimal supports.

    `num_agents` may be smaller than the instance's agent count while the
    incremental construction is in flight; completed sets cover all agents.
    """

    instance: Instance
    num_agents: int
    graphs: tuple[ConsumptionGraph, ...]

    def __len__(self) -> int:
        return len(self.graphs)

    def __iter__(self) -> Iterator[ConsumptionGraph]:
        return iter(self.graphs)

    def __contains__(self, graph: ConsumptionGraph) -> bool:
        return graph in set(self.graphs)


def _prefix_instance(inst: Instance, k: int) -> Instance:
    if k == inst.n:
        return inst
    return Instance(inst.values[:k], inst.agent_labels[:k], inst.object_labels)


def _pair_assignments(
    inst: Instance, first: int, second: int, objects: Sequence[int]
) -> tuple[tuple[int, ...], ...]:
    """All Pareto-optimal supports when `first` and `second` divide `objects`.

    Returns bitmask tuples aligned with `objects`, using the agents' own bit
    positions so results compose directly into larger graphs.
    """
    bit1, bit2 = 1 << first, 1 << second
    positions = range(len(objects))
    base: list[int] = [0] * len(objects)
    zero_positions: list[int] = []
    groups: dict[Fraction, list[tuple[int, bool]]] = {}
    for pos, o in zip(positions, objects):
        v1, v2 = inst.values[first][o], inst.values[second][o]
        if v1 == 0 and v2 == 0:
            zero_positions.append(pos)
        elif v1 != 0 and v2 != 0 and (v1 > 0) == (v2 > 0):
            groups.setdefault(v1 / v2, []).append((pos, v1 > 0))
        else:
            # one-sided object: only the agent with the larger value may consume
            base[pos] = bit1 if v1 > v2 else bit2
    choices = (bit1, bit2, bit1 | bit2)
    out: set[tuple[int, ...]] = set()

    def emit(template: list[int], flexible: list[int]) -> None:
        for combo in itertools.product(choices, repeat=len(flexible)):
            candidate = list(template)
            for pos, bits in zip(flexible, combo):
                candidate[pos] = bits
            out.add(tuple(candidate))

    if not groups:
        emit(base, zero_positions)
    else:
        for threshold in groups:
            template = list(base)
            flexible = list(zero_positions)
            for ratio, members in groups.items():
                if ratio == threshold:
                    flexible.extend(pos for pos, _ in members)
                else:
                    high = ratio > threshold
                    for pos, is_good in members:
                        # goods above the cut go to agent 1, bads below do
                        template[pos] = bit1 if high == is_good else bit2
            emit(template, flexible)
    return tuple(sorted(out))


def enumerate_two_agents(
    inst: Instance, objects: Sequence[int] | None = None
) -> FpoGraphSet:
    """Every Pareto-optimal support of a two-agent instance.

    With `objects`, only that subset is divided: the result is the graph set
    of the column-restricted instance (this is the subproblem the incremental
    extension solves for each incumbent agent).
    """
    if inst.n != 2:
        raise ValueError("two-agent enumeration needs exactly two agents")
    if objects is not None:
        picked = tuple(objects)
        sub = Instance(
            tuple(tuple(row[o] for o in picked) for row in inst.values),
            inst.agent_labels,
            tuple(inst.object_labels[o] for o in picked),
        )
        return FpoGraphSet(sub, 2, _pair_assignments(sub, 0, 1, range(sub.m)))
    graphs = _pair_assignments(inst, 0, 1, range(inst.m))
    return FpoGraphSet(inst, 2, graphs)


def extend_with_agent(inst: Instance, graphs: FpoGraphSet) -> FpoGraphSet:
    """Lift a complete k-agent graph set to k+1 agents.

    For each base graph and each incumbent agent, the incumbent's objects are
    re-divided between them and the newcomer in every two-agent-optimal way;
    one choice per incumbent composes into a candidate support.  Partial
    compositions are deduplicated level by level, which collapses the cross
    product drastically on degenerate instances without losing any candidate.
    """
    k = graphs.num_agents
    if k >= inst.n:
        raise ValueError("no agent left to add")
    newcomer = k
    sub = _prefix_instance(inst, k + 1)
    m = inst.m
    pair_cache: dict[tuple[int, tuple[int, ...]], tuple[tuple[int, ...], ...]] = {}
    accepted: set[ConsumptionGraph] = set()
    rejected: set[ConsumptionGraph] = set()
    empty = (0,) * m
    for base in graphs:
        partials: set[tuple[int, ...]] = {empty}
        for agent in range(k):
            owned = tuple(o for o in range(m) if base[o] >> agent & 1)
            if not owned:
                continue
            key = (agent, owned)
            options = pair_cache.get(key)
            if options is None:
                options = _pair_assignments(inst, agent, newcomer, owned)
                pair_cache[key] = options
            merged: set[tuple[int, ...]] = set()
            for partial in partials:
                for option in options:
                    candidate = list(partial)
                    for pos, o in enumerate(owned):
                        candidate[o] |= option[pos]
                    merged.add(tuple(candidate))
            partials = merged
        for candidate in partials:
            if candidate in accepted or candidate in rejected:
                continue
            if is_fpo_graph(sub, candidate):
                accepted.add(candidate)
            else:
                rejected.add(candidate)
    return FpoGraphSet(inst, k + 1, tuple(sorted(accepted)))


def enumerate_fpo_graphs(
    inst: Instance,
    max_sharings: int | None = None,
    degeneracy_budget: int = DEFAULT_DEGENERACY_BUDGET,
) -> FpoGraphSet:
    """All Pareto-optimal supports of the instance.

    `max_sharings`, when given, discards larger graphs from the final result
    only; the intermediate agent-by-agent sets must stay complete because a
    small (k+1)-agent graph may only arise from a large k-agent one.

    Refuses instances whose degeneracy makes the enumeration blow up as
    3^(degeneracy * pairs); raise the budget explicitly to force the attempt.
    """
    deg = degeneracy(inst)
    pairs = inst.n * (inst.n - 1) // 2
    if deg * pairs > degeneracy_budget:
        raise DegeneracyBudgetError(
            f"degeneracy too high: degree {deg} over {pairs} agent pairs exceeds "
            f"budget {degeneracy_budget}"
        )
    current = enumerate_two_agents(_prefix_instance(inst, 2))
    while current.num_agents < inst.n:
        current = extend_with_agent(inst, current)
    graphs = current.graphs
    if max_sharings is not None:
        graphs = tuple(g for g in graphs if graph_sharings(g) <= max_sharings)
    return FpoGraphSet(inst, inst.n, graphs)


def graph_count_bound(inst: Instance) -> int:
    """Proven cardinality bound for the full Pareto-optimal graph set."""
    pairs = inst.n * (inst.n - 1) // 2
    return 3 ** ((1 + degeneracy(inst)) * pairs) * inst.m**pairs


def per_graph_sharing_bound(inst: Instance) -> int:
    """Sharing cap obeyed by every Pareto-optimal support of the instance."""
    pairs = inst.n * (inst.n - 1) // 2
    return (degeneracy(inst) + 1) * pairs
