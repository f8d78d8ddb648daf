"""Consumption graphs and fractional Pareto-optimality checks.

The undirected consumption graph of an allocation records who consumes what;
it is encoded canonically as one agent bitmask per object.  Whether an
allocation is fractionally Pareto-optimal (fPO) depends only on this support:
an allocation is fPO iff it is non-malicious and its directed exchange graph
has no cycle whose multiplicative weight is below 1.

Directed exchange graph.  For every agent i and object o:

  * i consumes o, v[i][o] >= 0:  edge i -> o with weight v[i][o]
  * i consumes o, v[i][o] <  0:  edge o -> i with weight 1/|v[i][o]|
  * share of i smaller than 1, v[i][o] > 0:  edge o -> i with weight 1/v[i][o]
  * share of i smaller than 1, v[i][o] < 0:  edge i -> o with weight |v[i][o]|

A two-edge pass i -> o -> j is a unit of trade: either o is a good that i
hands to j, or o is a bad that i takes off j's hands.  Both readings need
v[i][o] and v[j][o] to have the same sign.  The edge list above also admits
mixed-sign passes (enter on the bad-acceptance edge of one agent, leave on the
good-receipt edge of another) which correspond to no feasible trade, and on
three or more agents such passes can close spurious low-product cycles around
allocations that are in fact optimal.  We therefore keep two internal nodes
per object, one for each sign, so that every path is forced to enter and
leave an object on same-sign edges.  The edge set is exactly the four-case
list; only the pairing through object nodes is constrained.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import Allocation, Instance, ObjectClass, classify_object

# Canonical encoding of an undirected consumption graph: one agent bitmask
# per object.  This is the identity used for hashing and deduplication.
ConsumptionGraph = tuple[int, ...]


def ucg_of(alloc: Allocation) -> ConsumptionGraph:
    """Support of an allocation: for each object, the bitmask of its consumers."""
    masks = []
    for o in range(alloc.m):
        mask = 0
        for i in range(alloc.n):
            if alloc.shares[i][o] > 0:
                mask |= 1 << i
        masks.append(mask)
    return tuple(masks)


def graph_consumers(graph: ConsumptionGraph, obj: int) -> tuple[int, ...]:
    mask = graph[obj]
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def graph_sharings(graph: ConsumptionGraph) -> int:
    return sum(mask.bit_count() - 1 for mask in graph)


def graph_shared_objects(graph: ConsumptionGraph) -> int:
    return sum(1 for mask in graph if mask.bit_count() >= 2)


def graph_shared_value(inst: Instance, graph: ConsumptionGraph) -> Fraction:
    total = Fraction(0)
    for o, mask in enumerate(graph):
        if mask.bit_count() >= 2:
            total += sum(abs(inst.values[i][o]) for i in graph_consumers(graph, o))
    return total


def validate_graph(inst: Instance, graph: ConsumptionGraph) -> None:
    if len(graph) != inst.m:
        raise ValueError("graph length does not match the object count")
    full = (1 << inst.n) - 1
    for o, mask in enumerate(graph):
        if mask == 0:
            raise ValueError(f"object {o} has no consumer")
        if mask & ~full:
            raise ValueError(f"object {o} has consumers outside the agent range")


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    weight: Fraction


@dataclass(frozen=True)
class DirectedConsumptionGraph:
    """Weighted directed exchange graph over agent and (sign-split) object nodes.

    Node ids: agent i is node i; object o has a good-side node n + 2*o and a
    bad-side node n + 2*o + 1.  Both sides render as the same object.
    """

    num_agents: int
    num_objects: int
    edges: tuple[Edge, ...]

    @property
    def num_nodes(self) -> int:
        return self.num_agents + 2 * self.num_objects

    def node_kind(self, node: int) -> tuple[str, int]:
        """("agent", i) or ("object", o) for display purposes."""
        if node < self.num_agents:
            return ("agent", node)
        return ("object", (node - self.num_agents) // 2)


def dcg_of(inst: Instance, graph: ConsumptionGraph) -> DirectedConsumptionGraph:
    """Directed exchange graph of a support (and hence of any allocation with it).

    The share-below-1 condition at graph level reads: the object is shared, or
    the agent does not consume it at all.
    """
    validate_graph(inst, graph)
    n = inst.n
    edges: list[Edge] = []
    for o, mask in enumerate(graph):
        good_node = n + 2 * o
        bad_node = n + 2 * o + 1
        shared = mask.bit_count() >= 2
        for i in range(n):
            v = inst.values[i][o]
            consuming = bool(mask >> i & 1)
            fractional = shared or not consuming
            if consuming:
                if v >= 0:
                    edges.append(Edge(i, good_node, v))
                else:
                    edges.append(Edge(bad_node, i, 1 / -v))
            if fractional:
                if v > 0:
                    edges.append(Edge(good_node, i, 1 / v))
                elif v < 0:
                    edges.append(Edge(i, bad_node, -v))
    edges.sort(key=lambda e: (e.src, e.dst))
    return DirectedConsumptionGraph(n, inst.m, tuple(edges))


@dataclass(frozen=True)
class Cycle:
    """A directed cycle, alternating agent and object nodes, with its exact product."""

    steps: tuple[tuple[str, int], ...]
    product: Fraction

    def pairs(self) -> tuple[tuple[int, int], ...]:
        """(agent, object) pairs in trade order: steps[2k] hands steps[2k+1] onward."""
        agents = [idx for kind, idx in self.steps if kind == "agent"]
        objects = [idx for kind, idx in self.steps if kind == "object"]
        return tuple(zip(agents, objects))

    def describe(self, inst: Instance) -> str:
        names = []
        for kind, idx in self.steps:
            names.append(inst.agent_labels[idx] if kind == "agent" else inst.object_labels[idx])
        return " -> ".join(names + [names[0]]) + f"  (product {self.product})"


def find_violating_cycle(dcg: DirectedConsumptionGraph) -> Cycle | None:
    """Find a directed cycle with multiplicative weight < 1, if one exists.

    Multiplicative Bellman-Ford with a virtual source: every node starts at
    distance 1 and edges relax under exact min-product comparison.  If any
    relaxation still succeeds after num_nodes rounds, the predecessor chain
    contains a product-below-1 cycle, which is extracted by walking it.
    Zero-weight edges (an agent consuming an object it values at zero) lead
    into dead-end nodes on non-malicious supports and cannot close a cycle.
    """
    size = dcg.num_nodes
    dist: list[Fraction] = [Fraction(1)] * size
    pred: list[Edge | None] = [None] * size

    last_relaxed = -1
    for _ in range(size + 1):
        changed = False
        for edge in dcg.edges:
            candidate = dist[edge.src] * edge.weight
            if candidate < dist[edge.dst]:
                dist[edge.dst] = candidate
                pred[edge.dst] = edge
                last_relaxed = edge.dst
                changed = True
        if not changed:
            return None

    # Walk predecessors to land inside the cycle, then collect it.
    node = last_relaxed
    for _ in range(size):
        edge = pred[node]
        assert edge is not None
        node = edge.src
    cycle_nodes = [node]
    edges_back: list[Edge] = []
    current = node
    while True:
        edge = pred[current]
        assert edge is not None
        edges_back.append(edge)
        current = edge.src
        if current == node:
            break
        cycle_nodes.append(current)

    cycle_nodes.reverse()  # forward traversal order
    product = Fraction(1)
    for edge in edges_back:
        product *= edge.weight
    assert product < 1, "extracted cycle must have product below 1"

    steps = tuple(dcg.node_kind(v) for v in cycle_nodes)
    # Rotate so the cycle starts at its smallest agent node, for determinism.
    agent_positions = [k for k, (kind, _) in enumerate(steps) if kind == "agent"]
    start = min(agent_positions, key=lambda k: steps[k][1])
    steps = steps[start:] + steps[:start]
    return Cycle(steps, product)


def is_nonmalicious(inst: Instance, graph: ConsumptionGraph) -> bool:
    """Goods only go to agents valuing them positively; neutral objects to zero-valuers."""
    validate_graph(inst, graph)
    for o in range(inst.m):
        cls = classify_object(inst, o)
        if cls in (ObjectClass.PURE_GOOD, ObjectClass.GOOD):
            if any(inst.values[i][o] <= 0 for i in graph_consumers(graph, o)):
                return False
        elif cls is ObjectClass.NEUTRAL:
            if any(inst.values[i][o] != 0 for i in graph_consumers(graph, o)):
                return False
    return True


def _no_improving_exchange(inst: Instance, graph: ConsumptionGraph) -> bool:
    """Cycle test collapsed onto agent nodes; requires a non-malicious support.

    Consumption of o by i constrains every candidate weight vector: w_i*v[i][o]
    must be maximal among agents.  Same-sign pairs turn into multiplicative
    difference constraints w_dst <= w_src * factor; the system is solvable with
    positive weights iff no directed cycle has a factor product below 1, which
    is the same test as the object-node graph but over n nodes.
    """
    n, m = inst.n, inst.m
    best: dict[tuple[int, int], Fraction] = {}
    for o in range(m):
        mask = graph[o]
        for i in range(n):
            if not mask >> i & 1:
                continue
            vio = inst.values[i][o]
            if vio == 0:
                continue
            for j in range(n):
                if j == i:
                    continue
                vjo = inst.values[j][o]
                if vio > 0:
                    if vjo <= 0:
                        continue
                    key, factor = (i, j), vio / vjo
                else:
                    # o is a bad on a non-malicious support, so vjo < 0 too.
                    key, factor = (j, i), vjo / vio
                if key not in best or factor < best[key]:
                    best[key] = factor
    dist = {i: Fraction(1) for i in range(n)}
    items = sorted(best.items())
    for _ in range(n + 1):
        changed = False
        for (src, dst), factor in items:
            candidate = dist[src] * factor
            if candidate < dist[dst]:
                dist[dst] = candidate
                changed = True
        if not changed:
            return True
    return False


def is_fpo_graph(inst: Instance, graph: ConsumptionGraph) -> bool:
    """Whether allocations with this support are fractionally Pareto-optimal.

    The support decides: any positive shares over the same consumer sets give
    the same exchange graph.  Equivalent to `is_nonmalicious` plus
    `find_violating_cycle(dcg_of(...)) is None`; uses the agent-collapsed
    test because enumeration calls this in a tight loop.
    """
    return is_nonmalicious(inst, graph) and _no_improving_exchange(inst, graph)


def is_fpo(inst: Instance, alloc: Allocation) -> bool:
    """Whether the allocation is fractionally Pareto-optimal."""
    return is_fpo_graph(inst, ucg_of(alloc))


class NotParetoOptimalError(ValueError):
    """Raised when a weight certificate is requested for a dominated allocation."""


@dataclass(frozen=True)
class WeightCertificate:
    """Positive agent weights under which consumers maximize weight * value.

    Existence of such a vector is equivalent to fractional Pareto optimality:
    the allocation maximizes the weighted utilitarian welfare, and any Pareto
    improvement would have to raise it.
    """

    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if any(w <= 0 for w in self.weights):
            raise ValueError("certificate weights must be strictly positive")


def certificate_valid(inst: Instance, alloc: Allocation, cert: WeightCertificate) -> bool:
    """Check the defining inequality on every consumed pair."""
    if len(cert.weights) != inst.n:
        return False
    lam = cert.weights
    for o in range(inst.m):
        for i in range(inst.n):
            if alloc.shares[i][o] <= 0:
                continue
            top = lam[i] * inst.values[i][o]
            if any(lam[j] * inst.values[j][o] > top for j in range(inst.n)):
                return False
    return True


def po_weights(inst: Instance, alloc: Allocation) -> WeightCertificate:
    """Compute a weight certificate for a fractionally Pareto-optimal allocation.

    Adds agent-to-agent edges of one large weight to the exchange graph (large
    enough that no cycle through them can dip below product 1), then takes
    exact min-product path values from agent 0 to every other agent.  Those
    path products are valid weights; the first agent gets weight 1.
    """
    graph = ucg_of(alloc)
    if not is_nonmalicious(inst, graph):
        raise NotParetoOptimalError("allocation is malicious, hence not Pareto-optimal")
    dcg = dcg_of(inst, graph)

    big = Fraction(1)
    for row in inst.values:
        for v in row:
            if v != 0:
                big = max(big, abs(v), 1 / abs(v))
    big = big ** (2 * (inst.n - 1))

    edges = list(dcg.edges)
    for i in range(inst.n):
        for j in range(inst.n):
            if i != j:
                edges.append(Edge(i, j, big))
    edges.sort(key=lambda e: (e.src, e.dst))

    size = dcg.num_nodes
    dist: list[Fraction | None] = [None] * size
    dist[0] = Fraction(1)
    for _ in range(size + 1):
        changed = False
        for edge in edges:
            base = dist[edge.src]
            if base is None:
                continue
            candidate = base * edge.weight
            old = dist[edge.dst]
            if old is None or candidate < old:
                dist[edge.dst] = candidate
                changed = True
        if not changed:
            break
    else:
        raise NotParetoOptimalError("exchange graph has an improving cycle; allocation is not fPO")

    weights = []
    for i in range(inst.n):
        d = dist[i]
        assert d is not None and d > 0
        weights.append(d)
    cert = WeightCertificate(tuple(weights))
    if not certificate_valid(inst, alloc, cert):
        raise NotParetoOptimalError("no valid weight vector exists; allocation is not fPO")
    return cert
