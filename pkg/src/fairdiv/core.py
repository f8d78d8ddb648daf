"""Core data model: instances, allocations, fairness predicates, sharing statistics.

All numeric values are exact rationals (`fractions.Fraction`).  Nothing in the
solver path ever touches floating point: feasibility of an allocation, Pareto
optimality and the degree of degeneracy all hinge on exact equality tests, and
a float round-off would silently flip them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

RationalLike = Fraction | int | str


def as_fraction(value: RationalLike) -> Fraction:
    """Convert an exact value to a Fraction.

    Accepts integers, Fractions and strings ("3", "-2.5", "7/3").  Decimal
    strings convert exactly ("2.5" -> 5/2).  Floats are rejected: they carry
    binary round-off and would break the exactness contract.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not valid values")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__} ({value!r})")


def format_fraction(x: Fraction) -> str:
    """Render a Fraction as "p/q" (or "p" when the denominator is 1)."""
    return str(x)


class ObjectClass(enum.Enum):
    """Sign-pattern classification of an object's column in the valuation matrix."""

    PURE_GOOD = "pure_good"  # positive for every agent
    GOOD = "good"            # positive for at least one agent, but not all
    BAD = "bad"              # negative for every agent
    NEUTRAL = "neutral"      # no positive value, at least one zero


class FairnessKind(enum.Enum):
    ENVY_FREE = "ef"
    PROPORTIONAL = "prop"


class Objective(enum.Enum):
    """What the solver minimizes over fair, fractionally Pareto-optimal allocations."""

    SHARINGS = "sharings"
    SHARED_OBJECTS = "shared-objects"
    SHARED_VALUE = "shared-value"
    ANY_FEASIBLE = "feasible"


@dataclass(frozen=True)
class Instance:
    """A fair-division instance: one valuation row per agent, one column per object.

    Values may have mixed signs; the same object can be a good for one agent
    and a bad for another.
    """

    values: tuple[tuple[Fraction, ...], ...]
    agent_labels: tuple[str, ...]
    object_labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.values) < 2:
            raise ValueError("an instance needs at least two agents")
        m = len(self.values[0])
        if m < 1:
            raise ValueError("an instance needs at least one object")
        if any(len(row) != m for row in self.values):
            raise ValueError("valuation rows have unequal lengths")
        if len(self.agent_labels) != len(self.values):
            raise ValueError("agent label count does not match the matrix")
        if len(self.object_labels) != m:
            raise ValueError("object label count does not match the matrix")

    @staticmethod
    def from_values(
        rows: Sequence[Sequence[RationalLike]],
        agent_labels: Sequence[str] | None = None,
        object_labels: Sequence[str] | None = None,
    ) -> "Instance":
        values = tuple(tuple(as_fraction(x) for x in row) for row in rows)
        n = len(values)
        m = len(values[0]) if values else 0
        agents = tuple(agent_labels) if agent_labels else tuple(f"agent{i + 1}" for i in range(n))
        objects = tuple(object_labels) if object_labels else tuple(f"object{o + 1}" for o in range(m))
        return Instance(values, agents, objects)

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def m(self) -> int:
        return len(self.values[0])

    def value(self, agent: int, obj: int) -> Fraction:
        return self.values[agent][obj]

    def total_value(self, agent: int) -> Fraction:
        """Value the agent assigns to the whole set of objects."""
        return sum(self.values[agent], Fraction(0))


@dataclass(frozen=True)
class Allocation:
    """A fractional allocation: shares[i][o] is agent i's share of object o.

    Every share lies in [0, 1] and every object column sums to exactly 1.
    Violations raise at construction, so any Allocation in flight is feasible.
    """

    shares: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if not self.shares or not self.shares[0]:
            raise ValueError("empty allocation")
        m = len(self.shares[0])
        if any(len(row) != m for row in self.shares):
            raise ValueError("allocation rows have unequal lengths")
        one = Fraction(1)
        zero = Fraction(0)
        for row in self.shares:
            for x in row:
                if x < zero or x > one:
                    raise ValueError(f"share {x} outside [0, 1]")
        for o in range(m):
            total = sum(row[o] for row in self.shares)
            if total != one:
                raise ValueError(f"column {o} sums to {total}, expected 1")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[RationalLike]]) -> "Allocation":
        return Allocation(tuple(tuple(as_fraction(x) for x in row) for row in rows))

    @staticmethod
    def equal_split(n: int, m: int) -> "Allocation":
        share = Fraction(1, n)
        return Allocation(tuple(tuple(share for _ in range(m)) for _ in range(n)))

    @staticmethod
    def from_owners(owners: Sequence[int], n: int) -> "Allocation":
        """Indivisible allocation: object o goes entirely to agent owners[o]."""
        rows = [[Fraction(0)] * len(owners) for _ in range(n)]
        for o, i in enumerate(owners):
            rows[i][o] = Fraction(1)
        return Allocation(tuple(tuple(row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.shares)

    @property
    def m(self) -> int:
        return len(self.shares[0])


@dataclass(frozen=True)
class FairnessSpec:
    """Which fairness constraint the solver enforces.

    `weights` are entitlements: positive rationals summing to 1, one per agent.
    When omitted, every agent is entitled to 1/n.  Envy-freeness with weights
    compares utility per entitlement unit; proportionality guarantees agent i
    at least weights[i] of their total value.
    """

    kind: FairnessKind
    weights: tuple[Fraction, ...] | None = None

    def __post_init__(self) -> None:
        if self.weights is not None:
            if any(w <= 0 for w in self.weights):
                raise ValueError("entitlement weights must be strictly positive")
            if sum(self.weights) != 1:
                raise ValueError("entitlement weights must sum to 1")

    def resolved_weights(self, n: int) -> tuple[Fraction, ...]:
        if self.weights is None:
            return tuple(Fraction(1, n) for _ in range(n))
        if len(self.weights) != n:
            raise ValueError("weight vector length does not match the agent count")
        return self.weights

    @property
    def is_weighted(self) -> bool:
        return self.weights is not None


@dataclass(frozen=True)
class SharingStats:
    """How much an allocation shares.

    num_sharings counts, over all objects, the number of consumers beyond the
    first.  num_shared_objects counts objects with two or more consumers.
    shared_value adds |v[i][o]| over every fractional share of a shared object.
    """

    num_sharings: int
    num_shared_objects: int
    shared_value: Fraction


def classify_object(inst: Instance, obj: int) -> ObjectClass:
    """Classify one object by the signs of its column."""
    column = [inst.values[i][obj] for i in range(inst.n)]
    positives = sum(1 for v in column if v > 0)
    if positives == inst.n:
        return ObjectClass.PURE_GOOD
    if positives > 0:
        return ObjectClass.GOOD
    if all(v < 0 for v in column):
        return ObjectClass.BAD
    return ObjectClass.NEUTRAL


def utility(inst: Instance, alloc: Allocation, agent: int) -> Fraction:
    """Exact additive utility of `agent` for their own bundle."""
    return sum(
        (inst.values[agent][o] * alloc.shares[agent][o] for o in range(inst.m)),
        Fraction(0),
    )


def bundle_value(inst: Instance, alloc: Allocation, agent: int, bundle_of: int) -> Fraction:
    """Value agent `agent` assigns to the bundle held by `bundle_of`."""
    return sum(
        (inst.values[agent][o] * alloc.shares[bundle_of][o] for o in range(inst.m)),
        Fraction(0),
    )


def utilities(inst: Instance, alloc: Allocation) -> tuple[Fraction, ...]:
    return tuple(utility(inst, alloc, i) for i in range(inst.n))


def is_fair(inst: Instance, alloc: Allocation, spec: FairnessSpec) -> bool:
    """Exact fairness test.

    Envy-free: u_i(own)/w_i >= u_i(other)/w_j for every ordered pair; with
    equal weights this is plain envy-freeness.  Proportional: u_i(own) >=
    w_i * (total value of agent i).
    """
    if alloc.n != inst.n or alloc.m != inst.m:
        raise ValueError("allocation dimensions do not match the instance")
    w = spec.resolved_weights(inst.n)
    if spec.kind is FairnessKind.PROPORTIONAL:
        return all(utility(inst, alloc, i) >= w[i] * inst.total_value(i) for i in range(inst.n))
    for i in range(inst.n):
        own = utility(inst, alloc, i)
        for j in range(inst.n):
            if i == j:
                continue
            if own * w[j] < bundle_value(inst, alloc, i, j) * w[i]:
                return False
    return True


def sharing_stats(inst: Instance, alloc: Allocation) -> SharingStats:
    """Count sharings, shared objects, and the total value tied up in sharing."""
    sharings = 0
    shared_objects = 0
    shared_value = Fraction(0)
    for o in range(inst.m):
        consumers = [i for i in range(inst.n) if alloc.shares[i][o] > 0]
        sharings += len(consumers) - 1
        if len(consumers) >= 2:
            shared_objects += 1
            shared_value += sum(abs(inst.values[i][o]) for i in consumers)
    return SharingStats(sharings, shared_objects, shared_value)


def degeneracy(inst: Instance) -> int:
    """Degree of degeneracy of the valuation matrix.

    For each agent pair, objects fall into exact-proportionality classes: the
    largest set of objects on which the two agents' values are an exact
    positive multiple of each other, minus one.  Objects valued zero by both
    agents satisfy the proportionality for every multiplier, so they join
    every class.  Opposite-sign and single-zero objects never qualify.  The
    result is 0 for generic ("non-degenerate") matrices and m-1 when two
    agents value everything identically.
    """
    best = 0
    for i in range(inst.n):
        for j in range(i + 1, inst.n):
            both_zero = 0
            groups: dict[Fraction, int] = {}
            for o in range(inst.m):
                vi, vj = inst.values[i][o], inst.values[j][o]
                if vi == 0 and vj == 0:
                    both_zero += 1
                elif vi != 0 and vj != 0 and (vi > 0) == (vj > 0):
                    ratio = vi / vj
                    groups[ratio] = groups.get(ratio, 0) + 1
            largest = max(groups.values(), default=0)
            best = max(best, largest + both_zero)
    return max(best - 1, 0)


def parse_weights(text: str) -> tuple[Fraction, ...]:
    """Parse a comma-separated entitlement vector like "1/2,1/4,1/4"."""
    return tuple(as_fraction(part.strip()) for part in text.split(","))


def column_consumers(alloc: Allocation, obj: int) -> tuple[int, ...]:
    return tuple(i for i in range(alloc.n) if alloc.shares[i][obj] > 0)


def mutable_shares(alloc: Allocation) -> list[list[Fraction]]:
    """Copy an allocation into nested lists for in-place editing."""
    return [list(row) for row in alloc.shares]


def freeze_shares(rows: Iterable[Iterable[Fraction]]) -> Allocation:
    return Allocation(tuple(tuple(row) for row in rows))
