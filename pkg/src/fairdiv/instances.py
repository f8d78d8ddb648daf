"""Instance generators: worst-case families, fixtures, and random instances.

The reduction families double as functional test fixtures: whether a
zero-sharing fair division of them exists is tied to equal-sum partition
structure, which the test suite exercises against the brute-force oracle.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .core import Allocation, Instance, degeneracy


def gen_identical_partition(a: Sequence[int]) -> Instance:
    """Two agents valuing m pure goods identically at a_1..a_m."""
    if not a:
        raise ValueError("need at least one value")
    if any(x <= 0 for x in a):
        raise ValueError("values must be positive integers")
    row = tuple(Fraction(x) for x in a)
    return Instance.from_values([row, row], agent_labels=("Alice", "Bob"))


def gen_perturbed_partition(a: Sequence[int]) -> Instance:
    """Two agents with almost-identical values on pure goods.

    Bob's value of good o is a_o plus the perturbation o/(3m(o+1)) (1-based o).
    The perturbations total less than 1/2 and are chosen to break every value
    ratio tie; an equal-sum partition of `a` exists iff the instance has a
    zero-sharing envy-free division.
    """
    if not a:
        raise ValueError("need at least one value")
    if any(x <= 0 for x in a):
        raise ValueError("values must be positive integers")
    m = len(a)
    alice = tuple(Fraction(x) for x in a)
    bumps = [Fraction(o, 3 * m * (o + 1)) for o in range(1, m + 1)]
    bob = tuple(x + b for x, b in zip(alice, bumps))
    if sum(bumps) >= Fraction(1, 2):
        raise AssertionError("perturbations must stay below 1/2 in total")
    inst = Instance.from_values([alice, bob], agent_labels=("Alice", "Bob"))
    if degeneracy(inst) != 0:
        raise ValueError(f"values {a!r} collide with the perturbation schedule; instance degenerate")
    return inst


def gen_degeneracy_family(a: Sequence[int], m: int) -> Instance:
    """Two agents, |a| identically-valued big goods, plus mirrored small-good pairs.

    Pair k consists of two goods valued (k+1)/(4mk) and 1/(4mk), mirrored
    between the agents.  The degree of degeneracy is exactly |a|-1, the small
    goods total below 1/2 per agent, and a zero-sharing fair Pareto-optimal
    division exists iff `a` splits into two equal-sum halves.
    """
    if not a:
        raise ValueError("need at least one big value")
    if m < len(a) or (m - len(a)) % 2 != 0:
        raise ValueError("object count must leave an even number of small goods")
    pairs = (m - len(a)) // 2
    row1 = [Fraction(x) for x in a]
    row2 = [Fraction(x) for x in a]
    small_total = Fraction(0)
    for k in range(1, pairs + 1):
        high = Fraction(k + 1, 4 * m * k)
        low = Fraction(1, 4 * m * k)
        row1 += [high, low]
        row2 += [low, high]
        small_total += high + low
    assert small_total < Fraction(1, 2)
    inst = Instance.from_values([row1, row2], agent_labels=("Alice", "Bob"))
    assert degeneracy(inst) == len(a) - 1
    return inst


def gen_consensus_tightness(n: int) -> Instance:
    """n agents and n(n-1) pure goods on which every consensus division shares everything.

    Agent i's n-1 "big" goods are worth n - 1/2 each to i; every other good is
    worth (1/2)/(n-1).  Big-good sets are pairwise disjoint and each row sums
    to n(n-1), so a consensus bundle must be worth exactly n-1 to everyone,
    less than any single big good.
    """
    if n < 2:
        raise ValueError("need at least two agents")
    m = n * (n - 1)
    big = Fraction(2 * n - 1, 2)
    small = Fraction(1, 2 * (n - 1))
    rows = []
    for i in range(n):
        start, stop = i * (n - 1), (i + 1) * (n - 1)
        row = tuple(big if start <= o < stop else small for o in range(m))
        rows.append(row)
    inst = Instance.from_values(rows)
    assert all(inst.total_value(i) == n * (n - 1) for i in range(n))
    return inst


def gen_identical_goods(n: int) -> Instance:
    """n agents, n-1 unit-valued goods: every fair division shares all of them."""
    if n < 2:
        raise ValueError("need at least two agents")
    row = tuple(Fraction(1) for _ in range(n - 1))
    return Instance.from_values([row] * n)


_FIG1_LABELS = (("Alice", "Bob"), ("farm", "house", "car"))


def gen_fixture(name: str, n: int | None = None) -> tuple[Instance, Allocation | None]:
    """Named worked examples used in docs and tests.

    "fig1_left" / "fig1_right": the two-agent farm/house/car instance with the
    allocation (Alice: farm + half house, Bob: car + half house); the right
    variant raises Alice's house value from 2.5 to 25, which makes that
    allocation dominated.  "identical_goods" takes the agent count n.
    """
    agents, objects = _FIG1_LABELS
    if name == "fig1_left":
        inst = Instance.from_values(
            [("4", "2.5", "1"), ("1.25", "2", "5")], agents, objects
        )
        return inst, _fig1_allocation()
    if name == "fig1_right":
        inst = Instance.from_values(
            [("4", "25", "1"), ("1.25", "2", "5")], agents, objects
        )
        return inst, _fig1_allocation()
    if name == "identical_goods":
        if n is None:
            raise ValueError("identical_goods needs the agent count")
        return gen_identical_goods(n), None
    raise ValueError(f"unknown fixture {name!r}")


def _fig1_allocation() -> Allocation:
    return Allocation.from_rows([("1", "0.5", "0"), ("0", "0.5", "1")])


def gen_random(
    n: int,
    m: int,
    seed: int,
    low: int = -9,
    high: int = 9,
) -> Instance:
    """Reproducible random instance with integer values drawn uniformly from [low, high].

    Uses Python's Mersenne Twister (`random.Random(seed)`), so the same seed
    yields the same instance on every platform.  A signed range produces a mix
    of goods, bads, impure goods and occasional neutral objects.
    """
    if n < 2 or m < 1:
        raise ValueError("need at least two agents and one object")
    if low > high:
        raise ValueError("empty value range")
    rng = random.Random(seed)
    rows = tuple(
        tuple(Fraction(rng.randint(low, high)) for _ in range(m)) for _ in range(n)
    )
    return Instance.from_values(rows)
