import random
from fractions import Fraction

import pytest

from fairdiv import (
    Allocation,
    FairnessKind,
    FairnessSpec,
    Instance,
    ObjectClass,
    as_fraction,
    classify_object,
    degeneracy,
    is_fair,
    sharing_stats,
    utility,
)
from fairdiv.instances import gen_fixture, gen_random

from conftest import random_allocation


def test_as_fraction_exact_decimal():
    assert as_fraction("2.5") == Fraction(5, 2)
    assert as_fraction("7/3") == Fraction(7, 3)
    assert as_fraction(-4) == Fraction(-4)
    with pytest.raises(TypeError):
        as_fraction(0.5)


def test_classify_object():
    inst = Instance.from_values([[4, 0, -1, -2, 0], ["1.25", 0, 2, -3, -1]])
    assert classify_object(inst, 0) is ObjectClass.PURE_GOOD
    assert classify_object(inst, 1) is ObjectClass.NEUTRAL
    assert classify_object(inst, 2) is ObjectClass.GOOD
    assert classify_object(inst, 3) is ObjectClass.BAD
    assert classify_object(inst, 4) is ObjectClass.NEUTRAL
    with pytest.raises(IndexError):
        classify_object(inst, 5)


def test_utility_farm_house_car():
    inst, alloc = gen_fixture("fig1_left")
    assert utility(inst, alloc, 0) == Fraction(21, 4)
    assert utility(inst, alloc, 1) == 6
    equal = Allocation.equal_split(2, 3)
    assert utility(inst, equal, 0) == Fraction(15, 4)
    zeros = Instance.from_values([[0, 0, 0], [0, 0, 0]])
    assert utility(zeros, alloc, 0) == 0


def test_is_fair_basics():
    inst, alloc = gen_fixture("fig1_left")
    assert is_fair(inst, alloc, FairnessSpec(FairnessKind.ENVY_FREE))
    single = Instance.from_values([[1], [1]])
    grabbed = Allocation.from_owners([0], 2)
    assert not is_fair(single, grabbed, FairnessSpec(FairnessKind.ENVY_FREE))
    assert not is_fair(single, grabbed, FairnessSpec(FairnessKind.PROPORTIONAL))


def test_equal_split_is_proportional():
    for seed in range(25):
        inst = gen_random(2 + seed % 3, 1 + seed % 5, seed, -7, 7)
        equal = Allocation.equal_split(inst.n, inst.m)
        assert is_fair(inst, equal, FairnessSpec(FairnessKind.PROPORTIONAL))


def test_envy_free_implies_proportional():
    rng = random.Random(5)
    checked = 0
    for seed in range(120):
        inst = gen_random(2 + seed % 3, 1 + seed % 5, 400 + seed, -7, 7)
        alloc = random_allocation(inst, rng)
        if is_fair(inst, alloc, FairnessSpec(FairnessKind.ENVY_FREE)):
            checked += 1
            assert is_fair(inst, alloc, FairnessSpec(FairnessKind.PROPORTIONAL))
    assert checked > 0


def test_weighted_fairness():
    inst = Instance.from_values([[4, 4], [4, 4]])
    weights = (Fraction(3, 4), Fraction(1, 4))
    alloc = Allocation.from_rows([["3/4", "3/4"], ["1/4", "1/4"]])
    assert is_fair(inst, alloc, FairnessSpec(FairnessKind.PROPORTIONAL, weights))
    assert is_fair(inst, alloc, FairnessSpec(FairnessKind.ENVY_FREE, weights))
    flipped = Allocation.from_rows([["1/4", "1/4"], ["3/4", "3/4"]])
    assert not is_fair(inst, flipped, FairnessSpec(FairnessKind.PROPORTIONAL, weights))


def test_fairness_spec_validation():
    with pytest.raises(ValueError):
        FairnessSpec(FairnessKind.ENVY_FREE, (Fraction(1, 2), Fraction(-1, 2), Fraction(1)))
    with pytest.raises(ValueError):
        FairnessSpec(FairnessKind.ENVY_FREE, (Fraction(1, 2), Fraction(1, 4)))


def test_sharing_stats():
    inst, alloc = gen_fixture("fig1_left")
    stats = sharing_stats(inst, alloc)
    assert (stats.num_sharings, stats.num_shared_objects) == (1, 1)
    assert stats.shared_value == Fraction(9, 2)

    unit = Allocation.from_owners([0, 1, 0], 2)
    stats = sharing_stats(inst, unit)
    assert (stats.num_sharings, stats.num_shared_objects, stats.shared_value) == (0, 0, 0)

    n = 4
    one_split = Allocation.from_rows(
        [[Fraction(1, n), 1 if i == 0 else 0] for i in range(n)]
    )
    inst4 = Instance.from_values([[1, 1]] * n)
    stats = sharing_stats(inst4, one_split)
    assert stats.num_shared_objects == 1
    assert stats.num_sharings == n - 1


def test_sharing_bounds_on_random_allocations():
    rng = random.Random(9)
    for seed in range(40):
        inst = gen_random(2 + seed % 3, 1 + seed % 5, 700 + seed, -5, 5)
        alloc = random_allocation(inst, rng)
        stats = sharing_stats(inst, alloc)
        assert stats.num_shared_objects <= stats.num_sharings <= (inst.n - 1) * inst.m


def test_allocation_validation():
    with pytest.raises(ValueError):
        Allocation.from_rows([["1/2"], ["1/3"]])
    with pytest.raises(ValueError):
        Allocation.from_rows([["3/2"], ["-1/2"]])


def test_degeneracy_examples():
    inst, _ = gen_fixture("fig1_left")
    assert degeneracy(inst) == 0
    identical = Instance.from_values([[3, 5, 8], [3, 5, 8]])
    assert degeneracy(identical) == 2
    inst2 = Instance.from_values([[1, 2, 3], [2, 4, 5]])
    assert degeneracy(inst2) == 1
    zeros = Instance.from_values([[0, 0], [0, 0]])
    assert degeneracy(zeros) == 1


def _brute_degeneracy(inst: Instance) -> int:
    """Direct reading of the definition: max over pairs and multipliers r > 0."""
    best = 0
    for i in range(inst.n):
        for j in range(inst.n):
            if i == j:
                continue
            candidates = set()
            for o in range(inst.m):
                vi, vj = inst.values[i][o], inst.values[j][o]
                if vj != 0 and vi != 0 and vi / vj > 0:
                    candidates.add(vi / vj)
            for r in candidates or {Fraction(1)}:
                count = sum(
                    1 for o in range(inst.m) if inst.values[i][o] == r * inst.values[j][o]
                )
                best = max(best, count - 1)
    return best


def test_degeneracy_against_brute_force():
    for seed in range(60):
        inst = gen_random(2 + seed % 3, 1 + seed % 5, 900 + seed, -3, 3)
        assert degeneracy(inst) == _brute_degeneracy(inst)


def test_degeneracy_invariant_under_row_rescaling():
    rng = random.Random(3)
    for seed in range(20):
        inst = gen_random(2 + seed % 2, 1 + seed % 5, 1100 + seed, -4, 4)
        scale = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        agent = rng.randrange(inst.n)
        rows = [
            tuple(scale * v for v in row) if i == agent else row
            for i, row in enumerate(inst.values)
        ]
        rescaled = Instance(tuple(rows), inst.agent_labels, inst.object_labels)
        assert degeneracy(rescaled) == degeneracy(inst)
