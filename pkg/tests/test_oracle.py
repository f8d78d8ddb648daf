import itertools

import pytest

from fairdiv import (
    Allocation,
    FairnessKind,
    FairnessSpec,
    Instance,
    Objective,
    brute_fpo_graphs,
    brute_min_objective,
    domination_check,
    eliminate_cycles,
    is_fpo_graph,
    BudgetExceededError,
)
from fairdiv.instances import gen_fixture, gen_identical_goods, gen_identical_partition, gen_random

EF = FairnessSpec(FairnessKind.ENVY_FREE)
PROP = FairnessSpec(FairnessKind.PROPORTIONAL)


def test_brute_counts():
    inst, _ = gen_fixture("fig1_left")
    assert len(brute_fpo_graphs(inst)) == 7
    tiny = Instance.from_values([[1], [2]])
    assert len(brute_fpo_graphs(tiny)) == 3
    identical3 = Instance.from_values([[2, 3]] * 3)
    assert len(brute_fpo_graphs(identical3)) == 49


def test_pruned_iteration_equals_naive_filter():
    for seed in range(12):
        inst = gen_random(2 + seed % 2, 1 + seed % 3, 8500 + seed, -4, 4)
        naive = {
            graph
            for graph in itertools.product(range(1, 2**inst.n), repeat=inst.m)
            if is_fpo_graph(inst, graph)
        }
        assert set(brute_fpo_graphs(inst)) == naive


def test_brute_min_objective_partition_instances():
    assert brute_min_objective(gen_identical_partition([3, 5, 8]), EF, Objective.SHARINGS) == 0
    assert brute_min_objective(gen_identical_partition([3, 5, 9]), EF, Objective.SHARINGS) == 1
    assert brute_min_objective(gen_identical_goods(3), PROP, Objective.SHARINGS) == 2


def test_domination_check_on_figures():
    inst, alloc = gen_fixture("fig1_left")
    assert domination_check(inst, alloc)
    inst_r, alloc_r = gen_fixture("fig1_right")
    assert not domination_check(inst_r, alloc_r)


def test_domination_check_accepts_improved_allocations():
    for seed in range(15):
        inst = gen_random(2 + seed % 3, 1 + seed % 4, 8600 + seed, -5, 5)
        out = eliminate_cycles(inst, Allocation.equal_split(inst.n, inst.m))
        assert domination_check(inst, out)


def test_budget_refusal(monkeypatch):
    big = gen_random(4, 12, 1, 1, 9)
    with pytest.raises(BudgetExceededError):
        brute_fpo_graphs(big)
    monkeypatch.setenv("FAIRDIV_BUDGET", "100")
    small = gen_random(2, 5, 2, 1, 9)  # 3^5 = 243 supports > 100
    with pytest.raises(BudgetExceededError):
        brute_fpo_graphs(small)
    monkeypatch.setenv("FAIRDIV_BUDGET", "1000")
    assert len(brute_fpo_graphs(small)) > 0
