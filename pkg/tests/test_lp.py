import random
from fractions import Fraction

import pytest

from fairdiv.lp import (
    LinearProgram,
    Relation,
    UnboundedError,
    basic_feasible_point,
    constraint,
    feasible_point,
    maximize,
)


def lp(num_vars, rows, nonneg=None):
    return LinearProgram(num_vars, tuple(constraint(*row) for row in rows), nonneg)


def test_forced_value():
    program = lp(1, [([1], Relation.LE, 1), ([2], Relation.EQ, 1)])
    assert feasible_point(program) == (Fraction(1, 2),)


def test_infeasible():
    program = lp(1, [([1], Relation.LE, -1)])
    assert feasible_point(program) is None
    assert basic_feasible_point(program) is None


def test_basic_point_is_a_vertex():
    program = lp(2, [([1, 1], Relation.EQ, 1)])
    point = basic_feasible_point(program)
    assert point in ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))


def test_basic_point_nonzero_bound():
    rng = random.Random(2)
    for _ in range(30):
        num_vars = rng.randint(2, 6)
        rows = []
        for _ in range(rng.randint(1, 4)):
            coeffs = [Fraction(rng.randint(0, 4)) for _ in range(num_vars)]
            rows.append((coeffs, Relation.EQ, sum(coeffs) * Fraction(1, 2)))
        program = lp(num_vars, rows)
        point = basic_feasible_point(program)
        if point is not None:
            assert sum(1 for x in point if x != 0) <= len(rows)
            assert program.check(point)


def test_feasible_and_basic_agree_on_feasibility():
    rng = random.Random(4)
    for _ in range(60):
        num_vars = rng.randint(1, 5)
        rows = []
        for _ in range(rng.randint(1, 5)):
            coeffs = [Fraction(rng.randint(-3, 3)) for _ in range(num_vars)]
            relation = rng.choice(list(Relation))
            rows.append((coeffs, relation, Fraction(rng.randint(-4, 4))))
        program = lp(num_vars, rows)
        a = feasible_point(program)
        b = basic_feasible_point(program)
        assert (a is None) == (b is None)
        if a is not None:
            assert program.check(a) and program.check(b)


def test_free_variables():
    program = lp(
        2,
        [([1, 1], Relation.EQ, 0), ([1, -1], Relation.EQ, -4)],
        nonneg=(False, False),
    )
    point = feasible_point(program)
    assert point == (Fraction(-2), Fraction(2))
    with pytest.raises(ValueError):
        basic_feasible_point(program)


def test_maximize():
    program = lp(2, [([1, 1], Relation.LE, 3), ([1, 0], Relation.LE, 1)])
    value, point = maximize(program, (Fraction(2), Fraction(1)))
    assert value == 4
    assert program.check(point)

    unbounded = lp(1, [([1], Relation.GE, 0)])
    with pytest.raises(UnboundedError):
        maximize(unbounded, (Fraction(1),))


def test_blands_rule_survives_a_classic_cycling_tableau():
    # Beale's example: naive most-negative pivoting cycles forever on this one.
    rows = [
        ([Fraction(1, 4), -8, -1, 9], Relation.LE, 0),
        ([Fraction(1, 2), -12, Fraction(-1, 2), 3], Relation.LE, 0),
        ([0, 0, 1, 0], Relation.LE, 1),
    ]
    program = lp(4, rows)
    objective = (Fraction(3, 4), Fraction(-150), Fraction(1, 50), Fraction(-6))
    value, point = maximize(program, objective)
    # optimum sits at (1, 0, 1, 0): x3 <= 1 and the second row force x1 <= x3
    assert value == Fraction(77, 100)
    assert program.check(point)


def test_degenerate_equalities():
    # duplicated rows make redundant constraints; artificial cleanup drops them
    program = lp(
        2,
        [
            ([1, 1], Relation.EQ, 1),
            ([2, 2], Relation.EQ, 2),
            ([1, 0], Relation.GE, Fraction(1, 3)),
        ],
    )
    point = feasible_point(program)
    assert point is not None and program.check(point)
