import random
from fractions import Fraction

from fairdiv import Allocation, Instance


def random_allocation(inst: Instance, rng: random.Random) -> Allocation:
    """Random feasible allocation: random consumer sets, random rational shares."""
    rows = [[Fraction(0)] * inst.m for _ in range(inst.n)]
    for o in range(inst.m):
        count = rng.randint(1, inst.n)
        agents = rng.sample(range(inst.n), count)
        weights = [rng.randint(1, 6) for _ in agents]
        total = sum(weights)
        for agent, weight in zip(agents, weights):
            rows[agent][o] = Fraction(weight, total)
    return Allocation(tuple(tuple(row) for row in rows))
