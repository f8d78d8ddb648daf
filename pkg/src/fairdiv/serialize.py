"""JSON serialization of instances, allocations, and solver results.

Every numeric value crosses the wire exactly: valuations may be JSON integers
or quoted exact strings ("2.5", "7/3"); shares and utilities are always
quoted fraction strings.  JSON floats are rejected because they carry binary
round-off.  Output is byte-deterministic (sorted keys, fixed layout).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .core import (
    Allocation,
    Instance,
    as_fraction,
    sharing_stats,
    utilities,
)
from .solver import SolveResult


def _parse_value(entry: Any) -> Fraction:
    if isinstance(entry, bool):
        raise ValueError(f"invalid valuation entry {entry!r}")
    if isinstance(entry, int):
        return Fraction(entry)
    if isinstance(entry, str):
        return as_fraction(entry)
    if isinstance(entry, float):
        raise ValueError(
            f"non-integer JSON number {entry!r}: write decimals as strings to keep them exact"
        )
    raise ValueError(f"invalid valuation entry {entry!r}")


def _encode_value(x: Fraction) -> int | str:
    return int(x) if x.denominator == 1 else str(x)


def instance_to_dict(inst: Instance) -> dict:
    return {
        "agents": list(inst.agent_labels),
        "objects": list(inst.object_labels),
        "valuations": [[_encode_value(v) for v in row] for row in inst.values],
    }


def instance_from_dict(data: dict) -> Instance:
    if "valuations" not in data:
        raise ValueError("instance JSON needs a 'valuations' matrix")
    rows = [[_parse_value(entry) for entry in row] for row in data["valuations"]]
    agents = data.get("agents")
    objects = data.get("objects")
    return Instance.from_values(rows, agents, objects)


def allocation_to_dict(
    inst: Instance, alloc: Allocation, decimal: bool = False
) -> dict:
    stats = sharing_stats(inst, alloc)
    out: dict = {
        "shares": [[str(x) for x in row] for row in alloc.shares],
        "utilities": [str(u) for u in utilities(inst, alloc)],
        "num_sharings": stats.num_sharings,
        "num_shared_objects": stats.num_shared_objects,
    }
    if decimal:
        out["utilities_approx"] = [float(u) for u in utilities(inst, alloc)]
    return out


def allocation_from_dict(data: dict) -> Allocation:
    if "shares" not in data:
        raise ValueError("allocation JSON needs a 'shares' matrix")
    return Allocation.from_rows(
        [[_parse_value(entry) for entry in row] for row in data["shares"]]
    )


def solve_result_to_dict(
    inst: Instance, result: SolveResult, decimal: bool = False
) -> dict:
    out = allocation_to_dict(inst, result.allocation, decimal=decimal)
    out["certificate"] = [str(w) for w in result.certificate.weights]
    out["graphs_examined"] = result.graphs_examined
    return out


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def load_instance(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return instance_from_dict(json.load(fh))


def load_allocation(path: str) -> Allocation:
    with open(path, "r", encoding="utf-8") as fh:
        return allocation_from_dict(json.load(fh))


def write_json(path: str, data: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(data))
