"""Command-line interface.

Subcommands: solve, check, enumerate, consensus, improve, degeneracy, gen,
oracle.  Instances and allocations travel as JSON with exact fraction
strings; all output is deterministic for identical inputs and seeds.

Exit codes: 0 success; 1 input or usage error; 2 the requested fair
allocation does not exist (possible only for weighted envy-freeness);
3 enumeration refused because the instance is too degenerate.
"""

from __future__ import annotations

import argparse
import random
import sys
from . import serialize
from .core import (
    Allocation,
    FairnessKind,
    FairnessSpec,
    Objective,
    degeneracy,
    parse_weights,
    utilities,
)
from .enumeration import DEFAULT_DEGENERACY_BUDGET, DegeneracyBudgetError, enumerate_fpo_graphs
from .graph import graph_consumers, graph_sharings
from .improve import eliminate_cycles
from .instances import (
    gen_consensus_tightness,
    gen_degeneracy_family,
    gen_fixture,
    gen_identical_partition,
    gen_perturbed_partition,
    gen_random,
)
from .oracle import BudgetExceededError, brute_min_objective
from .solver import (
    NoFairAllocationError,
    check_allocation,
    solve_consensus,
    solve_min_sharing,
    solve_two_agents_fast,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_FAIR = 2
EXIT_BUDGET = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _fairness_spec(args: argparse.Namespace) -> FairnessSpec:
    kind = FairnessKind.ENVY_FREE if args.fairness == "ef" else FairnessKind.PROPORTIONAL
    weights = parse_weights(args.weights) if args.weights else None
    return FairnessSpec(kind, weights)


def _emit(args: argparse.Namespace, data: dict) -> None:
    text = serialize.dumps(data)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_fairness_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--fairness", choices=("ef", "prop"), default="ef")
    parser.add_argument("--weights", help="entitlements as comma-separated fractions, e.g. 1/2,1/4,1/4")


def _cmd_solve(args: argparse.Namespace) -> int:
    inst = serialize.load_instance(args.input)
    spec = _fairness_spec(args)
    objective = Objective(args.objective)
    if args.fast_2agent:
        result = solve_two_agents_fast(inst, spec)
    else:
        result = solve_min_sharing(
            inst,
            spec,
            objective,
            degeneracy_budget=args.degeneracy_budget,
            threads=args.threads,
        )
    data = serialize.solve_result_to_dict(inst, result, decimal=args.decimal)
    _emit(args, data)
    if args.render:
        from .render import render_consumption_graph

        render_consumption_graph(inst, result.allocation, args.render, title="solved allocation")
    return EXIT_OK


def _cmd_check(args: argparse.Namespace) -> int:
    inst = serialize.load_instance(args.input)
    alloc = serialize.load_allocation(args.alloc)
    spec = _fairness_spec(args)
    report = check_allocation(inst, alloc, spec)
    data: dict = {
        "fair": report.fair,
        "fairness": args.fairness,
        "fpo": report.fpo,
        "nonmalicious": report.nonmalicious,
        "num_sharings": report.stats.num_sharings,
        "num_shared_objects": report.stats.num_shared_objects,
        "shared_value": str(report.stats.shared_value),
        "utilities": [str(u) for u in report.utilities],
    }
    if report.certificate is not None:
        data["certificate"] = [str(w) for w in report.certificate.weights]
    if report.violating_cycle is not None:
        cyc = report.violating_cycle
        data["violating_cycle"] = {
            "nodes": [
                inst.agent_labels[idx] if kind == "agent" else inst.object_labels[idx]
                for kind, idx in cyc.steps
            ],
            "product": str(cyc.product),
        }
    if args.decimal:
        data["utilities_approx"] = [float(u) for u in report.utilities]
    _emit(args, data)
    if args.render:
        from .render import render_consumption_graph

        render_consumption_graph(
            inst, alloc, args.render, cycle=report.violating_cycle, title="checked allocation"
        )
    return EXIT_OK


def _cmd_enumerate(args: argparse.Namespace) -> int:
    inst = serialize.load_instance(args.input)
    graphs = enumerate_fpo_graphs(
        inst, max_sharings=args.max_sharings, degeneracy_budget=args.degeneracy_budget
    )
    if not args.count_only:
        for number, graph in enumerate(graphs, start=1):
            parts = []
            for o in range(inst.m):
                consumers = ",".join(inst.agent_labels[i] for i in graph_consumers(graph, o))
                parts.append(f"{inst.object_labels[o]}->{consumers}")
            print(f"graph {number} (sharings {graph_sharings(graph)}): " + "; ".join(parts))
    print(f"total {len(graphs)}")
    return EXIT_OK


def _cmd_consensus(args: argparse.Namespace) -> int:
    inst = serialize.load_instance(args.input)
    alloc = solve_consensus(inst)
    data = serialize.allocation_to_dict(inst, alloc, decimal=args.decimal)
    if args.permute_seed is not None:
        order = list(range(inst.n))
        random.Random(args.permute_seed).shuffle(order)
        alloc = Allocation(tuple(alloc.shares[i] for i in order))
        data = serialize.allocation_to_dict(inst, alloc, decimal=args.decimal)
        data["bundle_permutation"] = order
    _emit(args, data)
    return EXIT_OK


def _cmd_improve(args: argparse.Namespace) -> int:
    inst = serialize.load_instance(args.input)
    alloc = serialize.load_allocation(args.alloc)
    before = utilities(inst, alloc)
    improved = eliminate_cycles(inst, alloc)
    data = serialize.allocation_to_dict(inst, improved, decimal=args.decimal)
    data["utilities_before"] = [str(u) for u in before]
    _emit(args, data)
    return EXIT_OK


def _cmd_degeneracy(args: argparse.Namespace) -> int:
    inst = serialize.load_instance(args.input)
    print(degeneracy(inst))
    return EXIT_OK


def _cmd_gen(args: argparse.Namespace) -> int:
    alloc = None
    if args.family == "identical-partition":
        inst = gen_identical_partition(_int_list(args.values))
    elif args.family == "perturbed-partition":
        inst = gen_perturbed_partition(_int_list(args.values))
    elif args.family == "degeneracy-family":
        inst = gen_degeneracy_family(_int_list(args.values), args.objects)
    elif args.family == "consensus-tightness":
        inst = gen_consensus_tightness(args.agents)
    elif args.family == "fixture":
        inst, alloc = gen_fixture(args.name, n=args.agents)
    else:  # random
        inst = gen_random(args.agents, args.objects, args.seed, args.low, args.high)
    _emit(args, serialize.instance_to_dict(inst))
    if alloc is not None and args.alloc_output:
        serialize.write_json(args.alloc_output, serialize.allocation_to_dict(inst, alloc))
    return EXIT_OK


def _cmd_oracle(args: argparse.Namespace) -> int:
    inst = serialize.load_instance(args.input)
    spec = _fairness_spec(args)
    objective = Objective(args.objective)
    minimum = brute_min_objective(inst, spec, objective)
    if minimum is None:
        print("no fair allocation exists on any Pareto-optimal support", file=sys.stderr)
        return EXIT_NO_FAIR
    data = {
        "fairness": args.fairness,
        "objective": args.objective,
        "minimum": minimum if isinstance(minimum, int) else str(minimum),
    }
    _emit(args, data)
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fairdiv", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="fair fPO allocation minimizing an objective")
    solve.add_argument("-i", "--input", required=True)
    solve.add_argument("-o", "--output")
    _add_fairness_flags(solve)
    solve.add_argument(
        "--objective",
        choices=[obj.value for obj in Objective],
        default=Objective.SHARINGS.value,
    )
    solve.add_argument("--fast-2agent", action="store_true", help="force the two-agent fast path")
    solve.add_argument("--threads", type=int, default=1)
    solve.add_argument("--degeneracy-budget", type=int, default=DEFAULT_DEGENERACY_BUDGET)
    solve.add_argument("--decimal", action="store_true", help="add approximate decimals to output")
    solve.add_argument("--render", metavar="FILE", help="draw the consumption graph to FILE")
    solve.set_defaults(func=_cmd_solve)

    check = sub.add_parser("check", help="diagnose fairness and Pareto optimality")
    check.add_argument("-i", "--input", required=True)
    check.add_argument("-a", "--alloc", required=True)
    check.add_argument("-o", "--output")
    _add_fairness_flags(check)
    check.add_argument("--decimal", action="store_true")
    check.add_argument("--render", metavar="FILE")
    check.set_defaults(func=_cmd_check)

    enum = sub.add_parser("enumerate", help="list Pareto-optimal consumption graphs")
    enum.add_argument("-i", "--input", required=True)
    enum.add_argument("--max-sharings", type=int)
    enum.add_argument("--count-only", action="store_true")
    enum.add_argument("--degeneracy-budget", type=int, default=DEFAULT_DEGENERACY_BUDGET)
    enum.set_defaults(func=_cmd_enumerate)

    consensus = sub.add_parser("consensus", help="allocation every agent values as an exact n-way split")
    consensus.add_argument("-i", "--input", required=True)
    consensus.add_argument("-o", "--output")
    consensus.add_argument("--permute-seed", type=int)
    consensus.add_argument("--decimal", action="store_true")
    consensus.set_defaults(func=_cmd_consensus)

    improve = sub.add_parser("improve", help="Pareto-improve an allocation to fPO with few sharings")
    improve.add_argument("-i", "--input", required=True)
    improve.add_argument("-a", "--alloc", required=True)
    improve.add_argument("-o", "--output")
    improve.add_argument("--decimal", action="store_true")
    improve.set_defaults(func=_cmd_improve)

    degen = sub.add_parser("degeneracy", help="print the degree of degeneracy")
    degen.add_argument("-i", "--input", required=True)
    degen.set_defaults(func=_cmd_degeneracy)

    gen = sub.add_parser("gen", help="generate an instance")
    gen.add_argument(
        "family",
        choices=(
            "identical-partition",
            "perturbed-partition",
            "degeneracy-family",
            "consensus-tightness",
            "fixture",
            "random",
        ),
    )
    gen.add_argument("-o", "--output")
    gen.add_argument("--values", help="comma-separated positive integers")
    gen.add_argument("--objects", type=int, help="object count where the family needs one")
    gen.add_argument("--agents", type=int, help="agent count where the family needs one")
    gen.add_argument("--name", help="fixture name (fig1_left, fig1_right, identical_goods)")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--low", type=int, default=-9)
    gen.add_argument("--high", type=int, default=9)
    gen.add_argument("--alloc-output", help="also write the fixture's allocation here")
    gen.set_defaults(func=_cmd_gen)

    oracle = sub.add_parser("oracle", help="brute-force minimum for small instances")
    oracle.add_argument("-i", "--input", required=True)
    oracle.add_argument("-o", "--output")
    _add_fairness_flags(oracle)
    oracle.add_argument(
        "--objective",
        choices=[obj.value for obj in Objective],
        default=Objective.SHARINGS.value,
    )
    oracle.set_defaults(func=_cmd_oracle)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DegeneracyBudgetError as exc:
        print(f"fairdiv: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except BudgetExceededError as exc:
        print(f"fairdiv: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except NoFairAllocationError as exc:
        print(f"fairdiv: {exc}", file=sys.stderr)
        return EXIT_NO_FAIR
    except (OSError, ValueError, KeyError) as exc:
        print(f"fairdiv: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
