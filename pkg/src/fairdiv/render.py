"""Matplotlib rendering of directed consumption graphs.

Agents sit on the left, objects on the right; each directed edge is labeled
with its exact weight, and an improving cycle (when given) is drawn bold red.
Layout coordinates are floats, but they never feed back into solver logic.
"""

from __future__ import annotations

from .core import Allocation, Instance
from .graph import Cycle, dcg_of, ucg_of


def render_consumption_graph(
    inst: Instance,
    alloc: Allocation,
    path: str,
    cycle: Cycle | None = None,
    title: str | None = None,
) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.patches import FancyArrowPatch

    dcg = dcg_of(inst, ucg_of(alloc))
    n, m = inst.n, inst.m

    agent_pos = {i: (0.0, -float(i)) for i in range(n)}
    object_pos = {o: (1.0, -float(o) * n / max(m, 1)) for o in range(m)}

    def position(node: int) -> tuple[float, float]:
        kind, idx = dcg.node_kind(node)
        return agent_pos[idx] if kind == "agent" else object_pos[idx]

    cycle_edges: set[tuple[tuple[str, int], tuple[str, int]]] = set()
    if cycle is not None:
        steps = cycle.steps
        for k in range(len(steps)):
            cycle_edges.add((steps[k], steps[(k + 1) % len(steps)]))

    fig, ax = plt.subplots(figsize=(7, 1.2 + 0.9 * max(n, m)))
    for edge in dcg.edges:
        src, dst = position(edge.src), position(edge.dst)
        key = (dcg.node_kind(edge.src), dcg.node_kind(edge.dst))
        on_cycle = key in cycle_edges
        # agent->object arcs bow one way, object->agent the other
        rad = 0.15 if edge.src < n else -0.15
        arrow = FancyArrowPatch(
            src,
            dst,
            connectionstyle=f"arc3,rad={rad}",
            arrowstyle="-|>",
            mutation_scale=14,
            linewidth=2.2 if on_cycle else 1.0,
            color="crimson" if on_cycle else "steelblue",
            shrinkA=14,
            shrinkB=14,
            zorder=1,
        )
        ax.add_patch(arrow)
        mid_x = (src[0] + dst[0]) / 2
        mid_y = (src[1] + dst[1]) / 2 + (0.13 if rad > 0 else -0.13)
        ax.text(
            mid_x,
            mid_y,
            str(edge.weight),
            fontsize=8,
            ha="center",
            color="crimson" if on_cycle else "dimgray",
            zorder=3,
        )

    for i, (x, y) in agent_pos.items():
        ax.plot([x], [y], "o", markersize=26, color="navajowhite", zorder=2)
        ax.text(x, y, inst.agent_labels[i], fontsize=9, ha="center", va="center", zorder=4)
    for o, (x, y) in object_pos.items():
        ax.plot([x], [y], "s", markersize=26, color="lightsteelblue", zorder=2)
        ax.text(x, y, inst.object_labels[o], fontsize=9, ha="center", va="center", zorder=4)

    if title:
        ax.set_title(title, fontsize=10)
    if cycle is not None:
        ax.set_xlabel(f"improving cycle product: {cycle.product}", fontsize=9)
    ax.set_xlim(-0.3, 1.3)
    ax.margins(y=0.15)
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
