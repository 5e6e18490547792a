"""File renderers for the report subcommand: figures plus delimited tables.

Everything writes to explicit paths; nothing opens a window (Agg backend).
"""

from __future__ import annotations

import csv
from typing import Callable

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .element import Quadruple, resolved
from .forest import Tree
from .label_group import ActionReport, ColorId

_PALETTE = plt.get_cmap("tab10")


def _color_of(s: ColorId) -> tuple:
    return _PALETTE(abs(hash(("color", s))) % 10)


def _layout(tree: Tree) -> tuple[dict, int]:
    """Positions for every node: leaves at integer y, parents midway; x = depth."""
    pos = {}
    counter = [0]

    def walk(node: Tree, depth: int, path: tuple) -> float:
        if node.is_leaf:
            y = float(counter[0])
            counter[0] += 1
            pos[path] = (depth, y, node)
            return y
        y0 = walk(node.child0, depth + 1, path + (0,))
        y1 = walk(node.child1, depth + 1, path + (1,))
        y = (y0 + y1) / 2
        pos[path] = (depth, y, node)
        return y

    walk(tree, 0, ())
    return pos, counter[0]


def _draw_tree(ax, tree: Tree, x0: float, mirror: bool,
               namer: Callable[[ColorId], str]) -> list[tuple[float, float]]:
    """Draw one tree; returns leaf tip coordinates in leaf order."""
    pos, _ = _layout(tree)
    sign = -1.0 if mirror else 1.0
    for path in sorted(pos, key=len):
        depth, y, node = pos[path]
        x = x0 + sign * depth * 0.9
        if node.is_leaf:
            ax.plot([x], [y], marker="s", color="0.3", markersize=4)
            continue
        for branch in (0, 1):
            cd, cy, _ = pos[path + (branch,)]
            cx = x0 + sign * cd * 0.9
            ax.plot([x, cx], [y, cy], color="0.6", linewidth=1.0, zorder=1)
        ax.plot([x], [y], marker="o", color=_color_of(node.color), markersize=9,
                zorder=2)
        ax.annotate(namer(node.color), (x, y), textcoords="offset points",
                    xytext=(0, 7), ha="center", fontsize=7)
    tips_in_order = []
    for p in _leaf_paths(tree):
        d, y, _ = pos[p]
        tips_in_order.append((x0 + sign * d * 0.9, y))
    return tips_in_order


def _leaf_paths(tree: Tree, path: tuple = ()) -> list[tuple]:
    if tree.is_leaf:
        return [path]
    return _leaf_paths(tree.child0, path + (0,)) + _leaf_paths(tree.child1, path + (1,))


def save_element_figure(q: Quadruple, path: str) -> None:
    """Domain pattern on the left, range on the right, leaves wired by the
    permutation and annotated with non-trivial labels."""
    if not q.is_group_element():
        raise ValueError("figure rendering expects a one-rooted element")
    namer = q.oracle.color_name
    plus = q.plus.trees[0]
    minus = q.minus.trees[0]
    depth = max(_max_depth(plus), _max_depth(minus), 1)
    gap = 2.5

    fig, ax = plt.subplots(figsize=(2 + 1.2 * depth, 1 + 0.45 * max(plus.leaf_count(), 3)))
    left_x = 0.0
    right_x = 2 * depth * 0.9 + gap
    dom_tips = _draw_tree(ax, plus, left_x, mirror=False, namer=namer)
    rng_tips = _draw_tree(ax, minus, right_x, mirror=True, namer=namer)

    for i, (xd, yd) in enumerate(dom_tips):
        j = q.perm(i + 1) - 1
        xr, yr = rng_tips[j]
        ax.plot([xd, xr], [yd, yr], color="tab:blue", linewidth=0.8, alpha=0.6,
                zorder=0)
        g = q.oracle.normalize(q.labels[i])
        if not g.is_identity():
            ax.annotate(str(g), ((xd + xr) / 2, (yd + yr) / 2),
                        fontsize=7, color="tab:red", ha="center")
    ax.set_title("domain pattern  →  range pattern")
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _max_depth(tree: Tree) -> int:
    if tree.is_leaf:
        return 0
    return 1 + max(_max_depth(tree.child0), _max_depth(tree.child1))


def save_element_table(q: Quadruple, path: str) -> None:
    """Tab-separated resolved map: domain brick, range brick, label."""
    namer = q.oracle.color_name
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("leaf\tdomain_brick\trange_brick\tlabel\n")
        for i, (dom, rng, g) in enumerate(resolved(q), start=1):
            fh.write(f"{i}\t{dom[1].format(namer)}\t{rng[1].format(namer)}\t{g}\n")


def save_action_chart(report: ActionReport, path: str) -> None:
    """Bar chart of diagonal orbit counts by tuple length."""
    ms = list(range(1, len(report.orbit_counts) + 1))
    fig, ax = plt.subplots(figsize=(4, 3))
    ax.bar(ms, report.orbit_counts, color="tab:blue", width=0.6)
    ax.set_xlabel("tuple length m")
    ax.set_ylabel("orbits on S^m")
    ax.set_xticks(ms)
    for m, c in zip(ms, report.orbit_counts):
        ax.annotate(str(c), (m, c), ha="center", va="bottom", fontsize=8)
    ax.set_title(f"|G| = {report.group_order}, kernel {report.kernel_order}")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_action_table(report: ActionReport, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["size", "representative", "orbit_size", "stabilizer_order"])
        for row in report.subset_stabilizers:
            w.writerow([row["size"], " ".join(map(str, row["representative"])),
                        row["orbit_size"], row["stabilizer_order"]])
