"""Gallai trees: recognition, bad list assignments, and list coloring the rest.

A connected graph is a Gallai tree when each of its blocks is a complete
graph or an odd cycle.  Those are exactly the connected graphs that cannot
be colored from some lists of size equal to the degrees.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .coloring import Coloring, brute_force_list_color, _check_lists
from .errors import InvariantViolation, PreconditionError
from .graph import (
    GraphLike,
    _plain,
    bfs_distances,
    blocks,
    connected_components,
    induced_subgraph,
    is_clique,
    is_connected_set,
)
from .oneended import pointaway, rank_list_color

__all__ = [
    "GallaiVerdict",
    "block_kind",
    "classify_component",
    "is_gallai_set",
    "bad_lists_for_gallai_tree",
    "non_gallai_core",
    "color_non_gallai",
]


@dataclass(frozen=True)
class GallaiVerdict:
    """``offending_block`` indexes the blocks of the component's induced subgraph."""

    is_gallai_tree: bool
    offending_block: Optional[int] = None
    block_vertices: Optional[tuple[int, ...]] = None

    def to_json(self) -> dict:
        return {"gallai": self.is_gallai_tree, "offending_block": self.offending_block}


def block_kind(g: GraphLike, block: Iterable[int]) -> Optional[str]:
    """``"clique"``, ``"odd_cycle"`` or ``None`` for any other block."""
    g = _plain(g)
    block = set(block)
    if is_clique(g, block):
        return "clique"
    if len(block) % 2 == 1 and all(
        sum(1 for w in g.adjacency[v] if w in block) == 2 for v in block
    ):
        return "odd_cycle"
    return None


def classify_component(g: GraphLike, component: Iterable[int]) -> GallaiVerdict:
    g = _plain(g)
    comp = sorted(set(component))
    if not comp or not is_connected_set(g, comp):
        raise PreconditionError("component is empty or disconnected", witness=comp)
    sub, ids = induced_subgraph(g, comp)
    for i, blk in enumerate(blocks(sub).blocks):
        if block_kind(sub, blk) is None:
            return GallaiVerdict(False, i, tuple(ids[v] for v in blk))
    return GallaiVerdict(True)


def is_gallai_set(g: GraphLike, vertices: Iterable[int]) -> bool:
    return classify_component(g, vertices).is_gallai_tree


def bad_lists_for_gallai_tree(g: GraphLike, component: Iterable[int]) -> dict[int, frozenset[int]]:
    """Lists of size ``deg(v)`` admitting no coloring of a Gallai tree.

    Blocks are visited in preorder of the block forest from the least
    block, each taking a fresh color range: ``k`` colors for a clique on
    ``k + 1`` vertices, two for an odd cycle.  A vertex's list is the union
    of the ranges of its blocks.
    """
    g = _plain(g)
    comp = sorted(set(component))
    verdict = classify_component(g, comp)
    if not verdict.is_gallai_tree:
        raise PreconditionError("component is not a Gallai tree", witness=verdict.block_vertices)
    sub, ids = induced_subgraph(g, comp)
    if not any(sub.adjacency):
        raise PreconditionError("component has no edges")
    for v in range(sub.n):
        if sub.degree(v) != g.degree(ids[v]):
            raise PreconditionError("component is not a whole connected component", witness=ids[v])
    bd = blocks(sub)
    order, seen = [], set()
    for root in range(len(bd.blocks)):
        if root in seen:
            continue
        seen.add(root)
        stack = [root]
        while stack:
            b = stack.pop()
            order.append(b)
            for c in reversed(bd.block_graph.adjacency[b]):
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
    lists: dict[int, set[int]] = {v: set() for v in range(sub.n)}
    nxt = 1
    for b in order:
        blk = bd.blocks[b]
        size = len(blk) - 1 if block_kind(sub, blk) == "clique" else 2
        palette = set(range(nxt, nxt + size))
        nxt += size
        for v in blk:
            lists[v] |= palette
    out = {ids[v]: frozenset(s) for v, s in lists.items()}
    for v, s in out.items():
        if len(s) != g.degree(v):
            raise InvariantViolation(f"bad list at {v} has size {len(s)} != degree {g.degree(v)}")
    return out


def non_gallai_core(g: GraphLike, component: Iterable[int]) -> list[int]:
    """Canonical small connected non-Gallai vertex set inside ``component``.

    Grow a ball around the least vertex until its induced subgraph is not a
    Gallai tree, then delete vertices, largest id first, as long as the set
    stays connected and non-Gallai.
    """
    g = _plain(g)
    comp = sorted(set(component))
    if classify_component(g, comp).is_gallai_tree:
        raise PreconditionError("component is a Gallai tree", witness=comp)
    dist = bfs_distances(g, [comp[0]], allowed=set(comp))
    radius = 0
    while True:
        ball = [v for v in comp if dist[v] is not None and dist[v] <= radius]
        if not is_gallai_set(g, ball):
            break
        radius += 1
    core = set(ball)
    changed = True
    while changed:
        changed = False
        for v in sorted(core, reverse=True):
            rest = core - {v}
            if rest and is_connected_set(g, rest) and not is_gallai_set(g, rest):
                core = rest
                changed = True
    return sorted(core)


def color_non_gallai(
    g: GraphLike,
    b: Iterable[int],
    lists: Mapping[int, Iterable[int]],
    budget: Optional[int] = None,
) -> Coloring:
    """Color ``G`` restricted to ``b`` from lists of size at least the degree.

    Every component of ``G`` restricted to ``b`` must fail to be a Gallai
    tree.  Per component: pick a non-Gallai core, color everything else by
    rank along a function pointing toward the core, then finish the core
    exhaustively from what remains of its lists.
    """
    g = _plain(g)
    b = sorted(set(b))
    for v in b:
        if v not in lists:
            raise PreconditionError(f"vertex {v} has no list", witness=v)
        if len(set(lists[v])) < g.degree(v):
            raise PreconditionError(f"vertex {v}: list smaller than degree", witness=v)
    _check_lists({v: lists[v] for v in b})
    sub, ids = induced_subgraph(g, b)
    sub_lists = {i: set(lists[v]) for i, v in enumerate(ids)}
    c: Coloring = {}
    for comp in connected_components(sub):
        verdict = classify_component(sub, comp)
        if verdict.is_gallai_tree:
            raise PreconditionError("component is a Gallai tree", witness=[ids[v] for v in comp])
        core = non_gallai_core(sub, comp)
        csub, cids = induced_subgraph(sub, comp)
        local = {v: i for i, v in enumerate(cids)}
        f = pointaway(csub, [local[v] for v in core])
        outer = rank_list_color(csub, f, {i: sub_lists[cids[i]] for i in f.mapping})
        part = {cids[i]: col for i, col in outer.items()}
        core_graph, core_ids = induced_subgraph(sub, core)
        shrunk = {}
        for i, v in enumerate(core_ids):
            shrunk[i] = sub_lists[v] - {part[w] for w in sub.adjacency[v] if w in part}
        finish = brute_force_list_color(core_graph, shrunk, budget=budget)
        if finish is None:
            raise InvariantViolation("non-Gallai core could not be finished from its lists")
        part.update({core_ids[i]: col for i, col in finish.items()})
        c.update({ids[v]: col for v, col in part.items()})
    return c
