"""Constructive Brooks coloring, plus the two-color (d = 2) toolkit.

``brooks_color`` colors a graph of maximum degree at most ``d >= 3`` with
no ``K_{d+1}`` using colors ``1..d``.  Components with a low-degree vertex
are colored by rank toward a set of such vertices, which are colored last;
d-regular components go through the Gallai-tree machinery.  On windows the
boundary vertices are never colored.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Optional

from .coloring import Coloring, constant_lists, greedy_color
from .errors import InvariantViolation, PreconditionError
from .gallai import classify_component, color_non_gallai
from .graph import (
    Graph,
    GraphLike,
    WindowedGraph,
    _plain,
    as_window,
    blocks,
    build_graph,
    connected_components,
    find_odd_cycle,
    induced_window,
    is_clique,
)
from .oneended import (
    OneEndedFunction,
    assert_one_ended,
    lift_block_forest,
    one_ended_forest,
    pointaway,
    rank_list_color,
)

__all__ = [
    "BrooksInstance",
    "BrooksResult",
    "brooks_color",
    "clique_witness",
    "even_equivalence",
    "two_color",
    "rotation_obstruction_demo",
]


@dataclass(frozen=True)
class BrooksInstance:
    graph: GraphLike
    d: int

    def __post_init__(self):
        g = _plain(self.graph)
        if self.d < 3:
            raise PreconditionError("the Brooks pipeline needs d >= 3; use two_color for d = 2")
        if g.max_degree() > self.d:
            v = max(range(g.n), key=g.degree)
            raise PreconditionError(f"vertex {v} has degree {g.degree(v)} > {self.d}", witness=v)
        k = clique_witness(g, self.d)
        if k is not None:
            raise PreconditionError(f"graph contains K_{self.d + 1}", witness=list(k))


@dataclass
class BrooksResult:
    coloring: Coloring
    trace: list[dict] = field(default_factory=list)
    # (graph the function lives on, function), kept for audits
    functions: list[tuple[GraphLike, OneEndedFunction]] = field(default_factory=list)


def clique_witness(g: GraphLike, d: int) -> Optional[tuple[int, ...]]:
    """A ``K_{d+1}``, if any; with maximum degree ``d`` it is a closed neighborhood."""
    g = _plain(g)
    for v in range(g.n):
        if g.degree(v) == d:
            closed = (v,) + g.adjacency[v]
            if is_clique(g, closed):
                return tuple(sorted(closed))
    return None


def _block_lift_color(wg: WindowedGraph, vertices: list[int], palette, result: BrooksResult) -> Coloring:
    """Color a windowed Gallai piece along the lift of a one-ended function on its blocks.

    Blocks holding a boundary vertex are the flagged points of the block
    window; a piece with a single block just heads for the boundary.
    """
    sub, ids = induced_window(wg, vertices)
    bd = blocks(sub.graph)
    if len(bd.blocks) > 1:
        flags = tuple(any(sub.is_boundary[v] for v in blk) for blk in bd.blocks)
        bw = WindowedGraph(bd.block_graph, flags)
        fb = one_ended_forest(bw, d=max(3, bw.graph.max_degree()))
    else:
        fb = OneEndedFunction(len(bd.blocks), {})
    lifted = lift_block_forest(sub, bd, fb)
    missing = [v for v in sub.interior if v not in lifted.mapping]
    if missing:
        raise InvariantViolation(f"lifted function misses interior vertex {ids[missing[0]]}")
    assert_one_ended(sub, lifted)
    result.functions.append((sub, lifted))
    part = rank_list_color(sub.graph, lifted, constant_lists(lifted.mapping, palette))
    return {ids[v]: col for v, col in part.items()}


def brooks_color(inst: BrooksInstance) -> BrooksResult:
    wg = as_window(inst.graph)
    g = wg.graph
    d = inst.d
    palette = range(1, d + 1)
    result = BrooksResult({})
    c = result.coloring
    low = [v for v in wg.interior if g.degree(v) < d]
    lowset = set(low)
    # least greedy (d+1)-color among the low-degree vertices of each component
    greedy = greedy_color(g, d + 1)
    components = connected_components(g)
    transversal: list[int] = []
    for comp in components:
        a = [v for v in comp if v in lowset]
        if a:
            least = min(greedy[v] for v in a)
            transversal.extend(v for v in a if greedy[v] == least)
    if transversal:
        f = pointaway(wg, transversal)
        result.functions.append((wg, f))
        c.update(rank_list_color(g, f, constant_lists(f.mapping, palette)))
        for v in sorted(transversal):
            used = {c[w] for w in g.adjacency[v] if w in c}
            c[v] = min(x for x in palette if x not in used)
    for comp in components:
        interior = [v for v in comp if not wg.is_boundary[v]]
        if not interior:
            continue
        if any(v in lowset for v in comp):
            result.trace.append({"component": comp[0], "size": len(comp), "branch": "low-degree"})
            continue
        if len(interior) == len(comp):
            if classify_component(g, comp).is_gallai_tree:
                raise InvariantViolation("finite d-regular Gallai component that is not a clique")
            c.update(color_non_gallai(g, comp, constant_lists(comp, palette)))
            result.trace.append({"component": comp[0], "size": len(comp), "branch": "non-gallai"})
            continue
        for piece in connected_components(g, interior):
            if not classify_component(g, piece).is_gallai_tree:
                c.update(color_non_gallai(g, piece, constant_lists(piece, palette)))
                result.trace.append({"component": piece[0], "size": len(piece), "branch": "non-gallai"})
                continue
            flags = {w for v in piece for w in g.adjacency[v] if wg.is_boundary[w]}
            c.update(_block_lift_color(wg, sorted(set(piece) | flags), palette, result))
            result.trace.append({"component": piece[0], "size": len(piece), "branch": "block-lift"})
    result.trace.sort(key=lambda t: t["component"])
    return result


# -- d = 2 ----------------------------------------------------------------------

def even_equivalence(g: GraphLike) -> list[frozenset[int]]:
    """Classes of "joined by an even-length walk", sorted by least element.

    A bipartite component with an edge splits into its two sides; any other
    component is a single class.
    """
    g = _plain(g)
    classes = []
    for comp in connected_components(g):
        side = {comp[0]: 0}
        stack = [comp[0]]
        bipartite = True
        while stack:
            u = stack.pop()
            for w in g.adjacency[u]:
                if w not in side:
                    side[w] = side[u] ^ 1
                    stack.append(w)
                elif side[w] == side[u]:
                    bipartite = False
        if bipartite and len(comp) > 1:
            classes.append(frozenset(v for v in comp if side[v] == 0))
            classes.append(frozenset(v for v in comp if side[v] == 1))
        else:
            classes.append(frozenset(comp))
    return sorted(classes, key=min)


def two_color(g: GraphLike) -> tuple[Optional[Coloring], Optional[list[int]]]:
    """``(coloring, None)`` with colors 1 and 2, or ``(None, odd_cycle)``."""
    g = _plain(g)
    cycle = find_odd_cycle(g)
    if cycle is not None:
        return None, cycle
    c: Coloring = {}
    for cls in even_equivalence(g):
        # the class holding a component's least vertex comes first
        color = 2 if any(w in c for v in cls for w in g.adjacency[v]) else 1
        for v in cls:
            c[v] = color
    return c, None


def rotation_obstruction_demo(n: int, k: int, trials: int, seed: int) -> dict:
    """Two-coloring the rotation ``x -> x + k`` on ``Z_n``.

    The graph ``x ~ x +- k`` is a single ``n``-cycle.  Each trial walks the
    cycle from a random starting point alternating colors; for odd ``n`` the
    walk must close with one monochromatic edge, a defect of ``1/n`` at best.
    """
    if n < 3 or k < 1:
        raise PreconditionError("need n >= 3 and k >= 1")
    if math.gcd(k, n) != 1:
        raise PreconditionError(f"gcd({k}, {n}) = {math.gcd(k, n)} != 1")
    if trials < 1:
        raise PreconditionError("trials must be positive")
    edges = {(min(x, (x + k) % n), max(x, (x + k) % n)) for x in range(n)}
    g = build_graph(n, sorted(edges))
    coloring, _ = two_color(g)
    rng = random.Random(seed)
    defects = []
    for _ in range(trials):
        start = rng.randrange(n)
        col = {}
        for step in range(n):
            col[(start + step * k) % n] = step % 2
        bad = sum(1 for u, v in edges if col[u] == col[v])
        defects.append(bad / n)
    return {
        "n": n,
        "k": k,
        "trials": trials,
        "seed": seed,
        "two_colorable": coloring is not None,
        "min_defect": min(defects),
        "mean_defect": sum(defects) / len(defects),
        "defect_lower_bound": 0.0 if n % 2 == 0 else 1 / n,
    }
