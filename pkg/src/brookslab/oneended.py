"""One-ended functions on finite and windowed graphs.

A one-ended function is a partial map ``f`` sending each vertex of its
domain to a neighbor, with no infinite descending chains.  On a finite
graph that means: no directed cycles, so every forward orbit leaves the
domain and every backward orbit is finite.  Orbits may end at a boundary
vertex of a window (a point at infinity) or at a vertex outside the domain.

Such a function is a skeleton for list coloring: color by rank, lowest
first, and every vertex still has its uncolored image ``f(x)`` in reserve
(:func:`rank_list_color`).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .coloring import Coloring, greedy_color, greedy_list_color
from .errors import InvariantViolation, PreconditionError, WindowTooSmallError
from .graph import (
    BlockDecomposition,
    Graph,
    GraphLike,
    WindowedGraph,
    _plain,
    as_window,
    bfs_distances,
    connected_components,
    induced_subgraph,
    induced_window,
    is_acyclic,
    window_end_count,
)

__all__ = [
    "OneEndedFunction",
    "AmpleVerdict",
    "SubampleDetail",
    "audit_one_ended",
    "assert_one_ended",
    "pointaway",
    "iterative_one_ended",
    "is_ample",
    "subample_set",
    "subample_detail",
    "reduce_to_ample",
    "one_ended_forest",
    "rank_layers",
    "rank_list_color",
    "lift_block_forest",
    "DEFAULT_CHAIN_DEPTH",
]

DEFAULT_CHAIN_DEPTH = 64


@dataclass(frozen=True)
class OneEndedFunction:
    """Partial vertex map on ``n`` vertices; ``mapping[x]`` is a neighbor of ``x``."""

    n: int
    mapping: Mapping[int, int]

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(self.mapping)

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def __len__(self) -> int:
        return len(self.mapping)

    def to_json(self) -> dict:
        return {"map": [self.mapping.get(v) for v in range(self.n)]}

    @classmethod
    def from_json(cls, obj: dict) -> "OneEndedFunction":
        vals = obj["map"]
        return cls(len(vals), {v: w for v, w in enumerate(vals) if w is not None})


def _lift(sub_map: Mapping[int, int], ids: Sequence[int]) -> dict[int, int]:
    return {ids[x]: ids[y] for x, y in sub_map.items()}


# -- audit ---------------------------------------------------------------------

def audit_one_ended(g: GraphLike, f: OneEndedFunction) -> list[str]:
    """All violated invariants of ``f`` (empty list when ``f`` is sound).

    Checks graph containment, absence of directed cycles (well-foundedness),
    that every forward orbit leaves the domain, that backward orbits are
    finite (sizes computed explicitly over preimages), and that no boundary
    vertex of a window is in the domain.
    """
    wg = as_window(g)
    adj = wg.graph.adjacency
    problems = []
    if f.n != wg.n:
        problems.append(f"function is on {f.n} vertices, graph has {wg.n}")
        return problems
    for x, y in f.mapping.items():
        if not 0 <= x < wg.n or not 0 <= y < wg.n:
            problems.append(f"{x}->{y} uses an invalid id")
        elif y not in adj[x]:
            problems.append(f"{x}->{y} is not an edge")
        if 0 <= x < wg.n and wg.is_boundary[x]:
            problems.append(f"boundary vertex {x} has a value")
    if problems:
        return problems
    # forward orbits: white/grey/black walk
    state = [0] * wg.n
    for s in f.mapping:
        path = []
        v = s
        while v in f.mapping and state[v] == 0:
            state[v] = 1
            path.append(v)
            v = f.mapping[v]
        if v in f.mapping and state[v] == 1:
            problems.append(f"directed cycle through {v}")
        for u in path:
            state[u] = 2
    if problems:
        return problems
    # backward orbit sizes, accumulated leaves-first
    preimages: dict[int, list[int]] = {}
    for x, y in f.mapping.items():
        preimages.setdefault(y, []).append(x)
    size: dict[int, int] = {}
    pending = {v: len(preimages.get(v, ())) for v in range(wg.n)}
    ready = [v for v in range(wg.n) if pending[v] == 0]
    while ready:
        v = ready.pop()
        size[v] = 1 + sum(size[u] for u in preimages.get(v, ()))
        if v in f.mapping:
            w = f.mapping[v]
            pending[w] -= 1
            if pending[w] == 0:
                ready.append(w)
    for v in range(wg.n):
        if v not in size:
            problems.append(f"backward orbit of {v} is not finite")
            break
    return problems


def assert_one_ended(g: GraphLike, f: OneEndedFunction) -> None:
    problems = audit_one_ended(g, f)
    if problems:
        raise InvariantViolation("; ".join(problems[:5]))


# -- pointaway and iterated chains ---------------------------------------------

def pointaway(wg: GraphLike, a: Iterable[int]) -> OneEndedFunction:
    """One-ended function on the saturation of ``a`` minus ``a``.

    With distances measured to ``a``: a vertex that can reach a boundary
    vertex along a strictly distance-increasing path steps to the least
    such neighbor (it runs off to infinity); any other vertex steps to its
    least neighbor strictly closer to ``a``.  Boundary vertices get no value.
    """
    wg = as_window(wg)
    a = set(a)
    if not a:
        raise PreconditionError("pointaway needs a nonempty target set")
    adj = wg.graph.adjacency
    dist = bfs_distances(wg.graph, a)
    reach = sorted((v for v in range(wg.n) if dist[v] is not None and v not in a),
                   key=lambda v: -dist[v])
    escapes = [False] * wg.n
    for v in reach:
        if wg.is_boundary[v]:
            escapes[v] = True
        else:
            dv = dist[v]
            escapes[v] = any(escapes[w] and dist[w] > dv for w in adj[v])
    mapping = {}
    for v in sorted(reach):
        if wg.is_boundary[v]:
            continue
        dv = dist[v]
        if escapes[v]:
            mapping[v] = min(w for w in adj[v] if escapes[w] and dist[w] > dv)
        else:
            mapping[v] = min(w for w in adj[v] if dist[w] is not None and dist[w] < dv)
    return OneEndedFunction(wg.n, mapping)


def iterative_one_ended(wg: GraphLike, chain: Sequence[Iterable[int]]) -> OneEndedFunction:
    """Union of pointaway maps along a decreasing chain ``A0 ⊇ A1 ⊇ ... ⊇ Ak``.

    Stage ``i`` points ``A_i \\ A_{i+1}`` toward ``A_{i+1}`` inside the
    induced graph on ``A_i``.  Each nonempty ``A_{i+1}`` must meet every
    component of that induced graph holding an interior vertex; ``Ak`` must
    be empty or consist of boundary vertices only.  Components cut off by an
    empty final set keep no value.
    """
    wg = as_window(wg)
    sets = [set(s) for s in chain]
    if not sets:
        raise PreconditionError("empty chain")
    for i in range(len(sets) - 1):
        extra = sets[i + 1] - sets[i]
        if extra:
            raise PreconditionError(f"chain not decreasing at stage {i + 1}", witness=min(extra))
    stray = [v for v in sets[-1] if not wg.is_boundary[v]]
    if stray:
        raise PreconditionError("final chain set must be empty or boundary-only", witness=min(stray))
    mapping: dict[int, int] = {}
    for i in range(len(sets) - 1):
        cur, nxt = sets[i], sets[i + 1]
        if not nxt:
            continue
        for comp in connected_components(wg.graph, cur):
            if any(not wg.is_boundary[v] for v in comp) and not any(v in nxt for v in comp):
                raise PreconditionError(
                    f"stage {i + 1} set misses a component of stage {i}", witness=comp
                )
        sub, ids = induced_window(wg, cur)
        target = [j for j, v in enumerate(ids) if v in nxt]
        if not target:
            continue
        mapping.update(_lift(pointaway(sub, target).mapping, ids))
    return OneEndedFunction(wg.n, mapping)


# -- ampleness -------------------------------------------------------------

@dataclass(frozen=True)
class AmpleVerdict:
    ok: bool
    vertex: Optional[int] = None
    component: Optional[tuple[int, ...]] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _passes(interior_count, branching_count, boundary_count) -> bool:
    # a piece with no interior vertex lies entirely at infinity
    return interior_count == 0 or branching_count > 0 or boundary_count >= 2


def is_ample(wg: GraphLike) -> AmpleVerdict:
    """Window analog of "every vertex has degree >= 2 and no isolated ends".

    Requires every interior vertex to have degree at least 2, and, for the
    graph itself and for the graph with any single interior vertex ``x``
    deleted, every component holding an interior vertex to contain an
    interior vertex of degree at least 3 or at least two boundary vertices
    (two independent escapes).  Components made only of boundary vertices
    lie at infinity and are not judged.
    """
    wg = as_window(wg)
    g = wg.graph
    adj = g.adjacency
    bnd = wg.is_boundary
    for v in range(wg.n):
        if not bnd[v] and len(adj[v]) < 2:
            return AmpleVerdict(False, v, None, f"interior vertex {v} has degree {len(adj[v])}")
    interior = [0 if bnd[v] else 1 for v in range(wg.n)]
    branching = [1 if (not bnd[v] and len(adj[v]) >= 3) else 0 for v in range(wg.n)]
    flags = [1 if bnd[v] else 0 for v in range(wg.n)]
    for comp in connected_components(g):
        if not _passes(sum(interior[v] for v in comp), sum(branching[v] for v in comp),
                       sum(flags[v] for v in comp)):
            return AmpleVerdict(False, None, tuple(comp), "component has no branching and < 2 escapes")
    if is_acyclic(g):
        return _ample_tree(wg, interior, branching, flags)
    for x in range(wg.n):
        if bnd[x]:
            continue
        rest = [v for v in range(wg.n) if v != x]
        for comp in connected_components(g, rest):
            if x not in {w for v in comp for w in adj[v]}:
                continue
            if not _passes(sum(interior[v] for v in comp), sum(branching[v] for v in comp),
                           sum(flags[v] for v in comp)):
                return AmpleVerdict(False, x, tuple(comp), f"deleting {x} leaves an isolated end")
    return AmpleVerdict(True)


def _rooted_forest(g: Graph):
    """Parent pointers and a preorder for every tree of an acyclic graph."""
    parent = [-1] * g.n
    order = []
    seen = [False] * g.n
    for r in range(g.n):
        if seen[r]:
            continue
        seen[r] = True
        stack = [r]
        while stack:
            u = stack.pop()
            order.append(u)
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    parent[w] = u
                    stack.append(w)
    return parent, order


def _subtree_sums(parent, order, *weights):
    sums = [list(w) for w in weights]
    for u in reversed(order):
        p = parent[u]
        if p >= 0:
            for s in sums:
                s[p] += s[u]
    return sums


def _subtree_vertices(g: Graph, root: int, avoid: int) -> tuple[int, ...]:
    out, stack, seen = [], [root], {root, avoid}
    while stack:
        u = stack.pop()
        out.append(u)
        for w in g.adjacency[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return tuple(sorted(out))


def _ample_tree(wg, interior, branching, flags) -> AmpleVerdict:
    g = wg.graph
    parent, order = _rooted_forest(g)
    si, s3, sb = _subtree_sums(parent, order, interior, branching, flags)
    root_of = [0] * g.n
    for u in order:
        root_of[u] = u if parent[u] < 0 else root_of[parent[u]]
    for x in range(g.n):
        if wg.is_boundary[x]:
            continue
        for y in g.adjacency[x]:
            if y == parent[x]:
                r = root_of[x]
                trio = (si[r] - si[x], s3[r] - s3[x], sb[r] - sb[x])
            else:
                trio = (si[y], s3[y], sb[y])
            if not _passes(*trio):
                return AmpleVerdict(False, x, _subtree_vertices(g, y, x),
                                    f"deleting {x} leaves an isolated end")
    return AmpleVerdict(True)


# -- the subample construction -----------------------------------------------

@dataclass(frozen=True)
class SubampleDetail:
    """Intermediate objects of one subample step (ids of the input window)."""

    kept: frozenset[int]
    removed: frozenset[int]
    branch_points: tuple[int, ...]
    marked: frozenset[int]
    projection: Mapping[int, int]
    palette: int
    marked_preimage: int
    withdrawn: int
    interior_count: int


def _branch_graph(wg: WindowedGraph, xprime: set[int]) -> dict[int, set[int]]:
    """Link branch points joined by a path whose inner vertices are not branch points."""
    adj = wg.graph.adjacency
    links: dict[int, set[int]] = {x: set() for x in xprime}
    for x in xprime:
        stack = [(w, x) for w in adj[x]]
        seen = {x}
        while stack:
            u, _ = stack.pop()
            if u in seen:
                continue
            seen.add(u)
            if u in xprime:
                links[x].add(u)
                continue
            if wg.is_boundary[u]:
                continue
            stack.extend((w, u) for w in adj[u] if w not in seen)
    return links


def _projection(wg: WindowedGraph, xprime: set[int]) -> dict[int, int]:
    """Least-id nearest branch point, searching through interior vertices only."""
    adj = wg.graph.adjacency
    proj = {x: x for x in xprime}
    frontier = sorted(xprime)
    while frontier:
        nxt: dict[int, int] = {}
        for u in frontier:
            if wg.is_boundary[u] and u not in xprime:
                continue
            for w in adj[u]:
                if w in proj:
                    continue
                p = proj[u]
                if w not in nxt or p < nxt[w]:
                    nxt[w] = p
        proj.update(nxt)
        frontier = sorted(nxt)
    return proj


def subample_detail(wg: GraphLike, d: int, strict: bool = True) -> SubampleDetail:
    """Run one subample step and expose its pieces.

    Branch points are interior vertices of degree >= 3.  They are linked
    when the path between them avoids other branch points; the distance
    <= 3 graph of those links is colored greedily with ``d**3`` colors, and
    the class whose projection preimage holds the most interior vertices is
    marked.  Marked points plus the branch-point-free corridors hanging off
    them (interior vertices only) are removed.

    With ``strict`` a component whose interior would vanish raises
    :class:`WindowTooSmallError`; otherwise marks in such components are
    withdrawn.  Marks whose removal would leave an isolated end (possible
    only because flags truncate rays) are withdrawn as well and counted.
    """
    wg = as_window(wg)
    g = wg.graph
    if not is_acyclic(g):
        raise PreconditionError("subample needs an acyclic window")
    for v in range(wg.n):
        if g.degree(v) > d:
            raise PreconditionError(f"vertex {v} has degree {g.degree(v)} > {d}", witness=v)
    verdict = is_ample(wg)
    if not verdict:
        raise PreconditionError(f"window is not ample: {verdict.reason}", witness=verdict.vertex)
    interior = [v for v in range(wg.n) if not wg.is_boundary[v]]
    xprime = {v for v in interior if g.degree(v) >= 3}
    links = _branch_graph(wg, xprime)
    proj = _projection(wg, xprime)

    # distance <= 3 graph on branch points, relabelled in id order
    pts = sorted(xprime)
    index = {x: i for i, x in enumerate(pts)}
    near: list[set[int]] = []
    for x in pts:
        seen = {x}
        frontier = [x]
        for _ in range(3):
            frontier = [w for u in frontier for w in links[u] if w not in seen]
            seen.update(frontier)
        near.append({index[w] for w in seen if w != x})
    h = Graph(tuple(tuple(sorted(s)) for s in near))
    palette = d ** 3
    hcolor = greedy_color(h, palette)
    tally: dict[int, int] = {}
    for v in interior:
        if v in proj:
            col = hcolor[index[proj[v]]]
            tally[col] = tally.get(col, 0) + 1
    best = min(tally, key=lambda col: (-tally[col], col)) if tally else None
    marked = {pts[i] for i, col in hcolor.items() if col == best}

    def removal(marks):
        removed = set(marks)
        stack = list(marks)
        while stack:
            u = stack.pop()
            for w in g.adjacency[u]:
                if w not in removed and w not in xprime and not wg.is_boundary[w]:
                    removed.add(w)
                    stack.append(w)
        return removed

    removed = removal(marked)
    starved = [comp for comp in connected_components(g)
               if any(not wg.is_boundary[v] for v in comp)
               and all(wg.is_boundary[v] or v in removed for v in comp)]
    if starved:
        if strict:
            raise WindowTooSmallError("subample set would miss a component", witness=starved[0])
        drop = {v for comp in starved for v in comp}
        marked -= drop
        removed = removal(marked)
    def kept_after(removed):
        kept = {v for v in range(wg.n) if v not in removed}
        return {v for v in kept if not wg.is_boundary[v] or any(w in kept for w in g.adjacency[v])}

    # A flag cuts its ray short, so the window cannot see branching beyond
    # it; a removal can then strand an isolated end.  Withdraw the least
    # mark next to each such spot until the kept part is ample again.
    kept = kept_after(removed)
    withdrawn = 0
    regions = {c: removal([c]) for c in marked}
    while True:
        sub, ids = induced_window(wg, kept)
        verdict = is_ample(sub)
        if verdict:
            break
        spot = {ids[i] for i in verdict.component or ()}
        if verdict.vertex is not None:
            spot.add(ids[verdict.vertex])
        near = spot | {w for v in spot for w in g.adjacency[v]}
        culprits = sorted(c for c in marked if regions[c] & near)
        if not culprits:
            raise InvariantViolation("subample left a non-ample set with no mark to withdraw")
        marked.discard(culprits[0])
        withdrawn += 1
        kept = kept_after(removal(marked))
    preimage = sum(1 for v in interior if v in proj and proj[v] in marked)
    return SubampleDetail(
        kept=frozenset(kept),
        removed=frozenset(range(wg.n)) - frozenset(kept),
        branch_points=tuple(pts),
        marked=frozenset(marked),
        projection=proj,
        palette=palette,
        marked_preimage=preimage,
        withdrawn=withdrawn,
        interior_count=len(interior),
    )


def subample_set(wg: GraphLike, d: int) -> frozenset[int]:
    """Vertex set ``A`` meeting every component, with the induced window ample.

    At least ``interior_count / d**3`` interior vertices are left out of
    ``A``.  Boundary vertices stay in ``A`` unless all their neighbors are
    removed.
    """
    return subample_detail(wg, d, strict=True).kept


# -- reduction to the ample case and the full construction -------------------

def _escape_counts(wg: WindowedGraph) -> list[int]:
    """Per vertex: neighbor branches holding a boundary vertex, plus its own ray."""
    g = wg.graph
    parent, order = _rooted_forest(g)
    flags = [1 if b else 0 for b in wg.is_boundary]
    (sb,) = _subtree_sums(parent, order, flags)
    root_of = [0] * g.n
    for u in order:
        root_of[u] = u if parent[u] < 0 else root_of[parent[u]]
    counts = []
    for x in range(g.n):
        c = flags[x]
        for y in g.adjacency[x]:
            if y == parent[x]:
                c += (sb[root_of[x]] - sb[x]) > 0
            else:
                c += sb[y] > 0
        counts.append(c)
    return counts


def _check_forest_window(wg: WindowedGraph) -> list[list[int]]:
    if not is_acyclic(wg.graph):
        raise PreconditionError("window is not acyclic")
    comps = connected_components(wg.graph)
    for comp in comps:
        ends = window_end_count(wg, comp)
        if ends in (0, 2):
            raise PreconditionError(f"component has {ends} ends", witness=comp)
    return comps


def reduce_to_ample(wg: GraphLike) -> tuple[frozenset[int], OneEndedFunction]:
    """Split an acyclic window into an ample part and a solved remainder.

    ``A`` is the set of vertices with two disjoint escapes to infinity
    through distinct neighbors (a boundary vertex counts its own ray as one
    escape).  One-ended components miss ``A`` and point toward their end.
    Isolated ends of ``A`` (corridors of degree-2 interior vertices running
    out to a boundary leaf) are layered by distance from the branching
    vertices of ``A`` and peeled with :func:`iterative_one_ended`, taking
    their whole components along.  Returns the ample part ``B`` (with its
    boundary vertices) and a one-ended function covering every interior
    vertex outside the components of ``B``.
    """
    wg = as_window(wg)
    comps = _check_forest_window(wg)
    g = wg.graph
    adj = g.adjacency
    bnd = wg.is_boundary
    mapping: dict[int, int] = {}

    esc = _escape_counts(wg)
    in_a = [esc[v] >= 2 for v in range(wg.n)]
    for comp in comps:
        if window_end_count(wg, comp) == 1:
            flag = [v for v in comp if bnd[v]]
            sub, ids = induced_window(wg, comp)
            mapping.update(_lift(pointaway(sub, [ids.index(flag[0])]).mapping, ids))

    a_set = {v for v in range(wg.n) if in_a[v]}
    deg_a = {v: sum(1 for w in adj[v] if w in a_set) for v in a_set}
    branching = [v for v in a_set if deg_a[v] >= 3]
    corridor = {v for v in a_set if not bnd[v] and deg_a[v] == 2}
    iso: set[int] = set()
    for piece in connected_components(g, corridor):
        ends = {w for v in piece for w in adj[v] if w in a_set and bnd[w] and deg_a[w] == 1}
        if ends:
            iso.update(piece)
            iso.update(ends)
    if iso:
        dist = bfs_distances(g, branching, allowed=a_set)
        layers = [iso]
        level = 1
        while True:
            nxt = {v for v in iso if dist[v] is not None and dist[v] >= level}
            if not nxt or nxt == layers[-1] and all(bnd[v] for v in nxt):
                break
            layers.append(nxt)
            level += 1
        if any(not bnd[v] for v in layers[-1]):
            raise InvariantViolation("isolated-end layers did not run out at the boundary")
        sat = {v for comp in comps if any(u in iso for u in comp) for v in comp}
        peeled = iterative_one_ended(wg, [sat] + layers)
        mapping.update(peeled.mapping)
    else:
        sat = set()
    ample = frozenset(v for v in a_set if v not in sat)
    return ample, OneEndedFunction(wg.n, mapping)


def one_ended_forest(wg: GraphLike, max_depth: int = DEFAULT_CHAIN_DEPTH, d: Optional[int] = None) -> OneEndedFunction:
    """One-ended function defined on every interior vertex of an acyclic window.

    Pipeline: :func:`reduce_to_ample`; on the ample part, repeat the
    subample step to build a decreasing chain until no component can give
    up another branch point; close the chain with the remaining boundary
    vertices; apply :func:`iterative_one_ended`; finally point the dangling
    finite branches toward the ample part.  Components must not have 0 or 2
    ends.  More than ``max_depth`` subample stages is an error.
    """
    wg = as_window(wg)
    g = wg.graph
    if d is None:
        d = max(3, g.max_degree())
    ample, rest = reduce_to_ample(wg)
    mapping = dict(rest.mapping)
    if ample:
        chain = [set(ample)]
        current = set(ample)
        for _ in range(max_depth):
            sub, ids = induced_window(wg, current)
            if not sub.interior:
                break
            step = subample_detail(sub, d, strict=False)
            nxt = {ids[i] for i in step.kept}
            if nxt == current:
                break
            chain.append(nxt)
            current = nxt
        else:
            sub, ids = induced_window(wg, current)
            if sub.interior and subample_detail(sub, d, strict=False).kept != frozenset(range(sub.n)):
                raise PreconditionError(f"subample chain did not settle within {max_depth} stages")
        final = {v for v in current if wg.is_boundary[v]}
        if final != current:
            chain.append(final)
        mapping.update(iterative_one_ended(wg, chain).mapping)
        hull = {v for comp in connected_components(g) if any(u in ample for u in comp) for v in comp}
        if hull - ample:
            sub, ids = induced_window(wg, hull)
            target = [i for i, v in enumerate(ids) if v in ample]
            mapping.update(_lift(pointaway(sub, target).mapping, ids))
    f = OneEndedFunction(wg.n, mapping)
    missing = [v for v in wg.interior if v not in mapping]
    if missing:
        raise InvariantViolation(f"interior vertex {missing[0]} left without a value")
    return f


# -- rank layers and coloring ------------------------------------------------

def rank_layers(f: OneEndedFunction) -> list[frozenset[int]]:
    """Layer ``i`` holds domain points of rank ``i``: longest backward chain length."""
    pre: dict[int, list[int]] = {}
    for x, y in f.mapping.items():
        pre.setdefault(y, []).append(x)
    rank: dict[int, int] = {}
    pending = {x: len(pre.get(x, ())) for x in f.mapping}
    ready = [x for x, k in pending.items() if k == 0]
    while ready:
        x = ready.pop()
        rank[x] = max((rank[u] + 1 for u in pre.get(x, ())), default=0)
        y = f.mapping[x]
        if y in pending:
            pending[y] -= 1
            if pending[y] == 0:
                ready.append(y)
    if len(rank) != len(f.mapping):
        raise PreconditionError("function has a directed cycle; ranks are undefined")
    layers: list[set[int]] = []
    for x, r in rank.items():
        while len(layers) <= r:
            layers.append(set())
        layers[r].add(x)
    return [frozenset(s) for s in layers]


def rank_list_color(g: GraphLike, f: OneEndedFunction, lists: Mapping[int, Iterable[int]]) -> Coloring:
    """Color ``G`` on the domain of ``f`` from lists, one rank layer at a time.

    Each layer is colored greedily from lists shrunk by the colors of
    already-colored lower-layer neighbors.  The neighbor ``f(x)`` is still
    uncolored when ``x`` is reached, so lists with ``|L(x)| >= deg(x)``
    never run out.
    """
    g = _plain(g)
    for x in sorted(f.mapping):
        if x not in lists:
            raise PreconditionError(f"vertex {x} has no list", witness=x)
        if len(set(lists[x])) < g.degree(x):
            raise PreconditionError(
                f"vertex {x}: list size {len(set(lists[x]))} below degree {g.degree(x)}", witness=x
            )
    c: Coloring = {}
    for layer in rank_layers(f):
        shrunk = {x: set(lists[x]) - {c[w] for w in g.adjacency[x] if w in c} for x in layer}
        c.update(greedy_list_color(g, layer, shrunk))
    return c


# -- lifting a block-level forest to vertices -----------------------------------

def _lex_first_step(g: Graph, x: int, targets: set[int]) -> int:
    dist = bfs_distances(g, targets)
    dx = dist[x]
    return min(w for w in g.adjacency[x] if dist[w] is not None and dist[w] == dx - 1)


def lift_block_forest(
    g: GraphLike, bd: BlockDecomposition, f_blocks: OneEndedFunction
) -> OneEndedFunction:
    """Lift a one-ended function on blocks to one on vertices.

    ``g(x)`` is the least block containing ``x``; ``g'(x)`` is ``g(x)``
    unless ``x`` already lies in ``f(g(x))``, in which case it is
    ``f(g(x))``.  Then ``x`` steps to the next vertex of the
    lexicographically least shortest path from ``x`` into ``f(g'(x))``.
    When ``g'(x)`` has no value but contains boundary vertices of a window,
    ``x`` heads for the nearest of those instead; otherwise ``x`` is left
    without a value.
    """
    wg = as_window(g)
    plain = wg.graph
    if f_blocks.n != len(bd.blocks):
        raise PreconditionError("block function size does not match the decomposition")
    for b, c in f_blocks.mapping.items():
        if c not in bd.block_graph.adjacency[b]:
            raise PreconditionError(f"block map {b}->{c} is not a block-graph edge", witness=b)
    problems = audit_one_ended(bd.block_graph, f_blocks)
    if problems:
        raise PreconditionError(f"block function is not one-ended: {problems[0]}")
    block_sets = [frozenset(b) for b in bd.blocks]
    mapping: dict[int, int] = {}
    for x in range(wg.n):
        if wg.is_boundary[x] or not bd.blocks_of[x]:
            continue
        home = bd.blocks_of[x][0]
        if home in f_blocks.mapping and x in block_sets[f_blocks.mapping[home]]:
            home = f_blocks.mapping[home]
        if home in f_blocks.mapping:
            target = block_sets[f_blocks.mapping[home]]
            if x in target:
                raise InvariantViolation(f"vertex {x} lies in its own target block")
        else:
            target = frozenset(v for v in block_sets[home] if wg.is_boundary[v])
            if not target:
                continue
        mapping[x] = _lex_first_step(plain, x, set(target))
    return OneEndedFunction(wg.n, mapping)
