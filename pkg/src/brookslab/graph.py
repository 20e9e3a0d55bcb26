"""Finite simple graphs, windows onto infinite graphs, and block structure.

Vertices are dense integer ids ``0..n-1``.  Every "choose one" step in the
library resolves to the least id, so all outputs are reproducible.

A :class:`WindowedGraph` is a finite piece of a locally finite infinite
graph.  Flagged (boundary) vertices stand for a truncated ray running off
to infinity; they are never assigned one-ended function values and are
never required to be colored.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .errors import GraphFormatError, PreconditionError

__all__ = [
    "Graph",
    "WindowedGraph",
    "BlockDecomposition",
    "build_graph",
    "as_window",
    "induced_subgraph",
    "induced_window",
    "bfs_distances",
    "graph_distance",
    "connected_components",
    "is_connected_set",
    "is_acyclic",
    "blocks",
    "boundary_of_set",
    "find_odd_cycle",
    "is_clique",
    "window_end_count",
    "parse_edge_list",
    "read_edge_list",
    "format_edge_list",
]


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph stored as sorted adjacency tuples."""

    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.adjacency)
        for u, nbrs in enumerate(self.adjacency):
            prev = -1
            for v in nbrs:
                if not 0 <= v < n:
                    raise GraphFormatError(f"neighbor {v} of {u} out of range")
                if v == u:
                    raise GraphFormatError(f"self-loop at {u}")
                if v <= prev:
                    raise GraphFormatError(f"adjacency of {u} not sorted/unique")
                prev = v
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                # bisect would be faster; lists are short (bounded degree)
                if u not in self.adjacency[v]:
                    raise GraphFormatError(f"edge {u}-{v} is not symmetric")

    @property
    def n(self) -> int:
        return len(self.adjacency)

    vertex_count = n

    def __len__(self) -> int:
        return len(self.adjacency)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(u, v)`` with ``u < v``, in lexicographic order."""
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]


@dataclass(frozen=True)
class WindowedGraph:
    """A :class:`Graph` plus per-vertex flags marking points at infinity."""

    graph: Graph
    is_boundary: tuple[bool, ...]

    def __post_init__(self):
        if len(self.is_boundary) != self.graph.n:
            raise GraphFormatError("boundary flag vector has the wrong length")
        for v, flag in enumerate(self.is_boundary):
            if flag and not self.graph.adjacency[v]:
                raise GraphFormatError(f"boundary vertex {v} is isolated")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def boundary(self) -> list[int]:
        return [v for v, f in enumerate(self.is_boundary) if f]

    @property
    def interior(self) -> list[int]:
        return [v for v, f in enumerate(self.is_boundary) if not f]


GraphLike = Union[Graph, WindowedGraph]


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks (maximal biconnected sets) of a graph.

    ``block_graph`` links the blocks of each cut vertex as a star centred on
    the least-index block through it.  That keeps it a forest (one tree per
    component of the graph); the full intersection graph would contain a
    clique wherever three or more blocks share a cut vertex.
    """

    blocks: tuple[tuple[int, ...], ...]
    cut_vertices: frozenset[int]
    block_graph: Graph
    blocks_of: tuple[tuple[int, ...], ...] = field(repr=False)


def _from_sets(sets: Sequence[Iterable[int]]) -> Graph:
    return Graph(tuple(tuple(sorted(s)) for s in sets))


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a simple graph on ``n`` vertices; duplicate edges collapse."""
    if n < 0:
        raise GraphFormatError("vertex count must be nonnegative")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge ({u}, {v}) has an id out of range 0..{n - 1}")
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}")
        adj[u].add(v)
        adj[v].add(u)
    return _from_sets(adj)


def as_window(g: GraphLike) -> WindowedGraph:
    """View a plain graph as a window with no points at infinity."""
    if isinstance(g, WindowedGraph):
        return g
    return WindowedGraph(g, (False,) * g.n)


def _plain(g: GraphLike) -> Graph:
    return g.graph if isinstance(g, WindowedGraph) else g


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph, relabelled in increasing id order.

    Returns the subgraph and ``ids`` with ``ids[new] == old``.  The
    relabelling is monotone, so least-id choices agree on both sides.
    """
    ids = sorted(set(vertices))
    index = {v: i for i, v in enumerate(ids)}
    adj = [tuple(index[w] for w in g.adjacency[v] if w in index) for v in ids]
    return Graph(tuple(adj)), ids


def induced_window(wg: WindowedGraph, vertices: Iterable[int]) -> tuple[WindowedGraph, list[int]]:
    """Induced window; boundary vertices left without neighbors are dropped."""
    keep = set(vertices)
    g = wg.graph
    keep = {v for v in keep if not wg.is_boundary[v] or any(w in keep for w in g.adjacency[v])}
    sub, ids = induced_subgraph(g, keep)
    return WindowedGraph(sub, tuple(wg.is_boundary[v] for v in ids)), ids


def bfs_distances(g: Graph, sources: Iterable[int], allowed=None) -> list:
    """Multi-source BFS distances; ``None`` marks unreachable vertices.

    ``allowed`` restricts the search to a vertex subset (the induced graph).
    """
    dist: list = [None] * g.n
    queue = deque()
    for s in sources:
        if allowed is not None and s not in allowed:
            continue
        if dist[s] is None:
            dist[s] = 0
            queue.append(s)
    adj = g.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if dist[w] is None and (allowed is None or w in allowed):
                dist[w] = du
                queue.append(w)
    return dist


def graph_distance(g: GraphLike, u: int, v: int):
    """Shortest-path length between ``u`` and ``v`` (``math.inf`` if none)."""
    g = _plain(g)
    for x in (u, v):
        if not 0 <= x < g.n:
            raise GraphFormatError(f"vertex {x} out of range")
    d = bfs_distances(g, [u])[v]
    return math.inf if d is None else d


def connected_components(g: GraphLike, within: Iterable[int] | None = None) -> list[list[int]]:
    """Components (of the induced graph on ``within`` if given), by least id."""
    g = _plain(g)
    allowed = None if within is None else set(within)
    seen = [False] * g.n
    order = range(g.n) if allowed is None else sorted(allowed)
    comps = []
    for s in order:
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adjacency[u]:
                if not seen[w] and (allowed is None or w in allowed):
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comp.sort()
        comps.append(comp)
    return comps


def is_connected_set(g: GraphLike, s: Iterable[int]) -> bool:
    s = set(s)
    if not s:
        return False
    return len(connected_components(g, s)) == 1


def is_acyclic(g: GraphLike) -> bool:
    g = _plain(g)
    return g.edge_count == g.n - len(connected_components(g))


def blocks(g: GraphLike) -> BlockDecomposition:
    """Biconnected components via an iterative Hopcroft-Tarjan DFS.

    Bridges come out as 2-vertex blocks and isolated vertices as singleton
    blocks.  Blocks are sorted tuples, listed in lexicographic order.
    """
    g = _plain(g)
    n = g.n
    adj = g.adjacency
    disc = [-1] * n
    low = [0] * n
    found: list[tuple[int, ...]] = []
    clock = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        if not adj[root]:
            found.append((root,))
            continue
        stack = [(root, -1, iter(adj[root]))]
        edge_stack: list[tuple[int, int]] = []
        while stack:
            u, parent, it = stack[-1]
            descended = False
            for w in it:
                if disc[w] == -1:
                    edge_stack.append((u, w))
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, u, iter(adj[w])))
                    descended = True
                    break
                if w != parent and disc[w] < disc[u]:
                    edge_stack.append((u, w))
                    if disc[w] < low[u]:
                        low[u] = disc[w]
            if descended:
                continue
            stack.pop()
            if not stack:
                continue
            p = stack[-1][0]
            if low[u] < low[p]:
                low[p] = low[u]
            if low[u] >= disc[p]:
                comp: set[int] = set()
                while True:
                    e = edge_stack.pop()
                    comp.update(e)
                    if e == (p, u):
                        break
                found.append(tuple(sorted(comp)))
    found.sort()
    blocks_of: list[list[int]] = [[] for _ in range(n)]
    for i, b in enumerate(found):
        for v in b:
            blocks_of[v].append(i)
    cut = frozenset(v for v in range(n) if len(blocks_of[v]) >= 2)
    badj: list[set[int]] = [set() for _ in found]
    for v in sorted(cut):
        hub, *rest = blocks_of[v]
        for j in rest:
            badj[hub].add(j)
            badj[j].add(hub)
    return BlockDecomposition(
        blocks=tuple(found),
        cut_vertices=cut,
        block_graph=_from_sets(badj),
        blocks_of=tuple(tuple(b) for b in blocks_of),
    )


def boundary_of_set(g: GraphLike, s: Iterable[int]) -> frozenset[int]:
    """Vertices outside ``s`` adjacent to some vertex of ``s``."""
    g = _plain(g)
    s = set(s)
    return frozenset(w for v in s for w in g.adjacency[v] if w not in s)


def find_odd_cycle(g: GraphLike) -> list[int] | None:
    """An odd cycle as a vertex list (first vertex not repeated), or ``None``.

    Witness of a failed BFS 2-coloring: two same-parity endpoints of an
    edge joined through their lowest common BFS ancestor.
    """
    g = _plain(g)
    depth = [-1] * g.n
    parent = [-1] * g.n
    for root in range(g.n):
        if depth[root] != -1:
            continue
        depth[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if depth[w] == -1:
                    depth[w] = depth[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif depth[w] == depth[u] and u < w:
                    left, right = [u], [w]
                    a, b = u, w
                    while a != b:
                        a, b = parent[a], parent[b]
                        left.append(a)
                        right.append(b)
                    # left ends with the common ancestor; right repeats it
                    return left + right[-2::-1]
    return None


def is_clique(g: GraphLike, s: Iterable[int]) -> bool:
    g = _plain(g)
    s = sorted(set(s))
    return all(s[j] in g.adjacency[s[i]] for i in range(len(s)) for j in range(i + 1, len(s)))


def window_end_count(wg: WindowedGraph, component: Iterable[int]) -> int:
    """Boundary vertices in a component: the window's proxy for its ends.

    Exact for acyclic components whose rays leave through distinct boundary
    vertices; on windows with cycles it can overcount.
    """
    comp = set(component)
    if not is_connected_set(wg.graph, comp):
        raise PreconditionError("component is not connected", witness=sorted(comp))
    return sum(1 for v in comp if wg.is_boundary[v])


# -- edge-list text format ---------------------------------------------------

def parse_edge_list(text: str) -> GraphLike:
    """Parse ``"n m"`` + ``m`` lines ``"u v"`` + optional ``"boundary: ..."``.

    Returns a :class:`WindowedGraph` when a boundary line is present.
    """
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), 1)]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphFormatError("empty input", line=1)
    lineno, head = lines[0]
    parts = head.split()
    if len(parts) != 2:
        raise GraphFormatError("header must be 'n m'", line=lineno)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphFormatError("header must be two integers", line=lineno) from None
    if n < 0 or m < 0:
        raise GraphFormatError("negative count in header", line=lineno)
    body = lines[1:]
    if len(body) < m:
        raise GraphFormatError(f"expected {m} edge lines, found {len(body)}", line=lineno)
    edges = []
    for lineno, ln in body[:m]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError("edge line must be 'u v'", line=lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError("edge ids must be integers", line=lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge ({u}, {v}) out of range", line=lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at {u}", line=lineno)
        edges.append((u, v))
    g = build_graph(n, edges)
    rest = body[m:]
    if not rest:
        return g
    if len(rest) > 1:
        raise GraphFormatError("unexpected trailing lines", line=rest[1][0])
    lineno, ln = rest[0]
    if not ln.startswith("boundary:"):
        raise GraphFormatError("trailing line must start with 'boundary:'", line=lineno)
    flags = [False] * n
    for tok in ln[len("boundary:"):].split():
        try:
            v = int(tok)
        except ValueError:
            raise GraphFormatError(f"bad boundary id {tok!r}", line=lineno) from None
        if not 0 <= v < n:
            raise GraphFormatError(f"boundary id {v} out of range", line=lineno)
        flags[v] = True
    try:
        return WindowedGraph(g, tuple(flags))
    except GraphFormatError as exc:
        raise GraphFormatError(str(exc), line=lineno) from None


def read_edge_list(path) -> GraphLike:
    with open(path) as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g: GraphLike) -> str:
    plain = _plain(g)
    edges = plain.edges()
    out = [f"{plain.n} {len(edges)}"]
    out.extend(f"{u} {v}" for u, v in edges)
    if isinstance(g, WindowedGraph):
        out.append("boundary: " + " ".join(map(str, g.boundary)))
    return "\n".join(out) + "\n"
