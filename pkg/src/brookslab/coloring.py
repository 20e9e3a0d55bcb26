"""Colorings, list assignments, checking, greedy and exhaustive coloring.

A coloring is a plain ``dict`` from vertex to a nonnegative integer color;
vertices missing from the dict are uncolored.  A list assignment is a
``dict`` from vertex to a set of allowed colors.  Ties are always broken
toward the least color and the least vertex id.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from . import kernels
from .errors import BudgetExceededError, PreconditionError, StuckVertexError
from .graph import Graph, GraphLike, _plain

__all__ = [
    "Coloring",
    "ListAssignment",
    "Verdict",
    "DEFAULT_BUDGET",
    "default_budget",
    "check_coloring",
    "constant_lists",
    "greedy_color",
    "greedy_list_color",
    "brute_force_color",
    "brute_force_list_color",
    "cliques_of_size",
    "find_clique",
    "clique_busting_set",
    "antimatching_from_coloring",
    "coloring_to_json",
    "coloring_from_json",
    "lists_to_json",
    "lists_from_json",
]

Coloring = dict
ListAssignment = dict

DEFAULT_BUDGET = 10**7


def default_budget() -> int:
    """Node budget for exhaustive searches; ``BROOKSLAB_BUDGET`` overrides."""
    raw = os.environ.get("BROOKSLAB_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise PreconditionError(f"BROOKSLAB_BUDGET={raw!r} is not an integer") from None
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class Verdict:
    """Outcome of :func:`check_coloring`.

    ``proper`` ignores missing colors; ``ok`` additionally demands that
    every required vertex is colored.
    """

    monochromatic_edges: tuple[tuple[int, int], ...] = ()
    list_violations: tuple[int, ...] = ()
    uncolored: tuple[int, ...] = ()

    @property
    def proper(self) -> bool:
        return not self.monochromatic_edges and not self.list_violations

    @property
    def complete(self) -> bool:
        return not self.uncolored

    @property
    def ok(self) -> bool:
        return self.proper and self.complete

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "monochromatic_edges": [list(e) for e in self.monochromatic_edges],
            "list_violations": list(self.list_violations),
            "uncolored": list(self.uncolored),
        }


def check_coloring(
    g: GraphLike,
    c: Mapping[int, int],
    lists: Optional[Mapping[int, Iterable[int]]] = None,
    vertices: Optional[Iterable[int]] = None,
) -> Verdict:
    """Report monochromatic edges, off-list colors and uncolored vertices.

    ``vertices`` names the vertices that must be colored (default: all).
    Vertices without a list are not list-checked.
    """
    g = _plain(g)
    mono = []
    for u, v in g.edges():
        cu = c.get(u)
        if cu is not None and cu == c.get(v):
            mono.append((u, v))
    bad = []
    if lists is not None:
        for v in sorted(c):
            if v in lists and c[v] not in set(lists[v]):
                bad.append(v)
    required = range(g.n) if vertices is None else sorted(set(vertices))
    missing = tuple(v for v in required if c.get(v) is None)
    return Verdict(tuple(mono), tuple(bad), missing)


def constant_lists(vertices: Iterable[int], colors: Iterable[int]) -> ListAssignment:
    palette = frozenset(colors)
    return {v: palette for v in vertices}


def _check_lists(lists: Mapping[int, Iterable[int]]) -> None:
    for v, lst in lists.items():
        lst = list(lst)
        if not lst:
            raise PreconditionError(f"vertex {v} has an empty list", witness=v)
        if len(set(lst)) != len(lst):
            raise PreconditionError(f"vertex {v} has a list with duplicates", witness=v)
        if any((not isinstance(x, int)) or x < 0 for x in lst):
            raise PreconditionError(f"vertex {v} has a non-integer or negative color", witness=v)


def greedy_color(g: GraphLike, palette_size: int, order: Optional[Iterable[int]] = None) -> Coloring:
    """First-fit coloring with colors ``1..palette_size`` along ``order``.

    Raises :class:`StuckVertexError` naming the first vertex whose
    neighbors already use every color.
    """
    g = _plain(g)
    order = range(g.n) if order is None else list(order)
    c: Coloring = {}
    for v in order:
        used = {c[w] for w in g.adjacency[v] if w in c}
        for color in range(1, palette_size + 1):
            if color not in used:
                c[v] = color
                break
        else:
            raise StuckVertexError(v)
    return c


def greedy_list_color(
    g: GraphLike, restrict_to: Iterable[int], lists: Mapping[int, Iterable[int]], strict: bool = True
) -> Coloring:
    """Color ``G`` restricted to ``restrict_to`` from lists, in id order.

    Needs every vertex to have more list entries than neighbors inside the
    set; then the least free list color always exists.  With
    ``strict=False`` that check is skipped and only a vertex that actually
    runs out of colors raises :class:`StuckVertexError`.
    """
    g = _plain(g)
    s = sorted(set(restrict_to))
    members = set(s)
    for x in s:
        if x not in lists:
            raise PreconditionError(f"vertex {x} has no list", witness=x)
        inner = sum(1 for w in g.adjacency[x] if w in members)
        if strict and inner >= len(set(lists[x])):
            raise PreconditionError(
                f"vertex {x}: degree {inner} within the set is not below list size {len(set(lists[x]))}",
                witness=x,
            )
    c: Coloring = {}
    for x in s:
        used = {c[w] for w in g.adjacency[x] if w in c}
        free = [col for col in lists[x] if col not in used]
        if not free:
            raise StuckVertexError(x)
        c[x] = min(free)
    return c


def brute_force_list_color(
    g: GraphLike, lists: Mapping[int, Iterable[int]], budget: Optional[int] = None
) -> Optional[Coloring]:
    """Exhaustive decision: a coloring of all of ``g`` from ``lists`` or ``None``.

    Backtracks in vertex-id order trying list colors in increasing order,
    so the first coloring found is the lexicographically least one.
    """
    g = _plain(g)
    if budget is None:
        budget = default_budget()
    for v in range(g.n):
        if v not in lists:
            raise PreconditionError(f"vertex {v} has no list", witness=v)
    _check_lists({v: lists[v] for v in range(g.n)})
    cand = [tuple(sorted(set(lists[v]))) for v in range(g.n)]
    colors, _ = kernels.list_color_search(g.adjacency, cand, budget)
    if colors is None:
        return None
    return dict(enumerate(colors))


def brute_force_color(g: GraphLike, k: int, budget: Optional[int] = None) -> Optional[Coloring]:
    """Exhaustive proper ``k``-coloring with colors ``1..k``, or ``None``."""
    g = _plain(g)
    if k <= 0:
        return {} if g.n == 0 else None
    return brute_force_list_color(g, constant_lists(range(g.n), range(1, k + 1)), budget)


# -- cliques and clique busting ---------------------------------------------

def cliques_of_size(g: GraphLike, k: int) -> list[tuple[int, ...]]:
    """All ``k``-vertex cliques as sorted tuples, in lexicographic order."""
    g = _plain(g)
    if k <= 0:
        return [()]
    out: list[tuple[int, ...]] = []
    adj = [set(a) for a in g.adjacency]

    def grow(clique, cand):
        if len(clique) == k:
            out.append(tuple(clique))
            return
        for w in sorted(cand):
            if len(clique) + 1 + sum(1 for x in cand if x > w) < k:
                break
            grow(clique + [w], {x for x in cand if x > w and x in adj[w]})

    for v in range(g.n):
        grow([v], {w for w in adj[v] if w > v})
    return out


def find_clique(g: GraphLike, k: int) -> Optional[tuple[int, ...]]:
    found = cliques_of_size(g, k)
    return found[0] if found else None


def clique_busting_set(g: GraphLike, d: int) -> frozenset[int]:
    """Maximal independent set meeting every ``d``-clique (degree ``<= d``, ``d >= 3``).

    ``Y`` is the set of vertices lying in exactly one ``d``-clique; two
    ``Y`` vertices are E-related when that clique is the same and
    F-related when adjacent but not E-related.  A clique whose E-class has
    at least two members is unpaired: all its vertices are in ``Y`` and
    each has at most one neighbor outside it.  Taking the two least members
    of each such class, the candidate pairs and the F-edges between them
    form disjoint alternating paths and even cycles, and picking every
    other vertex along each gives an E-transversal with no F-conflict.  A
    clique whose E-class is a singleton shares ``d - 1`` vertices with
    exactly one other ``d``-clique; it is met through the least shared
    vertex, whose neighbors all lie inside the pair.  The result is then
    extended greedily to a maximal independent set.
    """
    g = _plain(g)
    if d < 3:
        raise PreconditionError("clique busting needs d >= 3", witness=d)
    for v in range(g.n):
        if g.degree(v) > d:
            raise PreconditionError(f"vertex {v} has degree {g.degree(v)} > {d}", witness=v)
    big = find_clique(g, d + 1)
    if big is not None:
        raise PreconditionError(f"graph contains a clique on {d + 1} vertices", witness=list(big))

    cliques = cliques_of_size(g, d)
    membership: dict[int, list[int]] = {}
    for i, K in enumerate(cliques):
        for v in K:
            membership.setdefault(v, []).append(i)
    y = {v for v, ks in membership.items() if len(ks) == 1}

    chosen: set[int] = set()
    partner: dict[int, int] = {}
    for i, K in enumerate(cliques):
        cls = [v for v in K if v in y]
        if len(cls) >= 2:
            a, b = cls[0], cls[1]
            partner[a], partner[b] = b, a
        else:
            # singleton class: pick the least vertex shared with the twin clique
            shared = [v for v in K if len(membership[v]) >= 2]
            chosen.add(shared[0])

    conflict: dict[int, int] = {}
    for a in partner:
        for w in g.adjacency[a]:
            if w in partner and w != partner[a] and membership[w][0] != membership[a][0]:
                conflict[a] = w
    picked: set[int] = set()
    visited: set[int] = set()

    def walk(start):
        v = start
        while v not in visited:
            visited.add(v)
            picked.add(v)
            mate = partner[v]
            visited.add(mate)
            nxt = conflict.get(mate)
            if nxt is None:
                return
            v = nxt

    ends = sorted(v for v in partner if v not in conflict)
    for v in ends:
        if v not in visited:
            walk(v)
    for v in sorted(partner):
        if v not in visited:
            walk(v)
    chosen |= picked

    for v in range(g.n):
        if v not in chosen and not any(w in chosen for w in g.adjacency[v]):
            chosen.add(v)
    return frozenset(chosen)


def antimatching_from_coloring(g: GraphLike, edge_coloring: Mapping[int, Iterable[int]]) -> dict[int, int]:
    """Turn a coloring from incident-edge lists into an antimatching.

    ``edge_coloring[x]`` is an edge ``{x, y}`` of ``g``; adjacent vertices
    must pick different edges.  Returns ``f(x) = y``; ``f(f(x)) != x``.
    """
    g = _plain(g)
    chosen: dict[int, frozenset[int]] = {}
    for x in range(g.n):
        if x not in edge_coloring:
            raise PreconditionError(f"vertex {x} has no chosen edge", witness=x)
        e = frozenset(edge_coloring[x])
        if len(e) != 2 or x not in e:
            raise PreconditionError(f"choice at {x} is not an edge containing {x}", witness=x)
        (y,) = e - {x}
        if not g.has_edge(x, y):
            raise PreconditionError(f"{{{x}, {y}}} is not an edge", witness=x)
        chosen[x] = e
    for u, v in g.edges():
        if chosen[u] == chosen[v]:
            raise PreconditionError(f"adjacent {u} and {v} chose the same edge", witness=(u, v))
    return {x: next(iter(chosen[x] - {x})) for x in range(g.n)}


# -- JSON forms ----------------------------------------------------------------

def coloring_to_json(n: int, c: Mapping[int, int]) -> dict:
    return {"n": n, "colors": [c.get(v) for v in range(n)]}


def coloring_from_json(obj: dict) -> tuple[int, Coloring]:
    n = obj["n"]
    colors = obj["colors"]
    if not isinstance(n, int) or len(colors) != n:
        raise PreconditionError("coloring JSON: 'colors' length must equal 'n'")
    return n, {v: col for v, col in enumerate(colors) if col is not None}


def lists_to_json(n: int, lists: Mapping[int, Iterable[int]]) -> dict:
    return {"lists": [sorted(lists[v]) if v in lists else [] for v in range(n)]}


def lists_from_json(obj: dict) -> ListAssignment:
    return {v: frozenset(lst) for v, lst in enumerate(obj["lists"]) if lst}
