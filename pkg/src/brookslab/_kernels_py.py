"""Pure-Python reference versions of the hot kernels.

Same signatures and results as the compiled ``_kernels`` extension; used
when the extension is unavailable or ``BROOKSLAB_PURE=1`` is set.
"""
from .errors import BudgetExceededError


def list_color_search(adjacency, lists, budget):
    """Backtracking search for a coloring from ``lists``.

    Vertices are assigned in id order and candidate colors in list order
    (callers pass sorted lists).  Returns ``(colors, nodes)`` where
    ``colors`` is a list or ``None`` when no coloring exists; ``nodes``
    counts attempted placements.  Raises when ``nodes`` would pass
    ``budget``.
    """
    n = len(adjacency)
    earlier = [[w for w in adjacency[v] if w < v] for v in range(n)]
    colors = [-1] * n
    cursor = [0] * n
    nodes = 0
    v = 0
    while 0 <= v < n:
        cand = lists[v]
        i = cursor[v]
        placed = False
        while i < len(cand):
            c = cand[i]
            i += 1
            for w in earlier[v]:
                if colors[w] == c:
                    break
            else:
                nodes += 1
                if nodes > budget:
                    raise BudgetExceededError(f"list-coloring search exceeded {budget} nodes")
                colors[v] = c
                cursor[v] = i
                placed = True
                break
        if placed:
            v += 1
        else:
            cursor[v] = 0
            colors[v] = -1
            v -= 1
    return (colors if v == n else None), nodes


def wired_kruskal(n, edges, order, is_boundary, wired):
    """Cycle-criterion spanning forest with optional wiring at infinity.

    Edges are scanned in ``order`` (ascending label).  An edge is rejected
    when its endpoints are already joined by cheaper edges, or, if
    ``wired``, when both endpoint clusters already contain a boundary
    vertex.  Returns a keep-flag per edge.
    """
    parent = list(range(n))
    hits = [bool(b) for b in is_boundary]
    kept = [False] * len(edges)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in order:
        u, v = edges[e]
        ru, rv = find(u), find(v)
        if ru == rv:
            continue
        if wired and hits[ru] and hits[rv]:
            continue
        if ru < rv:
            ru, rv = rv, ru
        parent[ru] = rv
        hits[rv] = hits[rv] or hits[ru]
        kept[e] = True
    return kept
