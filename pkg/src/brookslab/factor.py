"""Factor-of-IID coloring experiments on Cayley-graph windows.

Each trial labels the edges of a window with independent uniform reals,
keeps the wired minimal spanning forest, orients every forest component
toward its boundary vertex and colors by rank.  All randomness comes from
a counter-based hash stream keyed by ``(seed, trial, edge)``, so results do
not depend on scheduling or worker count.
"""
from __future__ import annotations

import csv
import hashlib
import io
import itertools
import json
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from . import kernels
from .coloring import check_coloring, constant_lists
from .errors import PreconditionError
from .gallai import classify_component, color_non_gallai
from .graph import Graph, WindowedGraph, as_window, build_graph, connected_components
from .oneended import OneEndedFunction, audit_one_ended, pointaway, rank_list_color

__all__ = [
    "GROUPS",
    "CayleySpec",
    "EdgeLabels",
    "Forest",
    "TrialRow",
    "ExperimentReport",
    "cayley_window",
    "iid_edge_labels",
    "wmsf",
    "msf_kruskal",
    "forest_window",
    "run_trial",
    "factor_coloring_experiment",
]

GROUPS = ("z2free", "free", "grid")


@dataclass(frozen=True)
class CayleySpec:
    """A group presentation and a window size.

    ``z2free``: free product of ``param`` copies of Z/2 (``param``-regular tree).
    ``free``: free group of rank ``param`` (``2*param``-regular tree).
    ``grid``: Z^``param`` cut to a box of ``side`` points per axis; rim
    points are flagged unless ``torus`` wraps the box instead.
    """

    group: str
    param: int
    radius: Optional[int] = None
    side: Optional[int] = None
    torus: bool = False

    def __post_init__(self):
        if self.group not in GROUPS:
            raise PreconditionError(f"unknown group {self.group!r}; expected one of {GROUPS}")
        if self.param < 1:
            raise PreconditionError("group parameter must be positive")
        if self.group == "grid":
            if self.side is None or self.side < 3:
                raise PreconditionError("grid windows need side >= 3")
        elif self.radius is None or self.radius < 1:
            raise PreconditionError("tree windows need radius >= 1")
        if self.group == "z2free" and self.param < 2:
            raise PreconditionError("z2free needs at least two involutions")

    @property
    def generator_count(self) -> int:
        return self.param if self.group == "z2free" else 2 * self.param

    def as_dict(self) -> dict:
        return {"group": self.group, "param": self.param, "radius": self.radius,
                "side": self.side, "torus": self.torus}


def _tree_ball(branching: int, radius: int, successors) -> WindowedGraph:
    """Reduced words of length <= radius in breadth-first order."""
    words = [()]
    parent_edges = []
    depth = [0]
    start = 0
    for r in range(radius):
        end = len(words)
        for i in range(start, end):
            for letter in successors(words[i]):
                parent_edges.append((i, len(words)))
                words.append(words[i] + (letter,))
                depth.append(r + 1)
        start = end
    g = build_graph(len(words), parent_edges)
    return WindowedGraph(g, tuple(dep == radius for dep in depth))


def cayley_window(spec: CayleySpec) -> WindowedGraph:
    """Deterministic window of the Cayley graph described by ``spec``."""
    if spec.group == "z2free":
        d = spec.param
        return _tree_ball(d, spec.radius, lambda w: [a for a in range(d) if not w or w[-1] != a])
    if spec.group == "free":
        k2 = 2 * spec.param
        # letter 2i is a generator, 2i+1 its inverse
        return _tree_ball(k2, spec.radius, lambda w: [a for a in range(k2) if not w or w[-1] != a ^ 1])
    dim, n = spec.param, spec.side
    points = list(itertools.product(range(n), repeat=dim))
    index = {p: i for i, p in enumerate(points)}
    edges = set()
    for p in points:
        for axis in range(dim):
            q = list(p)
            if spec.torus:
                q[axis] = (q[axis] + 1) % n
            elif q[axis] + 1 < n:
                q[axis] += 1
            else:
                continue
            u, v = index[p], index[tuple(q)]
            edges.add((min(u, v), max(u, v)))
    g = build_graph(len(points), sorted(edges))
    if spec.torus:
        return WindowedGraph(g, (False,) * g.n)
    return WindowedGraph(g, tuple(any(c in (0, n - 1) for c in p) for p in points))


@dataclass(frozen=True)
class EdgeLabels:
    """Distinct labels in ``[0, 1)`` for ``edges`` (sorted ``(u, v)``, ``u < v``)."""

    edges: tuple[tuple[int, int], ...]
    values: tuple[float, ...]
    seed: int
    stream: int = 0

    def as_dict(self) -> dict:
        return {e: x for e, x in zip(self.edges, self.values)}

    def order(self) -> list[int]:
        return sorted(range(len(self.values)), key=self.values.__getitem__)


def _uniform(seed: int, stream: int, u: int, v: int, salt: int) -> float:
    key = struct.pack("<qqqqq", seed, stream, u, v, salt)
    digest = hashlib.blake2b(key, digest_size=8).digest()
    return (int.from_bytes(digest, "little") >> 11) / float(1 << 53)


def iid_edge_labels(g, seed: int, stream: int = 0) -> EdgeLabels:
    """One uniform draw per edge, keyed by ``(seed, stream, u, v)``.

    Collisions are resolved by redrawing the later edge with a bumped salt.
    """
    edges = tuple(as_window(g).graph.edges())
    seen = set()
    values = []
    for u, v in edges:
        salt = 0
        x = _uniform(seed, stream, u, v, salt)
        while x in seen:
            salt += 1
            x = _uniform(seed, stream, u, v, salt)
        seen.add(x)
        values.append(x)
    return EdgeLabels(edges, tuple(values), seed, stream)


@dataclass(frozen=True)
class Forest:
    n: int
    kept_edges: tuple[tuple[int, int], ...]

    def graph(self) -> Graph:
        return build_graph(self.n, self.kept_edges)


def _check_labels(g: Graph, labels: EdgeLabels) -> None:
    if tuple(g.edges()) != labels.edges:
        raise PreconditionError("labels do not match the graph's edges")
    if len(set(labels.values)) != len(labels.values):
        raise PreconditionError("edge labels are not distinct")


def wmsf(g, labels: EdgeLabels, wired: bool = True) -> Forest:
    """Wired minimal spanning forest of a window.

    An edge is deleted when its label is the largest on some cycle, or
    (``wired``) when both endpoints reach boundary vertices through
    strictly cheaper edges.  With all boundary vertices glued to one point
    at infinity both rules become the cycle rule, so one Kruskal pass
    decides every edge.  ``wired=False`` applies the cycle rule alone.
    """
    wg = as_window(g)
    _check_labels(wg.graph, labels)
    kept = kernels.wired_kruskal(wg.n, list(labels.edges), labels.order(),
                                 list(wg.is_boundary), bool(wired))
    return Forest(wg.n, tuple(e for e, k in zip(labels.edges, kept) if k))


def msf_kruskal(g, labels: EdgeLabels) -> Forest:
    """Classical minimum spanning forest by sorted insertion."""
    wg = as_window(g)
    _check_labels(wg.graph, labels)
    parent = list(range(wg.n))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    kept = []
    for e in labels.order():
        u, v = labels.edges[e]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            kept.append(labels.edges[e])
    return Forest(wg.n, tuple(sorted(kept)))


def forest_window(wg: WindowedGraph, forest: Forest) -> WindowedGraph:
    """The forest as a window; boundary vertices it leaves isolated lose their flag."""
    fg = forest.graph()
    flags = tuple(b and bool(fg.adjacency[v]) for v, b in enumerate(wg.is_boundary))
    return WindowedGraph(fg, flags)


@dataclass(frozen=True)
class TrialRow:
    trial: int
    proper_rate: float
    one_ended_fraction: float
    end_counts: tuple[tuple[int, int], ...]
    color_counts: tuple[int, ...]
    audit_violations: int


def run_trial(spec: CayleySpec, d: int, seed: int, trial: int, wg: Optional[WindowedGraph] = None):
    """One labeled forest and its rank coloring; returns ``(row, coloring)``."""
    if wg is None:
        wg = cayley_window(spec)
    g = wg.graph
    labels = iid_edge_labels(wg, seed, stream=trial)
    fw = forest_window(wg, wmsf(wg, labels))
    interior = wg.interior
    ends: dict[int, int] = {}
    roots = []
    for comp in connected_components(fw.graph):
        if all(wg.is_boundary[v] for v in comp):
            continue
        k = sum(1 for v in comp if fw.is_boundary[v])
        ends[k] = ends.get(k, 0) + 1
        if k == 0:
            roots.append(min(comp))
    targets = fw.boundary + roots
    f = pointaway(fw, targets) if targets else OneEndedFunction(wg.n, {})
    violations = len(audit_one_ended(fw, f))
    palette = range(1, d + 1)
    c = rank_list_color(g, f, constant_lists(f.mapping, palette))
    for r in roots:
        used = {c[w] for w in g.adjacency[r] if w in c}
        free = [x for x in palette if x not in used]
        if free:
            c[r] = free[0]
            continue
        # a finite component with no end: rank coloring leaves its root
        # stuck, so fall back to the finite degree-list argument
        comp = next(k for k in connected_components(g) if r in k)
        if any(wg.is_boundary[v] for v in comp) or classify_component(g, comp).is_gallai_tree:
            c[r] = 1
            continue
        c.update(color_non_gallai(g, comp, constant_lists(comp, palette)))
    inner = [(u, v) for u, v in g.edges() if not wg.is_boundary[u] and not wg.is_boundary[v]]
    verdict = check_coloring(g, {v: c[v] for v in interior}, vertices=interior)
    bad = len(verdict.monochromatic_edges)
    proper_rate = 1.0 if not inner else (len(inner) - bad) / len(inner)
    total = sum(ends.values())
    counts = [0] * d
    for v in interior:
        counts[c[v] - 1] += 1
    row = TrialRow(
        trial=trial,
        proper_rate=proper_rate,
        one_ended_fraction=(ends.get(1, 0) / total) if total else 0.0,
        end_counts=tuple(sorted(ends.items())),
        color_counts=tuple(counts),
        audit_violations=violations + (0 if verdict.complete else len(verdict.uncolored)),
    )
    return row, c


def _row_only(args):
    return run_trial(*args)[0]


@dataclass(frozen=True)
class ExperimentReport:
    spec: CayleySpec
    d: int
    trials: int
    seed: int
    rows: tuple[TrialRow, ...]

    @property
    def proper_interior_rate(self) -> float:
        return sum(r.proper_rate for r in self.rows) / len(self.rows)

    @property
    def min_proper_rate(self) -> float:
        return min(r.proper_rate for r in self.rows)

    @property
    def one_ended_fraction(self) -> float:
        return sum(r.one_ended_fraction for r in self.rows) / len(self.rows)

    @property
    def end_histogram(self) -> dict[int, float]:
        pooled: dict[int, int] = {}
        for r in self.rows:
            for k, m in r.end_counts:
                pooled[k] = pooled.get(k, 0) + m
        total = sum(pooled.values())
        return {k: pooled[k] / total for k in sorted(pooled)} if total else {}

    @property
    def color_frequencies(self) -> list[float]:
        sums = [sum(r.color_counts[i] for r in self.rows) for i in range(self.d)]
        total = sum(sums)
        return [s / total for s in sums] if total else [0.0] * self.d

    def to_json(self) -> str:
        body = {
            "spec": self.spec.as_dict(),
            "d": self.d,
            "trials": self.trials,
            "seed": self.seed,
            "proper_interior_rate": self.proper_interior_rate,
            "min_proper_rate": self.min_proper_rate,
            "one_ended_fraction": self.one_ended_fraction,
            "end_histogram": {str(k): v for k, v in self.end_histogram.items()},
            "color_frequencies": self.color_frequencies,
            "audit_violations": sum(r.audit_violations for r in self.rows),
        }
        return json.dumps(body, indent=2) + "\n"

    def to_csv(self) -> str:
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["trial", "proper_rate", "one_ended_fraction", "audit_violations"]
                   + [f"color_{i + 1}" for i in range(self.d)])
        for r in self.rows:
            w.writerow([r.trial, repr(r.proper_rate), repr(r.one_ended_fraction), r.audit_violations]
                       + list(r.color_counts))
        return out.getvalue()


def factor_coloring_experiment(spec: CayleySpec, d: int, trials: int, seed: int,
                               workers: int = 1) -> ExperimentReport:
    """Run ``trials`` independent trials; ``workers > 1`` spreads them over processes."""
    if d != spec.generator_count:
        raise PreconditionError(f"d={d} but the generating set has {spec.generator_count} elements")
    if trials < 1:
        raise PreconditionError("trials must be positive")
    if workers > 1:
        jobs = [(spec, d, seed, t) for t in range(trials)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row_only, jobs))
    else:
        wg = cayley_window(spec)
        rows = [run_trial(spec, d, seed, t, wg)[0] for t in range(trials)]
    return ExperimentReport(spec, d, trials, seed, tuple(rows))
