import random

import networkx as nx
import pytest

from brookslab.brooks import (
    BrooksInstance,
    brooks_color,
    clique_witness,
    even_equivalence,
    rotation_obstruction_demo,
    two_color,
)
from brookslab.coloring import brute_force_color, check_coloring, constant_lists
from brookslab.errors import PreconditionError
from brookslab.factor import CayleySpec, cayley_window
from brookslab.graph import build_graph
from brookslab.oneended import audit_one_ended

from _util import atlas, complete, cycle, path, petersen, random_bounded_graph, random_regular, window


def assert_d_colored(g, d, result):
    wg_interior = getattr(g, "interior", None)
    plain = getattr(g, "graph", g)
    vertices = wg_interior if wg_interior is not None else range(plain.n)
    v = check_coloring(plain, result.coloring, constant_lists(vertices, range(1, d + 1)), vertices=vertices)
    assert v.ok, v
    for host, f in result.functions:
        assert audit_one_ended(host, f) == []


class TestBrooksColor:
    def test_petersen(self):
        assert_d_colored(petersen(), 3, brooks_color(BrooksInstance(petersen(), 3)))

    def test_k4_witness(self):
        with pytest.raises(PreconditionError) as info:
            BrooksInstance(complete(4), 3)
        assert info.value.witness == [0, 1, 2, 3]

    def test_c6(self):
        r = brooks_color(BrooksInstance(cycle(6), 3))
        assert_d_colored(cycle(6), 3, r)
        assert r.trace == [{"component": 0, "size": 6, "branch": "low-degree"}]

    def test_degree_too_high(self):
        with pytest.raises(PreconditionError):
            BrooksInstance(complete(5), 3)

    def test_d_two_rejected(self):
        with pytest.raises(PreconditionError):
            BrooksInstance(cycle(4), 2)

    def test_k4_inside_larger_d(self):
        # K4 is fine when d = 4
        assert_d_colored(complete(4), 4, brooks_color(BrooksInstance(complete(4), 4)))

    def test_mixed_components(self):
        g = build_graph(13, [(0, 1), (1, 2)] + [(3 + u, 3 + v) for u, v in nx.petersen_graph().edges()])
        r = brooks_color(BrooksInstance(g, 3))
        assert_d_colored(g, 3, r)
        assert [t["branch"] for t in r.trace] == ["low-degree", "non-gallai"]

    @pytest.mark.parametrize("spec,d", [
        (CayleySpec("z2free", 3, radius=5), 3),
        (CayleySpec("free", 2, radius=4), 4),
        (CayleySpec("grid", 2, side=6), 4),
        (CayleySpec("grid", 2, side=5, torus=True), 4),
    ], ids=lambda x: str(x))
    def test_windows(self, spec, d):
        wg = cayley_window(spec)
        r = brooks_color(BrooksInstance(wg, d))
        assert_d_colored(wg, d, r)

    def test_windowed_gallai_of_triangles(self):
        # a 3-regular-inside chain of triangles: each triangle's third vertex has a flagged leaf
        edges, flags, n = [], [], 0
        prev = None
        for t in range(4):
            a, b, c = n, n + 1, n + 2
            edges += [(a, b), (b, c), (a, c)]
            if prev is not None:
                edges.append((prev, a))
            leaf = n + 3
            edges.append((b, leaf))
            flags.append(leaf)
            prev = c
            n += 4
        edges.append((0, n))
        edges.append((prev, n + 1))
        flags += [n, n + 1]
        wg = window(build_graph(n + 2, edges), flags)
        r = brooks_color(BrooksInstance(wg, 3))
        assert_d_colored(wg, 3, r)
        assert r.trace[0]["branch"] == "block-lift"

    @pytest.mark.parametrize("d", [3, 4, 5])
    def test_random_regular(self, d):
        rng = random.Random(d)
        for _ in range(20):
            n = rng.randrange(d + 2, 60)
            n += (n * d) % 2
            g = random_regular(rng, n, d)
            if clique_witness(g, d):
                continue
            assert_d_colored(g, d, brooks_color(BrooksInstance(g, d)))

    @pytest.mark.parametrize("d", [3, 4])
    def test_agrees_with_brute_force_on_small_graphs(self, d):
        for g in atlas(7):
            if g.max_degree() > d or clique_witness(g, d):
                continue
            assert brute_force_color(g, d) is not None
            assert_d_colored(g, d, brooks_color(BrooksInstance(g, d)))

    def test_deterministic(self):
        rng = random.Random(1)
        g = random_bounded_graph(rng, 80, 4)
        a = brooks_color(BrooksInstance(g, 4)).coloring
        b = brooks_color(BrooksInstance(g, 4)).coloring
        assert a == b


class TestTwoColor:
    def test_c6(self):
        c, cyc = two_color(cycle(6))
        assert c == {0: 1, 1: 2, 2: 1, 3: 2, 4: 1, 5: 2} and cyc is None

    def test_c5(self):
        c, cyc = two_color(cycle(5))
        assert c is None and sorted(cyc) == [0, 1, 2, 3, 4]

    def test_edgeless(self):
        assert two_color(build_graph(3, []))[0] == {0: 1, 1: 1, 2: 1}

    def test_even_equivalence_examples(self):
        assert even_equivalence(cycle(4)) == [{0, 2}, {1, 3}]
        assert even_equivalence(cycle(5)) == [set(range(5))]
        assert even_equivalence(path(3)) == [{0, 2}, {1}]

    @pytest.mark.parametrize("seed", range(10))
    def test_classes_match_parity_of_walks(self, seed):
        rng = random.Random(seed)
        g = build_graph(9, [(u, v) for u in range(9) for v in range(u + 1, 9) if rng.random() < 0.2])
        G = nx.Graph(g.edges())
        G.add_nodes_from(range(9))
        # u ~ v iff an even walk joins them: reachability in the doubled graph
        doubled = nx.tensor_product(G, nx.path_graph(2))
        classes = even_equivalence(g)
        for cls in classes:
            for u in cls:
                for v in cls:
                    assert u == v or nx.has_path(doubled, (u, 0), (v, 0))
        for c1 in classes:
            for c2 in classes:
                if c1 is not c2:
                    u, v = min(c1), min(c2)
                    assert not nx.has_path(doubled, (u, 0), (v, 0)) or u == v


class TestRotationDemo:
    def test_even(self):
        r = rotation_obstruction_demo(10, 3, 20, 1)
        assert r["two_colorable"] and r["min_defect"] == 0.0

    def test_odd(self):
        r = rotation_obstruction_demo(9, 2, 20, 1)
        assert not r["two_colorable"]
        assert r["min_defect"] >= 1 / 9 and r["defect_lower_bound"] == pytest.approx(1 / 9)

    def test_gcd(self):
        with pytest.raises(PreconditionError):
            rotation_obstruction_demo(6, 4, 1, 0)

    def test_reproducible(self):
        assert rotation_obstruction_demo(15, 4, 30, 7) == rotation_obstruction_demo(15, 4, 30, 7)
