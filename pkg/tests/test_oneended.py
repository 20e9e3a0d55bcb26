import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brookslab.coloring import check_coloring
from brookslab.errors import InvariantViolation, PreconditionError, WindowTooSmallError
from brookslab.factor import CayleySpec, cayley_window
from brookslab.graph import (
    WindowedGraph,
    bfs_distances,
    blocks,
    build_graph,
    connected_components,
    induced_window,
)
from brookslab.oneended import (
    OneEndedFunction,
    assert_one_ended,
    audit_one_ended,
    is_ample,
    iterative_one_ended,
    lift_block_forest,
    one_ended_forest,
    pointaway,
    rank_layers,
    rank_list_color,
    reduce_to_ample,
    subample_detail,
    subample_set,
)

from _util import bowtie, cycle, path, random_tree, window


def tree_window(d, r):
    return cayley_window(CayleySpec("z2free", d, radius=r))


def ample_oracle(wg):
    """Ampleness straight from the definition, via networkx."""
    G = nx.Graph()
    G.add_nodes_from(range(wg.n))
    G.add_edges_from(wg.graph.edges())
    interior = [v for v in range(wg.n) if not wg.is_boundary[v]]
    if any(G.degree(v) < 2 for v in interior):
        return False

    def good(part):
        inner = [v for v in part if not wg.is_boundary[v]]
        if not inner:
            return True
        return any(G.degree(v) >= 3 for v in inner) or sum(wg.is_boundary[v] for v in part) >= 2

    if not all(good(c) for c in nx.connected_components(G)):
        return False
    for x in interior:
        H = G.copy()
        H.remove_node(x)
        if not all(good(c) for c in nx.connected_components(H)):
            return False
    return True


def random_flagged_tree(rng, n, p):
    g = random_tree(rng, n)
    flags = tuple(g.degree(v) > 0 and rng.random() < p for v in range(n))
    return WindowedGraph(g, flags)


class TestFunctionType:
    def test_json_round_trip(self):
        f = OneEndedFunction(4, {0: 1, 2: 1})
        assert f.to_json() == {"map": [1, None, 1, None]}
        assert OneEndedFunction.from_json(f.to_json()) == f

    def test_audit_flags_cycle_and_non_edge(self):
        g = cycle(3)
        assert audit_one_ended(g, OneEndedFunction(3, {0: 1, 1: 2, 2: 0}))
        assert audit_one_ended(path(3), OneEndedFunction(3, {0: 2}))
        with pytest.raises(InvariantViolation):
            assert_one_ended(g, OneEndedFunction(3, {0: 1, 1: 0}))

    def test_audit_flags_boundary_in_domain(self):
        wg = window(path(3), {2})
        assert audit_one_ended(wg, OneEndedFunction(3, {2: 1}))

    def test_audit_accepts_sound_function(self):
        assert audit_one_ended(path(4), OneEndedFunction(4, {0: 1, 1: 2, 3: 2})) == []


class TestPointaway:
    def test_star(self):
        star = build_graph(4, [(0, 1), (0, 2), (0, 3)])
        assert pointaway(star, [1]).mapping == {0: 1, 2: 0, 3: 0}

    def test_escape(self):
        wg = window(path(4), {3})
        assert pointaway(wg, [0]).mapping == {1: 2, 2: 3}

    def test_everything_targeted(self):
        assert pointaway(cycle(5), range(5)).mapping == {}

    def test_empty_target(self):
        with pytest.raises(PreconditionError):
            pointaway(path(3), [])

    @settings(max_examples=80)
    @given(st.integers(0, 2**32 - 1))
    def test_property(self, seed):
        rng = random.Random(seed)
        n = rng.randrange(2, 40)
        wg = random_flagged_tree(rng, n, 0.2)
        a = rng.sample(range(n), rng.randrange(1, min(n, 3) + 1))
        f = pointaway(wg, a)
        assert audit_one_ended(wg, f) == []
        dist = bfs_distances(wg.graph, a)
        expected = {v for v in range(n) if dist[v] is not None and v not in a and not wg.is_boundary[v]}
        assert f.domain == expected
        for x in f.mapping:
            # descend toward a, or climb once on a path running out to a flag
            v, climbing = x, False
            while v in f.mapping:
                step = dist[f(v)] - dist[v]
                assert step in (-1, 1)
                climbing = climbing or step == 1
                assert not (climbing and step == -1)
                v = f(v)
            assert v in a or wg.is_boundary[v]

    @settings(max_examples=50)
    @given(st.integers(0, 2**32 - 1))
    def test_strict_descent_without_flags(self, seed):
        rng = random.Random(seed)
        g = random_tree(rng, rng.randrange(2, 40))
        a = rng.sample(range(g.n), rng.randrange(1, min(g.n, 3) + 1))
        f = pointaway(g, a)
        dist = bfs_distances(g, a)
        for x in f.mapping:
            v = x
            while v in f.mapping:
                assert dist[f(v)] == dist[v] - 1
                v = f(v)
            assert v in a


class TestIterative:
    def test_p3_chain(self):
        f = iterative_one_ended(path(3), [{0, 1, 2}, {1}, set()])
        assert f.mapping == {0: 1, 2: 1}

    def test_single_stage_is_pointaway(self):
        g = cycle(6)
        full = set(range(6))
        f = iterative_one_ended(g, [full, {0}, set()])
        assert f.mapping == pointaway(g, {0}).mapping

    def test_meeting_condition(self):
        g = cycle(4)
        with pytest.raises(PreconditionError) as info:
            iterative_one_ended(g, [{0, 1, 2, 3}, {0, 2}, {0}, set()])
        assert info.value.witness == [2]

    def test_not_decreasing(self):
        with pytest.raises(PreconditionError):
            iterative_one_ended(path(3), [{0, 1}, {1, 2}, set()])

    def test_final_set_must_be_boundary(self):
        with pytest.raises(PreconditionError):
            iterative_one_ended(path(3), [{0, 1, 2}, {1}])


class TestAmple:
    def test_tree_window(self):
        assert is_ample(tree_window(3, 4))

    def test_line_window(self):
        verdict = is_ample(window(path(6), {0, 5}))
        assert not verdict and verdict.vertex is not None

    def test_finite_path(self):
        assert not is_ample(path(4))

    def test_three_vertex_line_counts_as_ample(self):
        # both pieces left after deleting the middle are points at infinity
        assert is_ample(window(path(3), {0, 2}))

    @settings(max_examples=150)
    @given(st.integers(0, 2**32 - 1))
    def test_tree_rule_matches_oracle(self, seed):
        rng = random.Random(seed)
        wg = random_flagged_tree(rng, rng.randrange(1, 30), rng.choice([0.1, 0.3, 0.6]))
        assert bool(is_ample(wg)) == ample_oracle(wg)

    @settings(max_examples=60)
    @given(st.integers(0, 2**32 - 1))
    def test_cyclic_rule_matches_oracle(self, seed):
        rng = random.Random(seed)
        g = random_tree(rng, rng.randrange(3, 16))
        edges = set(g.edges())
        for _ in range(rng.randrange(1, 4)):
            u, v = rng.sample(range(g.n), 2)
            edges.add((min(u, v), max(u, v)))
        g = build_graph(g.n, edges)
        flags = tuple(rng.random() < 0.3 for _ in range(g.n))
        wg = WindowedGraph(g, flags)
        assert bool(is_ample(wg)) == ample_oracle(wg)


class TestSubample:
    @pytest.mark.parametrize("d,r", [(3, 4), (3, 6), (4, 4), (4, 6)])
    def test_bound_and_ampleness(self, d, r):
        wg = tree_window(d, r)
        det = subample_detail(wg, d)
        removed_interior = sum(1 for v in det.removed if not wg.is_boundary[v])
        assert removed_interior * d ** 3 >= det.interior_count
        assert det.marked_preimage * d ** 3 >= det.interior_count
        sub, _ = induced_window(wg, det.kept)
        assert is_ample(sub)
        assert sub.interior

    def test_radius_six_frozen(self):
        # computed once by running the construction and checking it with is_ample
        wg = tree_window(3, 6)
        kept = subample_set(wg, 3)
        assert len(kept) == 137
        assert len(wg.interior) - sum(1 for v in kept if not wg.is_boundary[v]) == 21

    def test_single_branch_point_is_too_small(self):
        wg = window(build_graph(4, [(0, 1), (0, 2), (0, 3)]), {1, 2, 3})
        with pytest.raises(WindowTooSmallError):
            subample_set(wg, 3)

    def test_rejects_non_ample(self):
        with pytest.raises(PreconditionError):
            subample_set(window(path(6), {0, 5}), 3)

    def test_rejects_degree_over_bound(self):
        with pytest.raises(PreconditionError):
            subample_set(tree_window(4, 3), 3)


class TestReduce:
    def test_tree_window_already_ample(self):
        wg = tree_window(3, 4)
        ample, rest = reduce_to_ample(wg)
        assert set(wg.interior) <= ample
        assert rest.mapping == {}

    def test_comb(self):
        # spine 0-1-2-3 with vertex 3 flagged, teeth 4, 5 and 6-7
        g = build_graph(8, [(0, 1), (1, 2), (2, 3), (0, 4), (1, 5), (2, 6), (6, 7)])
        wg = window(g, {3})
        ample, rest = reduce_to_ample(wg)
        assert ample == frozenset()
        assert rest.mapping == {0: 1, 1: 2, 2: 3, 4: 0, 5: 1, 6: 2, 7: 6}

    def test_two_ended_component_rejected(self):
        with pytest.raises(PreconditionError):
            reduce_to_ample(window(path(5), {0, 4}))

    def test_isolated_end_is_peeled(self):
        # a 3-regular window with one long corridor hanging off to a flag
        base = tree_window(3, 3)
        n = base.n
        leaf = base.boundary[0]
        edges = list(base.graph.edges()) + [(leaf, n), (n, n + 1), (n + 1, n + 2)]
        flags = set(base.boundary) - {leaf} | {n + 2}
        wg = window(build_graph(n + 3, edges), flags)
        ample, rest = reduce_to_ample(wg)
        # the corridor saturates the only component: everything is peeled
        assert ample == frozenset()
        assert rest.domain == set(wg.interior)
        assert audit_one_ended(wg, rest) == []
        f = one_ended_forest(wg)
        assert audit_one_ended(wg, f) == []
        assert f.domain == set(wg.interior)


class TestOneEndedForest:
    def test_radius_eight(self):
        wg = tree_window(3, 8)
        f = one_ended_forest(wg)
        assert f.domain == set(wg.interior)
        assert audit_one_ended(wg, f) == []

    def test_single_vertex_three_flags(self):
        wg = window(build_graph(4, [(0, 1), (0, 2), (0, 3)]), {1, 2, 3})
        assert one_ended_forest(wg).mapping == {0: 1}

    def test_zero_ended_component(self):
        with pytest.raises(PreconditionError):
            one_ended_forest(window(path(3), set()))

    @pytest.mark.parametrize("spec", [
        CayleySpec("free", 2, radius=4),
        CayleySpec("z2free", 4, radius=5),
        CayleySpec("z2free", 5, radius=3),
    ], ids=str)
    def test_other_trees(self, spec):
        wg = cayley_window(spec)
        f = one_ended_forest(wg)
        assert f.domain == set(wg.interior) and audit_one_ended(wg, f) == []

    def test_depth_budget(self):
        with pytest.raises(PreconditionError):
            one_ended_forest(tree_window(3, 8), max_depth=1)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_random_forests(self, seed):
        rng = random.Random(seed)
        g = random_tree(rng, rng.randrange(2, 80))
        # flag leaves at random, then drop the tree if it is 0- or 2-ended
        flags = [g.degree(v) == 1 and rng.random() < 0.6 for v in range(g.n)]
        if sum(flags) in (0, 2):
            flags[[v for v in range(g.n) if g.degree(v) == 1][0]] = sum(flags) == 0
            if sum(flags) in (0, 2):
                return
        wg = WindowedGraph(g, tuple(flags))
        f = one_ended_forest(wg)
        assert f.domain == set(wg.interior)
        assert audit_one_ended(wg, f) == []


class TestRank:
    def test_path(self):
        assert rank_layers(OneEndedFunction(3, {0: 1, 1: 2})) == [{0}, {1}]

    def test_empty(self):
        assert rank_layers(OneEndedFunction(3, {})) == []

    def test_star(self):
        assert rank_layers(OneEndedFunction(4, {1: 0, 2: 0, 3: 0})) == [{1, 2, 3}]

    @settings(max_examples=80)
    @given(st.integers(0, 2**32 - 1))
    def test_layers_match_image_formula(self, seed):
        rng = random.Random(seed)
        g = random_tree(rng, rng.randrange(1, 30))
        f = pointaway(g, rng.sample(range(g.n), 1))
        f = OneEndedFunction(g.n, {x: y for x, y in f.mapping.items() if rng.random() < 0.8})
        dom = set(f.mapping)
        images = [dom]
        while images[-1]:
            images.append({f(x) for x in images[-1] if x in dom})
        expected = [dom & (images[i] - images[i + 1]) for i in range(len(images) - 1)]
        while expected and not expected[-1]:
            expected.pop()
        assert rank_layers(f) == expected

    def test_list_color_example(self):
        f = OneEndedFunction(3, {0: 1, 1: 2})
        assert rank_list_color(path(3), f, {0: {"a"}, 1: {"a", "b"}}) == {0: "a", 1: "b"}

    def test_list_color_star(self):
        star = build_graph(4, [(0, 1), (0, 2), (0, 3)])
        f = OneEndedFunction(4, {1: 0, 2: 0, 3: 0})
        assert rank_list_color(star, f, {v: {5} for v in (1, 2, 3)}) == {1: 5, 2: 5, 3: 5}

    def test_list_too_short(self):
        with pytest.raises(PreconditionError):
            rank_list_color(path(3), OneEndedFunction(3, {1: 2}), {1: {1}})


class TestLift:
    def test_single_block(self):
        g = cycle(4)
        bd = blocks(g)
        assert lift_block_forest(g, bd, OneEndedFunction(1, {})).mapping == {}

    def test_bowtie(self):
        g = bowtie()
        bd = blocks(g)
        lifted = lift_block_forest(g, bd, OneEndedFunction(2, {0: 1}))
        assert lifted.mapping == {0: 2, 1: 2}

    def test_triangle_chain(self):
        edges = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5), (5, 6), (4, 6)]
        g = build_graph(7, edges)
        bd = blocks(g)
        lifted = lift_block_forest(g, bd, OneEndedFunction(3, {0: 1, 1: 2}))
        assert lifted.mapping == {0: 2, 1: 2, 2: 4, 3: 4}
        assert all(lifted(lifted(x)) != x for x in lifted.mapping if lifted(x) in lifted.mapping)

    def test_rejects_non_edge(self):
        g = build_graph(7, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5), (5, 6), (4, 6)])
        with pytest.raises(PreconditionError):
            lift_block_forest(g, blocks(g), OneEndedFunction(3, {0: 2}))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_random_block_trees(self, seed):
        rng = random.Random(seed)
        # glue random cliques and cycles along a random tree of cut vertices
        edges, n = [], 1
        for _ in range(rng.randrange(1, 8)):
            at = rng.randrange(n)
            size = rng.randrange(2, 6)
            fresh = list(range(n, n + size - 1))
            members = [at] + fresh
            if rng.random() < 0.5:
                edges += [(members[i], members[j]) for i in range(size) for j in range(i + 1, size)]
            else:
                edges += [(members[i], members[(i + 1) % size]) for i in range(size)] if size > 2 else [(at, fresh[0])]
            n += size - 1
        g = build_graph(n, edges)
        bd = blocks(g)
        root = rng.randrange(len(bd.blocks))
        fb = pointaway(bd.block_graph, [root])
        lifted = lift_block_forest(g, bd, fb)
        assert audit_one_ended(g, lifted) == []
        for x, y in lifted.mapping.items():
            assert x != y and g.has_edge(x, y)


@pytest.mark.parametrize("seed", range(5))
def test_rank_coloring_on_random_oriented_trees(seed):
    rng = random.Random(seed)
    for _ in range(40):
        g = random_tree(rng, rng.randrange(1, 60))
        f = pointaway(g, [rng.randrange(g.n)])
        f = OneEndedFunction(g.n, {x: y for x, y in f.mapping.items() if rng.random() < 0.9})
        top = g.max_degree() + 3
        lists = {x: set(rng.sample(range(1, top + 1), g.degree(x))) for x in f.mapping}
        c = rank_list_color(g, f, lists)
        assert check_coloring(g, c, lists, vertices=f.mapping).ok
