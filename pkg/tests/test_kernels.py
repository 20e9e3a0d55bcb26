import random

import pytest

from brookslab import kernels
from brookslab.errors import BudgetExceededError

from _util import random_graph

BACKENDS = sorted(kernels.BACKENDS)


def test_backend_selected():
    assert kernels.BACKEND in kernels.BACKENDS


@pytest.mark.parametrize("name", BACKENDS)
def test_list_search_examples(name):
    impl = kernels.BACKENDS[name]
    tri = [[1, 2], [0, 2], [0, 1]]
    assert impl.list_color_search(tri, [[1, 2]] * 3, 100) == (None, 4)
    c4 = [[1, 3], [0, 2], [1, 3], [0, 2]]
    assert impl.list_color_search(c4, [[1, 2]] * 4, 100) == ([1, 2, 1, 2], 4)
    assert impl.list_color_search([], [], 10) == ([], 0)
    with pytest.raises(BudgetExceededError):
        impl.list_color_search(tri, [[1, 2]] * 3, 2)


@pytest.mark.parametrize("name", BACKENDS)
def test_wired_kruskal_examples(name):
    impl = kernels.BACKENDS[name]
    # path 0-1-2 with both ends wired: the heavier edge goes
    assert impl.wired_kruskal(3, [(0, 1), (1, 2)], [0, 1], [True, False, True], True) == [True, False]
    assert impl.wired_kruskal(3, [(0, 1), (1, 2)], [0, 1], [True, False, True], False) == [True, True]
    tri = [(0, 1), (1, 2), (0, 2)]
    assert impl.wired_kruskal(3, tri, [0, 1, 2], [False] * 3, False) == [True, True, False]


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled extension not built")
@pytest.mark.parametrize("seed", range(40))
def test_backends_agree(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randrange(1, 12), 0.4)
    adj = [list(a) for a in g.adjacency]
    lists = [sorted(rng.sample(range(1, 6), rng.randrange(1, 4))) for _ in range(g.n)]
    py, cc = (kernels.BACKENDS[b].list_color_search(adj, lists, 10**6) for b in ("python", "compiled"))
    assert py == cc
    edges = g.edges()
    order = list(range(len(edges)))
    rng.shuffle(order)
    flags = [rng.random() < 0.3 for _ in range(g.n)]
    for wired in (False, True):
        a = kernels.BACKENDS["python"].wired_kruskal(g.n, edges, order, flags, wired)
        b = kernels.BACKENDS["compiled"].wired_kruskal(g.n, edges, order, flags, wired)
        assert a == b
