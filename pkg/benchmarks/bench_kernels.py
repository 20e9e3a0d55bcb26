"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both backends run identical inputs; results are checked for equality
before timings are reported.
"""
import argparse
import random
import timeit

from brookslab import kernels
from brookslab.errors import BudgetExceededError
from brookslab.factor import CayleySpec, cayley_window, iid_edge_labels


def kruskal_case(radius):
    wg = cayley_window(CayleySpec("z2free", 3, radius=radius))
    labels = iid_edge_labels(wg, 1)
    args = (wg.n, list(labels.edges), labels.order(), list(wg.is_boundary), True)
    return f"wired_kruskal z2free(3) r={radius} ({len(labels.edges)} edges)", "wired_kruskal", args


def search_case(n, k, budget):
    # K_n with k < n colors has no coloring: the search exhausts or hits the budget
    adjacency = [frozenset(w for w in range(n) if w != v) for v in range(n)]
    lists = [list(range(1, k + 1))] * n
    return f"list_color_search K{n} with {k} colors", "list_color_search", (adjacency, lists, budget)


def grid_search_case(side):
    rng = random.Random(side)
    idx = lambda i, j: i * side + j
    adjacency = [set() for _ in range(side * side)]
    for i in range(side):
        for j in range(side):
            for di, dj in ((0, 1), (1, 0)):
                if i + di < side and j + dj < side:
                    adjacency[idx(i, j)].add(idx(i + di, j + dj))
                    adjacency[idx(i + di, j + dj)].add(idx(i, j))
    lists = [sorted(rng.sample(range(1, 6), 3)) for _ in adjacency]
    return f"list_color_search {side}x{side} grid, random 3-lists", "list_color_search", (adjacency, lists, 10**7)


def call(backend, name, args):
    try:
        return getattr(backend, name)(*args)
    except BudgetExceededError:
        return "budget"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    opts = ap.parse_args()
    if "compiled" not in kernels.BACKENDS:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation`")
    cases = [kruskal_case(8), kruskal_case(11), search_case(9, 8, 10**6), grid_search_case(12)]
    print(f"{'case':55s} {'python (ms)':>12s} {'compiled (ms)':>14s} {'speedup':>8s}")
    for title, name, args in cases:
        py, cy = kernels.BACKENDS["python"], kernels.BACKENDS["compiled"]
        assert call(py, name, args) == call(cy, name, args), title
        t_py = min(timeit.repeat(lambda: call(py, name, args), number=1, repeat=opts.repeat))
        t_cy = min(timeit.repeat(lambda: call(cy, name, args), number=1, repeat=opts.repeat))
        print(f"{title:55s} {1e3 * t_py:12.2f} {1e3 * t_cy:14.2f} {t_py / t_cy:7.1f}x")


if __name__ == "__main__":
    main()
