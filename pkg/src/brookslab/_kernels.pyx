# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_kernels_py`` for the reference semantics."""
from cpython.mem cimport PyMem_Malloc, PyMem_Free

from .errors import BudgetExceededError


def list_color_search(adjacency, lists, long long budget):
    cdef Py_ssize_t n = len(adjacency)
    cdef Py_ssize_t total_e = 0, total_c = 0, v, i, k, w
    cdef long long nodes = 0
    cdef long long c
    cdef bint ok, placed
    for v in range(n):
        total_e += len(adjacency[v])
        total_c += len(lists[v])
    cdef Py_ssize_t *eoff = <Py_ssize_t *> PyMem_Malloc((n + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *enb = <Py_ssize_t *> PyMem_Malloc((total_e + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *coff = <Py_ssize_t *> PyMem_Malloc((n + 1) * sizeof(Py_ssize_t))
    cdef long long *cval = <long long *> PyMem_Malloc((total_c + 1) * sizeof(long long))
    cdef long long *colors = <long long *> PyMem_Malloc((n + 1) * sizeof(long long))
    cdef Py_ssize_t *cursor = <Py_ssize_t *> PyMem_Malloc((n + 1) * sizeof(Py_ssize_t))
    if not (eoff and enb and coff and cval and colors and cursor):
        PyMem_Free(eoff); PyMem_Free(enb); PyMem_Free(coff)
        PyMem_Free(cval); PyMem_Free(colors); PyMem_Free(cursor)
        raise MemoryError()
    try:
        k = 0
        for v in range(n):
            eoff[v] = k
            for w in adjacency[v]:
                if w < v:
                    enb[k] = w
                    k += 1
        eoff[n] = k
        k = 0
        for v in range(n):
            coff[v] = k
            for c in lists[v]:
                cval[k] = c
                k += 1
            colors[v] = -1
            cursor[v] = 0
        coff[n] = k
        v = 0
        while 0 <= v < n:
            i = coff[v] + cursor[v]
            placed = False
            while i < coff[v + 1]:
                c = cval[i]
                i += 1
                ok = True
                for k in range(eoff[v], eoff[v + 1]):
                    if colors[enb[k]] == c:
                        ok = False
                        break
                if ok:
                    nodes += 1
                    if nodes > budget:
                        raise BudgetExceededError(
                            f"list-coloring search exceeded {budget} nodes")
                    colors[v] = c
                    cursor[v] = i - coff[v]
                    placed = True
                    break
            if placed:
                v += 1
            else:
                cursor[v] = 0
                colors[v] = -1
                v -= 1
        if v == n:
            return [colors[i] for i in range(n)], nodes
        return None, nodes
    finally:
        PyMem_Free(eoff); PyMem_Free(enb); PyMem_Free(coff)
        PyMem_Free(cval); PyMem_Free(colors); PyMem_Free(cursor)


cdef inline Py_ssize_t _find(Py_ssize_t *parent, Py_ssize_t x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def wired_kruskal(Py_ssize_t n, edges, order, is_boundary, bint wired):
    cdef Py_ssize_t m = len(edges)
    cdef Py_ssize_t i, e, ru, rv, t
    cdef Py_ssize_t *parent = <Py_ssize_t *> PyMem_Malloc((n + 1) * sizeof(Py_ssize_t))
    cdef char *hits = <char *> PyMem_Malloc((n + 1) * sizeof(char))
    cdef Py_ssize_t *eu = <Py_ssize_t *> PyMem_Malloc((m + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *ev = <Py_ssize_t *> PyMem_Malloc((m + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *ordv = <Py_ssize_t *> PyMem_Malloc((m + 1) * sizeof(Py_ssize_t))
    cdef char *kept = <char *> PyMem_Malloc((m + 1) * sizeof(char))
    if not (parent and hits and eu and ev and ordv and kept):
        PyMem_Free(parent); PyMem_Free(hits); PyMem_Free(eu)
        PyMem_Free(ev); PyMem_Free(ordv); PyMem_Free(kept)
        raise MemoryError()
    try:
        for i in range(n):
            parent[i] = i
            hits[i] = 1 if is_boundary[i] else 0
        for i in range(m):
            u, v = edges[i]
            eu[i] = u
            ev[i] = v
            ordv[i] = order[i]
            kept[i] = 0
        with nogil:
            for i in range(m):
                e = ordv[i]
                ru = _find(parent, eu[e])
                rv = _find(parent, ev[e])
                if ru == rv:
                    continue
                if wired and hits[ru] and hits[rv]:
                    continue
                if ru < rv:
                    t = ru
                    ru = rv
                    rv = t
                parent[ru] = rv
                hits[rv] = hits[rv] | hits[ru]
                kept[e] = 1
        return [kept[i] == 1 for i in range(m)]
    finally:
        PyMem_Free(parent); PyMem_Free(hits); PyMem_Free(eu)
        PyMem_Free(ev); PyMem_Free(ordv); PyMem_Free(kept)
