# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels over 64-bit vertex masks.

Same exploration order as ``_kernels_py``; the search runs without the GIL.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil

MAX_VERTICES = 64


cdef inline bint _closes(int v, const uint64_t* out, const uint64_t* inn, uint64_t members) noexcept nogil:
    cdef uint64_t reach = out[v] & members
    cdef uint64_t frontier, new
    cdef int u
    if reach & inn[v]:
        return True
    frontier = reach
    while frontier:
        u = __builtin_ctzll(frontier)
        frontier &= frontier - 1
        new = out[u] & members & ~reach
        if new:
            if new & inn[v]:
                return True
            reach |= new
            frontier |= new
    return False


cdef bint _search(int t, int used, int n, int k, const int* order,
                  const uint64_t* out, const uint64_t* inn,
                  uint64_t* classes, int* color) noexcept nogil:
    cdef int v, c, top
    cdef uint64_t m
    if t == n:
        return True
    v = order[t]
    top = used + 1 if used < k else k
    for c in range(top):
        m = classes[c]
        if _closes(v, out, inn, m):
            continue
        classes[c] = m | ((<uint64_t>1) << v)
        color[v] = c
        if _search(t + 1, used + 1 if c == used else used, n, k, order, out, inn, classes, color):
            return True
        classes[c] = m
    color[v] = -1
    return False


def closes_cycle(int v, out, inn, members):
    cdef uint64_t o[64]
    cdef uint64_t i_[64]
    cdef int j
    cdef int size = len(out)
    if size > 64:
        raise ValueError("compiled kernel handles at most 64 vertices")
    for j in range(size):
        o[j] = out[j]
        i_[j] = inn[j]
    return bool(_closes(v, o, i_, <uint64_t>members))


def acyclic_color(out, inn, order, int k):
    """See ``_kernels_py.acyclic_color``."""
    cdef int size = len(out)
    cdef int n = len(order)
    cdef int j
    cdef bint ok
    cdef uint64_t o[64]
    cdef uint64_t i_[64]
    cdef uint64_t classes[64]
    cdef int color[64]
    cdef int ordr[64]
    if size > 64:
        raise ValueError("compiled kernel handles at most 64 vertices")
    if n == 0:
        return [-1] * size
    if k <= 0:
        return None
    if k > 64:
        k = 64
    for j in range(size):
        o[j] = out[j]
        i_[j] = inn[j]
        color[j] = -1
    for j in range(n):
        ordr[j] = order[j]
    for j in range(k):
        classes[j] = 0
    with nogil:
        ok = _search(0, 0, n, k, ordr, o, i_, classes, color)
    if not ok:
        return None
    return [color[j] for j in range(size)]


def greedy_color(out, inn, order):
    cdef int size = len(out)
    cdef int j, c, v, used = 0
    cdef uint64_t o[64]
    cdef uint64_t i_[64]
    cdef uint64_t classes[64]
    if size > 64:
        raise ValueError("compiled kernel handles at most 64 vertices")
    for j in range(size):
        o[j] = out[j]
        i_[j] = inn[j]
    color = [-1] * size
    for v in order:
        for c in range(used):
            if not _closes(v, o, i_, classes[c]):
                classes[c] |= (<uint64_t>1) << v
                color[v] = c
                break
        else:
            classes[used] = (<uint64_t>1) << v
            color[v] = used
            used += 1
    return color
