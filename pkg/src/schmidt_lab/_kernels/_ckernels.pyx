# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops shared by group, endomorphism and semigroup searches."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

NAME = "cython"


def as_table(table):
    return np.ascontiguousarray(table, dtype=np.int32)


def as_vector(values):
    return np.ascontiguousarray(values, dtype=np.int32)


def new_map(Py_ssize_t n):
    return np.full(n, -1, dtype=np.int32)


def closure_extend(const int[:, ::1] src, const int[:, ::1] dst,
                   int[::1] phi, int[::1] used, gens,
                   const int[::1] cls_src, const int[::1] cls_dst,
                   bint injective):
    """Extend ``phi`` along right multiplication by ``gens``.

    Returns the number of assigned points, or -1 as soon as a product
    is inconsistent, a class label disagrees, or (when ``injective``)
    two points collide.
    """
    cdef Py_ssize_t n = src.shape[0]
    cdef int[::1] g = np.ascontiguousarray(gens, dtype=np.int32)
    cdef Py_ssize_t ng = g.shape[0]
    cdef int[::1] queue = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t head = 0, tail = 0, i, t, s, gi
    cdef int img, count = 0
    for i in range(ng):
        if phi[g[i]] < 0:
            return -1
    for t in range(n):
        if phi[t] >= 0:
            queue[tail] = <int>t
            tail += 1
            count += 1
    while head < tail:
        t = queue[head]
        head += 1
        for i in range(ng):
            gi = g[i]
            s = src[t, gi]
            img = dst[phi[t], phi[gi]]
            if phi[s] < 0:
                if cls_src[s] != cls_dst[img]:
                    return -1
                if injective and used[img] >= 0:
                    return -1
                phi[s] = img
                used[img] = <int>s
                queue[tail] = <int>s
                tail += 1
                count += 1
            elif phi[s] != img:
                return -1
    return count


cdef inline int _cmp_rows(const int[:, ::1] maps, Py_ssize_t r,
                          int[::1] row) nogil:
    cdef Py_ssize_t c
    for c in range(maps.shape[1]):
        if maps[r, c] != row[c]:
            return -1 if maps[r, c] < row[c] else 1
    return 0


def compose_table(maps):
    """comp[i, j] = index of the map "apply i, then j" in the sorted ``maps``."""
    cdef const int[:, ::1] m = np.ascontiguousarray(maps, dtype=np.int32)
    cdef Py_ssize_t k = m.shape[0], n = m.shape[1]
    out = np.empty((k, k), dtype=np.int32)
    cdef int[:, ::1] o = out
    cdef int[::1] row = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t i, j, c, lo, hi, mid
    cdef int r
    for i in range(k):
        for j in range(k):
            for c in range(n):
                row[c] = m[j, m[i, c]]
            lo = 0
            hi = k - 1
            o[i, j] = -1
            while lo <= hi:
                mid = (lo + hi) // 2
                r = _cmp_rows(m, mid, row)
                if r == 0:
                    o[i, j] = <int>mid
                    break
                elif r < 0:
                    lo = mid + 1
                else:
                    hi = mid - 1
    return out
