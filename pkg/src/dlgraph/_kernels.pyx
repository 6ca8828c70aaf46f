# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; ``_kernels_py`` holds the reference fallbacks."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint8_t, int32_t, uint64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memset

cnp.import_array()


cdef bint _preserves(const uint8_t[:, ::1] adj, const int32_t[:, ::1] table,
                     int32_t[::1] nb_start, int32_t[::1] nb) noexcept nogil:
    cdef Py_ssize_t n = adj.shape[0]
    cdef Py_ssize_t u, v, a, b, ia, ib
    cdef int32_t t
    for u in range(n):
        for v in range(u, n):
            t = table[u, v]
            for ia in range(nb_start[u], nb_start[u + 1]):
                a = nb[ia]
                for ib in range(nb_start[v], nb_start[v + 1]):
                    b = nb[ib]
                    if not adj[t, table[a, b]]:
                        return False
    return True


def compatible(const uint8_t[:, ::1] adj, const int32_t[:, ::1] meet, const int32_t[:, ::1] join):
    """True iff meet and join both map pairs of edges to edges."""
    cdef Py_ssize_t n = adj.shape[0]
    cdef Py_ssize_t u, v, k = 0
    starts = np.zeros(n + 1, dtype=np.int32)
    flat = np.zeros(int(np.asarray(adj).sum()), dtype=np.int32)
    cdef int32_t[::1] nb_start = starts
    cdef int32_t[::1] nb = flat
    for u in range(n):
        nb_start[u] = k
        for v in range(n):
            if adj[u, v]:
                nb[k] = v
                k += 1
    nb_start[n] = k
    cdef bint ok
    with nogil:
        # op(u, v) = op(v, u), so u <= v suffices.
        ok = _preserves(adj, meet, nb_start, nb) and _preserves(adj, join, nb_start, nb)
    return bool(ok)


def gpa_adjacency(const uint64_t[::1] downsets, const uint64_t[::1] bad):
    """Adjacency of downsets: no ``bad`` pair mask lies inside either difference."""
    cdef Py_ssize_t k = downsets.shape[0]
    cdef Py_ssize_t nbad = bad.shape[0]
    cdef Py_ssize_t i, j, t
    cdef uint64_t d, e, left, right, m
    cdef bint ok
    out = np.zeros((k, k), dtype=np.uint8)
    cdef uint8_t[:, ::1] res = out
    with nogil:
        for i in range(k):
            res[i, i] = 1
            d = downsets[i]
            for j in range(i + 1, k):
                e = downsets[j]
                left = d & ~e
                right = e & ~d
                ok = True
                for t in range(nbad):
                    m = bad[t]
                    if (left & m) == m or (right & m) == m:
                        ok = False
                        break
                if ok:
                    res[i, j] = 1
                    res[j, i] = 1
    return out


cdef inline bint _subset(const uint64_t* a, const uint64_t* b, Py_ssize_t w) noexcept nogil:
    cdef Py_ssize_t t
    for t in range(w):
        if a[t] & ~b[t]:
            return False
    return True


cdef inline bint _equal(const uint64_t* a, const uint64_t* b, Py_ssize_t w) noexcept nogil:
    cdef Py_ssize_t t
    for t in range(w):
        if a[t] != b[t]:
            return False
    return True


cdef inline bint _strict(const uint64_t* a, const uint64_t* b, Py_ssize_t w) noexcept nogil:
    return _subset(a, b, w) and not _equal(a, b, w)


def dispensable(const uint8_t[:, ::1] adj):
    """Matrix flagging dispensable non-loop edges (closed neighbourhoods)."""
    cdef Py_ssize_t n = adj.shape[0]
    cdef Py_ssize_t w = (n + 63) // 64
    cdef Py_ssize_t x, y, z, t
    cdef uint64_t* rows = <uint64_t*> malloc(max(n * w, 1) * sizeof(uint64_t))
    cdef uint64_t* common = <uint64_t*> malloc(max(w, 1) * 3 * sizeof(uint64_t))
    cdef uint64_t* cx = common + w
    cdef uint64_t* cy = common + 2 * w
    cdef uint64_t* nx
    cdef uint64_t* ny
    cdef uint64_t* nz
    cdef bint hit
    if rows == NULL or common == NULL:
        free(rows)
        free(common)
        raise MemoryError()
    out = np.zeros((n, n), dtype=np.uint8)
    cdef uint8_t[:, ::1] res = out
    with nogil:
        memset(rows, 0, n * w * sizeof(uint64_t))
        for x in range(n):
            for y in range(n):
                if adj[x, y]:
                    rows[x * w + y // 64] |= (<uint64_t> 1) << (y % 64)
        for x in range(n):
            nx = rows + x * w
            for y in range(x + 1, n):
                if not adj[x, y]:
                    continue
                ny = rows + y * w
                for t in range(w):
                    common[t] = nx[t] & ny[t]
                hit = False
                for z in range(n):
                    nz = rows + z * w
                    if _strict(nx, nz, w) and _strict(nz, ny, w):
                        hit = True
                        break
                    if _strict(ny, nz, w) and _strict(nz, nx, w):
                        hit = True
                        break
                    for t in range(w):
                        cx[t] = nx[t] & nz[t]
                        cy[t] = ny[t] & nz[t]
                    if _strict(common, cx, w) and _strict(common, cy, w):
                        hit = True
                        break
                if hit:
                    res[x, y] = 1
                    res[y, x] = 1
    free(rows)
    free(common)
    return out
