# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(2) rank and union-find kernels.

Interface mirrors ``_pykernels``.  The loops run without the GIL so callers
can spread sample blocks over threads.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t, uint8_t
from libc.stdlib cimport malloc, free
from libc.string cimport memset

cnp.import_array()

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef Py_ssize_t _rank_inplace(uint64_t* m, Py_ssize_t nrows, Py_ssize_t words,
                              Py_ssize_t* pivot_of) noexcept nogil:
    # pivot_of[col] = row holding that pivot, -1 if none; reduces rows in place
    cdef Py_ssize_t i, j, w, col, rank = 0
    cdef uint64_t* row
    cdef uint64_t* prow
    cdef uint64_t word
    for i in range(nrows):
        row = m + i * words
        w = 0
        while w < words:
            word = row[w]
            if word == 0:
                w += 1
                continue
            col = w * 64 + __builtin_ctzll(word)
            j = pivot_of[col]
            if j < 0:
                pivot_of[col] = i
                rank += 1
                break
            prow = m + j * words
            for j in range(w, words):
                row[j] ^= prow[j]
    return rank


def gf2_rank(rows):
    """Rank of a matrix given as packed uint64 rows of shape (r, words)."""
    cdef cnp.ndarray[uint64_t, ndim=2, mode="c"] m = np.array(rows, dtype=np.uint64, order="C", copy=True)
    cdef Py_ssize_t nrows = m.shape[0]
    if nrows == 0 or m.shape[1] == 0:
        return 0
    cdef Py_ssize_t words = m.shape[1]
    cdef Py_ssize_t ncols = words * 64
    cdef Py_ssize_t* piv = <Py_ssize_t*>malloc(ncols * sizeof(Py_ssize_t))
    cdef Py_ssize_t k, r
    if piv == NULL:
        raise MemoryError()
    for k in range(ncols):
        piv[k] = -1
    with nogil:
        r = _rank_inplace(&m[0, 0], nrows, words, piv)
    free(piv)
    return int(r)


def restricted_ranks(facets, row_mask, col_mask):
    """Per-sample rank of a boundary matrix restricted to selected rows and columns."""
    cdef cnp.ndarray[int64_t, ndim=2, mode="c"] fac = np.ascontiguousarray(facets, dtype=np.int64)
    cdef cnp.ndarray[uint8_t, ndim=2, mode="c"] rm = np.ascontiguousarray(row_mask, dtype=np.uint8)
    cdef cnp.ndarray[uint8_t, ndim=2, mode="c"] cm = np.ascontiguousarray(col_mask, dtype=np.uint8)
    cdef Py_ssize_t S = rm.shape[0]
    cdef Py_ssize_t R = fac.shape[0]
    cdef Py_ssize_t width = fac.shape[1] if fac.ndim == 2 else 0
    cdef Py_ssize_t C = cm.shape[1]
    out = np.zeros(S, dtype=np.int64)
    cdef int64_t[::1] res = out
    if R == 0 or C == 0 or S == 0:
        return out
    cdef Py_ssize_t words = (C + 63) // 64
    cdef uint64_t* buf = <uint64_t*>malloc(R * words * sizeof(uint64_t))
    cdef Py_ssize_t* piv = <Py_ssize_t*>malloc(words * 64 * sizeof(Py_ssize_t))
    if buf == NULL or piv == NULL:
        free(buf)
        free(piv)
        raise MemoryError()
    cdef Py_ssize_t s, i, j, k, nr
    cdef int64_t col
    cdef uint64_t* row
    with nogil:
        for s in range(S):
            nr = 0
            for i in range(R):
                if not rm[s, i]:
                    continue
                row = buf + nr * words
                memset(row, 0, words * sizeof(uint64_t))
                for j in range(width):
                    col = fac[i, j]
                    if cm[s, col]:
                        row[col >> 6] ^= (<uint64_t>1) << (col & 63)
                nr += 1
            for k in range(words * 64):
                piv[k] = -1
            res[s] = _rank_inplace(buf, nr, words, piv)
    free(buf)
    free(piv)
    return out


cdef inline Py_ssize_t _find(Py_ssize_t* parent, Py_ssize_t a) noexcept nogil:
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


def component_labels(Py_ssize_t n_nodes, edges, node_mask):
    """Per-sample component labels (smallest node index of the component, -1 if inactive)."""
    cdef cnp.ndarray[int64_t, ndim=2, mode="c"] e = np.ascontiguousarray(
        np.asarray(edges, dtype=np.int64).reshape(-1, 2))
    cdef cnp.ndarray[uint8_t, ndim=2, mode="c"] act = np.ascontiguousarray(node_mask, dtype=np.uint8)
    cdef Py_ssize_t S = act.shape[0]
    cdef Py_ssize_t E = e.shape[0]
    out = np.full((S, n_nodes), -1, dtype=np.int64)
    cdef int64_t[:, ::1] lab = out
    if n_nodes == 0:
        return out
    cdef Py_ssize_t* parent = <Py_ssize_t*>malloc(n_nodes * sizeof(Py_ssize_t))
    if parent == NULL:
        raise MemoryError()
    cdef Py_ssize_t s, i, a, b, ra, rb
    with nogil:
        for s in range(S):
            for i in range(n_nodes):
                parent[i] = i
            for i in range(E):
                a = e[i, 0]
                b = e[i, 1]
                if act[s, a] and act[s, b]:
                    ra = _find(parent, a)
                    rb = _find(parent, b)
                    if ra < rb:
                        parent[rb] = ra
                    elif rb < ra:
                        parent[ra] = rb
            for i in range(n_nodes):
                if act[s, i]:
                    lab[s, i] = _find(parent, i)
    free(parent)
    return out
