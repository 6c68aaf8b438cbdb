"""Pure-Python GF(2) and connectivity kernels.

Same interface as the compiled ``_ckernels`` module; used when the extension
is not built or when ``BARYTILE_PURE_PYTHON=1``.
"""
from __future__ import annotations

import numpy as np


def _eliminate(rows) -> int:
    # xor basis keyed by lowest set bit
    pivots: dict[int, int] = {}
    rank = 0
    for x in rows:
        while x:
            low = x & -x
            y = pivots.get(low)
            if y is None:
                pivots[low] = x
                rank += 1
                break
            x ^= y
    return rank


def gf2_rank(rows: np.ndarray) -> int:
    """Rank of a matrix given as packed uint64 rows of shape (r, words)."""
    rows = np.asarray(rows, dtype=np.uint64)
    if rows.size == 0:
        return 0
    ints = []
    for r in rows:
        x = 0
        for w, word in enumerate(r.tolist()):
            x |= int(word) << (64 * w)
        ints.append(x)
    return _eliminate(ints)


def restricted_ranks(facets: np.ndarray, row_mask: np.ndarray, col_mask: np.ndarray) -> np.ndarray:
    """Per-sample rank of a boundary matrix restricted to selected rows and columns.

    ``facets[i]`` lists the column indices incident to row ``i``.  For sample
    ``s`` only rows with ``row_mask[s, i]`` and columns with ``col_mask[s, j]``
    are kept.  Repeated indices in a row cancel mod 2.
    """
    facets = np.asarray(facets, dtype=np.int64)
    row_mask = np.asarray(row_mask, dtype=np.uint8)
    col_mask = np.asarray(col_mask, dtype=np.uint8)
    S = row_mask.shape[0]
    out = np.zeros(S, dtype=np.int64)
    if facets.shape[0] == 0 or col_mask.shape[1] == 0:
        return out
    flist = facets.tolist()
    for s in range(S):
        cols = col_mask[s].tolist()
        rows = []
        for i in np.flatnonzero(row_mask[s]).tolist():
            x = 0
            for j in flist[i]:
                if cols[j]:
                    x ^= 1 << j
            if x:
                rows.append(x)
        out[s] = _eliminate(rows)
    return out


def component_labels(n_nodes: int, edges: np.ndarray, node_mask: np.ndarray) -> np.ndarray:
    """Per-sample connected-component labels on the active nodes.

    An edge counts when both endpoints are active.  The label of a node is the
    smallest node index in its component; inactive nodes get -1.
    """
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2).tolist()
    node_mask = np.asarray(node_mask, dtype=np.uint8)
    S = node_mask.shape[0]
    out = np.full((S, n_nodes), -1, dtype=np.int64)
    for s in range(S):
        active = node_mask[s].tolist()
        parent = list(range(n_nodes))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a, b in edges:
            if active[a] and active[b]:
                ra, rb = find(a), find(b)
                if ra != rb:
                    if ra < rb:
                        parent[rb] = ra
                    else:
                        parent[ra] = rb
        row = out[s]
        for v in range(n_nodes):
            if active[v]:
                row[v] = find(v)
    return out
