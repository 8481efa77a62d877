"""Pure-Python reference kernels; same signatures as the compiled ``_kernels``."""

import numpy as np


def _xor_sorted(a, b):
    """Symmetric difference of two ascending lists (GF(2) column sum)."""
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x < y:
            out.append(x)
            i += 1
        elif y < x:
            out.append(y)
            j += 1
        else:
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return out


def reduce_boundary(indptr, indices, dims):
    """Column reduction over GF(2) with clearing.

    ``indices[indptr[j]:indptr[j+1]]`` lists the (ascending) rows of column
    ``j``.  Returns ``low`` with ``low[j]`` the pivot row of reduced column
    ``j`` or ``-1`` when the column reduces to zero or was cleared.
    """
    indptr = np.asarray(indptr, dtype=np.int64)
    indices = np.asarray(indices, dtype=np.int64)
    dims = np.asarray(dims, dtype=np.int64)
    n = len(dims)
    low = np.full(n, -1, dtype=np.int64)
    pivot_col = [-1] * n
    cleared = [False] * n
    reduced = {}
    top = int(dims.max()) if n else 0
    for d in range(top, 0, -1):
        for j in np.nonzero(dims == d)[0].tolist():
            if cleared[j]:
                continue
            col = indices[indptr[j]:indptr[j + 1]].tolist()
            while col:
                k = pivot_col[col[-1]]
                if k < 0:
                    break
                col = _xor_sorted(col, reduced[k])
            if col:
                pivot = col[-1]
                low[j] = pivot
                pivot_col[pivot] = j
                cleared[pivot] = True
                reduced[j] = col
    return low


def flag_filtration(edge_birth, dim_cap, t_max):
    """Cliques of the graph ``edge_birth <= t_max`` up to ``dim_cap``.

    Returns ``(simplex, birth)`` pairs in depth-first lexicographic order; the
    birth of a clique is the largest birth among its edges (vertices at 0).
    """
    E = np.asarray(edge_birth, dtype=float)
    n = E.shape[0]
    out = []
    nbrs = [[u for u in range(v + 1, n) if E[v, u] <= t_max] for v in range(n)]

    def expand(simplex, birth, cands):
        out.append((tuple(simplex), birth))
        if len(simplex) > dim_cap:
            return
        for pos, u in enumerate(cands):
            b = birth
            for w in simplex:
                if E[w, u] > b:
                    b = E[w, u]
            simplex.append(u)
            row = E[u]
            expand(simplex, b, [c for c in cands[pos + 1:] if row[c] <= t_max])
            simplex.pop()

    for v in range(n):
        expand([v], 0.0, nbrs[v])
    return out
