# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: GF(2) boundary reduction and flag-complex enumeration."""

import numpy as np
cimport numpy as cnp
from libcpp.vector cimport vector

cnp.import_array()


cdef void _xor_into(vector[int]& col, const vector[int]& other, vector[int]& buf) noexcept nogil:
    cdef size_t i = 0, j = 0
    cdef size_t na = col.size(), nb = other.size()
    buf.clear()
    while i < na and j < nb:
        if col[i] < other[j]:
            buf.push_back(col[i]); i += 1
        elif other[j] < col[i]:
            buf.push_back(other[j]); j += 1
        else:
            i += 1; j += 1
    while i < na:
        buf.push_back(col[i]); i += 1
    while j < nb:
        buf.push_back(other[j]); j += 1
    col.swap(buf)


def reduce_boundary(indptr, indices, dims):
    cdef cnp.int64_t[:] ptr = np.asarray(indptr, dtype=np.int64)
    cdef cnp.int64_t[:] idx = np.asarray(indices, dtype=np.int64)
    cdef cnp.int64_t[:] dim = np.asarray(dims, dtype=np.int64)
    cdef Py_ssize_t n = dim.shape[0]
    low_arr = np.full(n, -1, dtype=np.int64)
    cdef cnp.int64_t[:] low = low_arr
    cdef vector[int] pivot_col
    cdef vector[char] cleared
    cdef vector[vector[int]] reduced
    cdef vector[int] col, buf
    cdef Py_ssize_t j, p
    cdef int k, d, top = 0
    pivot_col.assign(n, -1)
    cleared.assign(n, 0)
    reduced.resize(n)
    for j in range(n):
        if dim[j] > top:
            top = dim[j]
    with nogil:
        for d in range(top, 0, -1):
            for j in range(n):
                if dim[j] != d or cleared[j]:
                    continue
                col.clear()
                for p in range(ptr[j], ptr[j + 1]):
                    col.push_back(<int>idx[p])
                while col.size() > 0:
                    k = pivot_col[col.back()]
                    if k < 0:
                        break
                    _xor_into(col, reduced[k], buf)
                if col.size() > 0:
                    low[j] = col.back()
                    pivot_col[col.back()] = <int>j
                    cleared[col.back()] = 1
                    reduced[j].swap(col)
    return low_arr


def flag_filtration(edge_birth, int dim_cap, double t_max):
    cdef double[:, :] E = np.ascontiguousarray(edge_birth, dtype=np.float64)
    cdef Py_ssize_t n = E.shape[0]
    out = []
    cdef vector[int] simplex
    cdef vector[double] births
    cdef vector[vector[int]] cands
    cdef vector[size_t] cursor
    cdef Py_ssize_t v, u, c, w
    cdef size_t level, pos
    cdef double b
    simplex.reserve(dim_cap + 2)
    cands.resize(dim_cap + 2)
    cursor.resize(dim_cap + 2)
    births.resize(dim_cap + 2)
    for v in range(n):
        simplex.clear()
        simplex.push_back(<int>v)
        births[0] = 0.0
        out.append(((v,), 0.0))
        if dim_cap < 1:
            continue
        cands[0].clear()
        for u in range(v + 1, n):
            if E[v, u] <= t_max:
                cands[0].push_back(<int>u)
        cursor[0] = 0
        level = 0
        # iterative DFS: level = len(simplex) - 1
        while True:
            if cursor[level] >= cands[level].size():
                if level == 0:
                    break
                simplex.pop_back()
                level -= 1
                continue
            pos = cursor[level]
            cursor[level] += 1
            u = cands[level][pos]
            b = births[level]
            for w in range(<Py_ssize_t>simplex.size()):
                if E[simplex[w], u] > b:
                    b = E[simplex[w], u]
            simplex.push_back(<int>u)
            out.append((tuple([simplex[w] for w in range(<Py_ssize_t>simplex.size())]), b))
            if <int>simplex.size() > dim_cap:
                simplex.pop_back()
                continue
            births[level + 1] = b
            cands[level + 1].clear()
            for c in range(pos + 1, <Py_ssize_t>cands[level].size()):
                if E[u, cands[level][c]] <= t_max:
                    cands[level + 1].push_back(cands[level][c])
            cursor[level + 1] = 0
            level += 1
    return out
