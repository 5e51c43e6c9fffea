# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled common-neighbour accumulation kernel (see kernels.py for the contract)."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def neighbor_sums(const cnp.int64_t[::1] indptr,
                  const cnp.int64_t[::1] indices,
                  const double[::1] weights,
                  const double[::1] coef,
                  int mode):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    out_arr = np.zeros((n, n), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double[::1] wx = np.zeros(n, dtype=np.float64)
    cdef cnp.int64_t[::1] stamp = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] cn = np.empty(max(n, 1), dtype=np.int64)
    cdef double[::1] wy_cn = np.empty(max(n, 1), dtype=np.float64)
    cdef Py_ssize_t x, y, p, q, z, t, ncn
    cdef cnp.int64_t tick = 0
    cdef long gamma
    cdef double acc, wxz, wzy

    for x in range(n):
        for p in range(indptr[x], indptr[x + 1]):
            wx[indices[p]] = weights[p]
        for y in range(x + 1, n):
            ncn = 0
            tick += 1
            for p in range(indptr[y], indptr[y + 1]):
                z = indices[p]
                if wx[z] > 0.0:
                    cn[ncn] = z
                    wy_cn[ncn] = weights[p]
                    stamp[z] = tick
                    ncn += 1
            if ncn == 0:
                continue
            acc = 0.0
            for t in range(ncn):
                z = cn[t]
                if mode == 0:
                    acc += coef[z]
                elif mode == 1:
                    gamma = 0
                    for q in range(indptr[z], indptr[z + 1]):
                        if stamp[indices[q]] == tick:
                            gamma += 1
                    acc += coef[z] * gamma
                elif mode == 2:
                    acc += coef[z] * (wx[z] + wy_cn[t])
                else:
                    acc += coef[z] * wx[z] * wy_cn[t]
            out[x, y] = acc
            out[y, x] = acc
        for p in range(indptr[x], indptr[x + 1]):
            wx[indices[p]] = 0.0
    return out_arr
