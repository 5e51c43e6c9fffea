"""Common-neighbour accumulation, the inner loop of every local similarity index.

For each unordered pair ``(x, y)`` and each common neighbour ``z`` the kernel
adds one term, selected by ``mode``:

==== ===========================================
mode term
==== ===========================================
0    ``coef[z]``
1    ``coef[z] * gamma(z)``, gamma(z) = number of other common neighbours of
     ``(x, y)`` adjacent to ``z``
2    ``coef[z] * (w_xz + w_zy)``
3    ``coef[z] * w_xz * w_zy``
==== ===========================================

The result is a dense symmetric ``n x n`` matrix with a zero diagonal.

A compiled implementation (``lrlink._kernels``) is used when it was built;
otherwise the numpy version below is selected at import. Modes 0, 2 and 3 are
plain matrix products, where BLAS beats the compiled loop, so the default
``"auto"`` backend sends only mode 1 to the extension. Every backend is
reachable through :data:`BACKENDS` for benchmarking and cross-checks.
"""

import numpy as np

MODES = (0, 1, 2, 3)


def _csr(adj: np.ndarray):
    rows, cols = np.nonzero(adj)
    indptr = np.zeros(adj.shape[0] + 1, dtype=np.int64)
    np.cumsum(np.bincount(rows, minlength=adj.shape[0]), out=indptr[1:])
    return indptr, cols.astype(np.int64), np.ascontiguousarray(adj[rows, cols], dtype=np.float64)


def neighbor_sums_numpy(adj: np.ndarray, coef: np.ndarray, mode: int) -> np.ndarray:
    w = np.asarray(adj, dtype=np.float64)
    b = (w != 0).astype(np.float64)
    c = np.asarray(coef, dtype=np.float64)
    if mode == 0:
        out = (b * c) @ b
    elif mode == 1:
        n = b.shape[0]
        out = np.zeros((n, n))
        for x in range(n):
            nbr = np.flatnonzero(b[x])
            if nbr.size < 2:
                continue
            sub = b[np.ix_(nbr, nbr)]
            bx = b[:, nbr]
            # sum over z, w in N(x): A_yz c_z A_zw A_yw
            out[x] = ((bx @ (c[nbr, None] * sub)) * bx).sum(axis=1)
    elif mode == 2:
        out = (w * c) @ b
        out = out + out.T
    elif mode == 3:
        out = (w * c) @ w
    else:
        raise ValueError(f"unknown kernel mode {mode}")
    # BLAS summation order differs between (x, y) and (y, x); mirror for exact symmetry
    out = np.triu(out, 1)
    return out + out.T


def _compiled_wrapper(fn):
    def neighbor_sums_compiled(adj: np.ndarray, coef: np.ndarray, mode: int) -> np.ndarray:
        if mode not in MODES:
            raise ValueError(f"unknown kernel mode {mode}")
        indptr, indices, data = _csr(np.asarray(adj, dtype=np.float64))
        return fn(indptr, indices, data, np.ascontiguousarray(coef, dtype=np.float64), mode)

    return neighbor_sums_compiled


try:
    from ._kernels import neighbor_sums as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"numpy": neighbor_sums_numpy}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled_wrapper(_compiled)

if _compiled is not None:
    _mode1 = BACKENDS["compiled"]

    def neighbor_sums_auto(adj: np.ndarray, coef: np.ndarray, mode: int) -> np.ndarray:
        fn = _mode1 if mode == 1 else neighbor_sums_numpy
        return fn(adj, coef, mode)

    BACKENDS["auto"] = neighbor_sums_auto

BACKEND = "auto" if _compiled is not None else "numpy"
neighbor_sums = BACKENDS[BACKEND]
