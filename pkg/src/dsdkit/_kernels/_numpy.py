"""Pure-numpy implementations of the hot loops.

These are the reference versions; the numba kernels in ``_numba`` must
agree with them (bit-for-bit for the walk simulator, to rounding for the
norms).
"""
import numpy as np


def lq_rows(X, q):
    """L_q norm of every row of ``X`` with the max-abs factor pulled out."""
    X = np.abs(np.atleast_2d(np.asarray(X, dtype=np.float64)))
    if X.shape[1] == 0:
        return np.zeros(X.shape[0])
    if np.isinf(q):
        return X.max(axis=1)
    if q == 1.0:
        return X.sum(axis=1)
    m = X.max(axis=1)
    safe = np.where(m > 0.0, m, 1.0)
    scaled = X / safe[:, None]
    if q == 2.0:
        s = np.sqrt(np.einsum("ij,ij->i", scaled, scaled))
    else:
        s = np.power(np.power(scaled, q).sum(axis=1), 1.0 / q)
    return np.where(m > 0.0, m * s, 0.0)


def pairwise_lq(M, q):
    M = np.ascontiguousarray(M, dtype=np.float64)
    n = M.shape[0]
    out = np.zeros((n, n))
    for u in range(n - 1):
        d = lq_rows(M[u] - M[u + 1:], q)
        out[u, u + 1:] = d
        out[u + 1:, u] = d
    return out


def walk_visits(indptr, indices, start, alpha, uniforms):
    """Simulate one block of lazy walks, all starting at ``start``.

    ``uniforms`` has shape (walks, steps); row w drives walk w. Returns
    per-vertex visit-count totals and totals of squared per-walk counts.
    Time 0 counts as a visit.
    """
    walks, steps = uniforms.shape
    n = indptr.shape[0] - 1
    deg = np.diff(indptr)
    pos = np.full(walks, start, dtype=np.int64)
    per_walk = np.zeros((walks, n), dtype=np.int64)
    rows = np.arange(walks)
    per_walk[rows, pos] += 1
    for t in range(steps):
        r = uniforms[:, t]
        move = r >= alpha
        if move.any():
            p = pos[move]
            d = deg[p]
            j = ((r[move] - alpha) / (1.0 - alpha) * d).astype(np.int64)
            j = np.minimum(j, d - 1)
            pos[move] = indices[indptr[p] + j]
        per_walk[rows, pos] += 1
    counts = per_walk.sum(axis=0)
    sq = (per_walk * per_walk).sum(axis=0)
    return counts, sq
