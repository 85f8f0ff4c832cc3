import numba as nb
import numpy as np

# the system TBB is too old for numba and warns on first parallel launch
nb.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]


@nb.njit(cache=True)
def _lq(diff, q):
    n = diff.shape[0]
    if n == 0:
        return 0.0
    m = 0.0
    for i in range(n):
        a = abs(diff[i])
        if a > m:
            m = a
    if np.isinf(q) or m == 0.0:
        return m
    s = 0.0
    if q == 1.0:
        for i in range(n):
            s += abs(diff[i])
        return s
    if q == 2.0:
        for i in range(n):
            a = diff[i] / m
            s += a * a
        return m * np.sqrt(s)
    for i in range(n):
        s += (abs(diff[i]) / m) ** q
    return m * s ** (1.0 / q)


@nb.njit(cache=True)
def lq_rows(X, q):
    out = np.empty(X.shape[0])
    for i in range(X.shape[0]):
        out[i] = _lq(X[i], q)
    return out


@nb.njit(parallel=True, cache=True)
def pairwise_lq(M, q):
    n, m = M.shape
    out = np.zeros((n, n))
    # each u owns row u's upper part and column u's lower part: disjoint writes
    for u in nb.prange(n):
        buf = np.empty(m)
        for v in range(u + 1, n):
            for j in range(m):
                buf[j] = M[u, j] - M[v, j]
            d = _lq(buf, q)
            out[u, v] = d
            out[v, u] = d
    return out


@nb.njit(cache=True)
def walk_visits(indptr, indices, start, alpha, uniforms):
    walks, steps = uniforms.shape
    n = indptr.shape[0] - 1
    counts = np.zeros(n, dtype=np.int64)
    sq = np.zeros(n, dtype=np.int64)
    local = np.zeros(n, dtype=np.int64)
    path = np.empty(steps + 1, dtype=np.int64)
    for w in range(walks):
        x = start
        path[0] = x
        for t in range(steps):
            r = uniforms[w, t]
            if r >= alpha:
                d = indptr[x + 1] - indptr[x]
                j = np.int64((r - alpha) / (1.0 - alpha) * d)
                if j > d - 1:
                    j = d - 1
                x = indices[indptr[x] + j]
            path[t + 1] = x
        for t in range(steps + 1):
            x = path[t]
            # (c+1)^2 - c^2 = 2c + 1
            sq[x] += 2 * local[x] + 1
            local[x] += 1
            counts[x] += 1
        for t in range(steps + 1):
            local[path[t]] = 0
    return counts, sq
