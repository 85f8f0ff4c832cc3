"""Diffusion state distance: the Green's-function formula and its cross-checks.

``DSD_q(u, v)`` is the L_q distance between rows ``u`` and ``v`` of the
Green's function. The lazy variant only rescales it by ``1 / (1 - alpha)``.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import Disconnected, InvalidParameter, InvalidVertex, NumericalSingularity
from .graph import diameter, is_connected


@dataclass(frozen=True)
class DsdParams:
    q: float = 1.0
    alpha: float = 0.0

    def __post_init__(self):
        check_q(self.q)
        check_alpha(self.alpha)


@dataclass(frozen=True, eq=False)
class DsdMatrix:
    n: int
    q: float
    values: np.ndarray

    def upper_triangle(self):
        """``(u, v, d)`` for every ``u < v``, row-major."""
        iu, iv = np.triu_indices(self.n, 1)
        return iu, iv, self.values[iu, iv]


def check_q(q):
    q = float(q)
    if not (q >= 1.0):
        raise InvalidParameter(f"q must be >= 1 (or inf), got {q}")
    return q


def check_alpha(alpha):
    alpha = float(alpha)
    if not (0.0 <= alpha < 1.0):
        raise InvalidParameter(f"alpha must lie in [0, 1), got {alpha}")
    return alpha


def lq_norm(x, q):
    """L_q norm, ``q = inf`` for the max norm.

    The largest magnitude is factored out before powering so large q does
    not overflow.
    """
    q = check_q(q)
    return float(_kernels.lq_rows(np.asarray(x, dtype=np.float64).ravel(), q)[0])


def _row_pair(gm, u, v):
    n = gm.n
    for w in (u, v):
        if not (0 <= int(w) < n):
            raise InvalidVertex(f"vertex {w} not in 0..{n - 1}")
    return gm.G[int(u)] - gm.G[int(v)]


def dsd(gm, u, v, q=1.0):
    """DSD_q(u, v) from a :class:`~dsdkit.spectral.GreensMatrix`."""
    diff = _row_pair(gm, u, v)
    if int(u) == int(v):
        return 0.0
    return lq_norm(diff, q)


def dsd_lazy(gm, u, v, q=1.0, alpha=0.0):
    alpha = check_alpha(alpha)
    return dsd(gm, u, v, q) / (1.0 - alpha)


def pairwise_row_distances(M, q):
    """Symmetric matrix of L_q distances between the rows of ``M``."""
    q = check_q(q)
    return _kernels.pairwise_lq(np.ascontiguousarray(M, dtype=np.float64), q)


def dsd_all_pairs(gm, q=1.0):
    return DsdMatrix(gm.n, float(q), pairwise_row_distances(gm.G, q))


def fundamental_matrix(g, residual_tol=1e-8):
    """Z = (I - D^-1 A + W)^-1 by a partial-pivoting dense solve.

    ``W`` stacks the stationary distribution in every row. The solve is
    re-checked through ``max|Z M - I|``.
    """
    if not is_connected(g):
        raise Disconnected("fundamental matrix requires a connected graph")
    n = g.n
    d = g.degrees.astype(np.float64)
    pi = d / d.sum()
    M = np.eye(n) - g.adjacency / d[:, None] + np.ones((n, 1)) * pi[None, :]
    try:
        Z = np.linalg.solve(M, np.eye(n))
    except np.linalg.LinAlgError as exc:
        raise NumericalSingularity(str(exc)) from exc
    res = float(np.abs(Z @ M - np.eye(n)).max())
    if not np.isfinite(res) or res > residual_tol:
        raise NumericalSingularity(f"fundamental matrix residual {res:.3g}")
    return Z


def dsd_fundamental(g, u, v, q=1.0, Z=None):
    """DSD_q via the fundamental matrix; pass ``Z`` to reuse one solve."""
    u, v = g.check_vertex(u), g.check_vertex(v)
    if u == v:
        return 0.0
    if Z is None:
        Z = fundamental_matrix(g)
    return lq_norm(Z[u] - Z[v], q)


def dsd2_upper_bound(sd, g):
    """sqrt(2) / lambda_1 * sqrt(max_degree / min_degree)."""
    return math.sqrt(2.0) / sd.lambda1 * math.sqrt(g.max_degree / g.min_degree)


def lambda1_diameter_bound(g):
    """1 / (diameter * volume); lambda_1 of a connected graph exceeds it."""
    return 1.0 / (diameter(g) * g.volume)
