"""Lazy random walks: exact visit expectations, Monte Carlo, mixing rates.

``He_k(u, .)`` counts visits at times ``t = 0..k`` (the start is a visit),
so its entries sum to ``k + 1``. As ``k`` grows,
``(1 - alpha) * ||He_k(u) - He_k(v)||_q`` converges to ``DSD_q(u, v)``
whenever the lazy walk mixes, i.e. for every ``alpha > 0``, and for
``alpha = 0`` only on non-bipartite graphs.
"""
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from . import _kernels
from .dsd import check_alpha, check_q, lq_norm
from .errors import InvalidParameter, InvalidSpectrum, IsolatedVertex, NonconvergentWalk
from .graph import is_bipartite

MC_BLOCK = 4096


@dataclass(frozen=True)
class WalkParams:
    alpha: float = 0.0
    steps: int = 0
    num_walks: int = 1
    seed: int = 0

    def __post_init__(self):
        check_alpha(self.alpha)
        if self.steps < 0:
            raise InvalidParameter(f"steps must be >= 0, got {self.steps}")
        if self.num_walks < 1:
            raise InvalidParameter(f"num_walks must be >= 1, got {self.num_walks}")
        if not (0 <= self.seed < 2**64):
            raise InvalidParameter("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True, eq=False)
class WalkState:
    """Visit expectations from ``origin``.

    ``stderr`` is only set for Monte Carlo estimates: the per-vertex
    standard error of the mean visit count.
    """

    he: np.ndarray
    origin: int
    params: WalkParams
    stderr: np.ndarray = None


def transition_matrix(g, alpha):
    """Dense row-stochastic ``alpha I + (1 - alpha) D^-1 A``."""
    alpha = check_alpha(alpha)
    d = g.degrees.astype(np.float64)
    if (d == 0).any():
        raise IsolatedVertex(f"vertex {int(np.argmin(d))} has degree 0")
    return alpha * np.eye(g.n) + (1.0 - alpha) * g.adjacency / d[:, None]


def _sparse_adjacency(g):
    data = np.ones(len(g.indices))
    return sparse.csr_matrix((data, g.indices, g.indptr), shape=(g.n, g.n))


def _stepper(g, alpha):
    """Return ``x -> x T_alpha`` for row vectors (or stacked rows)."""
    d = g.degrees.astype(np.float64)
    if (d == 0).any():
        raise IsolatedVertex(f"vertex {int(np.argmin(d))} has degree 0")
    A = _sparse_adjacency(g)
    a, b = alpha, 1.0 - alpha

    def step(x):
        # A is symmetric, so (x D^-1) A == A @ (x / d)
        return a * x + b * (A @ (x / d))

    return step


def visit_expectations_exact(g, u, params):
    u = g.check_vertex(u)
    step = _stepper(g, params.alpha)
    x = np.zeros(g.n)
    x[u] = 1.0
    he = x.copy()
    for _ in range(params.steps):
        x = step(x)
        he += x
    return WalkState(he, u, params)


def _require_mixing(g, alpha):
    if alpha == 0.0 and is_bipartite(g):
        raise NonconvergentWalk(
            "the non-lazy walk oscillates on a bipartite graph; use alpha > 0")


def walk_estimates(g, u, v, q, alpha, k_max, allow_nonconvergent=False):
    """``(1 - alpha) ||He_k(u) - He_k(v)||_q`` for every ``k = 0..k_max``.

    With ``allow_nonconvergent=True`` the bipartite ``alpha = 0`` case is
    computed anyway, exposing the raw oscillating sequence.
    """
    q, alpha = check_q(q), check_alpha(alpha)
    u, v = g.check_vertex(u), g.check_vertex(v)
    if not allow_nonconvergent:
        _require_mixing(g, alpha)
    step = _stepper(g, alpha)
    delta = np.zeros(g.n)
    delta[u] += 1.0
    delta[v] -= 1.0
    acc = delta.copy()
    out = np.empty(int(k_max) + 1)
    out[0] = (1.0 - alpha) * lq_norm(acc, q)
    for k in range(1, int(k_max) + 1):
        delta = step(delta)
        acc += delta
        out[k] = (1.0 - alpha) * lq_norm(acc, q)
    return out


def oscillation_diagnostic(g, u, v, q, k_max):
    """The non-lazy sequence, computed even where it has no limit."""
    return walk_estimates(g, u, v, q, 0.0, k_max, allow_nonconvergent=True)


def dsd_walk_estimate(g, u, v, q, params):
    """Walk-based DSD_q(u, v) truncated at ``params.steps``."""
    return float(walk_estimates(g, u, v, q, params.alpha, params.steps)[-1])


def walk_until_converged(g, u, v, q, alpha, lambda1, lambda_max, tol=1e-6, k_max=100_000):
    """Iterate until the step increment drops below ``tol * (1 - rate)``.

    Returns ``(estimate, k, converged)``. The geometric tail after an
    increment of size ``e`` is at most ``e * rate / (1 - rate)``.
    """
    q, alpha = check_q(q), check_alpha(alpha)
    u, v = g.check_vertex(u), g.check_vertex(v)
    _require_mixing(g, alpha)
    rate = convergence_rate(lambda1, lambda_max, alpha)
    threshold = tol * max(1.0 - rate, 1e-12)
    step = _stepper(g, alpha)
    delta = np.zeros(g.n)
    delta[u] += 1.0
    delta[v] -= 1.0
    acc = delta.copy()
    for k in range(1, int(k_max) + 1):
        delta = step(delta)
        acc += delta
        if (1.0 - alpha) * lq_norm(delta, q) < threshold:
            return (1.0 - alpha) * lq_norm(acc, q), k, True
    return (1.0 - alpha) * lq_norm(acc, q), int(k_max), False


def _block_uniforms(seed, block, walks, steps):
    ss = np.random.SeedSequence(seed, spawn_key=(block,))
    return np.random.Generator(np.random.Philox(ss)).random((walks, steps))


def monte_carlo_visits(g, u, params, block_size=MC_BLOCK):
    """Empirical mean visit counts over ``params.num_walks`` simulated walks.

    Walk ``w`` draws its uniforms from a Philox stream keyed by
    ``(seed, w // block_size)``, so results depend only on the seed, the
    walk count and the step count.
    """
    u = g.check_vertex(u)
    if (g.degrees == 0).any():
        raise IsolatedVertex("walks need every vertex to have a neighbour")
    counts = np.zeros(g.n, dtype=np.int64)
    sq = np.zeros(g.n, dtype=np.int64)
    remaining, block = params.num_walks, 0
    while remaining > 0:
        w = min(block_size, remaining)
        U = _block_uniforms(params.seed, block, w, params.steps)
        c, s = _kernels.walk_visits(g.indptr, g.indices, u, params.alpha, U)
        counts += c
        sq += s
        remaining -= w
        block += 1
    N = params.num_walks
    mean = counts / N
    var = np.maximum(sq / N - mean**2, 0.0)
    stderr = np.sqrt(var / max(N - 1, 1))
    return WalkState(mean, u, params, stderr)


def convergence_rate(lambda1, lambda_max, alpha):
    """max(1 - (1 - alpha) lambda_1, (1 - alpha) lambda_max - 1)."""
    alpha = check_alpha(alpha)
    b = 1.0 - alpha
    return max(1.0 - b * lambda1, b * lambda_max - 1.0)


def optimal_alpha(lambda1, lambda_max):
    """Laziness minimising the mixing rate, and the rate it achieves.

    When ``lambda1 + lambda_max <= 2`` the minimiser would be negative;
    ``alpha = 0`` is returned with its rate.
    """
    if lambda1 <= 0:
        raise InvalidSpectrum(f"lambda_1 must be positive, got {lambda1}")
    s = lambda1 + lambda_max
    if s <= 2.0:
        return 0.0, convergence_rate(lambda1, lambda_max, 0.0)
    return 1.0 - 2.0 / s, (lambda_max - lambda1) / s


def measured_mixing_rate(g, alpha, k=400, window=50):
    """Empirical contraction factor of ``T_alpha - W`` per step.

    Repeatedly multiplies by ``T_alpha - W`` with renormalisation and
    returns the mean per-step Frobenius growth over the final ``window``
    steps. No eigenvalues are used.
    """
    alpha = check_alpha(alpha)
    n = g.n
    pi = g.degrees / float(g.volume)
    M = transition_matrix(g, alpha) - np.ones((n, 1)) * pi[None, :]
    P = np.eye(n) - np.ones((n, 1)) * pi[None, :]
    logs = []
    for _ in range(k):
        P = P @ M
        s = np.linalg.norm(P)
        if s == 0.0:
            return 0.0
        logs.append(np.log(s))
        P /= s
    return float(np.exp(np.mean(logs[-window:])))


def windowed_decay(errors, window=10, floor=1e-12):
    """Per-step geometric decay ``(e[k+window] / e[k]) ** (1/window)``.

    Only windows whose end error is still above ``floor`` (relative to the
    initial error) are used, so rounding noise is excluded.
    """
    e = np.asarray(errors, dtype=np.float64)
    cut = np.nonzero(e <= floor * max(e[0], 1.0))[0]
    stop = cut[0] if len(cut) else len(e)
    ks = np.arange(0, stop - window)
    if len(ks) == 0:
        return np.array([])
    return (e[ks + window] / e[ks]) ** (1.0 / window)


def mean_decay_rate(errors, window=10, floor=1e-12):
    """Geometric mean of :func:`windowed_decay`.

    Single windows can spike where the signed error crosses zero; the
    average over windows is the per-step contraction actually achieved.
    """
    r = windowed_decay(errors, window, floor)
    if len(r) == 0:
        return 0.0
    return float(np.exp(np.mean(np.log(r))))
