"""G(n, p) and Chung-Lu generators with spectral concentration audits."""
import math
from dataclasses import dataclass, field

import numpy as np

from .dsd import check_q
from .errors import InvalidParameter, InvalidWeights
from .graph import Graph, is_connected
from .spectral import spectrum

AUDIT_SLACK = 1.5


@dataclass(frozen=True, eq=False)
class WeightSequence:
    """Expected degrees ``w_i > 0`` with ``w_i w_j rho <= 1`` for all pairs."""

    weights: np.ndarray
    rho: float = field(init=False)
    w_min: float = field(init=False)
    w_max: float = field(init=False)

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64).ravel()
        if w.size < 1 or not np.all(np.isfinite(w)) or (w <= 0).any():
            raise InvalidWeights("weights must be finite and positive")
        rho = 1.0 / w.sum()
        if w.max() ** 2 * rho > 1.0 + 1e-12:
            raise InvalidWeights(
                f"w_max^2 * rho = {w.max() ** 2 * rho:.4g} exceeds 1")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "rho", float(rho))
        object.__setattr__(self, "w_min", float(w.min()))
        object.__setattr__(self, "w_max", float(w.max()))

    @classmethod
    def ramp(cls, n, low, high):
        """w_i = low + (high - low) * i / n for i = 0..n-1."""
        return cls(low + (high - low) * np.arange(n) / n)

    @classmethod
    def from_text(cls, text):
        vals = []
        for line in text.splitlines():
            line = line.split("#", 1)[0]
            vals.extend(float(t) for t in line.replace(",", " ").split())
        return cls(np.array(vals))

    @property
    def n(self):
        return len(self.weights)


@dataclass(frozen=True)
class GnpModel:
    n: int
    p: float

    def predicted_epsilon(self):
        return 3.0 / math.sqrt(self.n * self.p)


@dataclass(frozen=True)
class ChungLuModel:
    weights: WeightSequence

    def predicted_epsilon(self):
        return 3.0 / math.sqrt(self.weights.w_min)


def gnp(n, p, seed):
    """Erdos-Renyi G(n, p); pair ``i < j`` kept iff its uniform is below p.

    Uniforms are consumed in row-major order of the strict upper triangle,
    so the graph depends only on ``(n, p, seed)``.
    """
    if n < 2:
        raise InvalidParameter(f"G(n, p) needs n >= 2, got {n}")
    if not (0.0 < p < 1.0):
        raise InvalidParameter(f"p must lie in (0, 1), got {p}")
    rng = np.random.default_rng(seed)
    i, j = np.triu_indices(n, 1)
    keep = rng.random(len(i)) < p
    return Graph.from_edges(n, np.column_stack([i[keep], j[keep]]))


def chung_lu(w, seed):
    """G(w_1, ..., w_n); pair ``i <= j`` kept with probability w_i w_j rho.

    ``i == j`` yields a self-loop, which adds 1 to that vertex's degree.
    """
    if not isinstance(w, WeightSequence):
        w = WeightSequence(w)
    n = w.n
    rng = np.random.default_rng(seed)
    i, j = np.triu_indices(n, 0)
    prob = w.weights[i] * w.weights[j] * w.rho
    keep = rng.random(len(i)) < prob
    return Graph.from_edges(n, np.column_stack([i[keep], j[keep]]))


@dataclass(frozen=True)
class AuditReport:
    connected: bool
    epsilon_observed: float
    epsilon_predicted: float
    slack: float
    passed: bool
    lambda1: float = float("nan")
    lambda_max: float = float("nan")


def concentration_audit(g, model, slack=AUDIT_SLACK, sd=None):
    """Compare max_{i>=1} |1 - lambda_i| with the model's 3/sqrt(scale)."""
    pred = model.predicted_epsilon()
    if not is_connected(g):
        return AuditReport(False, float("nan"), pred, slack, False)
    if sd is None:
        sd = spectrum(g)
    lam = sd.eigenvalues[1:]
    eps = float(np.abs(1.0 - lam).max())
    return AuditReport(True, eps, pred, slack, eps <= slack * pred,
                       float(lam[0]), float(lam[-1]))


def dsd_concentration_bound(g, u, v, q, epsilon):
    """Interval for DSD_q(u, v) when every nonzero eigenvalue is within
    ``epsilon`` of 1: ``2^(1/q) +- eps/(1-eps) * sqrt(Dmax/d_u + Dmax/d_v)``,
    widened by ``n^(1/q - 1/2)`` for ``q < 2``.
    """
    q = check_q(q)
    if not (0.0 < epsilon < 0.5):
        raise InvalidParameter(f"epsilon must lie in (0, 1/2), got {epsilon}")
    u, v = g.check_vertex(u), g.check_vertex(v)
    d = g.degrees
    half = epsilon / (1 - epsilon) * math.sqrt(g.max_degree / d[u] + g.max_degree / d[v])
    if q < 2:
        half *= g.n ** (1 / q - 0.5)
    centre = 1.0 if math.isinf(q) else 2 ** (1 / q)
    return centre - half, centre + half


def chung_lu_dsd_interval(w, u, v, q, slack=AUDIT_SLACK):
    """Model-level interval using weights in place of degrees and the
    predicted ``3 / sqrt(w_min)`` (times ``slack``) in place of epsilon."""
    q = check_q(q)
    eps = slack * 3.0 / math.sqrt(w.w_min)
    if eps >= 1:
        raise InvalidParameter("predicted epsilon is not below 1")
    ww = w.weights
    half = eps / (1 - eps) * math.sqrt(w.w_max / ww[u] + w.w_max / ww[v])
    if q < 2:
        half *= w.n ** (1 / q - 0.5)
    centre = 1.0 if math.isinf(q) else 2 ** (1 / q)
    return centre - half, centre + half
