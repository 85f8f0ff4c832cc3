"""Normalized Laplacian spectrum, Green's functions and the heat kernel."""
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConnectivityMismatch,
    Disconnected,
    EigensolverFailure,
    InvalidParameter,
    IsolatedVertex,
    SizeLimit,
)
from .graph import is_connected

MAX_DENSE_N = 8192


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Ascending eigenvalues of the normalized Laplacian and their eigenvectors.

    ``eigenvectors[:, i]`` pairs with ``eigenvalues[i]``. The zero-mode
    vector is oriented to be positive, every other vector has its
    largest-magnitude entry positive, so repeated runs agree.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    zero_tolerance: float = 1e-9

    @property
    def n(self):
        return len(self.eigenvalues)

    @property
    def lambda1(self):
        return float(self.eigenvalues[1])

    @property
    def lambda_max(self):
        return float(self.eigenvalues[-1])

    @property
    def phi0(self):
        return self.eigenvectors[:, 0]

    @property
    def num_zero(self):
        return int(np.count_nonzero(self.eigenvalues < self.zero_tolerance))

    def reassemble(self):
        O = self.eigenvectors
        return (O * self.eigenvalues) @ O.T


@dataclass(frozen=True, eq=False)
class GreensMatrix:
    """Green's function ``G`` of a connected graph and its normalized form.

    The residual fields hold max-abs violations of ``G L = I - 1 pi``,
    ``G 1 = 0`` and ``G_normalized = D^1/2 G D^-1/2`` at construction.
    """

    G: np.ndarray
    G_normalized: np.ndarray
    residual_g1: float
    residual_g2: float
    residual_conjugation: float

    @property
    def n(self):
        return self.G.shape[0]


def _check_size(n, max_n):
    if n > max_n:
        raise SizeLimit(f"dense spectral work on n={n} exceeds cap {max_n}")


def normalized_laplacian(g, max_n=MAX_DENSE_N):
    """I - D^-1/2 A D^-1/2 as a dense symmetric array."""
    _check_size(g.n, max_n)
    d = g.degrees.astype(np.float64)
    if (d == 0).any():
        raise IsolatedVertex(f"vertex {int(np.argmin(d))} has degree 0")
    s = 1.0 / np.sqrt(d)
    L = -(g.adjacency * s[:, None]) * s[None, :]
    L[np.diag_indices(g.n)] += 1.0
    return 0.5 * (L + L.T)


def random_walk_laplacian(g):
    """I - D^-1 A (not symmetric)."""
    d = g.degrees.astype(np.float64)
    if (d == 0).any():
        raise IsolatedVertex(f"vertex {int(np.argmin(d))} has degree 0")
    return np.eye(g.n) - g.adjacency / d[:, None]


def stationary_distribution(g):
    return g.degrees / float(g.volume)


def eigendecompose(L, connected=None, zero_tolerance=1e-9):
    """Dense symmetric eigendecomposition with deterministic sign choice.

    ``zero_tolerance`` is relative to ``max(1, |lambda|_max)``. With
    ``connected=True`` more than one near-zero eigenvalue raises
    :class:`ConnectivityMismatch`.
    """
    L = np.asarray(L, dtype=np.float64)
    if L.ndim != 2 or L.shape[0] != L.shape[1]:
        raise InvalidParameter("Laplacian must be square")
    if not np.allclose(L, L.T, atol=1e-12, rtol=0):
        raise InvalidParameter("Laplacian must be symmetric")
    try:
        w, V = np.linalg.eigh(L)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(str(exc)) from exc
    if not np.all(np.isfinite(w)):
        raise EigensolverFailure("non-finite eigenvalues")

    # orient: zero mode positive, the rest by their largest entry
    if V[:, 0].sum() < 0:
        V[:, 0] = -V[:, 0]
    idx = np.argmax(np.abs(V[:, 1:]), axis=0)
    flip = V[idx, np.arange(1, V.shape[1])] < 0
    V[:, 1:][:, flip] *= -1.0

    tol = zero_tolerance * max(1.0, float(np.abs(w).max()))
    sd = SpectralDecomposition(w, V, tol)
    if connected and sd.num_zero > 1:
        raise ConnectivityMismatch(
            f"{sd.num_zero} eigenvalues below {tol:g} on a graph declared connected")
    return sd


def spectrum(g, max_n=MAX_DENSE_N):
    """Normalized-Laplacian eigendecomposition of ``g``."""
    return eigendecompose(normalized_laplacian(g, max_n), connected=is_connected(g))


def greens_function(sd, g):
    """Assemble G and its normalized form from the spectrum.

    Only the single smallest eigenvalue is skipped; a graph whose second
    eigenvalue is still below the zero tolerance is rejected rather than
    pseudo-inverted.
    """
    if not is_connected(g):
        raise Disconnected("Green's function requires a connected graph")
    if sd.n != g.n:
        raise InvalidParameter("spectrum and graph sizes differ")
    if sd.n < 2 or sd.eigenvalues[1] < sd.zero_tolerance:
        raise Disconnected("second eigenvalue is numerically zero")
    O = sd.eigenvectors[:, 1:]
    Gn = (O / sd.eigenvalues[1:]) @ O.T
    Gn = 0.5 * (Gn + Gn.T)
    sqd = np.sqrt(g.degrees.astype(np.float64))
    G = Gn / sqd[:, None] * sqd[None, :]
    r1, r2, r3 = _residuals(G, Gn, g)
    return GreensMatrix(G, Gn, r1, r2, r3)


def greens(g):
    """Shortcut: spectrum then Green's function."""
    return greens_function(spectrum(g), g)


def _residuals(G, Gn, g):
    n = g.n
    L = random_walk_laplacian(g)
    pi = stationary_distribution(g)
    target = np.eye(n) - np.ones((n, 1)) * pi[None, :]
    r1 = float(np.abs(G @ L - target).max())
    r2 = float(np.abs(G.sum(axis=1)).max())
    sqd = np.sqrt(g.degrees.astype(np.float64))
    r3 = float(np.abs(Gn - sqd[:, None] * G / sqd[None, :]).max())
    return r1, r2, r3


def verify_greens_identities(gm, g):
    """Recompute the three identity residuals for (possibly edited) matrices."""
    r1, r2, r3 = _residuals(gm.G, gm.G_normalized, g)
    return {"g1": r1, "g2": r2, "conjugation": r3}


def heat_kernel(sd, t):
    """exp(-t L) from the eigendecomposition."""
    if t < 0:
        raise InvalidParameter(f"heat kernel time must be >= 0, got {t}")
    O = sd.eigenvectors
    return (O * np.exp(-sd.eigenvalues * t)) @ O.T


def heat_kernel_greens(L, lambda1, tol=1e-4):
    """Integral of (H_t - phi0 phi0^T) over [0, T] by the composite trapezoid rule.

    H_t is advanced with a fixed matrix-exponential propagator, so this
    never touches an eigendecomposition of ``L``; it is the quadrature
    cross-check for :func:`greens_function`. ``T = 40 / lambda1`` and the
    step keeps the per-mode trapezoid error ``h**2 * lam / 12`` below
    ``tol`` for ``lam <= 2``.
    """
    from scipy.linalg import expm

    L = np.asarray(L, dtype=np.float64)
    n = L.shape[0]
    T = 40.0 / lambda1
    h = min(np.sqrt(12.0 * tol / 2.0) / 2.0, T / 16)
    steps = int(np.ceil(T / h))
    h = T / steps
    step = expm(-h * L)
    # zero mode from the propagator itself: H_T -> phi0 phi0^T
    P0 = np.linalg.matrix_power(expm(-T * L), 4)
    H = np.eye(n)
    acc = 0.5 * (H - P0)
    for _ in range(steps - 1):
        H = H @ step
        acc += H - P0
    H = H @ step
    acc += 0.5 * (H - P0)
    return h * acc
