"""Backend dispatch for the numeric inner loops.

The numba kernels are used when numba imports cleanly and the environment
variable ``DSDKIT_DISABLE_NUMBA`` is unset (or ``0``). Otherwise every
entry point falls back to the pure-numpy versions. ``DSDKIT_THREADS``
caps numba's thread pool.
"""
import logging
import os

from . import _numpy

log = logging.getLogger(__name__)

_jit = None
if os.environ.get("DSDKIT_DISABLE_NUMBA", "0").lower() in ("", "0", "false", "no"):
    try:
        from . import _numba as _jit
    except ImportError:  # pragma: no cover - depends on environment
        log.info("numba unavailable, using numpy kernels")

BACKEND = "numba" if _jit is not None else "numpy"
_impl = _jit if _jit is not None else _numpy


def set_threads(n):
    """Bound numba's parallel regions to ``n`` threads (no-op on numpy)."""
    if n is None or _jit is None:
        return
    import numba

    numba.set_num_threads(max(1, min(int(n), numba.config.NUMBA_NUM_THREADS)))


if os.environ.get("DSDKIT_THREADS"):
    set_threads(os.environ["DSDKIT_THREADS"])


def pairwise_lq(M, q):
    return _impl.pairwise_lq(M, float(q))


def lq_rows(X, q):
    import numpy as np

    return _impl.lq_rows(np.ascontiguousarray(np.atleast_2d(X), dtype=np.float64), float(q))


def walk_visits(indptr, indices, start, alpha, uniforms):
    return _impl.walk_visits(indptr, indices, int(start), float(alpha), uniforms)
