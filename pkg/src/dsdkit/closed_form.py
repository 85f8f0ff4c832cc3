"""Exact Green's functions and DSD values for paths, cycles and hypercubes.

Every function here takes 1-based vertex labels as in the analytic
formulas (path vertex ``i`` is graph vertex ``i - 1``). Hypercube
quantities are indexed by Hamming distance instead.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

from .dsd import check_q, lq_norm
from .errors import DegenerateGraph, InvalidParameter, InvalidVertex, SizeLimit

HYPERCUBE_MAX_DIM = 60


def _check_label(n, *labels):
    for x in labels:
        if not (1 <= x <= n):
            raise InvalidVertex(f"label {x} not in 1..{n}")


# -- path ---------------------------------------------------------------

def path_greens(n, u, v):
    """G(u, v) on P_n."""
    if n < 2:
        raise DegenerateGraph(f"path needs n >= 2, got {n}")
    _check_label(n, u, v)
    dv = 1 if v in (1, n) else 2
    a, b = (u, v) if u <= v else (v, u)
    return dv / (2 * (n - 1)) * ((a - 1) ** 2 + (n - b) ** 2 - (2 * n * n - 4 * n + 3) / 6)


def path_endpoint_diffs(n):
    """G(1, j) - G(n, j) for j = 1..n: (n-1)/2, n+1-2j, ..., -(n-1)/2."""
    if n < 2:
        raise DegenerateGraph(f"path needs n >= 2, got {n}")
    return [(n - 1) / 2] + [n + 1 - 2 * j for j in range(2, n)] + [-(n - 1) / 2]


def path_dsd1_exact(n):
    """DSD_1(1, n) on P_n: 2k^2 - 2k + 1 for n = 2k, 2k^2 for n = 2k + 1."""
    if n < 2:
        raise DegenerateGraph(f"path needs n >= 2, got {n}")
    k = n // 2
    return float(2 * k * k - 2 * k + 1 if n % 2 == 0 else 2 * k * k)


def path_dsd_q_exact(n, q):
    return lq_norm(path_endpoint_diffs(n), q)


def path_dsd_q_asymptotic(n, q):
    """Leading term (1 + q)^(-1/q) n^(1 + 1/q); n itself at q = inf."""
    q = check_q(q)
    if math.isinf(q):
        return float(n)
    return (1 + q) ** (-1 / q) * n ** (1 + 1 / q)


# -- cycle --------------------------------------------------------------

def cycle_distance(n, x, y):
    d = abs(x - y) % n
    return min(d, n - d)


def cycle_greens(n, x, y):
    """G(x, y) on C_n, through the cycle distance i = |x - y|_c."""
    if n < 3:
        raise DegenerateGraph(f"cycle needs n >= 3, got {n}")
    _check_label(n, x, y)
    i = cycle_distance(n, x, y)
    k = n // 2
    if n % 2 == 0:
        return (k - i) ** 2 / (2 * k) - k / 6 - 1 / (12 * k)
    return 2 / (2 * k + 1) * math.comb(k + 1 - i, 2) - (k * k + k) / (3 * (2 * k + 1))


def cycle_antipodal_diff(n, j):
    """G(1, j) - G(1 + n/2, j) = n/4 - |j - 1|_c for even n."""
    if n % 2:
        raise InvalidParameter("antipodal shortcut is only defined for even n")
    if n < 4:
        raise DegenerateGraph(f"even cycle needs n >= 4, got {n}")
    _check_label(n, j)
    return n / 4 - cycle_distance(n, j, 1)


def cycle_dsd_q_exact(n, q):
    """DSD_q(1, floor(n/2) + 1) on C_n from the Green's function rows."""
    a = n // 2 + 1
    diffs = [cycle_greens(n, 1, j) - cycle_greens(n, a, j) for j in range(1, n + 1)]
    return lq_norm(diffs, q)


def cycle_dsd_q_asymptotic(n, q):
    """Leading term (4 / (1 + q))^(1/q) (n / 4)^(1 + 1/q)."""
    q = check_q(q)
    if math.isinf(q):
        return n / 4
    return (4 / (1 + q)) ** (1 / q) * (n / 4) ** (1 + 1 / q)


# -- hypercube ----------------------------------------------------------

@dataclass(frozen=True)
class SignedRangeSum:
    """sum_{j=a}^{b} c_j, extended antisymmetrically to reversed ranges.

    ``a == b + 1`` is the empty sum; for ``a > b + 1`` the value is
    ``-sum_{j=b+1}^{a-1} c_j``. This keeps ``S(a, b) = P(b + 1) - P(a)``
    for the prefix sums ``P`` of ``c``.
    """

    a: int
    b: int
    value: Fraction

    @classmethod
    def of(cls, c, a, b):
        if a <= b:
            v = sum(c[a:b + 1], Fraction(0))
        elif a == b + 1:
            v = Fraction(0)
        else:
            v = -sum(c[b + 1:a], Fraction(0))
        return cls(a, b, v)


def _check_dim(n):
    if n < 1:
        raise DegenerateGraph(f"hypercube needs n >= 1, got {n}")
    if n > HYPERCUBE_MAX_DIM:
        raise SizeLimit(f"hypercube dimension {n} exceeds {HYPERCUBE_MAX_DIM}")


def _tail_ratios(n):
    """c_j = (C(n, j+1) + ... + C(n, n)) / C(n-1, j), exact, j = 0..n-1."""
    return [Fraction(sum(math.comb(n, i) for i in range(j + 1, n + 1)), math.comb(n - 1, j))
            for j in range(n)]


def hypercube_antipodal_diff_exact(n, k):
    """G(0, x) - G(1, x) as a Fraction, for x at Hamming distance k from 0."""
    _check_dim(n)
    if not (0 <= k <= n):
        raise InvalidParameter(f"distance {k} not in 0..{n}")
    s = SignedRangeSum.of(_tail_ratios(n), k, n - k - 1)
    return s.value / 2**n


def hypercube_antipodal_diff(n, k):
    return float(hypercube_antipodal_diff_exact(n, k))


def hypercube_greens_exact(n, k):
    """G(x, y) on Q_n for vertices at Hamming distance k."""
    _check_dim(n)
    if not (0 <= k <= n):
        raise InvalidParameter(f"distance {k} not in 0..{n}")
    tails = [sum(math.comb(n, i) for i in range(j + 1, n + 1)) for j in range(n)]
    first = sum(Fraction(t * t, math.comb(n - 1, j)) for j, t in enumerate(tails))
    second = sum((Fraction(tails[j], math.comb(n - 1, j)) for j in range(k)), Fraction(0))
    return first / 4**n - second / 2**n


def hypercube_greens(n, k):
    return float(hypercube_greens_exact(n, k))


def hypercube_dsd_q(n, q):
    """DSD_q between antipodal vertices of Q_n by Hamming-shell summation."""
    q = check_q(q)
    _check_dim(n)
    diffs = [abs(hypercube_antipodal_diff_exact(n, k)) for k in range(n + 1)]
    if math.isinf(q):
        return float(max(diffs))
    if q == 1:
        return float(sum(math.comb(n, k) * d for k, d in enumerate(diffs)))
    m = float(max(diffs))
    s = sum(math.comb(n, k) * (float(d) / m) ** q for k, d in enumerate(diffs))
    return m * s ** (1 / q)
