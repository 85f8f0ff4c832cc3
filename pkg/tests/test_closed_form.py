import math
from fractions import Fraction

import numpy as np
import pytest
import sympy

from dsdkit.closed_form import (
    SignedRangeSum,
    cycle_antipodal_diff,
    cycle_dsd_q_asymptotic,
    cycle_dsd_q_exact,
    cycle_greens,
    hypercube_antipodal_diff,
    hypercube_antipodal_diff_exact,
    hypercube_dsd_q,
    hypercube_greens,
    path_dsd1_exact,
    path_dsd_q_asymptotic,
    path_dsd_q_exact,
    path_endpoint_diffs,
    path_greens,
)
from dsdkit.dsd import dsd
from dsdkit.errors import DegenerateGraph, InvalidParameter, InvalidVertex, SizeLimit
from dsdkit.graph import cycle_graph, hypercube_graph, path_graph
from dsdkit.spectral import greens

TOL = 1e-8


def _exact_greens(A):
    """Rational Green's function by solving G L = I - 1 pi, G 1 = 0 in sympy."""
    n = A.shape[0]
    A = sympy.Matrix(A.astype(int))
    d = [sum(A.row(i)) for i in range(n)]
    vol = sum(d)
    L = sympy.eye(n) - sympy.diag(*[sympy.Rational(1, x) for x in d]) * A
    rhs = sympy.eye(n) - sympy.Matrix(n, n, lambda i, j: sympy.Rational(d[j], vol))
    M = L.T.col_join(sympy.ones(1, n))
    G = sympy.zeros(n, n)
    for x in range(n):
        b = rhs.row(x).T.col_join(sympy.zeros(1, 1))
        G[x, :] = ((M.T * M).inv() * M.T * b).T
    return G


def test_p4_rational():
    G = _exact_greens(path_graph(4).adjacency)
    assert list(G.row(0)) == [sympy.Rational(35, 36), sympy.Rational(5, 18),
                              sympy.Rational(-13, 18), sympy.Rational(-19, 36)]
    for u in range(1, 5):
        for v in range(1, 5):
            assert path_greens(4, u, v) == pytest.approx(float(G[u - 1, v - 1]), abs=1e-14)


@pytest.mark.parametrize("n", [2, 3, 5, 8, 13])
def test_path_greens_matches_spectral(n):
    G = greens(path_graph(n)).G
    want = np.array([[path_greens(n, u, v) for v in range(1, n + 1)] for u in range(1, n + 1)])
    assert np.abs(G - want).max() <= TOL


@pytest.mark.parametrize("n", range(2, 15))
def test_path_endpoint_diffs_and_dsd1(n):
    G = greens(path_graph(n)).G
    assert np.abs(G[0] - G[-1] - path_endpoint_diffs(n)).max() <= TOL
    assert path_dsd1_exact(n) == pytest.approx(np.abs(G[0] - G[-1]).sum(), abs=TOL)


def test_path_dsd1_known_values():
    assert [path_dsd1_exact(n) for n in (2, 3, 4, 10, 11, 40)] == [1, 2, 5, 41, 50, 761]
    assert path_dsd_q_exact(10, 1) == 41


def test_path_asymptotic_ratio_tends_to_one():
    for q in (1.0, 2.0, 3.0):
        r = [path_dsd_q_exact(n, q) / path_dsd_q_asymptotic(n, q) for n in (50, 200, 1000)]
        assert abs(r[-1] - 1) < abs(r[0] - 1)
        assert abs(r[-1] - 1) < 0.02
    assert path_dsd_q_asymptotic(10, 1) == 50
    assert path_dsd_q_asymptotic(10, math.inf) == 10


def test_path_errors():
    with pytest.raises(DegenerateGraph):
        path_dsd1_exact(1)
    with pytest.raises(InvalidVertex):
        path_greens(4, 0, 1)


@pytest.mark.parametrize("n", range(3, 14))
def test_cycle_greens_matches_spectral(n):
    G = greens(cycle_graph(n)).G
    want = np.array([[cycle_greens(n, x, y) for y in range(1, n + 1)] for x in range(1, n + 1)])
    assert np.abs(G - want).max() <= TOL


def test_cycle_small_rows():
    assert [cycle_greens(5, 1, j) for j in range(1, 6)] == pytest.approx([0.8, 0, -0.4, -0.4, 0])
    assert [cycle_antipodal_diff(4, j) for j in range(1, 5)] == [1, 0, -1, 0]
    assert cycle_dsd_q_exact(4, 2) == pytest.approx(math.sqrt(2))
    with pytest.raises(InvalidParameter):
        cycle_antipodal_diff(5, 1)


@pytest.mark.parametrize("n", [4, 6, 10, 20])
def test_cycle_antipodal_diff_consistency(n):
    for j in range(1, n + 1):
        want = cycle_greens(n, 1, j) - cycle_greens(n, n // 2 + 1, j)
        assert cycle_antipodal_diff(n, j) == pytest.approx(want, abs=1e-12)


def test_cycle_asymptotics():
    for q in (1.0, 2.0):
        r = cycle_dsd_q_exact(2000, q) / cycle_dsd_q_asymptotic(2000, q)
        assert abs(r - 1) < 0.01
    assert cycle_dsd_q_asymptotic(8, math.inf) == 2


def test_signed_range_sum():
    c = [Fraction(x) for x in (1, 2, 3, 4)]
    assert SignedRangeSum.of(c, 1, 2).value == 5
    assert SignedRangeSum.of(c, 2, 1).value == 0
    assert SignedRangeSum.of(c, 3, 0).value == -5
    prefix = [sum(c[:i], Fraction(0)) for i in range(5)]
    for a in range(4):
        for b in range(-1, 4):
            if a <= b + 2:
                assert SignedRangeSum.of(c, a, b).value == prefix[b + 1] - prefix[a]


def test_hypercube_q3_diffs():
    assert [hypercube_antipodal_diff_exact(3, k) for k in range(4)] == [
        Fraction(5, 4), Fraction(1, 4), Fraction(-1, 4), Fraction(-5, 4)]
    assert hypercube_dsd_q(3, 1) == pytest.approx(4)


@pytest.mark.parametrize("n", range(1, 7))
def test_hypercube_matches_spectral(n):
    g = hypercube_graph(n)
    gm = greens(g)
    far = 2**n - 1
    weight = np.array([bin(x).count("1") for x in range(2**n)])
    diff = gm.G[0] - gm.G[far]
    for k in range(n + 1):
        assert np.abs(diff[weight == k] - hypercube_antipodal_diff(n, k)).max() <= TOL
        assert np.abs(gm.G[0, weight == k] - hypercube_greens(n, k)).max() <= TOL
    for q in (1.0, 2.0, math.inf):
        assert hypercube_dsd_q(n, q) == pytest.approx(dsd(gm, 0, far, q), abs=TOL)


def test_hypercube_antisymmetry():
    for n in range(1, 12):
        for k in range(n + 1):
            assert hypercube_antipodal_diff_exact(n, k) == -hypercube_antipodal_diff_exact(n, n - k)


def test_hypercube_large_dimension_exact():
    v = hypercube_dsd_q(40, 2)
    assert 1 < v < 3
    with pytest.raises(SizeLimit):
        hypercube_dsd_q(61, 2)
