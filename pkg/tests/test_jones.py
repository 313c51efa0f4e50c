import random

import pytest
from mpmath import mp, mpf, mpc, workprec

from qka.freegroup import torus, iterated_torus, figure_eight
from qka.jones import (HalfLaurent, ExactDivisionError,
                       colored_jones_torus_exact, colored_jones_torus_numeric,
                       colored_jones_iterated, colored_jones,
                       alexander_reciprocal)
from qka.numerics import HypothesisError

from skein_oracle import jones_via_bracket


# ---------------------------------------------------------------------------
# exact Laurent arithmetic
# ---------------------------------------------------------------------------

def test_half_laurent_ring_ops():
    a = HalfLaurent({1: 2, -3: 1})
    b = HalfLaurent({0: 1, 2: -1})
    assert (a * b - b * a) == HalfLaurent.zero()
    assert (a + (-a)) == HalfLaurent.zero()
    prod = a * b
    assert prod.divide_exact(b) == a
    assert prod.divide_exact(a) == b


def test_division_remainder_detected():
    with pytest.raises(ExactDivisionError):
        HalfLaurent({2: 1, 0: 1}).divide_exact(HalfLaurent({1: 1, 0: 1}))


def test_exact_n1_is_one():
    for a in (1, 2, 3):
        assert colored_jones_torus_exact(a, 1) == HalfLaurent.one()


def test_exact_trefoil_matches_skein_oracle():
    # independent state-sum on the 3-crossing diagram, exact integers
    assert colored_jones_torus_exact(1, 2) == jones_via_bracket(3)
    assert colored_jones_torus_exact(1, 2) == HalfLaurent({-8: -1, -6: 1, -2: 1})


@pytest.mark.parametrize("a", [2, 3])
def test_exact_bigger_torus_matches_skein_oracle(a):
    assert colored_jones_torus_exact(a, 2) == jones_via_bracket(2 * a + 1)


@pytest.mark.parametrize("a,N", [(1, 2), (1, 3), (1, 10), (2, 5), (3, 4)])
def test_value_at_one_is_one(a, N):
    assert colored_jones_torus_exact(a, N).at_one() == 1


def test_exact_size_limit():
    with pytest.raises(HypothesisError):
        colored_jones_torus_exact(1, 201)


def test_conjugation_symmetry():
    # integer coefficients force J(conj t) = conj J(t)
    poly = colored_jones_torus_exact(2, 7)
    with workprec(300):
        t = mpc("0.83", "0.41")
        assert poly.conjugate_symmetry_gap(t, 256) < mpf("1e-60")


# ---------------------------------------------------------------------------
# numeric evaluation vs exact evaluation
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("a,N", [(1, 2), (1, 50), (2, 19), (3, 7)])
def test_exact_numeric_consistency(a, N):
    # within the stated bounds a <= 3, N <= 50, five random xi each
    rng = random.Random(12 + 10 * a + N)
    poly = colored_jones_torus_exact(a, N)
    for _ in range(5):
        xi = mpc(rng.uniform(0.2, 2) * rng.choice([1, -1]),
                 rng.uniform(0, 2))
        got = colored_jones_torus_numeric(a, N, xi, 256)
        with workprec(max(600, got.precision_bits + 60)):
            want = poly.evaluate(mp.exp(xi / N), got.precision_bits + 40)
            rel = abs(got.value - want) / abs(want)
        assert rel <= mpf(got.err_bound) / abs(want) + mpf("1e-50")


def test_iterated_n1_is_one():
    r = colored_jones_iterated(1, 6, 1, mpc(1, 1))
    with workprec(300):
        assert abs(r.value - 1) < mpf("1e-60")


def _naive_iterated(a, b, N, xi, prec=512):
    # brute-force oracle: one exp per summand, no running products
    with mp.workprec(prec):
        alpha, beta = 2 * a + 1, 2 * b + 1
        total = mp.mpc(0)
        for d in range(N):
            for c in range(2 * d + 1):
                e0 = (beta * (d * d + d) / mpf(2) - 2 * alpha * (d * d + d)
                      + alpha * (c * c + c) / mpf(2))
                term = mp.exp(e0 * xi / N) * (
                    mp.exp((2 * c + 1) * xi / (2 * N))
                    - mp.exp(-(2 * c + 1) * xi / (2 * N)))
                total += (-1) ** (d + c) * term
        pref = mp.exp(-beta * (N * N - 1) * xi / (2 * N)) / (2 * mp.sinh(xi / 2))
        return pref * total * ((-1) ** (N - 1))


@pytest.mark.parametrize("N", [2, 7])
def test_iterated_matches_naive_oracle(N):
    xi = mpc(1, 1)
    got = colored_jones_iterated(1, 6, N, xi, 256)
    want = _naive_iterated(1, 6, N, xi)
    with workprec(600):
        assert abs(got.value - want) / abs(want) < mpf("1e-40")


def test_iterated_precision_stability():
    xi = mpc(1, 1)
    v1 = colored_jones_iterated(1, 6, 100, xi, 256)
    v2 = colored_jones_iterated(1, 6, 100, xi, 700)
    with workprec(900):
        assert abs(v1.value - v2.value) / abs(v2.value) < mpf("1e-20")


def test_purely_imaginary_xi_rejected():
    with pytest.raises(HypothesisError):
        colored_jones_iterated(1, 6, 3, mpc(0, 2))
    with pytest.raises(HypothesisError):
        colored_jones_torus_numeric(1, 3, mpc(1, -1))


def test_growth_sanity_bounded():
    # simplicial volume of a torus knot complement is zero, so log|J_N|/N
    # stays bounded; checked as boundedness over the grid, not as a limit
    xi = mpc(1, 1)
    with workprec(300):
        rates = []
        for N in range(100, 801, 100):
            v = colored_jones_torus_numeric(1, N, xi, 256)
            rates.append(abs(mp.log(abs(v.value))) / N)
        assert max(rates) < 1


def test_dispatcher_families():
    assert colored_jones(torus(1), 1, mpc(1, 1)).N == 1
    assert colored_jones(iterated_torus(1, 6), 1, mpc(1, 1)).N == 1
    with pytest.raises(HypothesisError):
        colored_jones(figure_eight(), 2, mpc(1, 1))


# ---------------------------------------------------------------------------
# Alexander reciprocals
# ---------------------------------------------------------------------------

def test_alexander_reciprocal_limit_one():
    with workprec(300):
        for knot in (torus(1), torus(3), iterated_torus(1, 6)):
            v = alexander_reciprocal(knot, mpf("1e-12"), 256)
            assert abs(v - 1) < mpf("1e-20")


def test_alexander_reciprocal_values():
    with workprec(300):
        v = alexander_reciprocal(torus(1), mpf(1), 256)
        want = mp.sinh(1) / (2 * mp.sinh(mpf(1) / 2) * mp.cosh(mpf(3) / 2))
        assert abs(v - want) < mpf("1e-60")
        v = alexander_reciprocal(iterated_torus(1, 6), mpf(1), 256)
        want = mp.sinh(2) / (4 * mp.sinh(mpf(1) / 2) * mp.cosh(3)
                             * mp.cosh(mpf(13) / 2))
        assert abs(v - want) < mpf("1e-60")
    with pytest.raises(HypothesisError):
        alexander_reciprocal(figure_eight(), mpf(1), 256)
