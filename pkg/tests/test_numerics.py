import random

import mpmath
import pytest
from mpmath import mp, mpf, mpc, workprec

from qka.numerics import (dilog, Strip, make_strip, strip_contains,
                          strip_classify, contour_angle, normal_coordinate,
                          odd_multiples_in_strip, DegenerateStripError,
                          HypothesisError)
from qka.linalg import (det, kernel_basis, basis_change_det, cmatrix,
                        identity, SingularBasisError, mat_residual)


# ---------------------------------------------------------------------------
# dilogarithm
# ---------------------------------------------------------------------------

def test_dilog_special_values():
    with workprec(300):
        assert abs(dilog(0)) == 0
        assert abs(dilog(1) - mp.pi ** 2 / 6) < mpf("1e-70")
        # Im Li2(e^{i pi/3}) is half the figure-eight volume
        v = dilog(mp.exp(mpc(0, mp.pi / 3)), 256)
        assert abs(v.imag - mpf("1.0149416064096536250212025542745202859416893075302997920174891067")) < mpf("1e-60")


def test_dilog_against_mpmath_polylog():
    random.seed(1)
    with workprec(300):
        for _ in range(40):
            z = mpc(random.uniform(-3, 3), random.uniform(-3, 3))
            if abs(z - 1) < mpf("0.05"):
                continue
            ours = dilog(z, 256)
            ref = mpmath.polylog(2, z)
            assert abs(ours - ref) <= mpf("1e-70") * (1 + abs(ref))


def test_dilog_series_identity():
    # brute-force partial sums as an independent oracle inside |z| < 1
    random.seed(2)
    with workprec(300):
        for _ in range(10):
            z = mpc(random.uniform(-0.6, 0.6), random.uniform(-0.6, 0.6))
            if abs(z) >= mpf("0.9"):
                continue
            direct = mp.fsum(z ** n / n ** 2 for n in range(1, 400))
            assert abs(dilog(z, 256) - direct) < mpf("1e-30")


# ---------------------------------------------------------------------------
# strips
# ---------------------------------------------------------------------------

def test_strip_zero_shift_is_empty():
    s = make_strip(mpf("0.3"), 0)
    assert strip_contains(mpc(1, 1), s) is False
    assert strip_contains(mpc(0, 0), s) is False


def test_strip_horizontal_examples():
    s = make_strip(0, mpc(0, 2), epsilon=mpf("1e-9"))
    assert strip_contains(mpc(0, 1), s) is True
    assert strip_contains(mpc(0, 3), s) is False
    # translating along the strip direction never changes membership
    assert strip_contains(mpc(17, 1), s) is True
    assert strip_contains(mpc(-40, 3), s) is False


def test_strip_degenerate_shift_rejected():
    s = make_strip(0, mpc(0, "1e-12"), epsilon=mpf("1e-9"))
    with pytest.raises(DegenerateStripError):
        strip_contains(mpc(0, 0), s)


def test_strip_epsilon_monotonicity():
    random.seed(3)
    for _ in range(200):
        shift = mpc(random.uniform(-3, 3), random.uniform(0.5, 3))
        phi = mpf(random.uniform(-1.2, 1.2))
        z = mpc(random.uniform(-3, 3), random.uniform(-3, 3))
        big = make_strip(phi, shift, epsilon=mpf("1e-3"))
        small = make_strip(phi, shift, epsilon=mpf("1e-9"))
        if strip_contains(z, big):
            assert strip_contains(z, small)


def test_strip_borderline_classification():
    s = make_strip(0, mpc(0, 2), epsilon=mpf("1e-6"))
    assert strip_classify(mpc(0, 2), s) == "borderline"
    assert strip_classify(mpc(0, mpf(2) - mpf("1e-7")), s) == "borderline"
    assert strip_classify(mpc(0, 1), s) == "inside"


def test_odd_multiples_brute_force():
    with workprec(300):
        xi = mpc("-0.5", "6")
        phi = contour_angle(xi, 256)
        s = make_strip(phi, 13 * xi, prec=256)
        inside, border = odd_multiples_in_strip(s, 256)
        brute = [n for n in range(-10000, 10001)
                 if strip_classify((2 * n + 1) * mpc(0, mp.pi), s, 256) == "inside"]
        assert inside == brute
        assert not border


def test_contour_angle_properties():
    with workprec(280):
        xi = mpc(1, 1)
        phi = contour_angle(xi, 256)
        assert abs(phi - mp.pi / 8) < mpf("1e-70")
        # convergence inequality Re(e^{2 i phi} / xi) > 0
        assert (mp.exp(mpc(0, 2 * phi)) / xi).real > 0
        # nudge when arg(xi)/2 lands on +-pi/2
        phi2 = contour_angle(mpc("-1", "1e-9"), 256)
        assert abs(abs(phi2) - mp.pi / 2) > mpf("1e-4")
    with pytest.raises(HypothesisError):
        contour_angle(mpc(0, 2), 256)


# ---------------------------------------------------------------------------
# linear algebra
# ---------------------------------------------------------------------------

def test_det_multiplicativity_random():
    random.seed(4)
    for prec in (128, 256):
        with workprec(prec + 16):
            for n in (2, 4, 6):
                A = cmatrix([[mpc(random.gauss(0, 1), random.gauss(0, 1))
                              for _ in range(n)] for _ in range(n)], prec)
                B = cmatrix([[mpc(random.gauss(0, 1), random.gauss(0, 1))
                              for _ in range(n)] for _ in range(n)], prec)
                lhs = det(A * B, prec)
                rhs = det(A, prec) * det(B, prec)
                assert abs(lhs - rhs) <= mpf(10) ** (-prec // 4)


def test_kernel_basis_examples():
    tol = mpf("1e-40")
    assert len(kernel_basis(cmatrix([[0] * 3] * 3), tol)) == 3
    assert kernel_basis(identity(3), tol) == []
    vecs = kernel_basis(cmatrix([[1, 1], [0, 0]]), tol)
    assert len(vecs) == 1
    v = vecs[0]
    with workprec(280):
        assert abs(v[0] + v[1]) < mpf("1e-60")
        assert abs(abs(v[0]) - 1 / mp.sqrt(2)) < mpf("1e-60")


def test_kernel_residual_bound():
    random.seed(5)
    with workprec(280):
        A = cmatrix([[random.gauss(0, 1) for _ in range(4)] for _ in range(2)])
        vecs = kernel_basis(A, mpf("1e-40"))
        assert len(vecs) == 2
        for v in vecs:
            r = A * v
            assert max(abs(r[i]) for i in range(2)) < mpf("1e-60")


def test_basis_change_det_examples():
    tol = mpf("1e-40")
    e = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert abs(basis_change_det(e, tol) - 1) < mpf("1e-60")
    scaled = [[2, 0, 0], [0, 2, 0], [0, 0, 2]]
    assert abs(basis_change_det(scaled, tol) - 8) < mpf("1e-60")
    with workprec(280):
        u = mpf(1)
        cols = [[2 * mp.exp(u / 2), mp.exp(u) - 1, 0], [0, 1, 0], [0, 0, 1]]
        got = basis_change_det(cols, tol)
        assert abs(got - 2 * mp.exp(mpf(1) / 2)) < mpf("1e-60")
    with pytest.raises(SingularBasisError):
        basis_change_det([[1, 0, 0], [1, 0, 0], [0, 0, 1]], tol)


def test_precision_doubling_stability():
    # doubling the precision moves a representative downstream value by
    # far less than its claimed tolerance
    from qka.jones import colored_jones_torus_numeric
    lo = colored_jones_torus_numeric(1, 40, mpc(1, 1), 256)
    hi = colored_jones_torus_numeric(1, 40, mpc(1, 1), 512)
    with workprec(600):
        assert abs(lo.value - hi.value) <= mpf(lo.err_bound)
