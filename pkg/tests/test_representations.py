import random

import pytest
from mpmath import mp, mpf, mpc, workprec

from qka.freegroup import (Word, figure_eight, torus, iterated_torus,
                           torus_companion_longitude, parse_word)
from qka.numerics import HypothesisError
from qka.linalg import mat_residual, frobenius_norm
from qka.representations import (RepParams, build_representation,
                                 evaluate_word, longitude_closed_form,
                                 companion_longitude_closed_form, adjoint3,
                                 relation_residual, fig8_radical,
                                 fig8_longitude_eigenvalue, odd_root)

PREC = 256
TOL20 = mpf("1e-20")


def _random_params(rng):
    fam = rng.choice(["fig8", "torus", "an", "na", "nn"])
    u = mpc(rng.uniform(-0.5, 0.5), rng.uniform(-0.4, 0.4))
    if fam == "fig8":
        return RepParams(figure_eight(), u, "fig8", sign=rng.choice([1, -1]))
    if fam == "torus":
        a = rng.choice([1, 2, 3])
        return RepParams(torus(a), u, "torus", k=rng.randrange(a))
    if fam == "an":
        return RepParams(iterated_torus(1, 6), u, "an", j=rng.randrange(6))
    if fam == "na":
        a = rng.choice([1, 2])
        return RepParams(iterated_torus(a, 6 if a == 1 else 10), u, "na",
                         k=rng.randrange(a))
    return RepParams(iterated_torus(1, 8), u, "nn", k=0,
                     h=rng.choice([0, 1, 3, 4]))


def test_relator_residuals_examples():
    # complete-structure corner of the figure-eight family
    p = RepParams(figure_eight(), 0, "fig8", sign=1)
    rep = build_representation(p, PREC)
    assert relation_residual(rep) < TOL20
    with workprec(300):
        d = mp.cosh(0) - mpf(3) / 2 + fig8_radical(0, PREC) / 2
        assert abs(d - mpc(mpf(-1) / 2, mp.sqrt(3) / 2)) < mpf("1e-60")
    # torus relation residual
    p = RepParams(torus(1), mpf("0.3"), "torus", k=0)
    assert relation_residual(build_representation(p, PREC)) < TOL20
    # doubly non-Abelian family at the smallest admissible cable
    p = RepParams(iterated_torus(1, 7), mpc("0.2", "0.1"), "nn", k=0, h=0)
    assert relation_residual(build_representation(p, PREC)) < TOL20


def test_relator_residuals_random():
    rng = random.Random(6)
    for _ in range(10):
        p = _random_params(rng)
        assert relation_residual(build_representation(p, PREC)) < TOL20


def test_unit_determinants():
    rng = random.Random(7)
    with workprec(300):
        for _ in range(6):
            rep = build_representation(_random_params(rng), PREC)
            for M in rep.images.values():
                assert abs(M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0] - 1) < TOL20


def test_branch_point_rejected():
    # (2 cosh u + 1)(2 cosh u - 3) = 0 at cosh u = 3/2
    with workprec(300):
        u_star = mp.acosh(mpf(3) / 2)
    with pytest.raises(HypothesisError):
        build_representation(RepParams(figure_eight(), u_star, "fig8", sign=1), PREC)


def test_nn_rejects_degenerate_root():
    # at (a,b) = (1,6) the root condition forces omega3 = -1, where the
    # cable relation genuinely fails, so there is no such representation
    with pytest.raises(HypothesisError):
        build_representation(
            RepParams(iterated_torus(1, 6), mpc("0.2", "0.1"), "nn", k=0, h=0),
            PREC)
    with pytest.raises(HypothesisError):
        build_representation(
            RepParams(iterated_torus(1, 8), mpc("0.2", "0.1"), "nn", k=0, h=2),
            PREC)


def test_out_of_range_indices_rejected():
    with pytest.raises(HypothesisError):
        RepParams(torus(1), 0.1, "torus", k=1)
    with pytest.raises(HypothesisError):
        RepParams(iterated_torus(1, 6), 0.1, "an", j=6)


# ---------------------------------------------------------------------------
# word evaluation and longitude closed forms
# ---------------------------------------------------------------------------

def test_evaluate_word_identity():
    rep = build_representation(
        RepParams(figure_eight(), mpc("0.1", "0.1"), "fig8", sign=1), PREC)
    assert mat_residual(evaluate_word(rep, Word.identity()), mp.eye(2), PREC) == 0


def test_evaluate_word_homomorphism_random():
    rng = random.Random(8)
    rep = build_representation(
        RepParams(iterated_torus(1, 6), mpc("0.2", "0.1"), "na", k=0), PREC)
    gens = rep.presentation.generators
    for _ in range(100):
        w1 = Word([(rng.choice(gens), rng.randint(-3, 3) or 1)
                   for _ in range(rng.randint(0, 4))])
        w2 = Word([(rng.choice(gens), rng.randint(-3, 3) or 1)
                   for _ in range(rng.randint(0, 4))])
        with workprec(300):
            lhs = evaluate_word(rep, w1 * w2)
            rhs = evaluate_word(rep, w1) * evaluate_word(rep, w2)
            assert mat_residual(lhs, rhs, PREC) < mpf("1e-60")


def test_fig8_longitude_entry():
    u = mpc("0.23", "0.11")
    p = RepParams(figure_eight(), u, "fig8", sign=1)
    rep = build_representation(p, PREC)
    lam = evaluate_word(rep, rep.presentation.longitude)
    with workprec(300):
        assert abs(lam[0, 0] - fig8_longitude_eigenvalue(u, PREC)) < mpf("1e-60")
        assert abs(lam[1, 0]) < mpf("1e-60")


@pytest.mark.parametrize("params", [
    RepParams(figure_eight(), mpc("0.23", "0.11"), "fig8", sign=1),
    RepParams(figure_eight(), mpc("0.2", "-0.1"), "fig8", sign=-1),
    RepParams(torus(1), mpc("0.3", "0"), "torus", k=0),
    RepParams(torus(3), mpc("0.1", "0.2"), "torus", k=2),
    RepParams(iterated_torus(1, 6), mpc("0.5", "0.1"), "an", j=5),
    RepParams(iterated_torus(2, 10), mpc("0.3", "0.2"), "na", k=1),
    RepParams(iterated_torus(1, 8), mpc("0.2", "0.1"), "nn", k=0, h=1),
])
def test_longitude_word_matches_closed_form(params):
    rep = build_representation(params, PREC)
    word_route = evaluate_word(rep, rep.presentation.longitude)
    closed = longitude_closed_form(params, PREC)
    assert mat_residual(word_route, closed, PREC) < mpf("1e-50")


def test_an_longitude_value():
    # upper-left of the cable longitude is -e^{-(2b+1)u}
    u = mpf("0.5")
    p = RepParams(iterated_torus(1, 6), u, "an", j=0)
    with workprec(300):
        M = longitude_closed_form(p, PREC)
        assert abs(M[0, 0] + mp.exp(mpf("-6.5"))) < mpf("1e-60")


def test_na_longitude_value():
    # positive sign and doubled exponent: e^{-4(2a+1)u} = e^{-6} at u = 1/2
    u = mpf("0.5")
    p = RepParams(iterated_torus(1, 6), u, "na", k=0)
    with workprec(300):
        M = longitude_closed_form(p, PREC)
        assert abs(M[0, 0] - mp.exp(-6)) < mpf("1e-60")


def test_meridian_longitude_commute():
    rng = random.Random(9)
    for _ in range(10):
        p = _random_params(rng)
        rep = build_representation(p, PREC)
        with workprec(300):
            m = evaluate_word(rep, rep.presentation.meridian)
            lam = evaluate_word(rep, rep.presentation.longitude)
            assert mat_residual(m * lam, lam * m, PREC) < TOL20


def test_an_restriction_abelian():
    p = RepParams(iterated_torus(1, 6), mpc("0.2", "0.1"), "an", j=2)
    rep = build_representation(p, PREC)
    with workprec(300):
        X, Y = rep.images["x"], rep.images["y"]
        assert mat_residual(X * Y, Y * X, PREC) < TOL20
        lam_c = evaluate_word(rep, torus_companion_longitude(1))
        assert mat_residual(lam_c, mp.eye(2), PREC) < TOL20


def test_nn_companion_longitude_trace():
    p = RepParams(iterated_torus(1, 8), mpc("0.23", "0.11"), "nn", k=0, h=0)
    rep = build_representation(p, PREC)
    with workprec(300):
        lam_c = evaluate_word(rep, torus_companion_longitude(1))
        w3 = odd_root(1, 5, PREC)
        want = -w3 ** 6 - w3 ** -6
        assert abs(lam_c[0, 0] + lam_c[1, 1] - want) < mpf("1e-50")
        closed = companion_longitude_closed_form(p, PREC)
        assert mat_residual(lam_c, closed, PREC) < mpf("1e-50")


def test_na_companion_longitude():
    p = RepParams(iterated_torus(1, 6), mpc("0.3", "0.05"), "na", k=0)
    rep = build_representation(p, PREC)
    lam_c = evaluate_word(rep, torus_companion_longitude(1))
    assert mat_residual(lam_c, companion_longitude_closed_form(p, PREC),
                        PREC) < mpf("1e-50")


# ---------------------------------------------------------------------------
# the adjoint action
# ---------------------------------------------------------------------------

def test_adjoint3_identity():
    assert mat_residual(adjoint3(mp.eye(2), PREC), mp.eye(3), PREC) == 0


def test_adjoint3_printed_matrix():
    u = mpc("0.23", "0.11")
    rep = build_representation(
        RepParams(figure_eight(), u, "fig8", sign=1), PREC)
    with workprec(300):
        X = adjoint3(rep.images["x"], PREC)
        eu = mp.exp(u)
        want = mp.matrix([
            [1 / eu, 2 / mp.sqrt(eu), -1],
            [0, 1, -mp.sqrt(eu)],
            [0, 0, eu]])
        assert mat_residual(X, want, PREC) < mpf("1e-60")


def test_adjoint3_diagonal():
    with workprec(300):
        m = mpc("1.3", "0.4")
        M = mp.matrix([[m, 0], [0, 1 / m]])
        A = adjoint3(M, PREC)
        want = mp.matrix([[1 / m ** 2, 0, 0], [0, 1, 0], [0, 0, m ** 2]])
        assert mat_residual(A, want, PREC) < mpf("1e-60")


def test_adjoint3_reverses_products():
    # Ad X(g) = X^-1 g X with columns-as-images makes the 3x3 map an
    # antihomomorphism: adjoint3(M N) = adjoint3(N) adjoint3(M)
    rng = random.Random(10)
    rep = build_representation(
        RepParams(torus(2), mpc("0.3", "0.2"), "torus", k=0), PREC)
    M, N = rep.images["x"], rep.images["y"]
    with workprec(300):
        lhs = adjoint3(M * N, PREC)
        assert mat_residual(lhs, adjoint3(N, PREC) * adjoint3(M, PREC),
                            PREC) < mpf("1e-60")
        assert mat_residual(lhs, adjoint3(M, PREC) * adjoint3(N, PREC),
                            PREC) > mpf("0.1")


def test_adjoint3_requires_unit_determinant():
    with pytest.raises(ValueError):
        adjoint3(mp.matrix([[2, 0], [0, 2]]), PREC)


def test_representation_json_roundtrip():
    p = RepParams(iterated_torus(1, 6), mpc("0.2", "0.1"), "an", j=1)
    rep = build_representation(p, PREC)
    blob = rep.to_json()
    assert blob["family"] == "an"
    assert blob["indices"] == {"j": 1}
    assert set(blob["generators"]) == {"x", "y", "p", "q"}
