"""Saddle-point expansion of the colored Jones evaluations.

For T(2,2a+1) the approximant is the Alexander reciprocal plus one Gaussian
term per odd multiple of pi*i caught between the integration contour and
its translate by (2a+1)*xi.  For the cable there are three term families,
with translates beta*xi, 2*alpha*xi, and the two-case (l,m) bookkeeping in
which the m-range depends on where (2l+1)*pi*i sits.

Two printed variants of the first family's growth exponent and the second
family's amplitude sign circulate; ``variant='canonical'`` uses the main
theorem's version and ``variant='display'`` the other one.  The test suite
arbitrates numerically which of the two converges.
"""

from dataclasses import dataclass

from mpmath import mp, mpf, mpc

from . import DEFAULT_PRECISION
from .numerics import (working, to_mpc, contour_angle, make_strip,
                       odd_multiples_in_strip, odd_multiples_between,
                       normal_coordinate, HypothesisError)
from .freegroup import KnotSpec
from .jones import alexander_reciprocal

VARIANTS = ("canonical", "display")


@dataclass(frozen=True)
class ExpansionTerm:
    """One Gaussian summand of the expansion.

    ``S`` is the growth exponent (the summand behaves like
    exp(S*N/xi) times powers of N), ``tau`` the amplitude, and
    ``contribution`` the fully assembled summand including the sqrt(N/xi)
    or N/xi prefactor.
    """

    family: str           # 'torus' | 'cable-1' | 'cable-2' | 'cable-3'
    indices: tuple
    S: object
    tau: object
    contribution: object

    def growth_rate(self, xi, prec: int = DEFAULT_PRECISION):
        """Re(S/xi): the exponential growth rate of this term's modulus."""
        with working(prec):
            return (to_mpc(self.S) / to_mpc(xi)).real


@dataclass(frozen=True)
class TermSet:
    leading: object
    terms: tuple
    borderline: tuple     # indices too close to a strip boundary to trust

    def total(self, prec: int = DEFAULT_PRECISION):
        with working(prec):
            return mpc(to_mpc(self.leading)
                       + mp.fsum((t.contribution for t in self.terms)))

    def dominant(self):
        """The term with the largest |contribution|, or None."""
        if not self.terms:
            return None
        return max(self.terms, key=lambda t: abs(to_mpc(t.contribution)))


def _sqrt_prefactor(xi, N):
    # sqrt(-pi)/(2 sinh(xi/2)) * sqrt(N/xi), principal branches
    return mp.sqrt(mpc(-mp.pi)) / (2 * mp.sinh(xi / 2)) * mp.sqrt(mpc(N) / xi)


def torus_growth(a: int, xi, k: int):
    """S_k = -((2k+1) pi i - (2a+1) xi)^2 / (2 (2a+1))."""
    n = 2 * a + 1
    z = (2 * k + 1) * mpc(0, mp.pi) - n * to_mpc(xi)
    return -(z * z) / (2 * n)


def torus_growth_derivative(a: int, xi, k: int):
    n = 2 * a + 1
    return (2 * k + 1) * mpc(0, mp.pi) - n * to_mpc(xi)


def torus_amplitude(a: int, k: int):
    """tau_k = (-1)^k 4 sin((2k+1) pi / (2a+1)) / sqrt(2 (2a+1))."""
    n = 2 * a + 1
    sign = -1 if k % 2 else 1
    return sign * 4 * mp.sin((2 * k + 1) * mp.pi / n) / mp.sqrt(2 * n)


def torus_terms(a: int, xi, N: int, prec: int = DEFAULT_PRECISION) -> TermSet:
    """Leading term plus one Gaussian term per k with (2k+1) pi i in the
    strip between the contour and its translate by (2a+1) xi."""
    if a < 1:
        raise HypothesisError("torus expansion needs a >= 1")
    # exp of a huge exponent costs no precision here (no cancellation),
    # so a few guard bits on top of the requested precision suffice
    wp = prec + 32
    with mp.workprec(wp):
        xi = to_mpc(xi)
        phi = contour_angle(xi, wp)
        strip = make_strip(phi, (2 * a + 1) * xi, prec=wp)
        inside, borderline = odd_multiples_in_strip(strip, wp)
        pref = _sqrt_prefactor(xi, N)
        terms = []
        for k in inside:
            S = torus_growth(a, xi, k)
            tau = torus_amplitude(a, k)
            contribution = pref * tau * mp.exp(S * N / xi)
            terms.append(ExpansionTerm("torus", (k,), mpc(S), mpc(tau),
                                       mpc(contribution)))
        leading = alexander_reciprocal(KnotSpec("torus", a=a), xi, wp)
        return TermSet(mpc(leading), tuple(terms), tuple(borderline))


def cable_amplitude_1(a: int, b: int, j: int):
    """(-1)^j sqrt(2/beta) sin(2(2j+1)pi/beta) / cos((2j+1) alpha pi / beta)."""
    alpha, beta = 2 * a + 1, 2 * b + 1
    sign = -1 if j % 2 else 1
    return (sign * mp.sqrt(mpf(2) / beta)
            * mp.sin(2 * (2 * j + 1) * mp.pi / beta)
            / mp.cos((2 * j + 1) * alpha * mp.pi / beta))


def cable_growth_1(a: int, b: int, xi, j: int, variant: str = "canonical"):
    """(2j+1) xi pi i - beta xi^2/2 + (2j+1)^2 pi^2 / (2 beta).

    The 'display' variant multiplies the first term by (-1)^(j+1), the
    stray sign factor printed in one version of the expansion.
    """
    beta = 2 * b + 1
    xi = to_mpc(xi)
    first = (2 * j + 1) * xi * mpc(0, mp.pi)
    if variant == "display":
        first = first * (1 if j % 2 else -1)
    return first - beta * xi * xi / 2 + (2 * j + 1) ** 2 * mp.pi ** 2 / (2 * beta)


def cable_growth_1_derivative(a: int, b: int, xi, j: int):
    beta = 2 * b + 1
    return (2 * j + 1) * mpc(0, mp.pi) - beta * to_mpc(xi)


def cable_amplitude_2(a: int, b: int, xi, k: int, variant: str = "canonical"):
    """(-1)^(k+1) sqrt(2/alpha) sin((2k+1)pi/alpha) / cosh((beta-4alpha)xi/2).

    The 'display' variant omits the (-1)^(k+1)."""
    alpha, beta = 2 * a + 1, 2 * b + 1
    sign = 1 if variant == "display" else (1 if k % 2 else -1)
    return (sign * mp.sqrt(mpf(2) / alpha)
            * mp.sin((2 * k + 1) * mp.pi / alpha)
            / mp.cosh((beta - 4 * alpha) * to_mpc(xi) / 2))


def cable_growth_2(a: int, b: int, xi, k: int):
    """2(2k+1) xi pi i - 2 alpha xi^2 + (2k+1)^2 pi^2 / (2 alpha)."""
    alpha = 2 * a + 1
    xi = to_mpc(xi)
    return (2 * (2 * k + 1) * xi * mpc(0, mp.pi) - 2 * alpha * xi * xi
            + (2 * k + 1) ** 2 * mp.pi ** 2 / (2 * alpha))


def cable_growth_2_derivative(a: int, b: int, xi, k: int):
    alpha = 2 * a + 1
    return 2 * (2 * k + 1) * mpc(0, mp.pi) - 4 * alpha * to_mpc(xi)


def cable_amplitude_3(a: int, b: int, l: int, m: int):
    """(-1)^(l+m) 4 sin((2m+1)pi/alpha) / sqrt(alpha (beta - 4 alpha))."""
    alpha, beta = 2 * a + 1, 2 * b + 1
    sign = -1 if (l + m) % 2 else 1
    return (sign * 4 * mp.sin((2 * m + 1) * mp.pi / alpha)
            / mp.sqrt(mpf(alpha) * (beta - 4 * alpha)))


def cable_growth_3(a: int, b: int, xi, l: int, m: int):
    """(2l+1) xi pi i - beta xi^2/2 + pi^2 ((2l+1)^2 alpha + (2m+1)^2 beta
    - 4 (2l+1)(2m+1) alpha) / (2 alpha (beta - 4 alpha))."""
    alpha, beta = 2 * a + 1, 2 * b + 1
    xi = to_mpc(xi)
    quad = ((2 * l + 1) ** 2 * alpha + (2 * m + 1) ** 2 * beta
            - 4 * (2 * l + 1) * (2 * m + 1) * alpha)
    return ((2 * l + 1) * xi * mpc(0, mp.pi) - beta * xi * xi / 2
            + mp.pi ** 2 * quad / (2 * alpha * (beta - 4 * alpha)))


def cable_growth_3_derivative(a: int, b: int, xi, l: int, m: int):
    beta = 2 * b + 1
    return (2 * l + 1) * mpc(0, mp.pi) - beta * to_mpc(xi)


def _cable_indices(a: int, b: int, xi, prec: int):
    """Index sets (j, k, (l, m)) of the three families plus borderline ones."""
    alpha, beta = 2 * a + 1, 2 * b + 1
    gamma = beta - 4 * alpha
    xi = to_mpc(xi)
    phi = contour_angle(xi, prec)
    eps_scale = mpf("1e-9")

    js, js_border = odd_multiples_in_strip(
        make_strip(phi, beta * xi, prec=prec), prec)
    ks_all, ks_border = odd_multiples_in_strip(
        make_strip(phi, 2 * alpha * xi, prec=prec), prec)
    ks = [k for k in ks_all if (2 * k + 1) % alpha != 0]

    lms, lms_border = [], []
    ls_all, ls_border = odd_multiples_in_strip(
        make_strip(phi, beta * xi, prec=prec), prec)
    c_gamma = normal_coordinate(gamma * xi, phi)
    c_beta = normal_coordinate(beta * xi, phi)
    for l in ls_all:
        c_l = normal_coordinate((2 * l + 1) * mpc(0, mp.pi), phi)
        lo_g, hi_g = (mpf(0), c_gamma) if c_gamma > 0 else (c_gamma, mpf(0))
        eps_g = eps_scale * max(abs(c_gamma), abs(c_beta))
        near_case_split = abs(c_l - c_gamma) <= eps_g
        in_first = lo_g + eps_g < c_l < hi_g - eps_g
        # m-range, case split on where (2l+1) pi i sits
        upper = normal_coordinate(
            mpc(0, 2 * (2 * l + 1) * alpha * mp.pi) / beta, phi)
        if in_first:
            lower = mpf(0)
        else:
            lower = normal_coordinate(
                -gamma * xi / 2 + (2 * l + 1) * mpc(0, mp.pi) / 2, phi)
        eps_m = eps_scale * max(abs(upper - lower), abs(c_beta))
        ms, ms_border = odd_multiples_between(phi, lower, upper, eps_m, prec)
        for m in ms:
            if (2 * m + 1) % alpha != 0:
                if near_case_split:
                    lms_border.append((l, m))
                else:
                    lms.append((l, m))
        for m in ms_border:
            if (2 * m + 1) % alpha != 0:
                lms_border.append((l, m))
    for l in ls_border:
        lms_border.append((l, None))
    return js, ks, lms, {
        "j": tuple(js_border),
        "k": tuple(k for k in ks_border if (2 * k + 1) % alpha != 0),
        "lm": tuple(lms_border),
    }


def iterated_terms(a: int, b: int, xi, N: int, prec: int = DEFAULT_PRECISION,
                   variant: str = "canonical") -> TermSet:
    """Leading term plus the three Gaussian-term families of the cable."""
    KnotSpec("iterated_torus", a=a, b=b)  # hypothesis check
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    wp = prec + 32
    with mp.workprec(wp):
        xi = to_mpc(xi)
        js, ks, lms, borderline = _cable_indices(a, b, xi, wp)
        pref = _sqrt_prefactor(xi, N)
        pref3 = mp.pi / (2 * mp.sinh(xi / 2)) * mpc(N) / xi
        terms = []
        for j in js:
            S = cable_growth_1(a, b, xi, j, variant)
            tau = cable_amplitude_1(a, b, j)
            terms.append(ExpansionTerm(
                "cable-1", (j,), mpc(S), mpc(tau),
                mpc(pref * tau * mp.exp(S * N / xi))))
        for k in ks:
            S = cable_growth_2(a, b, xi, k)
            tau = cable_amplitude_2(a, b, xi, k, variant)
            terms.append(ExpansionTerm(
                "cable-2", (k,), mpc(S), mpc(tau),
                mpc(pref * tau * mp.exp(S * N / xi))))
        for l, m in lms:
            S = cable_growth_3(a, b, xi, l, m)
            tau = cable_amplitude_3(a, b, l, m)
            terms.append(ExpansionTerm(
                "cable-3", (l, m), mpc(S), mpc(tau),
                mpc(pref3 * tau * mp.exp(S * N / xi))))
        leading = alexander_reciprocal(
            KnotSpec("iterated_torus", a=a, b=b), xi, wp)
        flat_borderline = (borderline["j"] and [("j", borderline["j"])] or []) \
            + (borderline["k"] and [("k", borderline["k"])] or []) \
            + (borderline["lm"] and [("lm", borderline["lm"])] or [])
        return TermSet(mpc(leading), tuple(terms), tuple(flat_borderline))


def approximate(knot: KnotSpec, xi, N: int, prec: int = DEFAULT_PRECISION,
                variant: str = "canonical"):
    """Value of the full saddle-point approximant at (xi, N)."""
    if knot.kind == "torus":
        return torus_terms(knot.a, xi, N, prec).total(prec)
    if knot.kind == "iterated_torus":
        return iterated_terms(knot.a, knot.b, xi, N, prec, variant).total(prec)
    raise HypothesisError("expansion covers the torus and cable families only")


def saddle_gaussian(H, g0, N, phi, prec: int = DEFAULT_PRECISION):
    """Gaussian-peak value sqrt(pi H / N) * g(0).

    This is the elementary building block behind every term above: the
    large-N limit of the integral of g(z) exp(-N z^2 / H) along the line
    through the origin with direction exp(i phi), valid when
    Re(exp(2 i phi)/H) > 0.
    """
    with working(prec):
        H = to_mpc(H)
        if (mp.exp(mpc(0, 2 * mpf(phi))) / H).real <= 0:
            raise HypothesisError(
                "Gaussian does not converge: Re(e^{2 i phi} / H) <= 0")
        return mp.sqrt(mp.pi * H / N) * to_mpc(g0)
