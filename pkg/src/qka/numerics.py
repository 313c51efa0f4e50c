"""Arbitrary-precision scalar layer and contour-strip geometry.

Scalars are mpmath ``mpf``/``mpc`` values; every function takes the working
precision in bits explicitly (no ambient global state is relied upon, the
mpmath context is only adjusted inside a ``workprec`` block).  The strip
utilities decide which odd multiples of pi*i lie between a contour line
through the origin and its translate, which is what enumerates the residue
terms of the asymptotic expansions.
"""

from dataclasses import dataclass

from mpmath import mp, mpf, mpc, bernoulli

from . import DEFAULT_PRECISION

# extra bits carried internally so results are good to the requested precision
GUARD_BITS = 16


class DegenerateStripError(ValueError):
    """Strip whose two boundary lines are closer than twice the margin."""


class HypothesisError(ValueError):
    """A parameter constraint of the implemented theorems is violated."""


def to_mpc(z):
    """Convert int/float/complex/str/mpf/mpc to mpc without losing digits."""
    if isinstance(z, mpc):
        return z
    if isinstance(z, complex):
        return mpc(z.real, z.imag)
    return mpc(z)


def working(prec: int = DEFAULT_PRECISION):
    """Context manager setting the mpmath binary precision plus guard bits."""
    return mp.workprec(prec + GUARD_BITS)


def ulp_tol(prec: int, scale: int = 40) -> mpf:
    """A tolerance ``2**(scale - prec)`` used for residual checks."""
    return mpf(2) ** (scale - prec)


# ---------------------------------------------------------------------------
# dilogarithm
# ---------------------------------------------------------------------------

def _dilog_series(z):
    # plain power series, |z| <= 1/2
    total = mp.zero
    term = mpc(z)
    n = 1
    while True:
        piece = term / (n * n)
        total += piece
        if abs(piece) < mp.eps * (abs(total) + 1):
            return total
        term *= z
        n += 1


def _dilog_log_series(z):
    # Bernoulli series Li2(z) = sum_k B_k u^(k+1)/(k+1)! in u = -log(1-z);
    # converges for |u| < 2*pi and covers the annulus where neither z nor
    # 1-z is small.  Odd-index Bernoulli numbers vanish, so convergence is
    # judged on the term bound ~ 2|u| (|u|/2pi)^k, not on the terms.
    u = -mp.log(1 - z)
    total = mp.zero
    upow = mpc(u)
    bound = 2 * abs(u)
    ratio = abs(u) / (2 * mp.pi)
    k = 0
    while True:
        total += mpf(bernoulli(k)) * upow
        if bound < mp.eps * (abs(total) + 1) and k > 2:
            return total
        k += 1
        upow = upow * u / (k + 1)
        bound *= ratio


def dilog(z, prec: int = DEFAULT_PRECISION):
    """Principal-branch dilogarithm Li_2(z) = sum z^n / n^2.

    Power series on |z| <= 1/2; elsewhere reduced by the inversion and
    reflection functional equations, falling back to the series in
    -log(1-z) on the remaining annulus.
    """
    with working(prec):
        z = to_mpc(z)
        if z == 0:
            return mpc(0)
        if z == 1:
            return mpc(mp.pi ** 2 / 6)
        if abs(z) > 1:
            # Li2(z) = -Li2(1/z) - pi^2/6 - log(-z)^2 / 2
            return mpc(-dilog(1 / z, prec) - mp.pi ** 2 / 6
                       - mp.log(-z) ** 2 / 2)
        if abs(z) <= 0.5:
            return mpc(_dilog_series(z))
        if abs(1 - z) <= 0.5:
            # Li2(z) = pi^2/6 - log(z) log(1-z) - Li2(1-z)
            return mpc(mp.pi ** 2 / 6 - mp.log(z) * mp.log(1 - z)
                       - dilog(1 - z, prec))
        return mpc(_dilog_log_series(z))


# ---------------------------------------------------------------------------
# contour strips
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Strip:
    """Open region between the line ``C_phi`` through the origin with
    direction ``exp(i*phi)`` and its translate ``C_phi + shift``, shrunk by
    ``epsilon`` on each side in the normal coordinate."""

    phi: mpf
    shift: mpc
    epsilon: mpf


def normal_coordinate(z, phi):
    """Signed distance coordinate Im(z * e^{-i*phi}) across the line C_phi."""
    return (to_mpc(z) * mp.exp(mpc(0, -mpf(phi)))).imag


def make_strip(phi, shift, epsilon=None, prec: int = DEFAULT_PRECISION) -> Strip:
    """Build a strip; the margin defaults to 1e-9 * |shift|."""
    with working(prec):
        phi = mpf(phi)
        shift = to_mpc(shift)
        if epsilon is None:
            epsilon = mpf("1e-9") * abs(shift)
        return Strip(phi, shift, mpf(epsilon))


def _check_strip(s: Strip):
    if abs(abs(s.phi) - mp.pi / 2) < mpf("1e-12"):
        raise ValueError("strip direction phi may not be +-pi/2")
    if s.epsilon <= 0 and s.shift != 0:
        raise ValueError("strip margin epsilon must be positive")


def strip_classify(z, s: Strip, prec: int = DEFAULT_PRECISION) -> str:
    """Classify a point as 'inside', 'outside' or 'borderline'.

    Borderline means within epsilon of either boundary line; such points are
    surfaced to callers instead of being silently dropped.
    """
    with working(prec):
        _check_strip(s)
        if s.shift == 0:
            return "outside"  # the strip with zero shift is empty
        width = normal_coordinate(s.shift, s.phi)
        if abs(width) <= 2 * s.epsilon:
            raise DegenerateStripError(
                "strip boundaries are within 2*epsilon of each other")
        lo, hi = (mpf(0), width) if width > 0 else (width, mpf(0))
        c = normal_coordinate(z, s.phi)
        if lo + s.epsilon < c < hi - s.epsilon:
            return "inside"
        if lo - s.epsilon <= c <= lo + s.epsilon or hi - s.epsilon <= c <= hi + s.epsilon:
            return "borderline"
        return "outside"


def strip_contains(z, s: Strip, prec: int = DEFAULT_PRECISION) -> bool:
    """True iff ``z`` lies strictly inside the epsilon-shrunk open strip."""
    return strip_classify(z, s, prec) == "inside"


def contour_angle(xi, prec: int = DEFAULT_PRECISION):
    """Direction angle phi = arg(xi)/2 of the integration contour.

    This satisfies Re(e^{2*i*phi} / xi) = 1/|xi| > 0, which is the
    convergence condition for the Gaussian integrals.  If the angle lands
    within 1e-6 of +-pi/2 it is nudged by 1e-3 so cosh denominators on the
    contour stay bounded away from zero.
    """
    with working(prec):
        xi = to_mpc(xi)
        if xi.real == 0:
            raise HypothesisError("xi must not be purely imaginary")
        phi = mp.arg(xi) / 2
        if abs(abs(phi) - mp.pi / 2) < mpf("1e-6"):
            phi -= mp.sign(phi) * mpf("1e-3")
        return phi


def odd_multiples_between(phi, c_lo, c_hi, epsilon, prec: int = DEFAULT_PRECISION):
    """Integers n with (2n+1)*pi*i strictly between two parallel lines.

    The lines are C_phi + s with normal coordinates ``c_lo`` and ``c_hi``
    (order irrelevant); the strip is shrunk by ``epsilon``.  Returns the pair
    ``(inside, borderline)`` of index lists, both sorted.
    """
    with working(prec):
        phi = mpf(phi)
        cos_phi = mp.cos(phi)
        if abs(cos_phi) < mpf("1e-12"):
            raise ValueError("contour angle too close to +-pi/2")
        lo, hi = (c_lo, c_hi) if c_lo <= c_hi else (c_hi, c_lo)
        if hi - lo <= 2 * epsilon:
            return [], []
        # coordinate of (2n+1)*pi*i is (2n+1)*pi*cos(phi)
        scale = mp.pi * cos_phi
        inside, borderline = [], []
        n_min = int(mp.floor(((lo - epsilon) / scale - 1) / 2)) - 1
        n_max = int(mp.ceil(((hi + epsilon) / scale - 1) / 2)) + 1
        if n_max < n_min:
            n_min, n_max = n_max, n_min
        for n in range(n_min, n_max + 1):
            c = (2 * n + 1) * scale
            if lo + epsilon < c < hi - epsilon:
                inside.append(n)
            elif lo - epsilon <= c <= lo + epsilon or hi - epsilon <= c <= hi + epsilon:
                borderline.append(n)
        return inside, borderline


def odd_multiples_in_strip(s: Strip, prec: int = DEFAULT_PRECISION):
    """Integers n with (2n+1)*pi*i inside the strip; also borderline ones."""
    with working(prec):
        _check_strip(s)
        if s.shift == 0:
            return [], []
        width = normal_coordinate(s.shift, s.phi)
        if abs(width) <= 2 * s.epsilon:
            raise DegenerateStripError(
                "strip boundaries are within 2*epsilon of each other")
        return odd_multiples_between(s.phi, mpf(0), width, s.epsilon, prec)
