"""Colored Jones polynomials of T(2,2a+1) and its (2,2b+1)-cables.

The torus-knot invariant is available exactly, as an integer Laurent
polynomial in t^(1/2) obtained by performing the division by
t^(N/2) - t^(-N/2) as exact long division.  Both families are available
numerically at t = exp(xi/N) with precision escalated to keep the
exponentially large summands representable; summation is d-major with
Kahan-style compensation per row so results are deterministic.
"""

from dataclasses import dataclass

from mpmath import mp, mpf, mpc

from . import DEFAULT_PRECISION
from .numerics import working, to_mpc, HypothesisError
from .freegroup import KnotSpec


class ExactDivisionError(ArithmeticError):
    """Laurent division left a nonzero remainder (formula transcription bug)."""


class HalfLaurent:
    """Integer Laurent polynomial in s = t^(1/2).

    Exponents are stored in units of t^(1/2), i.e. the key ``n`` stands for
    t^(n/2).  Coefficients are exact Python ints.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if c}

    @classmethod
    def monomial(cls, half_exponent, coeff=1):
        return cls({half_exponent: coeff})

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def one(cls):
        return cls({0: 1})

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return HalfLaurent(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return HalfLaurent({e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return HalfLaurent({e: c * other for e, c in self.coeffs.items()})
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return HalfLaurent(out)

    def __eq__(self, other):
        return isinstance(other, HalfLaurent) and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def terms(self):
        """Sorted (half-exponent numerator, coefficient) pairs."""
        return sorted(self.coeffs.items())

    def min_exponent(self):
        return min(self.coeffs) if self.coeffs else 0

    def max_exponent(self):
        return max(self.coeffs) if self.coeffs else 0

    def divide_exact(self, divisor):
        """Exact quotient self / divisor; raises if a remainder is left."""
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self:
            return HalfLaurent.zero()
        # shift both to ordinary polynomials, then long division
        smin, dmin = self.min_exponent(), divisor.min_exponent()
        num = {e - smin: c for e, c in self.coeffs.items()}
        den = {e - dmin: c for e, c in divisor.coeffs.items()}
        ddeg = max(den)
        dlead = den[ddeg]
        quot = {}
        while num and max(num) >= ddeg:
            e = max(num)
            c = num[e]
            if c % dlead:
                raise ExactDivisionError("non-divisible leading coefficient")
            qe, qc = e - ddeg, c // dlead
            quot[qe] = quot.get(qe, 0) + qc
            for de, dc in den.items():
                k = qe + de
                nc = num.get(k, 0) - qc * dc
                if nc:
                    num[k] = nc
                else:
                    num.pop(k, None)
        if num:
            raise ExactDivisionError("nonzero remainder in Laurent division")
        return HalfLaurent({e + smin - dmin: c for e, c in quot.items()})

    def at_one(self):
        """Value at t = 1 (sum of coefficients); safe after division."""
        return sum(self.coeffs.values())

    def evaluate(self, t, prec: int = DEFAULT_PRECISION):
        """Numeric value at the complex point ``t`` (principal t^(1/2))."""
        with working(prec):
            s = mp.sqrt(to_mpc(t))
            return mpc(mp.fsum((s ** e) * c for e, c in self.coeffs.items()))

    def conjugate_symmetry_gap(self, t, prec: int = DEFAULT_PRECISION):
        """|p(conj t) - conj(p(t))|; zero for integer coefficients."""
        with working(prec):
            t = to_mpc(t)
            return abs(self.evaluate(mp.conj(t), prec)
                       - mp.conj(self.evaluate(t, prec)))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for e, c in self.terms():
            if e == 0:
                bits.append(f"{c}")
            elif e % 2 == 0:
                bits.append(f"{c}*t^{e // 2}")
            else:
                bits.append(f"{c}*t^({e}/2)")
        return " + ".join(bits)


@dataclass(frozen=True)
class JonesEval:
    """One evaluation J_N(K; exp(xi/N)) with its precision bookkeeping."""

    N: int
    xi: object
    value: object
    err_bound: object
    precision_bits: int

    def to_json(self):
        v = to_mpc(self.value)
        return {
            "N": self.N,
            "xi": [mp.nstr(to_mpc(self.xi).real, 25), mp.nstr(to_mpc(self.xi).imag, 25)],
            "value_re": mp.nstr(v.real, 25),
            "value_im": mp.nstr(v.imag, 25),
            "err_bound": mp.nstr(mpf(self.err_bound), 8),
            "precision_bits": self.precision_bits,
        }


EXACT_N_LIMIT = 200


def _check_xi(xi):
    xi = to_mpc(xi)
    if xi.real == 0:
        raise HypothesisError(
            "xi must not be purely imaginary (sinh(xi/2) may vanish)")
    if xi.imag < 0:
        raise HypothesisError("xi must have Im(xi) >= 0")
    return xi


def escalated_precision(base: int, N: int, xi, growth_nats) -> int:
    """Working precision for sums whose terms reach exp(growth_nats).

    Never below the independent floor ceil(4 N |Re xi| / ln 2) + 128 used
    for large-N evaluations, nor below the requested base precision.
    """
    ln2 = 0.6931471805599453
    xi = to_mpc(xi)
    floor = int(4 * N * abs(float(xi.real)) / ln2) + 128 if N > 500 else 0
    need = int(float(growth_nats) / ln2) + 192
    return max(base, floor, need)


def colored_jones_torus_exact(a: int, N: int) -> HalfLaurent:
    """J_N(T(2,2a+1); t) as an exact element of Z[t^(1/2), t^(-1/2)].

    The finite sum over c is multiplied by the prefactor and divided by
    t^(N/2) - t^(-N/2) exactly; the quotient is a genuine Laurent
    polynomial, so any remainder is reported as an internal error.
    """
    if a < 1 or N < 1:
        raise HypothesisError("torus exact mode needs a >= 1 and N >= 1")
    if N > EXACT_N_LIMIT:
        raise HypothesisError(
            f"exact mode is limited to N <= {EXACT_N_LIMIT} (coefficient growth)")
    n = 2 * a + 1
    total = HalfLaurent.zero()
    for c in range(N):
        sign = -1 if c % 2 else 1
        base = n * (c * c + c)  # half-exponent units of t^{n(c^2+c)/2}
        total = total + HalfLaurent(
            {base + 2 * c + 1: sign, base - 2 * c - 1: -sign})
    sign_pref = -1 if N % 2 == 0 else 1
    shift = -n * (N * N - 1)  # half-exponent units of t^{-n(N^2-1)/2}
    numerator = total * HalfLaurent.monomial(shift, sign_pref)
    divisor = HalfLaurent({N: 1, -N: -1})
    return numerator.divide_exact(divisor)


def colored_jones_torus_numeric(a: int, N: int, xi,
                                prec: int = DEFAULT_PRECISION) -> JonesEval:
    """J_N(T(2,2a+1); exp(xi/N)) summed directly at escalated precision."""
    if a < 1 or N < 1:
        raise HypothesisError("torus evaluation needs a >= 1 and N >= 1")
    xi = _check_xi(xi)
    n = 2 * a + 1
    growth = n * N * abs(xi.real) / 2 + 10
    wp = escalated_precision(prec, N, xi, growth)
    with mp.workprec(wp):
        s = mp.exp(xi / (2 * N))          # t^(1/2)
        s2 = s * s
        step = s2 ** n                    # t^{(2a+1)}
        power = mp.mpc(1)                 # t^{n(c^2+c)/2} at c
        ratio = step                      # t^{n(c+1)} updates power
        odd = s                           # s^{2c+1}
        odd_inv = 1 / s
        total = mp.mpc(0)
        comp = mp.mpc(0)
        max_term = mpf(0)
        sign = 1
        for c in range(N):
            term = sign * power * (odd - odd_inv)
            max_term = max(max_term, abs(term))
            y = term - comp
            t_new = total + y
            comp = (t_new - total) - y
            total = t_new
            power *= ratio
            ratio *= step
            odd *= s2
            odd_inv /= s2
            sign = -sign
        pref = mp.exp(-n * (N * N - 1) * xi / (2 * N)) / (2 * mp.sinh(xi / 2))
        if N % 2 == 0:
            pref = -pref
        value = pref * total
        rel = (6 * N + 40) * mpf(2) ** (-wp)
        err = rel * (1 + max_term / max(abs(total), mpf(2) ** (-wp)))
        return JonesEval(N, xi, mpc(value), abs(value) * err, wp)


def colored_jones_iterated(a: int, b: int, N: int, xi,
                           prec: int = DEFAULT_PRECISION) -> JonesEval:
    """J_N(T(2,2a+1)^(2,2b+1); exp(xi/N)) via the double sum.

    Summation is d-major; each d-row is compensated, rows are combined in
    index order, so the result is bit-reproducible at fixed precision.
    """
    spec = KnotSpec("iterated_torus", a=a, b=b)  # validates the hypothesis
    if N < 1:
        raise HypothesisError("N >= 1 required")
    xi = _check_xi(xi)
    alpha, beta = 2 * a + 1, 2 * b + 1
    gamma = beta - 4 * alpha
    growth = beta * N * abs(xi.real) / 2 + 10
    wp = escalated_precision(prec, N, xi, growth)
    with mp.workprec(wp):
        s = mp.exp(xi / (2 * N))          # t^(1/2)
        t = s * s
        t_alpha = t ** alpha
        t_gamma = t ** gamma
        d_power = mp.mpc(1)               # t^{gamma (d^2+d)/2}
        d_ratio = t_gamma                 # t^{gamma (d+1)}
        total = mp.mpc(0)
        max_term = mpf(0)
        for d in range(N):
            c_power = mp.mpc(1)           # t^{alpha (c^2+c)/2}
            c_ratio = t_alpha             # t^{alpha (c+1)}
            odd = s                       # s^{2c+1}
            odd_inv = 1 / s
            row = mp.mpc(0)
            comp = mp.mpc(0)
            sign = 1 if d % 2 == 0 else -1
            for c in range(2 * d + 1):
                term = sign * c_power * (odd - odd_inv)
                a_term = abs(term)
                if a_term > max_term:
                    max_term = a_term
                y = term - comp
                t_new = row + y
                comp = (t_new - row) - y
                row = t_new
                c_power *= c_ratio
                c_ratio *= t_alpha
                odd *= t
                odd_inv /= t
                sign = -sign
            total += d_power * row
            d_power *= d_ratio
            d_ratio *= t_gamma
        pref = mp.exp(-beta * (N * N - 1) * xi / (2 * N)) / (2 * mp.sinh(xi / 2))
        if N % 2 == 0:
            pref = -pref
        value = pref * total
        ops = 8 * N * N + 40
        rel = ops * mpf(2) ** (-wp)
        err = rel * (1 + max_term / max(abs(total), mpf(2) ** (-wp)))
        return JonesEval(N, xi, mpc(value), abs(value) * err, wp)


def colored_jones(knot: KnotSpec, N: int, xi,
                  prec: int = DEFAULT_PRECISION) -> JonesEval:
    """Numeric evaluation dispatcher for the two supported families."""
    if knot.kind == "torus":
        return colored_jones_torus_numeric(knot.a, N, xi, prec)
    if knot.kind == "iterated_torus":
        return colored_jones_iterated(knot.a, knot.b, N, xi, prec)
    raise HypothesisError(
        "colored Jones evaluation covers the torus and cable families only")


def alexander_reciprocal(knot: KnotSpec, xi, prec: int = DEFAULT_PRECISION):
    """1/Delta(K; e^xi): the constant leading term of both expansions."""
    with working(prec):
        xi = to_mpc(xi)
        if xi.real == 0:
            raise HypothesisError("xi must not be purely imaginary")
        if knot.kind == "torus":
            n = 2 * knot.a + 1
            return mp.sinh(xi) / (2 * mp.sinh(xi / 2) * mp.cosh(n * xi / 2))
        if knot.kind == "iterated_torus":
            alpha, beta = 2 * knot.a + 1, 2 * knot.b + 1
            return mp.sinh(2 * xi) / (4 * mp.sinh(xi / 2)
                                      * mp.cosh(alpha * xi)
                                      * mp.cosh(beta * xi / 2))
        raise HypothesisError(
            "Alexander reciprocal covers the torus and cable families only")
