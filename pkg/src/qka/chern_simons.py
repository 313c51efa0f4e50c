"""SL(2,C) Chern-Simons invariants of the knot complements.

Three independent routes live here: the closed-form values per
representation family, numeric path integration via the Kirk-Klassen
formula z1/z0 = exp[(i/2pi) Int (u v' - v u') dt], and the dilogarithm
potential of the figure-eight knot.  The equivalence classes [s, t; z] the
values live in are implemented with their three defining moves, and all
value comparisons reduce modulo pi^2.
"""

from dataclasses import dataclass

from mpmath import mp, mpf, mpc

from . import DEFAULT_PRECISION
from .numerics import working, to_mpc, dilog, HypothesisError
from . import asymptotics as asym

PI2 = "pi^2"


class QuadratureError(ArithmeticError):
    """Richardson refinement failed to converge."""


# ---------------------------------------------------------------------------
# equivalence classes [s, t; z]
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CSClass:
    """Class [s, t; z] modulo the three moves

        (s, t; z) ~ (s+1, t; z exp(-8 pi i t))
        (s, t; z) ~ (s, t+1; z exp( 8 pi i s))
        (s, t; z) ~ (-s, -t; z)
    """

    s: object
    t: object
    z: object

    def move1(self, n: int = 1, prec: int = DEFAULT_PRECISION):
        with working(prec):
            s, t, z = to_mpc(self.s), to_mpc(self.t), to_mpc(self.z)
            return CSClass(s + n, t, z * mp.exp(mpc(0, -8 * mp.pi) * t * n))

    def move2(self, n: int = 1, prec: int = DEFAULT_PRECISION):
        with working(prec):
            s, t, z = to_mpc(self.s), to_mpc(self.t), to_mpc(self.z)
            return CSClass(s, t + n, z * mp.exp(mpc(0, 8 * mp.pi) * s * n))

    def move3(self):
        return CSClass(-to_mpc(self.s), -to_mpc(self.t), to_mpc(self.z))

    def normalize(self, prec: int = DEFAULT_PRECISION):
        """Canonical representative: real parts of s and t reduced to
        [0, 1), then the lexicographically smaller of the two sign
        choices."""
        with working(prec):
            def reduced(c):
                c = CSClass(to_mpc(c.s), to_mpc(c.t), to_mpc(c.z))
                c = c.move1(-int(mp.floor(to_mpc(c.s).real)), prec)
                c = c.move2(-int(mp.floor(to_mpc(c.t).real)), prec)
                return c

            def key(c):
                s, t = to_mpc(c.s), to_mpc(c.t)
                return (s.real, s.imag, t.real, t.imag)

            a = reduced(self)
            b = reduced(self.move3())
            return a if key(a) <= key(b) else b

    def close_to(self, other, tol=mpf("1e-30"), prec: int = DEFAULT_PRECISION):
        with working(prec):
            a, b = self.normalize(prec), other.normalize(prec)
            return (abs(to_mpc(a.s) - to_mpc(b.s)) <= tol
                    and abs(to_mpc(a.t) - to_mpc(b.t)) <= tol
                    and abs(to_mpc(a.z) - to_mpc(b.z)) <= tol * (1 + abs(to_mpc(a.z))))


def cs_residual_mod_pi2(v1, v2, prec: int = DEFAULT_PRECISION):
    """|v1 - v2| after removing the nearest integer multiple of pi^2."""
    with working(prec):
        d = to_mpc(v1) - to_mpc(v2)
        n = mp.nint(d.real / mp.pi ** 2)
        return abs(d - n * mp.pi ** 2)


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

def cs_closed_form(family: str, a: int, b: int, u, indices: dict, branch,
                   prec: int = DEFAULT_PRECISION):
    """Closed-form CS value and the longitude log-eigenvalue pair v.

    ``branch`` is the integer (half-integer for the 'na' correspondence
    coming from the expansion bookkeeping) that fixes the lift of the
    longitude logarithm.  Returns (cs_value, v).
    """
    with working(prec):
        u = to_mpc(u)
        ipi = mpc(0, mp.pi)
        br = mp.mpmathify(branch)
        if family == "torus":
            k = indices["k"]
            cs = br * u * ipi / 2 + (2 * k + 1) ** 2 * mp.pi ** 2 / (2 * (2 * a + 1))
            v = -2 * (2 * a + 1) * u + 2 * ipi * br
        elif family == "an":
            j = indices["j"]
            cs = br * u * ipi / 2 + (2 * j + 1) ** 2 * mp.pi ** 2 / (2 * (2 * b + 1))
            v = -2 * (2 * b + 1) * u + 2 * ipi * br
        elif family == "na":
            k = indices["k"]
            cs = br * u * ipi + (2 * k + 1) ** 2 * mp.pi ** 2 / (2 * (2 * a + 1))
            v = -8 * (2 * a + 1) * u + 4 * ipi * br
        elif family == "nn":
            k, h = indices["k"], indices["h"]
            m = 2 * b + 1 - 4 * (2 * a + 1)
            cs = (br * u * ipi / 2
                  + (2 * k + 1) ** 2 * mp.pi ** 2 / (2 * (2 * a + 1))
                  + (2 * h + 1) ** 2 * mp.pi ** 2 / (2 * m))
            v = -2 * (2 * b + 1) * u + 2 * ipi * br
        else:
            raise HypothesisError(f"no closed-form CS value for family {family!r}")
        return mpc(cs), mpc(v)


# ---------------------------------------------------------------------------
# Kirk-Klassen path integration
# ---------------------------------------------------------------------------

_GL8_NODES = None


def _gl8(prec):
    """Gauss-Legendre order-8 nodes/weights on [-1, 1] at working precision."""
    global _GL8_NODES
    if _GL8_NODES is None or _GL8_NODES[0] < prec:
        with mp.workprec(prec + 40):
            nodes = mp.polyroots(mp.taylor(lambda x: mp.legendre(8, x), 0, 8)[::-1])
            pairs = []
            for x in nodes:
                x = x.real
                dp = mp.diff(lambda t: mp.legendre(8, t), x)
                w = 2 / ((1 - x ** 2) * dp ** 2)
                pairs.append((x, w))
            _GL8_NODES = (prec, sorted(pairs))
    return _GL8_NODES[1]


def _kk_integral(path, pieces: int, prec: int):
    """Composite GL-8 quadrature of u v' - v u' over [0,1]; derivatives by
    five-point central differences whose step shrinks with the pieces."""
    with mp.workprec(prec + 40):
        nodes = _gl8(prec)
        h = mpf(1) / pieces
        fd = h / 64  # finite-difference step, well inside each piece

        def uv(t0):
            u0, v0 = path(t0)
            return to_mpc(u0), to_mpc(v0)

        def integrand(t0):
            # five-point stencils for u'(t0), v'(t0)
            um2, vm2 = uv(t0 - 2 * fd)
            um1, vm1 = uv(t0 - fd)
            up1, vp1 = uv(t0 + fd)
            up2, vp2 = uv(t0 + 2 * fd)
            u0, v0 = uv(t0)
            du = (um2 - 8 * um1 + 8 * up1 - up2) / (12 * fd)
            dv = (vm2 - 8 * vm1 + 8 * vp1 - vp2) / (12 * fd)
            return u0 * dv - v0 * du

        total = mp.mpc(0)
        for i in range(pieces):
            mid = (i + mpf("0.5")) * h
            for x, w in nodes:
                total += w * integrand(mid + x * h / 2)
        return total * h / 2


def kirk_klassen_ratio(path, prec: int = DEFAULT_PRECISION,
                       target=mpf("1e-9"), max_pieces: int = 64):
    """exp[(i/2pi) Int_0^1 (u v' - v u') dt] with interval-doubling
    refinement; returns (ratio, error_estimate).

    ``path`` maps t in [0,1] to the pair (u_t, v_t) of meridian and
    longitude log-eigenvalue parameters; it must be smooth enough for
    finite-difference derivatives to converge under refinement.
    """
    with working(prec):
        pieces = 4
        prev = _kk_integral(path, pieces, prec)
        best = prev
        err = mp.inf
        while pieces <= max_pieces:
            pieces *= 2
            cur = _kk_integral(path, pieces, prec)
            # GL-8 converges at order 16: Richardson-extrapolate the pair
            extrap = cur + (cur - prev) / (2 ** 16 - 1)
            err = abs(cur - prev)
            best = extrap
            prev = cur
            if err <= target * (1 + abs(cur)):
                break
        else:
            raise QuadratureError(
                f"refinement stalled at {max_pieces} pieces (err {mp.nstr(err, 3)})")
        ratio = mp.exp(mpc(0, 1) / (2 * mp.pi) * best)
        return mpc(ratio), mpf(err)


def kk_path(family: str, a: int, b: int, u, indices: dict, branch,
            prec: int = DEFAULT_PRECISION):
    """The straight-line representation path used for each family.

    u_t runs from the Abelian-matching corner u_0 to u; v_t is the affine
    longitude parameter fixed by the closed-form longitude image and the
    chosen branch integer.
    """
    with working(prec):
        u = to_mpc(u)
        ipi = mpc(0, mp.pi)
        br = mp.mpmathify(branch)
        if family == "torus":
            u0 = (2 * indices["k"] + 1) * ipi / (2 * a + 1)
            slope, inter = -2 * (2 * a + 1), 2 * ipi * br
        elif family == "an":
            u0 = (2 * indices["j"] + 1) * ipi / (2 * b + 1)
            slope, inter = -2 * (2 * b + 1), 2 * ipi * br
        elif family == "na":
            u0 = (2 * indices["k"] + 1) * ipi / (2 * (2 * a + 1))
            slope, inter = -8 * (2 * a + 1), 4 * ipi * br
        elif family == "nn":
            m = 2 * b + 1 - 4 * (2 * a + 1)
            u0 = (2 * indices["h"] + 1) * ipi / m
            slope, inter = -2 * (2 * b + 1), 2 * ipi * br
        else:
            raise HypothesisError(f"no Kirk-Klassen path for family {family!r}")

        def path(t):
            ut = (1 - t) * u0 + t * u
            return ut, slope * ut + inter

        return path, u0


def kk_ratio_closed_form(family: str, a: int, b: int, u, indices: dict,
                         prec: int = DEFAULT_PRECISION):
    """The printed value of z1/z0 along the same path (branch-independent)."""
    with working(prec):
        u = to_mpc(u)
        ipi = mpc(0, mp.pi)
        if family == "torus":
            return mp.exp((u - (2 * indices["k"] + 1) * ipi / (2 * a + 1)))
        if family == "an":
            return mp.exp((u - (2 * indices["j"] + 1) * ipi / (2 * b + 1)))
        if family == "na":
            return mp.exp(2 * (u - (2 * indices["k"] + 1) * ipi / (2 * (2 * a + 1))))
        if family == "nn":
            m = 2 * b + 1 - 4 * (2 * a + 1)
            return mp.exp((u - (2 * indices["h"] + 1) * ipi / m))
        raise HypothesisError(f"no closed-form ratio for family {family!r}")


def cs_from_kk(family: str, a: int, b: int, u, indices: dict, branch,
               prec: int = DEFAULT_PRECISION, target=mpf("1e-9")):
    """CS value by numeric Kirk-Klassen integration plus the equivalence
    bookkeeping that fixes z0; returns (cs_value, ratio_error_estimate).

    The path's t=0 corner has the same trace as an Abelian representation,
    which pins its class to [s, 0; 1]; repeated applications of the second
    equivalence move carry that to the path's longitude coordinate and
    produce z0.  Then z1 = z0 * (integrated ratio) and
    CS = (pi i / 2) log z1, defined modulo pi^2.
    """
    with working(prec):
        path, u0 = kk_path(family, a, b, u, indices, branch, prec)
        ratio, err = kirk_klassen_ratio(path, prec, target)
        br = mp.mpmathify(branch)
        ipi = mpc(0, mp.pi)
        if family == "nn":
            # the corner matches the 'na' class at u0 (gluing formula), so
            # its z-value is the na closed form at u0 with branch l_na
            k = indices["k"]
            l_na = mp.mpmathify(indices["l_na"])
            z_start = mp.exp(2 * l_na * u0 - (2 * k + 1) ** 2 * ipi / (2 * a + 1))
            steps = (br - 2 * l_na - 2 * indices["h"] - 1) / 2
        elif family == "torus":
            z_start, steps = mpc(1), (br - 2 * indices["k"] - 1) / 2
        elif family == "an":
            z_start, steps = mpc(1), (br - 2 * indices["j"] - 1) / 2
        elif family == "na":
            z_start, steps = mpc(1), br - 2 * indices["k"] - 1
        else:
            raise HypothesisError(f"no Kirk-Klassen route for family {family!r}")
        s_coord = u0 / (4 * ipi)
        steps = mp.mpmathify(steps)
        if abs(steps - mp.nint(steps.real)) < mpf("1e-20"):
            # integer steps: apply the literal equivalence move
            shifted = CSClass(s_coord, 0, z_start).move2(
                int(mp.nint(steps.real)), prec)
            z0 = to_mpc(shifted.z)
        else:
            # analytic continuation of the move-2 chain to fractional steps
            z0 = z_start * mp.exp(mpc(0, 8 * mp.pi) * s_coord * steps)
        z1 = z0 * ratio
        cs = ipi / 2 * mp.log(z1)
        return mpc(cs), err


# ---------------------------------------------------------------------------
# figure-eight dilogarithm potential
# ---------------------------------------------------------------------------

def figure_eight_volume(prec: int = DEFAULT_PRECISION):
    """Hyperbolic volume of the figure-eight complement, 2 Im Li2(e^{i pi/3})."""
    with working(prec):
        return 2 * dilog(mp.exp(mpc(0, mp.pi / 3)), prec).imag


def _cusp_shape(u, prec: int):
    """phi(u) with cosh(phi) = cosh(u) - 1/2, on the branch with
    phi(0) = -i pi / 3 (the sign that makes Im S(0) the positive volume)."""
    with working(prec):
        return -mp.acosh(mp.cosh(to_mpc(u)) - mpf(1) / 2)


def fig8_potential(u, prec: int = DEFAULT_PRECISION, quad_target=mpf("1e-30")):
    """Dilogarithm potential of the figure-eight knot at small u.

    Returns (S, v, cs) where
      S(u)  = Li2(e^{u-phi}) - Li2(e^{u+phi}) - u phi,
              phi = arccosh(cosh u - 1/2) on the branch fixed above,
      v(u)  = 2 dS/du - 2 pi i with the derivative taken analytically,
      cs    = i Vol + Int_0^u log(ell(s)) ds - (u/2) log(ell(u)),
    the last by quadrature of the longitude-eigenvalue logarithm along the
    straight segment.  Only |u| < 0.4 is accepted; larger u can walk the
    dilogarithm and logarithm arguments across their branch cuts.
    """
    from .representations import fig8_longitude_eigenvalue
    with working(prec):
        u = to_mpc(u)
        if abs(u) >= mpf("0.4"):
            raise HypothesisError("fig8 potential needs |u| < 0.4 (branch safety)")
        phi = _cusp_shape(u, prec)
        e_minus = mp.exp(u - phi)
        e_plus = mp.exp(u + phi)
        S = dilog(e_minus, prec) - dilog(e_plus, prec) - u * phi
        # dS/du: log ratio term plus the phi'(u) (sigma - u) correction,
        # where sigma = log(1-e^{u-phi}) + log(1-e^{u+phi}) equals u up to
        # a lattice shift that vanishes on this branch for small u
        sigma = mp.log(1 - e_minus) + mp.log(1 - e_plus)
        dphi = mp.sinh(u) / mp.sinh(phi) if abs(u) > 0 else mpc(0)
        ds_du = (mp.log(1 - e_plus) - mp.log(1 - e_minus)
                 + dphi * (sigma - u) - phi)
        v = 2 * ds_du - 2 * mpc(0, mp.pi)

        # quadrature route for the CS value
        def log_ell(s):
            val = fig8_longitude_eigenvalue(s, prec)
            return mp.log(val)

        # reject paths where ell crosses the negative real axis away from -1
        samples = [log_ell(u * t) for t in mp.linspace(0, 1, 33)]
        for w1, w2 in zip(samples, samples[1:]):
            if abs(w1 - w2) > 1:
                raise HypothesisError(
                    "log ell(s) jumps along the path: branch-ambiguous u")
        integral = mp.quad(lambda t: log_ell(u * t) * u, [0, 1])
        cs = (mpc(0, 1) * figure_eight_volume(prec)
              + integral - u / 2 * log_ell(u))
        return mpc(S), mpc(v), mpc(cs)


# ---------------------------------------------------------------------------
# growth exponents determine the CS invariants
# ---------------------------------------------------------------------------

def cs_matches_S(family: str, a: int, b: int, indices: dict, u,
                 prec: int = DEFAULT_PRECISION):
    """Residual (mod pi^2) between S(u + 2 pi i) - pi i u - u v / 4 and the
    closed-form CS value, with v = 2 dS/du - 2 pi i taken analytically and
    the branch integer fixed by the expansion-to-representation
    correspondence of each family.  Returns (ok, residual, branch).
    """
    with working(prec):
        u = to_mpc(u)
        xi = u + 2 * mpc(0, mp.pi)
        if family == "torus":
            k = indices["k"]
            S = asym.torus_growth(a, xi, k)
            dS = asym.torus_growth_derivative(a, xi, k)
            branch = -2 * (2 * a + 1 - k)
            closed_idx = {"k": k}
        elif family == "an":
            j = indices["j"]
            S = asym.cable_growth_1(a, b, xi, j)
            dS = asym.cable_growth_1_derivative(a, b, xi, j)
            branch = -2 * (2 * b + 1 - j)
            closed_idx = {"j": j}
        elif family == "na":
            k = indices["k"]
            S = asym.cable_growth_2(a, b, xi, k)
            dS = asym.cable_growth_2_derivative(a, b, xi, k)
            branch = -mpf(8 * (2 * a + 1) - 4 * k - 1) / 2
            closed_idx = {"k": k}
        elif family == "nn":
            l, m = indices["l"], indices["m"]
            S = asym.cable_growth_3(a, b, xi, l, m)
            dS = asym.cable_growth_3_derivative(a, b, xi, l, m)
            branch = -2 * (2 * b + 1 - l)
            closed_idx = {"k": m, "h": l - 2 * m - 1}
        else:
            raise HypothesisError(f"no growth-exponent family {family!r}")
        v = 2 * dS - 2 * mpc(0, mp.pi)
        lhs = S - mpc(0, mp.pi) * u - u * v / 4
        closed, v_closed = cs_closed_form(family, a, b, u, closed_idx, branch, prec)
        if abs(v - v_closed) > mpf("1e-20"):
            raise ArithmeticError("longitude parameters of the two routes differ")
        residual = cs_residual_mod_pi2(lhs, closed, prec)
        return residual < mpf(2) ** (60 - prec), mpf(residual), branch
