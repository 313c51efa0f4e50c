"""Explicit SL(2,C) representations of the knot groups.

Five families are constructed: the two-parameter family for the
figure-eight knot (sign selecting the branch of the defining radical), the
family for T(2,2a+1) indexed by a root of unity, and the three families for
the (2,2b+1)-cable according to whether the restriction to the companion
and to the pattern piece is Abelian or not ('an', 'na', 'nn').

Closed-form longitude images are implemented separately from word
evaluation on purpose: the test suite compares the two independent routes.
"""

from dataclasses import dataclass

from mpmath import mp, mpf, mpc

from . import DEFAULT_PRECISION
from .numerics import working, to_mpc, ulp_tol, HypothesisError
from .linalg import inv2, frobenius_norm, mat_max
from .freegroup import (KnotSpec, Word, Presentation, knot_presentation,
                        torus_companion_longitude, figure_eight, torus,
                        iterated_torus)

FAMILIES = ("fig8", "torus", "an", "na", "nn")


@dataclass(frozen=True)
class RepParams:
    """Parameters selecting one representation.

    family 'fig8':  sign in {+1,-1} picks the branch of the radical.
    family 'torus': k in 0..a-1 picks omega1 = exp((2k+1) pi i / (2a+1)).
    family 'an':    j in 0..b-1 picks omega2 = exp((2j+1) pi i / (2b+1)).
    family 'na':    k in 0..a-1 picks omega1 as for the torus knot.
    family 'nn':    k as above plus h >= 0 picking
                    omega3 = exp((2h+1) pi i / (2b+1-4(2a+1))).
    """

    knot: KnotSpec
    u: object
    family: str
    sign: int = 1
    k: int = 0
    j: int = 0
    h: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown representation family {self.family!r}")
        if self.family == "fig8":
            if self.knot.kind != "figure_eight" or self.sign not in (1, -1):
                raise ValueError("fig8 family needs the figure-eight knot and sign +-1")
        elif self.family == "torus":
            if self.knot.kind != "torus":
                raise ValueError("torus family needs a torus knot")
            if not 0 <= self.k <= self.knot.a - 1:
                raise HypothesisError("torus branch index must satisfy 0 <= k <= a-1")
        else:
            if self.knot.kind != "iterated_torus":
                raise ValueError(f"{self.family} family needs an iterated torus knot")
            a, b = self.knot.a, self.knot.b
            if self.family == "an" and not 0 <= self.j <= b - 1:
                raise HypothesisError("an branch index must satisfy 0 <= j <= b-1")
            if self.family in ("na", "nn") and not 0 <= self.k <= a - 1:
                raise HypothesisError("na/nn branch index must satisfy 0 <= k <= a-1")
            if self.family == "nn" and not 0 <= self.h <= b + 4 * a - 2:
                raise HypothesisError("nn branch index must satisfy 0 <= h <= b+4a-2")

    def indices(self):
        if self.family == "fig8":
            return {"sign": self.sign}
        if self.family == "torus" or self.family == "na":
            return {"k": self.k}
        if self.family == "an":
            return {"j": self.j}
        return {"k": self.k, "h": self.h}


@dataclass
class Representation:
    params: RepParams
    presentation: Presentation
    images: dict  # generator name -> 2x2 mpmath matrix
    precision_bits: int

    def __call__(self, word: Word):
        return evaluate_word(self, word)

    def to_json(self):
        def mat_json(M):
            return [[[float(M[i, j].real), float(M[i, j].imag)]
                     for j in range(2)] for i in range(2)]
        u = to_mpc(self.params.u)
        return {
            "knot": self.params.knot.label(),
            "family": self.params.family,
            "u": [mp.nstr(u.real, 25), mp.nstr(u.imag, 25)],
            "indices": self.params.indices(),
            "precision_bits": self.precision_bits,
            "generators": {g: [[mp.nstr(M[i, j].real, 25), mp.nstr(M[i, j].imag, 25)]
                               for i in range(2) for j in range(2)]
                           for g, M in self.images.items()},
        }


def odd_root(numerator_odd: int, denominator: int, prec: int):
    """exp(numerator_odd * pi * i / denominator); its denominator-th power
    is -1 whenever numerator_odd is odd."""
    with working(prec):
        return mp.exp(mpc(0, mp.pi) * numerator_odd / denominator)


def fig8_radical(u, prec: int = DEFAULT_PRECISION):
    """Principal square root of (2 cosh u + 1)(2 cosh u - 3)."""
    with working(prec):
        c = mp.cosh(to_mpc(u))
        arg = (2 * c + 1) * (2 * c - 3)
        if abs(arg) < ulp_tol(prec):
            raise HypothesisError(
                "u is a branch point: (2cosh u + 1)(2cosh u - 3) = 0")
        return mp.sqrt(arg)


def fig8_longitude_eigenvalue(u, prec: int = DEFAULT_PRECISION):
    """cosh(2u) - cosh(u) - 1 + sinh(u) * sqrt((2cosh u+1)(2cosh u-3))."""
    with working(prec):
        u = to_mpc(u)
        return mp.cosh(2 * u) - mp.cosh(u) - 1 + mp.sinh(u) * fig8_radical(u, prec)


def build_representation(params: RepParams, prec: int = DEFAULT_PRECISION) -> Representation:
    """Generator images of the requested family at parameter u."""
    with working(prec):
        u = to_mpc(params.u)
        eu2 = mp.exp(u / 2)  # computed once; every entry reuses it
        pres = knot_presentation(params.knot)
        fam = params.family
        if fam == "fig8":
            d = mp.cosh(u) - mpf(3) / 2 + params.sign * fig8_radical(u, prec) / 2
            images = {
                "x": mp.matrix([[eu2, 1], [0, 1 / eu2]]),
                "y": mp.matrix([[eu2, 0], [-d, 1 / eu2]]),
            }
        elif fam == "torus":
            a = params.knot.a
            w1 = odd_root(2 * params.k + 1, 2 * a + 1, prec)
            images = {
                "x": mp.matrix([[eu2, 1], [0, 1 / eu2]]),
                "y": mp.matrix([[eu2, 0],
                                [w1 + 1 / w1 - 2 * mp.cosh(u), 1 / eu2]]),
            }
        elif fam == "an":
            b = params.knot.b
            w2 = odd_root(2 * params.j + 1, 2 * b + 1, prec)
            P = mp.matrix([[eu2, 1], [0, 1 / eu2]])
            Q = mp.matrix([[eu2, 0], [w2 + 1 / w2 - 2 * mp.cosh(u), 1 / eu2]])
            images = {"p": P, "q": Q, "x": P * Q, "y": P * Q}
        elif fam == "na":
            a = params.knot.a
            w1 = odd_root(2 * params.k + 1, 2 * a + 1, prec)
            ch = mp.cosh(u / 2)
            if abs(ch) < ulp_tol(prec):
                raise HypothesisError("na family needs cosh(u/2) != 0")
            eu = eu2 * eu2
            images = {
                "x": mp.matrix([[eu, 1], [0, 1 / eu]]),
                "y": mp.matrix([[eu, 0],
                                [w1 + 1 / w1 - 2 * mp.cosh(2 * u), 1 / eu]]),
                "p": mp.matrix([[eu2, 1 / (2 * ch)], [0, 1 / eu2]]),
            }
            images["q"] = images["p"]
        else:  # 'nn'
            a, b = params.knot.a, params.knot.b
            m = 2 * b + 1 - 4 * (2 * a + 1)
            w1 = odd_root(2 * params.k + 1, 2 * a + 1, prec)
            if (2 * params.h + 1) % (2 * m) == m % (2 * m):
                # omega3 = -1 kills only the numerator's (omega3^m + 1)/(omega3 + 1)
                # denominator, so the cable relation genuinely fails there
                raise HypothesisError(
                    "nn family is undefined at omega3 = -1 (h with (2h+1) == "
                    f"{m} mod {2 * m}); the cable relation does not close")
            w3 = odd_root(2 * params.h + 1, m, prec)
            P = mp.matrix([[eu2, 1], [0, 1 / eu2]])
            Q = mp.matrix([[eu2, 0], [w3 + 1 / w3 - 2 * mp.cosh(u), 1 / eu2]])
            ylow = (w3 - 1 / w3) / eu2 - eu2 * (w3 ** 2 + 1 - w1 - 1 / w1)
            Y = mp.matrix([[w3, 0], [ylow, 1 / w3]])
            images = {"p": P, "q": Q, "x": P * Q, "y": Y}
        return Representation(params, pres, images, prec)


def evaluate_word(rep: Representation, w: Word):
    """Image of a word: the ordered product of generator-image powers."""
    with working(rep.precision_bits):
        out = mp.eye(2)
        for name, exp in w.syllables:
            if name not in rep.images:
                raise KeyError(f"word uses unknown generator {name!r}")
            M = rep.images[name] if exp > 0 else inv2(rep.images[name])
            for _ in range(abs(exp)):
                out = out * M
        return out


def relation_residual(rep: Representation):
    """Largest deviation of any relator image from the identity, relative
    to the size of the matrices involved."""
    with working(rep.precision_bits):
        worst = mpf(0)
        for r in rep.presentation.relators:
            M = evaluate_word(rep, r)
            scale = max(mat_max(rep.images[g]) for g in rep.presentation.generators)
            res = frobenius_norm(M - mp.eye(2)) / max(scale, mpf(1))
            worst = max(worst, res)
        return worst


def longitude_closed_form(params: RepParams, prec: int = DEFAULT_PRECISION):
    """The printed 2x2 longitude image, implemented independently of word
    evaluation."""
    with working(prec):
        u = to_mpc(params.u)
        fam = params.family
        if fam == "fig8":
            ell = fig8_longitude_eigenvalue(u, prec)
            off = params.sign * 2 * mp.cosh(u / 2) * fig8_radical(u, prec)
            if params.sign > 0:
                return mp.matrix([[ell, off], [0, 1 / ell]])
            return mp.matrix([[1 / ell, off], [0, ell]])
        if fam == "torus":
            n = 2 * params.knot.a + 1
            return mp.matrix([
                [-mp.exp(-n * u), mp.sinh(n * u) / mp.sinh(u / 2)],
                [0, -mp.exp(n * u)]])
        if fam == "an":
            n = 2 * params.knot.b + 1
            return mp.matrix([
                [-mp.exp(-n * u), mp.sinh(n * u) / mp.sinh(u / 2)],
                [0, -mp.exp(n * u)]])
        if fam == "na":
            n = 4 * (2 * params.knot.a + 1)
            return mp.matrix([
                [mp.exp(-n * u), -mp.sinh(n * u) / mp.sinh(u)],
                [0, mp.exp(n * u)]])
        n = 2 * params.knot.b + 1
        return mp.matrix([
            [-mp.exp(-n * u), mp.sinh(n * u) / mp.sinh(u / 2)],
            [0, -mp.exp(n * u)]])


def companion_longitude_closed_form(params: RepParams, prec: int = DEFAULT_PRECISION):
    """Closed-form image of the companion-torus-knot longitude (cable
    families only).  For 'an' this is the identity, for 'na' the printed
    upper-triangular matrix; for 'nn' only the trace is closed-form simple,
    so the conjugated triangular form is returned."""
    with working(prec):
        u = to_mpc(params.u)
        a = params.knot.a
        if params.family == "an":
            return mp.eye(2)
        if params.family == "na":
            n = 2 * (2 * a + 1)
            return mp.matrix([
                [-mp.exp(-n * u), mp.sinh(n * u) / mp.sinh(u)],
                [0, -mp.exp(n * u)]])
        if params.family == "nn":
            m = 2 * params.knot.b + 1 - 4 * (2 * a + 1)
            w3 = odd_root(2 * params.h + 1, m, prec)
            eu2 = mp.exp(u / 2)
            s3 = mp.matrix([[eu2, 0], [eu2 / w3 - 1 / eu2, 1]])
            core = mp.matrix([
                [-w3 ** (-2 * (2 * a + 1)),
                 (w3 ** (2 * (2 * a + 1)) - w3 ** (-2 * (2 * a + 1))) / (w3 - 1 / w3)],
                [0, -w3 ** (2 * (2 * a + 1))]])
            # det(s3) = e^{u/2}, so the raw adjugate inverse needs rescaling
            return (inv2(s3) / (s3[0, 0] * s3[1, 1])) * core * s3
        raise ValueError("companion longitude only exists for cable families")


def adjoint3(M, prec: int = DEFAULT_PRECISION, tol=None):
    """Matrix of g -> M^-1 g M on sl2 in the ordered basis (E, H, F).

    Column j holds the coordinates of the image of the j-th basis element.
    With this layout the map reverses products: adjoint3(M*N) equals
    adjoint3(N) * adjoint3(M).
    """
    with working(prec):
        if tol is None:
            tol = ulp_tol(prec)
        d = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
        if abs(d - 1) > tol:
            raise ValueError("adjoint action needs a unit-determinant matrix")
        Minv = inv2(M)
        E = mp.matrix([[0, 1], [0, 0]])
        H = mp.matrix([[1, 0], [0, -1]])
        F = mp.matrix([[0, 0], [1, 0]])
        out = mp.zeros(3, 3)
        for j, g in enumerate((E, H, F)):
            img = Minv * g * M
            out[0, j] = img[0, 1]   # E coordinate
            out[1, j] = img[0, 0]   # H coordinate
            out[2, j] = img[1, 0]   # F coordinate
        return out
