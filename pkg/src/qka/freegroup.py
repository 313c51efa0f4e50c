"""Free-group words, the integral group ring, Fox derivatives, and the
knot-group presentations used throughout.

Words are stored in freely reduced syllable form ``(generator, exponent)``
so powers like ``(xy)^a`` stay compact, and the Fox derivative of a power
uses the geometric-series identity rather than expanding letter by letter.
Group-ring elements keep exact integer coefficients; nothing numeric enters
until a representation is applied.
"""

from dataclasses import dataclass, field

from .numerics import HypothesisError


class WordSyntaxError(ValueError):
    """Malformed word text; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _reduce(syllables):
    out = []
    for name, exp in syllables:
        if exp == 0:
            continue
        if out and out[-1][0] == name:
            merged = out[-1][1] + exp
            out.pop()
            if merged != 0:
                out.append((name, merged))
        else:
            out.append((name, exp))
    return tuple(out)


class Word:
    """Freely reduced word on named generators."""

    __slots__ = ("syllables",)

    def __init__(self, syllables=()):
        self.syllables = _reduce(tuple(syllables))

    @classmethod
    def identity(cls):
        return cls(())

    @classmethod
    def gen(cls, name, exp=1):
        return cls(((name, exp),))

    def __mul__(self, other):
        return Word(self.syllables + other.syllables)

    def inverse(self):
        return Word(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __pow__(self, n):
        if n == 0:
            return Word.identity()
        base = self if n > 0 else self.inverse()
        out = Word.identity()
        for _ in range(abs(n)):
            out = out * base
        return out

    def is_identity(self):
        return not self.syllables

    def generators(self):
        return {g for g, _ in self.syllables}

    def exponent_sum(self, name):
        return sum(e for g, e in self.syllables if g == name)

    def degree(self, weights=None):
        """Total exponent sum, optionally weighted per generator
        (the image under the abelianization sending generator g to
        t^weights[g])."""
        if weights is None:
            return sum(e for _, e in self.syllables)
        return sum(weights[g] * e for g, e in self.syllables)

    def __eq__(self, other):
        return isinstance(other, Word) and self.syllables == other.syllables

    def __hash__(self):
        return hash(self.syllables)

    def __str__(self):
        if not self.syllables:
            return "1"
        parts = []
        for g, e in self.syllables:
            parts.append(g if e == 1 else f"{g}^{e}")
        return "".join(parts)

    def __repr__(self):
        return f"Word({self})"


class GroupRingElement:
    """Finite integer combination of words (element of Z[F])."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for w, c in (terms or {}).items():
            if c:
                clean[w] = clean.get(w, 0) + c
        self.terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def from_word(cls, w, coeff=1):
        return cls({w: coeff})

    @classmethod
    def one(cls):
        return cls({Word.identity(): 1})

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElement(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement({w: c * other for w, c in self.terms.items()})
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 * w2
                out[w] = out.get(w, 0) + c1 * c2
        return GroupRingElement(out)

    def word_mul(self, w):
        """Left-multiply every term by the word ``w``."""
        return GroupRingElement({w * t: c for t, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{w}" for w, c in sorted(
            self.terms.items(), key=lambda t: str(t[0])))


def fox_derivative(w: Word, gen: str) -> GroupRingElement:
    """Fox free derivative d(w)/d(gen).

    Satisfies d(uv) = d(u) + u*d(v), d(1) = 0, d(x_i)/d(x_j) = delta_ij,
    hence d(x^-1)/d(x) = -x^-1.  A power x^n contributes the geometric sum
    sum_{i=0}^{n-1} x^i (or its negative-exponent mirror) in one step.
    """
    result = GroupRingElement.zero()
    prefix = Word.identity()
    for name, exp in w.syllables:
        if name == gen:
            if exp > 0:
                part = GroupRingElement(
                    {Word.gen(name, i): 1 for i in range(1, exp)})
                part = part + GroupRingElement.one()
            else:
                part = GroupRingElement(
                    {Word.gen(name, -i): -1 for i in range(1, -exp + 1)})
            result = result + part.word_mul(prefix)
        prefix = prefix * Word.gen(name, exp)
    return result


def fundamental_formula_residual(pres, relator: Word) -> GroupRingElement:
    """sum_j d(r)/d(x_j) * (x_j - 1) - (r - 1), identically zero in Z[F]."""
    total = GroupRingElement.zero()
    for g in pres.generators:
        dg = fox_derivative(relator, g)
        total = total + dg * GroupRingElement(
            {Word.gen(g): 1, Word.identity(): -1})
    expected = GroupRingElement({relator: 1, Word.identity(): -1})
    return total - expected


# ---------------------------------------------------------------------------
# word parser
# ---------------------------------------------------------------------------

def parse_word(text: str, generators) -> Word:
    """Parse word text: atoms are generator names, ``(...)`` groups and
    ``1``; postfix ``^<int>`` binds tighter than juxtaposition."""
    names = sorted(generators, key=len, reverse=True)
    pos = 0
    n = len(text)

    def skip_ws(p):
        while p < n and text[p].isspace():
            p += 1
        return p

    def parse_int(p):
        start = p
        if p < n and text[p] in "+-":
            p += 1
        while p < n and text[p].isdigit():
            p += 1
        if p == start or not text[start:p].lstrip("+-"):
            raise WordSyntaxError("expected integer exponent", start)
        return int(text[start:p]), p

    def parse_seq(p, closing):
        word = Word.identity()
        p = skip_ws(p)
        while p < n and text[p] != closing:
            if text[p] == "(":
                atom, p = parse_seq(p + 1, ")")
                if p >= n or text[p] != ")":
                    raise WordSyntaxError("unbalanced parenthesis", p)
                p += 1
            elif text[p] == "1":
                atom = Word.identity()
                p += 1
            else:
                for name in names:
                    if text.startswith(name, p):
                        atom = Word.gen(name)
                        p += len(name)
                        break
                else:
                    raise WordSyntaxError(
                        f"unknown generator name {text[p]!r}", p)
            p = skip_ws(p)
            if p < n and text[p] == "^":
                exp, p = parse_int(p + 1)
                atom = atom ** exp
                p = skip_ws(p)
            word = word * atom
        return word, p

    word, pos = parse_seq(0, None)
    if pos != n:
        raise WordSyntaxError("unexpected trailing input", pos)
    return word


# ---------------------------------------------------------------------------
# knot presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KnotSpec:
    """FigureEight | Torus(a) | IteratedTorus(a, b)."""

    kind: str  # 'figure_eight' | 'torus' | 'iterated_torus'
    a: int = 0
    b: int = 0

    def __post_init__(self):
        if self.kind == "torus":
            if self.a < 1:
                raise HypothesisError("torus knot requires a >= 1")
        elif self.kind == "iterated_torus":
            if self.a < 1 or self.b < 1:
                raise HypothesisError("iterated torus knot requires a >= 1 and b >= 1")
            if 2 * self.b + 1 - 4 * (2 * self.a + 1) <= 0:
                raise HypothesisError(
                    "iterated torus knot requires 2b+1-4(2a+1) > 0 "
                    f"(got a={self.a}, b={self.b})")
        elif self.kind != "figure_eight":
            raise ValueError(f"unknown knot kind {self.kind!r}")

    def label(self):
        if self.kind == "figure_eight":
            return "figure-eight"
        if self.kind == "torus":
            return f"T(2,{2 * self.a + 1})"
        return f"T(2,{2 * self.a + 1})^(2,{2 * self.b + 1})"


def figure_eight():
    return KnotSpec("figure_eight")


def torus(a):
    return KnotSpec("torus", a=a)


def iterated_torus(a, b):
    return KnotSpec("iterated_torus", a=a, b=b)


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relators: tuple
    meridian: Word
    longitude: Word
    # exponents of the abelianization onto Z (meridian-conjugate generators
    # map to t, companion-knot generators of the cable map to t^2)
    weights: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.relators) != len(self.generators) - 1:
            raise ValueError("presentation must have deficiency one")
        if self.longitude.degree(self.weights) != 0:
            raise ValueError("longitude must be null-homologous")

    def to_json(self):
        return {
            "generators": list(self.generators),
            "relators": [str(r) for r in self.relators],
            "meridian": str(self.meridian),
            "longitude": str(self.longitude),
            "abelianization_weights": dict(self.weights),
        }


def torus_companion_longitude(a: int) -> Word:
    """The preferred longitude y(xy)^{2a} x^{-4a-1} of T(2,2a+1)."""
    x, y = Word.gen("x"), Word.gen("y")
    return y * (x * y) ** (2 * a) * Word.gen("x", -4 * a - 1)


def knot_presentation(spec: KnotSpec) -> Presentation:
    """Wirtinger-style presentation with meridian and preferred longitude."""
    x, y = Word.gen("x"), Word.gen("y")
    if spec.kind == "figure_eight":
        r = parse_word("xy^-1x^-1yxy^-1xyx^-1y^-1", ("x", "y"))
        longitude = parse_word("xy^-1xyx^-2yxy^-1x^-1", ("x", "y"))
        return Presentation(("x", "y"), (r,), x, longitude,
                            {"x": 1, "y": 1})
    if spec.kind == "torus":
        a = spec.a
        r = (x * y) ** a * x * (x * y) ** (-a) * y.inverse()
        return Presentation(("x", "y"), (r,), x,
                            torus_companion_longitude(a), {"x": 1, "y": 1})
    a, b = spec.a, spec.b
    p, q = Word.gen("p"), Word.gen("q")
    lam_c = torus_companion_longitude(a)
    r1 = (x * y) ** a * x * (x * y) ** (-a) * y.inverse()
    r2 = p * q * x.inverse()
    r3 = lam_c * x ** b * p * lam_c.inverse() * x ** (-b) * q.inverse()
    longitude = (lam_c * x ** b * p * q ** (-b)
                 * lam_c * x ** b * Word.gen("p", -3 * b - 1))
    return Presentation(("x", "y", "p", "q"), (r1, r2, r3), p, longitude,
                        {"x": 2, "y": 2, "p": 1, "q": 1})
