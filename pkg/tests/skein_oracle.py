"""Independent Kauffman-bracket oracle for the Jones polynomial.

A diagram is a list of crossings; each crossing carries its four edge-end
identifiers counterclockwise so that the A-smoothing joins (0-1)(2-3) and
the B-smoothing joins (0-3)(1-2).  The bracket is the brute-force state
sum over all 2^n resolutions with loops counted by union-find, computed in
exact integer Laurent arithmetic in the variable A.  The Jones polynomial
comes from the writhe normalization and the substitution t = A^4, so
values are Laurent polynomials in t^(1/4); for knots they collapse onto
integer powers of t.
"""

from qka.jones import HalfLaurent


class LaurentA:
    """Integer Laurent polynomial in A (exponent -> coefficient)."""

    def __init__(self, coeffs=None):
        self.c = {e: v for e, v in (coeffs or {}).items() if v}

    @classmethod
    def mono(cls, e, v=1):
        return cls({e: v})

    def __add__(self, o):
        out = dict(self.c)
        for e, v in o.c.items():
            out[e] = out.get(e, 0) + v
        return LaurentA(out)

    def __mul__(self, o):
        out = {}
        for e1, v1 in self.c.items():
            for e2, v2 in o.c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + v1 * v2
        return LaurentA(out)

    def __pow__(self, n):
        out = LaurentA.mono(0)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, o):
        return self.c == o.c


LOOP = LaurentA({2: -1, -2: -1})  # one circle contributes -A^2 - A^-2


def _loops(pairings, n_edges):
    parent = list(range(n_edges))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairings:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(i) for i in range(n_edges)})


def bracket(crossings, n_edges):
    """State-sum Kauffman bracket of the diagram."""
    total = LaurentA()
    n = len(crossings)
    for state in range(2 ** n):
        pairings = []
        a_count = 0
        for i, (e0, e1, e2, e3) in enumerate(crossings):
            if (state >> i) & 1 == 0:
                pairings += [(e0, e1), (e2, e3)]  # A-smoothing
                a_count += 1
            else:
                pairings += [(e0, e3), (e1, e2)]  # B-smoothing
        loops = _loops(pairings, n_edges)
        # weight A^(#A - #B) times delta^(loops - 1) after closing
        term = LaurentA.mono(a_count - (n - a_count)) * LOOP ** (loops - 1)
        total = total + term
    return total


def two_braid_closure(n_crossings):
    """Diagram of the closure of the 2-braid with n positive crossings.

    Edge i runs from crossing i-1 to crossing i on the left strand, edge
    n+i on the right strand; the closure identifies top with bottom.  The
    edge order (bottom-left, top-left, top-right, bottom-right) makes the
    A-smoothing the identity tangle, which is the crossing sign convention
    under which these diagrams are the positive torus braids.
    """
    n = n_crossings
    crossings = []
    for i in range(n):
        bl = i
        tl = (i + 1) % n
        tr = n + (i + 1) % n
        br = n + i
        crossings.append((bl, tl, tr, br))
    return crossings, 2 * n


def jones_via_bracket(n_crossings):
    """J_2 of the (2, n)-torus link closure, as a HalfLaurent in t.

    Writhe +n (all crossings positive with this smoothing convention);
    the normalization is (-A^3)^(-w) <D> / (-A^2 - A^-2) at t = A^4.
    """
    crossings, n_edges = two_braid_closure(n_crossings)
    br = bracket(crossings, n_edges)
    # the state sum above is already normalized to 1 on the unknot (it
    # weights delta^(loops-1)), which absorbs the /(-A^2-A^-2) division
    sign = -1 if n_crossings % 2 else 1
    shifted = LaurentA({e - 3 * n_crossings: sign * v for e, v in br.c.items()})
    # exponents are in A-units; t = A^4 means half-exponent = e/2
    out = {}
    for e, v in shifted.c.items():
        if e % 2:
            raise ValueError("quarter-power of t survived; not a knot value")
        out[e // 2] = v
    return HalfLaurent(out)
