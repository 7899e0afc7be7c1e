"""Independent classical plane-curve expander (one x, one y).

The textbook Newton-polygon iteration, written directly on dictionaries
mapping (x-exponent, y-degree) to coefficients, with its own convex hull
and its own rational root search.  It deliberately shares no code with the
package under test so the two paths can cross-check each other.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd, lcm

Curve = dict  # (Fraction x-exponent, int y-degree) -> Fraction coefficient


def curve(items) -> Curve:
    out: Curve = {}
    for a, i, c in items:
        key = (Fraction(a), int(i))
        out[key] = out.get(key, Fraction(0)) + Fraction(c)
    return {k: v for k, v in out.items() if v != 0}


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    k = 1
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            if k != n // k:
                out.append(n // k)
        k += 1
    return sorted(out)


def _roots_in_q(coeffs: list[Fraction]) -> tuple[set[Fraction], int]:
    """Rational roots of a univariate polynomial plus leftover degree."""
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    roots: set[Fraction] = set()
    low = 0
    while cs[low] == 0:
        low += 1
    if low:
        roots.add(Fraction(0))
        cs = cs[low:]
    if len(cs) == 1:
        return roots, 0
    den = 1
    for c in cs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in cs]
    g = 0
    for a in ints:
        g = gcd(g, a)
    ints = [a // g for a in ints]
    work = [Fraction(a) for a in ints]

    def ev(poly, r):
        acc = Fraction(0)
        for c in reversed(poly):
            acc = acc * r + c
        return acc

    def deflate(poly, r):
        out = [Fraction(0)] * (len(poly) - 1)
        carry = Fraction(0)
        for k in range(len(poly) - 1, 0, -1):
            carry = poly[k] + carry * r
            out[k - 1] = carry
        return out

    cands = sorted(
        {
            Fraction(s * p, q)
            for p in _divisors(ints[0])
            for q in _divisors(ints[-1])
            for s in (1, -1)
        }
    )
    for r in cands:
        while len(work) > 1 and ev(work, r) == 0:
            roots.add(r)
            work = deflate(work, r)
    return roots, len(work) - 1


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points) -> list[tuple]:
    """Lower convex hull of (y-degree, x-exponent) points, left to right."""
    best: dict = {}
    for i, a in points:
        if i not in best or a < best[i]:
            best[i] = a
    pts = sorted(best.items())
    hull: list[tuple] = []
    for p in pts:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return hull


def edge_data(f: Curve, floor: Fraction | None):
    """Pairs (mu, characteristic coefficients) for polygon edges above the floor.

    ``mu`` is the negated slope of a compact lower-hull edge spanning distinct
    y-degrees; the characteristic polynomial collects every support point on
    the edge line.  A floor of None keeps every edge.
    """
    hull = lower_hull([(i, a) for (a, i) in f])
    out = []
    for (i1, a1), (i2, a2) in zip(hull, hull[1:]):
        mu = (a1 - a2) / (i2 - i1)
        if floor is not None and mu <= floor:
            continue
        level = a1 + mu * i1
        char: dict = {}
        for (a, i), c in f.items():
            if a + mu * i == level:
                char[i] = char.get(i, Fraction(0)) + c
        deg = max(char)
        coeffs = [char.get(k, Fraction(0)) for k in range(deg + 1)]
        out.append((mu, coeffs))
    return sorted(out)


def shift_root(f: Curve, c: Fraction, mu: Fraction) -> Curve:
    """Substitute y -> c x^mu + y and expand."""
    out: Curve = {}
    for (a, i), q in f.items():
        for k in range(i + 1):
            key = (a + (i - k) * mu, k)
            out[key] = out.get(key, Fraction(0)) + q * comb(i, k) * c ** (i - k)
    return {k: v for k, v in out.items() if v != 0}


def expand_curve(f: Curve, max_terms: int):
    """All Puiseux branches with rational coefficients, up to max_terms terms.

    Returns (branches, irrational_seen) where each branch is a pair
    (terms, exact) and terms is a tuple of (exponent, coefficient).
    """
    branches = []
    irrational = [False]

    def walk(g: Curve, prefix: tuple, floor):
        y_free = any(i == 0 for (_, i) in g)
        if not y_free:
            branches.append((prefix, True))
        if len(prefix) >= max_terms:
            if y_free:
                branches.append((prefix, False))
            return
        for mu, coeffs in edge_data(g, floor):
            roots, leftover = _roots_in_q(coeffs)
            roots.discard(Fraction(0))
            if leftover > 0:
                irrational[0] = True
            for c in sorted(roots):
                walk(shift_root(g, c, mu), prefix + ((mu, c),), mu)

    walk(dict(f), (), Fraction(0))
    return sorted(branches), irrational[0]


def edge_mus(f: Curve, positive_only: bool = True) -> list[Fraction]:
    """The negated inverse slopes of the compact polygon edges."""
    floor = Fraction(0) if positive_only else None
    return sorted({mu for mu, _ in edge_data(f, floor)})
