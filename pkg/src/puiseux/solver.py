"""Exact solving of the initial coefficient systems on the torus.

The systems are small polynomial systems over Q in the active y variables.
They are triangularized with a reduced lex Groebner basis, the univariate
eliminant at each level is solved by the rational root theorem, and roots
are back-substituted.  Only rational points are produced; levels whose
eliminant keeps a factor without rational roots set a flag, as do levels
with no univariate eliminant at all (positive-dimensional solution sets).

Variables are ordered by ascending index, the lowest index being the most
significant for the lex order.  Internally polynomials are dicts mapping
degree tuples to coefficients; the public boundary speaks LPoly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .lpoly import LPoly


class BudgetExceeded(RuntimeError):
    """The Groebner pair-processing cap was hit."""


@dataclass(frozen=True)
class TorusSolutionSet:
    variables: tuple[int, ...]
    solutions: tuple[tuple[Fraction, ...], ...]
    nonzero_dimensional: bool
    irrational_roots_detected: bool


def _to_dict(f: LPoly, variables: Sequence[int]) -> dict:
    pos = {v: j for j, v in enumerate(variables)}
    out: dict = {}
    for t in f.terms:
        if any(e != 0 for e in t.xexp):
            raise ValueError("solver expects x-free polynomials")
        for i, b in enumerate(t.ydeg):
            if b and i not in pos:
                raise ValueError("polynomial involves a variable outside the solve set")
        key = tuple(t.ydeg[v] for v in variables)
        out[key] = out.get(key, Fraction(0)) + t.coeff
    return {k: c for k, c in out.items() if c != 0}


def _from_dict(p: dict, variables: Sequence[int], nx: int, ny: int) -> LPoly:
    items = []
    for key, c in p.items():
        yd = [0] * ny
        for v, b in zip(variables, key):
            yd[v] = b
        items.append((c, (Fraction(0),) * nx, tuple(yd)))
    return LPoly.from_terms(nx, ny, items)


def _lm(p: dict) -> tuple:
    return max(p)


def _monic(p: dict) -> dict:
    lc = p[_lm(p)]
    if lc == 1:
        return p
    return {k: c / lc for k, c in p.items()}


def _divides(m1: tuple, m2: tuple) -> bool:
    return all(a <= b for a, b in zip(m1, m2))


def _mul_term(p: dict, coeff: Fraction, mono: tuple) -> dict:
    return {tuple(a + b for a, b in zip(k, mono)): c * coeff for k, c in p.items()}


def _sub(p: dict, q: dict) -> dict:
    out = dict(p)
    for k, c in q.items():
        nc = out.get(k, Fraction(0)) - c
        if nc:
            out[k] = nc
        else:
            out.pop(k, None)
    return out


def _reduce(p: dict, basis: Sequence[dict]) -> dict:
    """Full remainder of p on division by the basis, first-found reducer."""
    rem: dict = {}
    work = dict(p)
    while work:
        m = _lm(work)
        c = work[m]
        for g in basis:
            gm = _lm(g)
            if _divides(gm, m):
                quot = tuple(a - b for a, b in zip(m, gm))
                work = _sub(work, _mul_term(g, c / g[gm], quot))
                break
        else:
            rem[m] = c
            del work[m]
    return rem


def _spoly(f: dict, g: dict) -> dict:
    fm, gm = _lm(f), _lm(g)
    l = tuple(max(a, b) for a, b in zip(fm, gm))
    left = _mul_term(f, Fraction(1) / f[fm], tuple(a - b for a, b in zip(l, fm)))
    right = _mul_term(g, Fraction(1) / g[gm], tuple(a - b for a, b in zip(l, gm)))
    return _sub(left, right)


def _buchberger(polys: Sequence[dict], budget: list) -> list[dict]:
    """Reduced lex Groebner basis of the given dict polynomials."""
    G = [_monic(dict(p)) for p in polys if p]
    pending = {(i, j) for i in range(len(G)) for j in range(i + 1, len(G))}
    while pending:
        key = min(
            pending,
            key=lambda ij: (
                tuple(max(a, b) for a, b in zip(_lm(G[ij[0]]), _lm(G[ij[1]]))),
                ij,
            ),
        )
        pending.discard(key)
        i, j = key
        fm, gm = _lm(G[i]), _lm(G[j])
        l = tuple(max(a, b) for a, b in zip(fm, gm))
        if l == tuple(a + b for a, b in zip(fm, gm)):
            continue  # coprime leading monomials never yield new elements
        budget[0] -= 1
        if budget[0] < 0:
            raise BudgetExceeded("Groebner pair budget exceeded")
        r = _reduce(_spoly(G[i], G[j]), G)
        if r:
            G.append(_monic(r))
            pending.update((k, len(G) - 1) for k in range(len(G) - 1))
    # interreduce to the canonical reduced basis
    changed = True
    while changed:
        changed = False
        for i in range(len(G)):
            others = G[:i] + G[i + 1 :]
            r = _reduce(G[i], [g for g in others if g]) if others else G[i]
            r = _monic(r) if r else r
            if r != G[i]:
                G[i] = r
                changed = True
        G = [g for g in G if g]
    G.sort(key=_lm)
    return G


def reduced_groebner(
    system: Sequence[LPoly], variables: Sequence[int], max_pairs: int = 20000
) -> list[LPoly]:
    """Reduced lex Groebner basis of an x-free system in the given variables."""
    variables = tuple(sorted(set(variables)))
    if not system:
        return []
    nx, ny = system[0].nx, system[0].ny
    dicts = [_to_dict(f, variables) for f in system]
    G = _buchberger([p for p in dicts if p], [max_pairs])
    return [_from_dict(g, variables, nx, ny) for g in G]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i != n // i:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def rational_roots(coeffs: Sequence[Fraction]) -> tuple[tuple[Fraction, ...], int]:
    """Rational roots of a nonzero univariate polynomial (ascending coeffs).

    Returns the sorted roots and the degree left after all rational root
    factors are divided out; a positive leftover means roots outside Q.
    """
    cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ValueError("the zero polynomial has every root")
    roots = set()
    low = 0
    while cs[low] == 0:
        low += 1
    if low:
        roots.add(Fraction(0))
        cs = cs[low:]
    if len(cs) == 1:
        return tuple(sorted(roots)), 0
    den = lcm(*[c.denominator for c in cs])
    ints = [int(c * den) for c in cs]
    g = gcd(*ints)
    ints = [a // g for a in ints]
    a0, an = ints[0], ints[-1]
    candidates = sorted(
        {Fraction(s * p, q) for p in _divisors(a0) for q in _divisors(an) for s in (1, -1)}
    )
    work = [Fraction(a) for a in ints]

    def _eval(poly, r):
        acc = Fraction(0)
        for c in reversed(poly):
            acc = acc * r + c
        return acc

    def _deflate(poly, r):
        out = [Fraction(0)] * (len(poly) - 1)
        carry = Fraction(0)
        for k in range(len(poly) - 1, 0, -1):
            carry = poly[k] + carry * r
            out[k - 1] = carry
        return out

    for r in candidates:
        while len(work) > 1 and _eval(work, r) == 0:
            roots.add(r)
            work = _deflate(work, r)
    return tuple(sorted(roots)), len(work) - 1


def _substitute_last(p: dict, r: Fraction) -> dict:
    out: dict = {}
    for key, c in p.items():
        nc = c * r ** key[-1]
        nk = key[:-1]
        out[nk] = out.get(nk, Fraction(0)) + nc
    return {k: c for k, c in out.items() if c != 0}


def torus_solutions(
    system: Sequence[LPoly], variables: Sequence[int], max_pairs: int = 20000
) -> TorusSolutionSet:
    """All rational solutions of the system with every coordinate nonzero.

    An empty system over zero variables has exactly the empty solution; an
    empty system over a nonempty variable set is flagged positive
    dimensional, as is any triangular level without a univariate eliminant.
    """
    variables = tuple(sorted(set(variables)))
    k = len(variables)
    budget = [max_pairs]
    flags = {"dim": False, "irr": False}
    dicts = [d for d in (_to_dict(f, variables) for f in system) if d]

    def walk(polys: list[dict], m: int) -> list[tuple]:
        if m == 0:
            return [] if polys else [()]
        if not polys:
            flags["dim"] = True
            return []
        G = _buchberger(polys, budget)
        if not G:
            flags["dim"] = True
            return []
        if any(_lm(g) == (0,) * m for g in G):
            return []  # the ideal is the whole ring
        uni = next(
            (g for g in G if all(all(e == 0 for e in key[:-1]) for key in g)), None
        )
        if uni is None:
            flags["dim"] = True
            return []
        deg = max(key[-1] for key in uni)
        coeffs = [Fraction(0)] * (deg + 1)
        for key, c in uni.items():
            coeffs[key[-1]] = c
        roots, leftover = rational_roots(coeffs)
        if leftover > 0:
            flags["irr"] = True
        out = []
        for r in roots:
            sub = [q for q in (_substitute_last(g, r) for g in G) if q]
            for partial in walk(sub, m - 1):
                out.append(partial + (r,))
        return out

    raw = walk(dicts, k)
    torus = sorted(c for c in raw if all(v != 0 for v in c))

    def _value(p: dict, c: tuple) -> Fraction:
        total = Fraction(0)
        for key, coeff in p.items():
            v = coeff
            for b, x in zip(key, c):
                v *= x**b
            total += v
        return total

    for c in torus:
        for p in dicts:
            if _value(p, c) != 0:
                raise AssertionError("solver produced a non-root; this is a bug")

    return TorusSolutionSet(
        variables=variables,
        solutions=tuple(torus),
        nonzero_dimensional=flags["dim"],
        irrational_roots_detected=flags["irr"],
    )
