"""Sparse Laurent-Puiseux polynomials with weighted orders and initial forms.

Terms are ``c * x^a * y^b`` with rational x-exponents (negative and
fractional allowed) and nonnegative integer y-degrees.  Polynomials are kept
in a canonical form, sorted by the plain tuple ``(xexp, ydeg)``, so equality
and hashing are structural and independent of any weight.

The weighted value of a term is ``value(xexp) + sum(eta[i] * ydeg[i])``.  A
coordinate with infinite weight sends every term containing it to INF, while
zero degrees contribute nothing regardless of the weight; the skip is
explicit in ``term_value``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .values import INF, Val, WeightMatrix, _rats


class Term(NamedTuple):
    coeff: Fraction
    xexp: tuple[Fraction, ...]
    ydeg: tuple[int, ...]


class LPoly:
    """A finite sum of terms in canonical sorted form.

    Use ``from_terms`` (or the arithmetic operators) to build instances; the
    constructor trusts its input to already be canonical.
    """

    __slots__ = ("nx", "ny", "terms")

    def __init__(self, nx: int, ny: int, terms: tuple[Term, ...] = ()):
        self.nx = nx
        self.ny = ny
        self.terms = terms

    @classmethod
    def from_terms(cls, nx: int, ny: int, items: Iterable) -> "LPoly":
        """Canonicalize ``(coeff, xexp, ydeg)`` triples: merge, drop zeros, sort."""
        acc: dict = {}
        for coeff, xexp, ydeg in items:
            c = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
            xe = _rats(xexp)
            yd = tuple(int(b) for b in ydeg)
            if len(xe) != nx or len(yd) != ny:
                raise ValueError("term arity does not match the polynomial ring")
            if any(b < 0 for b in yd):
                raise ValueError("y-degrees must be nonnegative")
            key = (xe, yd)
            acc[key] = acc.get(key, Fraction(0)) + c
        return cls._from_dict(nx, ny, acc)

    @classmethod
    def _from_dict(cls, nx: int, ny: int, acc: dict) -> "LPoly":
        terms = tuple(Term(c, k[0], k[1]) for k, c in sorted(acc.items()) if c != 0)
        return cls(nx, ny, terms)

    @classmethod
    def zero(cls, nx: int, ny: int) -> "LPoly":
        return cls(nx, ny, ())

    @classmethod
    def const(cls, nx: int, ny: int, c) -> "LPoly":
        return cls.from_terms(nx, ny, [(c, (0,) * nx, (0,) * ny)])

    @classmethod
    def monomial(cls, nx: int, ny: int, coeff, xexp=None, ydeg=None) -> "LPoly":
        xe = (0,) * nx if xexp is None else xexp
        yd = (0,) * ny if ydeg is None else ydeg
        return cls.from_terms(nx, ny, [(coeff, xe, yd)])

    @classmethod
    def x_var(cls, nx: int, ny: int, i: int, power=1) -> "LPoly":
        xe = tuple(Fraction(power) if j == i else Fraction(0) for j in range(nx))
        return cls.from_terms(nx, ny, [(1, xe, (0,) * ny)])

    @classmethod
    def y_var(cls, nx: int, ny: int, i: int, power: int = 1) -> "LPoly":
        yd = tuple(int(power) if j == i else 0 for j in range(ny))
        return cls.from_terms(nx, ny, [(1, (Fraction(0),) * nx, yd)])

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _check_compat(self, other: "LPoly"):
        if self.nx != other.nx or self.ny != other.ny:
            raise ValueError("polynomials live in different rings")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, LPoly):
            return NotImplemented
        return (self.nx, self.ny, self.terms) == (other.nx, other.ny, other.terms)

    def __hash__(self):
        return hash((self.nx, self.ny, self.terms))

    def __neg__(self):
        return LPoly(self.nx, self.ny, tuple(Term(-t.coeff, t.xexp, t.ydeg) for t in self.terms))

    def __add__(self, other):
        if not isinstance(other, LPoly):
            return NotImplemented
        self._check_compat(other)
        acc: dict = {}
        for t in self.terms:
            acc[(t.xexp, t.ydeg)] = t.coeff
        for t in other.terms:
            key = (t.xexp, t.ydeg)
            acc[key] = acc.get(key, Fraction(0)) + t.coeff
        return LPoly._from_dict(self.nx, self.ny, acc)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LPoly):
            return NotImplemented
        self._check_compat(other)
        acc: dict = {}
        for s in self.terms:
            for t in other.terms:
                key = (
                    tuple(a + b for a, b in zip(s.xexp, t.xexp)),
                    tuple(a + b for a, b in zip(s.ydeg, t.ydeg)),
                )
                acc[key] = acc.get(key, Fraction(0)) + s.coeff * t.coeff
        return LPoly._from_dict(self.nx, self.ny, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial powers are not supported")
        out = LPoly.const(self.nx, self.ny, 1)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "LPoly":
        c = c if isinstance(c, Fraction) else Fraction(c)
        if c == 0:
            return LPoly.zero(self.nx, self.ny)
        return LPoly(self.nx, self.ny, tuple(Term(t.coeff * c, t.xexp, t.ydeg) for t in self.terms))

    def is_x_only(self) -> bool:
        return all(all(b == 0 for b in t.ydeg) for t in self.terms)

    def y_free_part(self) -> "LPoly":
        """The sum of terms containing no y variable."""
        return LPoly(self.nx, self.ny, tuple(t for t in self.terms if all(b == 0 for b in t.ydeg)))

    def __repr__(self):
        if not self.terms:
            return "LPoly(0)"
        parts = []
        for t in self.terms:
            bits = [str(t.coeff)]
            bits += ["x%d^%s" % (i, e) for i, e in enumerate(t.xexp) if e != 0]
            bits += ["y%d^%s" % (i, b) for i, b in enumerate(t.ydeg) if b != 0]
            parts.append("*".join(bits))
        return "LPoly(%s)" % " + ".join(parts)


Eta = tuple  # an ny-tuple of Val entries, finite or INF


def active_set(eta: Sequence[Val]) -> tuple[int, ...]:
    """Indices whose weight is finite; the rest are retired coordinates."""
    return tuple(i for i, e in enumerate(eta) if not e.is_inf)


def term_value(W: WeightMatrix, eta: Sequence[Val], term: Term) -> Val:
    """Weighted value of one term; INF if it touches a retired coordinate.

    Zero degrees are skipped outright, so an infinite weight paired with a
    zero degree contributes nothing.
    """
    v = W.value_of(term.xexp)
    for i, b in enumerate(term.ydeg):
        if b == 0:
            continue
        e = eta[i]
        if e.is_inf:
            return INF
        v = v + e.scale(b)
    return v


def weighted_order(f: LPoly, W: WeightMatrix, eta: Sequence[Val]) -> Val:
    """Minimum weighted value over the support; INF for the zero polynomial."""
    best = INF
    for t in f.terms:
        v = term_value(W, eta, t)
        if v < best:
            best = v
    return best


def initial_form(f: LPoly, W: WeightMatrix, eta: Sequence[Val]) -> LPoly:
    """The sum of minimum-value terms; zero when the order is infinite."""
    best = weighted_order(f, W, eta)
    if best.is_inf:
        return LPoly.zero(f.nx, f.ny)
    keep = tuple(t for t in f.terms if term_value(W, eta, t) == best)
    return LPoly(f.nx, f.ny, keep)


def ramify(f: LPoly, k: int) -> LPoly:
    """Substitute every x variable by its k-th power: x-exponents scale by k."""
    if k < 1:
        raise ValueError("ramification index must be a positive integer")
    return LPoly(
        f.nx,
        f.ny,
        tuple(Term(t.coeff, tuple(e * k for e in t.xexp), t.ydeg) for t in f.terms),
    )


def _check_x_monomial(nx: int, ny: int, m: LPoly, what: str):
    if m.nx != nx or m.ny != ny:
        raise ValueError("%s lives in a different ring" % what)
    if len(m.terms) > 1 or (m.terms and any(b != 0 for b in m.terms[0].ydeg)):
        raise ValueError("%s must be zero or a single x-monomial" % what)


def shift_y(f: LPoly, shifts: Sequence[LPoly]) -> LPoly:
    """Substitute ``y_i -> y_i + shifts[i]`` and expand exactly.

    Each shift must be zero or a single monomial in the x variables.
    """
    if len(shifts) != f.ny:
        raise ValueError("need one shift per y coordinate")
    for m in shifts:
        _check_x_monomial(f.nx, f.ny, m, "shift")
    powers: dict = {}

    def ypow(i: int, b: int) -> LPoly:
        key = (i, b)
        if key not in powers:
            powers[key] = (LPoly.y_var(f.nx, f.ny, i) + shifts[i]) ** b
        return powers[key]

    out = LPoly.zero(f.nx, f.ny)
    for t in f.terms:
        p = LPoly.monomial(f.nx, f.ny, t.coeff, t.xexp)
        for i, b in enumerate(t.ydeg):
            if b:
                p = p * ypow(i, b)
        out = out + p
    return out


def set_y_zero(f: LPoly, indices) -> LPoly:
    """Substitute ``y_i = 0`` for every i in ``indices``."""
    idx = set(indices)
    keep = tuple(t for t in f.terms if all(t.ydeg[i] == 0 for i in idx))
    return LPoly(f.nx, f.ny, keep)


def at_x_one(f: LPoly) -> LPoly:
    """Set every x variable to 1, collecting like y-monomials."""
    acc: dict = {}
    zero_x = (Fraction(0),) * f.nx
    for t in f.terms:
        key = (zero_x, t.ydeg)
        acc[key] = acc.get(key, Fraction(0)) + t.coeff
    return LPoly._from_dict(f.nx, f.ny, acc)


def substitute_y(f: LPoly, series: Sequence[LPoly]) -> LPoly:
    """Substitute ``y_i -> series[i]`` for x-only polynomials ``series``.

    Returns the exact residual polynomial in the x variables.
    """
    if len(series) != f.ny:
        raise ValueError("need one substitute per y coordinate")
    for s in series:
        if s.nx != f.nx or s.ny != f.ny:
            raise ValueError("substitute lives in a different ring")
        if not s.is_x_only():
            raise ValueError("substituted series must not contain y variables")
    powers: dict = {}

    def spow(i: int, b: int) -> LPoly:
        key = (i, b)
        if key not in powers:
            powers[key] = series[i] ** b
        return powers[key]

    out = LPoly.zero(f.nx, f.ny)
    for t in f.terms:
        p = LPoly.monomial(f.nx, f.ny, t.coeff, t.xexp)
        for i, b in enumerate(t.ydeg):
            if b:
                p = p * spow(i, b)
        out = out + p
    return out
