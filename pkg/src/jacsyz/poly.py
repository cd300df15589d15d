"""Homogeneous polynomials in x, y, z over Q, lines, and univariate helpers.

Monomials are exponent triples (i, j, k) standing for x^i y^j z^k.  Inside a
fixed degree they are ordered graded-lexicographically with x > y > z, which
for a single degree is plain lexicographic order, descending.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb, lcm
from typing import Iterable, Mapping, Sequence

from .errors import NotDivisible, NotHomogeneous, ZeroRestriction

Exponent = tuple[int, int, int]
Point = tuple[Fraction, Fraction, Fraction]


@lru_cache(maxsize=None)
def monomial_basis(k: int) -> tuple[Exponent, ...]:
    """All exponent triples of total degree k, x > y > z lexicographic."""
    if k < 0:
        return ()
    return tuple(
        (i, j, k - i - j) for i in range(k, -1, -1) for j in range(k - i, -1, -1)
    )


@lru_cache(maxsize=None)
def monomial_index(k: int) -> dict[Exponent, int]:
    return {m: n for n, m in enumerate(monomial_basis(k))}


def dim_s(k: int) -> int:
    """dim S_k = C(k+2, 2), zero for negative k."""
    return comb(k + 2, 2) if k >= 0 else 0


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(e: Exponent) -> str:
    parts = []
    for name, p in zip("xyz", e):
        if p == 1:
            parts.append(name)
        elif p > 1:
            parts.append(f"{name}^{p}")
    return "*".join(parts)


def format_term(c: Fraction, e: Exponent) -> str:
    mono = format_monomial(e)
    if not mono:
        return _fmt_coeff(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{_fmt_coeff(c)}*{mono}"


@dataclass(frozen=True)
class HomogeneousPoly:
    """A homogeneous polynomial; terms are sorted and carry no zeros."""

    degree: int
    terms: tuple[tuple[Exponent, Fraction], ...]

    def __post_init__(self):
        for e, c in self.terms:
            if sum(e) != self.degree:
                raise NotHomogeneous(format_term(c, e), self.degree)
            if c == 0:
                raise ValueError("zero coefficient stored")

    @classmethod
    def from_dict(cls, coeffs: Mapping[Exponent, object], degree: int | None = None) -> HomogeneousPoly:
        items = [(tuple(e), Fraction(c)) for e, c in coeffs.items() if c != 0]
        if degree is None:
            if not items:
                raise ValueError("degree of the zero polynomial must be given")
            degree = sum(items[0][0])
        items.sort(key=lambda t: t[0], reverse=True)
        return cls(degree, tuple(items))

    @classmethod
    def zero(cls, degree: int) -> HomogeneousPoly:
        return cls(degree, ())

    @classmethod
    def monomial(cls, e: Exponent, c=1) -> HomogeneousPoly:
        return cls.from_dict({e: c}, sum(e))

    @classmethod
    def variable(cls, name: str) -> HomogeneousPoly:
        return cls.monomial({"x": (1, 0, 0), "y": (0, 1, 0), "z": (0, 0, 1)}[name])

    @cached_property
    def coeffs(self) -> dict[Exponent, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def leading(self) -> tuple[Exponent, Fraction]:
        return self.terms[0]

    def __add__(self, other: HomogeneousPoly) -> HomogeneousPoly:
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if other.degree != self.degree:
            raise NotHomogeneous(format_term(*other.terms[0][::-1]), self.degree)
        out = dict(self.terms)
        for e, c in other.terms:
            out[e] = out.get(e, 0) + c
        return HomogeneousPoly.from_dict(out, self.degree)

    def __neg__(self) -> HomogeneousPoly:
        return HomogeneousPoly(self.degree, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: HomogeneousPoly) -> HomogeneousPoly:
        return self + (-other)

    def scale(self, c) -> HomogeneousPoly:
        c = Fraction(c)
        if c == 0:
            return HomogeneousPoly.zero(self.degree)
        return HomogeneousPoly(self.degree, tuple((e, v * c) for e, v in self.terms))

    def __mul__(self, other) -> HomogeneousPoly:
        if not isinstance(other, HomogeneousPoly):
            return self.scale(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out.get(e, 0) + c1 * c2
        return HomogeneousPoly.from_dict(out, self.degree + other.degree)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> HomogeneousPoly:
        result = HomogeneousPoly.monomial((0, 0, 0))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self, var: int) -> HomogeneousPoly:
        out = {}
        for e, c in self.terms:
            if e[var]:
                ne = list(e)
                ne[var] -= 1
                out[tuple(ne)] = c * e[var]
        return HomogeneousPoly.from_dict(out, max(self.degree - 1, 0))

    def evaluate(self, p: Sequence) -> Fraction:
        a, b, c = (Fraction(v) for v in p)
        return sum((v * a ** e[0] * b ** e[1] * c ** e[2] for e, v in self.terms), Fraction(0))

    def integer_coefficients(self) -> dict[Exponent, int]:
        """Coefficients of a positive rational multiple with coprime integer coefficients."""
        from math import gcd

        den = lcm(*(c.denominator for _, c in self.terms)) if self.terms else 1
        ints = {e: int(c * den) for e, c in self.terms}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        return {e: v // g for e, v in ints.items()} if g else ints

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for n, (e, c) in enumerate(self.terms):
            t = format_term(c, e)
            if n == 0:
                out = t
            elif t.startswith("-"):
                out += " - " + t[1:]
            else:
                out += " + " + t
        return out


def partials(f: HomogeneousPoly) -> tuple[HomogeneousPoly, HomogeneousPoly, HomogeneousPoly]:
    """(f_x, f_y, f_z)."""
    if f.degree < 1:
        raise ValueError("partials need degree >= 1")
    return f.derivative(0), f.derivative(1), f.derivative(2)


# ---------------------------------------------------------------------------
# Lines


@dataclass(frozen=True)
class LinearForm:
    """a x + b y + c z up to scale; first nonzero coefficient is 1."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        vals = [Fraction(v) for v in (self.a, self.b, self.c)]
        if not any(vals):
            raise ValueError("a linear form needs a nonzero coefficient")
        lead = next(v for v in vals if v)
        for name, v in zip("abc", vals):
            object.__setattr__(self, name, v / lead)

    @classmethod
    def from_poly(cls, g: HomogeneousPoly) -> LinearForm:
        if g.degree != 1 or g.is_zero():
            raise ValueError("not a linear form")
        co = g.coeffs
        return cls(co.get((1, 0, 0), 0), co.get((0, 1, 0), 0), co.get((0, 0, 1), 0))

    @classmethod
    def through(cls, p: Sequence, q: Sequence) -> LinearForm:
        """The line through two distinct projective points."""
        p = [Fraction(v) for v in p]
        q = [Fraction(v) for v in q]
        return cls(
            p[1] * q[2] - p[2] * q[1],
            p[2] * q[0] - p[0] * q[2],
            p[0] * q[1] - p[1] * q[0],
        )

    def as_poly(self) -> HomogeneousPoly:
        return HomogeneousPoly.from_dict(
            {(1, 0, 0): self.a, (0, 1, 0): self.b, (0, 0, 1): self.c}, 1
        )

    def __str__(self) -> str:
        return str(self.as_poly())

    def parametrization(self) -> tuple[Point, Point]:
        """Points P, Q with the line equal to {s P + t Q}.

        For c != 0 the map is (s : t) -> (s, t, -(a s + b t)/c); for c = 0
        and b != 0 it is (s : t) -> (s, -a s / b, t); for the line x = 0 it is
        (s : t) -> (0, s, t).
        """
        a, b, c = self.a, self.b, self.c
        one, zero = Fraction(1), Fraction(0)
        if c:
            return (one, zero, -a / c), (zero, one, -b / c)
        if b:
            return (one, -a / b, zero), (zero, zero, one)
        return (zero, one, zero), (zero, zero, one)


def as_poly(g) -> HomogeneousPoly:
    return g.as_poly() if isinstance(g, LinearForm) else g


def divide_exact(f: HomogeneousPoly, g) -> HomogeneousPoly:
    """Return h with f = g h, or raise NotDivisible."""
    g = as_poly(g)
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if f.degree < g.degree and not f.is_zero():
        raise NotDivisible(f"{g} does not divide {f}")
    lt_e, lt_c = g.leading()
    rem = dict(f.terms)
    quot: dict[Exponent, Fraction] = {}
    qdeg = f.degree - g.degree
    while rem:
        e = max(rem)
        c = rem[e]
        qe = (e[0] - lt_e[0], e[1] - lt_e[1], e[2] - lt_e[2])
        if min(qe) < 0:
            raise NotDivisible(f"{g} does not divide {f}")
        qc = c / lt_c
        quot[qe] = qc
        for ge, gc in g.terms:
            te = (qe[0] + ge[0], qe[1] + ge[1], qe[2] + ge[2])
            v = rem.get(te, 0) - qc * gc
            if v:
                rem[te] = v
            else:
                rem.pop(te, None)
    return HomogeneousPoly.from_dict(quot, qdeg)


# ---------------------------------------------------------------------------
# Univariate polynomials (restrictions to lines)


@dataclass(frozen=True)
class UnivariatePoly:
    """Coefficients in ascending order; empty tuple is the zero polynomial."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        cs = list(self.coefficients)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in cs))

    @classmethod
    def of(cls, *cs) -> UnivariatePoly:
        return cls(tuple(Fraction(c) for c in cs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __add__(self, other):
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (Fraction(0),) * (n - len(self.coefficients))
        b = other.coefficients + (Fraction(0),) * (n - len(other.coefficients))
        return UnivariatePoly(tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other):
        if isinstance(other, UnivariatePoly):
            if self.is_zero() or other.is_zero():
                return UnivariatePoly(())
            out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
            for i, a in enumerate(self.coefficients):
                if a:
                    for j, b in enumerate(other.coefficients):
                        out[i + j] += a * b
            return UnivariatePoly(tuple(out))
        return UnivariatePoly(tuple(c * other for c in self.coefficients))

    def derivative(self) -> UnivariatePoly:
        return UnivariatePoly(tuple(i * c for i, c in enumerate(self.coefficients) if i))

    def monic(self) -> UnivariatePoly:
        if self.is_zero():
            return self
        lead = self.coefficients[-1]
        return UnivariatePoly(tuple(c / lead for c in self.coefficients))

    def divmod(self, other: UnivariatePoly) -> tuple[UnivariatePoly, UnivariatePoly]:
        if other.is_zero():
            raise ZeroDivisionError
        rem = list(self.coefficients)
        dq = len(rem) - len(other.coefficients)
        if dq < 0:
            return UnivariatePoly(()), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.coefficients[-1]
        for i in range(dq, -1, -1):
            q = rem[i + len(other.coefficients) - 1] / lead
            quot[i] = q
            if q:
                for j, b in enumerate(other.coefficients):
                    rem[i + j] -= q * b
        return UnivariatePoly(tuple(quot)), UnivariatePoly(tuple(rem))

    def __call__(self, t) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc


def ugcd(a: UnivariatePoly, b: UnivariatePoly) -> UnivariatePoly:
    """Monic gcd; gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


def squarefree_part(u: UnivariatePoly) -> UnivariatePoly:
    if u.degree <= 0:
        return u.monic()
    return u.divmod(ugcd(u, u.derivative()))[0].monic()


@dataclass(frozen=True)
class BinaryForm:
    """F(s, t) stored as F(s, 1) plus the multiplicity of the root t = 0."""

    affine: UnivariatePoly
    mult_at_infinity: int

    @property
    def degree(self) -> int:
        return self.affine.degree + self.mult_at_infinity

    def distinct_roots(self) -> int:
        return squarefree_part(self.affine).degree + (1 if self.mult_at_infinity else 0)


def restrict_to_line(f: HomogeneousPoly, ell: LinearForm) -> BinaryForm:
    """Substitute the parametrization s P + t Q of the line into f.

    The affine part is F(s, 1) = f(s P + Q); the missing degree is the
    multiplicity of the point P (parameter infinity).
    """
    P, Q = ell.parametrization()
    coords = [UnivariatePoly((Q[i], P[i])) for i in range(3)]
    powers = [[UnivariatePoly.of(1)] for _ in range(3)]
    for i in range(3):
        for _ in range(f.degree):
            powers[i].append(powers[i][-1] * coords[i])
    acc = UnivariatePoly(())
    for e, c in f.terms:
        acc = acc + powers[0][e[0]] * powers[1][e[1]] * powers[2][e[2]] * c
    if acc.is_zero():
        raise ZeroRestriction(f"{ell} divides {f}")
    return BinaryForm(acc, f.degree - acc.degree)


def count_intersections(f: HomogeneousPoly, ell: LinearForm) -> int:
    """r = number of distinct points of C ∩ L."""
    return restrict_to_line(f, ell).distinct_roots()


def _binary_gcd_degree(forms: Iterable[BinaryForm | None]) -> int:
    g = UnivariatePoly(())
    infinity_common = True
    seen = False
    for b in forms:
        if b is None:  # identically zero on the line
            continue
        seen = True
        g = ugcd(g, b.affine)
        if b.mult_at_infinity == 0:
            infinity_common = False
    if not seen:
        raise ValueError("all forms vanish on the line")
    return g.degree + (1 if infinity_common else 0)


def _restrict_or_none(g: HomogeneousPoly, ell: LinearForm) -> BinaryForm | None:
    if g.is_zero():
        return None
    try:
        return restrict_to_line(g, ell)
    except ZeroRestriction:
        return None


def is_reduced(f: HomogeneousPoly) -> bool:
    """True iff f is squarefree.

    Uses the lines x + t y + t^2 z for t = 1, 2, ...: on a line that is not
    a component and misses the singular points, the restrictions of f and its
    partials have no common root.  A square factor h^2 makes h|_L a common
    factor on every line.  Each singular point lies on at most two of these
    lines, so 2 (d-1)^2 + d + 1 lines always suffice for a reduced curve.
    """
    if f.is_zero():
        return False
    d = f.degree
    if d <= 1:
        return True
    fx, fy, fz = partials(f)
    for t in range(1, 2 * (d - 1) ** 2 + d + 2):
        ell = LinearForm(1, t, t * t)
        try:
            rf = restrict_to_line(f, ell)
        except ZeroRestriction:
            continue
        forms = [rf] + [_restrict_or_none(g, ell) for g in (fx, fy, fz)]
        if _binary_gcd_degree(forms) == 0:
            return True
    return False
