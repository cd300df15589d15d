"""Local invariants of plane curve germs at rational points.

A germ is handled in the affine chart where the largest coordinate of the
point is set to 1, translated so the point sits at the origin.  Colengths
of ideals in the local ring are computed as dim Q[u,v] / (I + m^N): once two
consecutive truncation orders agree, Nakayama gives m^N inside I, so the
value is the true local colength.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm
from typing import Sequence

import flint

from .errors import NonIsolated, PointNotOnCurve, SharedComponent
from .linalg import int_rank
from .poly import HomogeneousPoly, LinearForm, restrict_to_line, squarefree_part

Bivariate = dict[tuple[int, int], Fraction]


def normalize_point(p: Sequence) -> tuple[Fraction, Fraction, Fraction]:
    """Scale so the first nonzero coordinate is 1."""
    p = tuple(Fraction(v) for v in p)
    lead = next((v for v in p if v), None)
    if lead is None:
        raise ValueError("(0:0:0) is not a projective point")
    return tuple(v / lead for v in p)


def chart_index(p: Sequence) -> int:
    """Coordinate of largest absolute value; the first one on ties."""
    vals = [abs(Fraction(v)) for v in p]
    return vals.index(max(vals))


def localize(f: HomogeneousPoly, p: Sequence) -> Bivariate:
    """f in the chart at p, translated so that p is the origin."""
    p = [Fraction(v) for v in p]
    ci = chart_index(p)
    p = [v / p[ci] for v in p]
    others = [i for i in range(3) if i != ci]
    a, b = p[others[0]], p[others[1]]
    out: Bivariate = {}
    for e, c in f.terms:
        i, j = e[others[0]], e[others[1]]
        # (a + u)^i (b + v)^j
        for s in range(i + 1):
            ca = comb(i, s) * a ** (i - s)
            if not ca:
                continue
            for t in range(j + 1):
                cb = comb(j, t) * b ** (j - t)
                if cb:
                    key = (s, t)
                    out[key] = out.get(key, 0) + c * ca * cb
    return {k: v for k, v in out.items() if v}


def _diff(g: Bivariate, var: int) -> Bivariate:
    out = {}
    for (i, j), c in g.items():
        e = (i, j)[var]
        if e:
            out[(i - 1, j) if var == 0 else (i, j - 1)] = c * e
    return out


@lru_cache(maxsize=None)
def _truncated_monomials(N: int) -> tuple[dict, list]:
    mons = [(i, s - i) for s in range(N) for i in range(s, -1, -1)]
    return {m: n for n, m in enumerate(mons)}, mons


def _integral(g: Bivariate) -> list[tuple[tuple[int, int], int]]:
    """g scaled to coprime integer coefficients (same ideal)."""
    den = lcm(*(c.denominator for c in g.values()))
    return [(e, int(c * den)) for e, c in g.items()]


def _colength_truncated(gens: Sequence[Bivariate], N: int) -> int:
    """dim Q[u,v] / (gens + m^N)."""
    idx, mons = _truncated_monomials(N)
    entries = []
    for g in gens:
        low = [(e, c) for e, c in _integral(g) if e[0] + e[1] < N]
        if not low:
            continue
        mindeg = min(e[0] + e[1] for e, _ in low)
        for m in mons:
            if m[0] + m[1] + mindeg >= N:
                continue
            row = {}
            for e, c in low:
                s = (e[0] + m[0], e[1] + m[1])
                if s[0] + s[1] < N:
                    row[idx[s]] = c
            entries.append(row)
    if not entries:
        return len(mons)
    M = flint.fmpz_mat(len(entries), len(mons))
    for i, row in enumerate(entries):
        for j, c in row.items():
            M[i, j] = c
    return len(mons) - int_rank(M)


def local_colength(gens: Sequence[Bivariate], cap: int, error=NonIsolated) -> int:
    """Colength of the ideal at the origin, certified by two equal truncations."""
    if any(not g for g in gens):
        gens = [g for g in gens if g]
    if any(g.get((0, 0)) for g in gens):
        return 0
    N = 4
    while True:
        a = _colength_truncated(gens, N)
        b = _colength_truncated(gens, N + 1)
        if a == b:
            return a
        if N >= cap:
            raise error(f"local colength did not stabilize up to order {cap}")
        N = min(2 * N, cap)


@dataclass(frozen=True)
class LocalInvariants:
    point: tuple[Fraction, Fraction, Fraction]
    mu: int
    tau: int

    @property
    def epsilon_local(self) -> int:
        return self.mu - self.tau

    @property
    def quasi_homogeneous(self) -> bool:
        return self.mu == self.tau


@lru_cache(maxsize=4096)
def _mu_tau(f: HomogeneousPoly, p: tuple) -> LocalInvariants:
    g = localize(f, p)
    if g.get((0, 0)):
        raise PointNotOnCurve(f"{format_point(p)} is not on {f}")
    gu, gv = _diff(g, 0), _diff(g, 1)
    cap = (f.degree - 1) ** 2 + 2
    mu = local_colength([gu, gv], cap)
    tau = local_colength([g, gu, gv], cap)
    return LocalInvariants(p, mu, tau)


def local_mu_tau(f: HomogeneousPoly, p: Sequence) -> LocalInvariants:
    """Milnor and Tjurina numbers of the curve f = 0 at the rational point p."""
    return _mu_tau(f, normalize_point(p))


def intersection_multiplicity(f1: HomogeneousPoly, f2: HomogeneousPoly, p: Sequence) -> int:
    p = normalize_point(p)
    g1, g2 = localize(f1, p), localize(f2, p)
    if g1.get((0, 0)) or g2.get((0, 0)):
        raise PointNotOnCurve(f"{format_point(p)} is not on both curves")
    cap = f1.degree * f2.degree + 2
    return local_colength([g1, g2], cap, error=SharedComponent)


def mu_union_check(f1: HomogeneousPoly, f2: HomogeneousPoly, p: Sequence) -> bool:
    """mu(C1 ∪ C2) = mu(C1) + mu(C2) + 2 (C1, C2)_p - 1, every term computed separately."""
    i = intersection_multiplicity(f1, f2, p)
    return (
        local_mu_tau(f1 * f2, p).mu
        == local_mu_tau(f1, p).mu + local_mu_tau(f2, p).mu + 2 * i - 1
    )


@dataclass(frozen=True)
class ConjectureRecord:
    point: tuple[Fraction, Fraction, Fraction]
    mu1: int
    tau1: int
    mu2: int
    tau2: int
    mu_union: int
    tau_union: int
    intersection: int

    @property
    def eps_q(self) -> int:
        return (self.mu_union - self.tau_union) - (self.mu1 - self.tau1)

    @property
    def conj1_holds(self) -> bool:
        return self.eps_q >= 0

    @property
    def conj2_holds(self) -> bool:
        return self.tau_union <= self.tau1 + self.tau2 + 2 * self.intersection - 1

    @property
    def mu_union_formula_holds(self) -> bool:
        return self.mu_union == self.mu1 + self.mu2 + 2 * self.intersection - 1

    def as_dict(self) -> dict:
        return {
            "point": format_point(self.point),
            "mu1": self.mu1,
            "tau1": self.tau1,
            "mu2": self.mu2,
            "tau2": self.tau2,
            "mu_union": self.mu_union,
            "tau_union": self.tau_union,
            "intersection": self.intersection,
            "eps_q": self.eps_q,
            "conj1_holds": self.conj1_holds,
            "conj2_holds": self.conj2_holds,
        }


def conjecture_check(f1: HomogeneousPoly, f2: HomogeneousPoly, p: Sequence) -> ConjectureRecord:
    p = normalize_point(p)
    a = local_mu_tau(f1, p)
    b = local_mu_tau(f2, p)
    u = local_mu_tau(f1 * f2, p)
    return ConjectureRecord(
        p, a.mu, a.tau, b.mu, b.tau, u.mu, u.tau, intersection_multiplicity(f1, f2, p)
    )


def format_point(p: Sequence) -> str:
    def fmt(v):
        v = Fraction(v)
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

    return "(" + ":".join(fmt(v) for v in p) + ")"


# ---------------------------------------------------------------------------
# Points of C ∩ L


def intersection_points(f: HomogeneousPoly, ell: LinearForm) -> tuple[list[tuple], bool]:
    """Rational points of C ∩ L and whether that list is all of C ∩ L."""
    import sympy

    P, Q = ell.parametrization()
    form = restrict_to_line(f, ell)
    points = []
    if form.mult_at_infinity:
        points.append(normalize_point(P))
    sq = squarefree_part(form.affine)
    if sq.degree > 0:
        s = sympy.Symbol("s")
        poly = sympy.Poly(
            [sympy.Rational(c.numerator, c.denominator) for c in reversed(sq.coefficients)],
            s,
            domain="QQ",
        )
        for root in sorted(poly.ground_roots()):
            r = Fraction(int(root.p), int(root.q))
            points.append(normalize_point(tuple(r * P[i] + Q[i] for i in range(3))))
    return points, len(points) == form.distinct_roots()


def epsilon_by_points(f: HomogeneousPoly, ell: LinearForm) -> tuple[int | None, list[ConjectureRecord]]:
    """Sum of eps_q over C ∩ L, or None when some intersection point is not rational."""
    points, complete = intersection_points(f, ell)
    line = ell.as_poly()
    records = [conjecture_check(f, line, p) for p in points]
    if not complete:
        return None, records
    return sum(rec.eps_q for rec in records), records
