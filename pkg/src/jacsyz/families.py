"""Parametric families, the example gallery and the curve/line corpus.

Expected values tagged ``published`` are quoted from the source literature;
``derived`` ones follow from published exponents through the standard
formulas (tau = (d-1)^2 - d1 d2 for free curves) or from the case tables in
:mod:`jacsyz.oracle`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import BadParameters, UnknownFamily
from .parse import parse_line, parse_polynomial
from .poly import HomogeneousPoly, LinearForm


@dataclass(frozen=True)
class Expected:
    exponents: tuple[int, ...] | None = None
    classification: str | None = None
    tau: int | None = None
    r: int | None = None
    epsilon: int | None = None
    case: int | None = None
    point: tuple | None = None
    mu_at_point: int | None = None
    tau_at_point: int | None = None
    mu_minus_tau_at_point: int | None = None
    source: str = "published"


@dataclass(frozen=True)
class NamedCurve:
    id: str
    f: HomogeneousPoly
    expected: Expected | None = None
    params: tuple = ()
    note: str = ""


def _classification(exps: Sequence[int], d: int) -> str:
    if len(exps) == 2:
        return "free"
    if len(exps) == 3 and exps[0] + exps[1] == d:
        return "nearly_free" if exps[1] == exps[2] else "plus_one_generated"
    return "m_syzygy"


# ---------------------------------------------------------------------------
# Conic and concurrent lines


def _cm_text(m: int, slopes: Sequence) -> str:
    lines = ["y"] + [f"(x - {_q(s)}*y)" for s in slopes]
    return "*".join(lines) + "*(y*z + x^2)"


def _q(s) -> str:
    s = Fraction(s)
    return str(s.numerator) if s.denominator == 1 else f"({s.numerator}/{s.denominator})"


def conic_line_family(m: int, slopes: Sequence | None = None) -> NamedCurve:
    """y * prod(x - s y) * (yz + x^2): m lines through q = (0:0:1), y = 0 tangent there."""
    if m < 3:
        raise BadParameters("the conic-line family needs m >= 3")
    if slopes is None:
        slopes = list(range(1, m))
    slopes = [Fraction(s) for s in slopes]
    if len(slopes) != m - 1 or len(set(slopes)) != m - 1:
        raise BadParameters(f"need {m - 1} distinct slopes, got {slopes}")
    f = parse_polynomial(_cm_text(m, slopes))
    return NamedCurve(
        id=f"cm-{m}",
        f=f,
        expected=Expected(
            exponents=(2, m - 1),
            classification="free",
            tau=m * m + 3,
            point=(0, 0, 1),
            tau_at_point=m * m - m + 4,
        ),
        params=(m,),
    )


@dataclass(frozen=True)
class CorpusPair:
    id: str
    f: HomogeneousPoly
    ell: LinearForm
    direction: str  # "addition": f is C; "deletion": f is C' and ell divides it
    expected: Expected = field(default_factory=Expected)


def conic_line_additions(m: int) -> list[CorpusPair]:
    """The five line additions to the conic-line curve with default slopes 1..m-1.

    q2 = (1:1:-1) and q3 = (2:1:-4) are the second intersections of x = y and
    x = 2y with the conic.
    """
    base = conic_line_family(m).f
    out = [
        # new line through q
        CorpusPair(f"cm-{m}-through-q", base, parse_line(f"x - {m}*y"), "addition",
                   Expected(exponents=(2, m), classification="free", r=2, epsilon=1, case=1)),
    ]
    # tangent to the conic at q2; for m = 3 the case table gives case 1 since d1 = d2
    out.append(
        CorpusPair(f"cm-{m}-tangent", base, parse_line("2*x - y + z"), "addition",
                   Expected(exponents=(3, m - 1) if m > 3 else (2, 3), classification="free",
                            r=m, epsilon=0, case=2 if m > 3 else 1,
                            source="published" if m > 3 else "derived"))
    )
    if m > 3:
        out.append(
            CorpusPair(f"cm-{m}-chord", base, parse_line("3*x - 2*y + z"), "addition",
                       Expected(exponents=(3, m - 1), classification="free",
                                r=m, epsilon=0, case=2))
        )
    # through q2 and the conic point (-1:1:-1), which lies on no line of the curve
    out.append(
        CorpusPair(f"cm-{m}-secant", base, parse_line("y + z"), "addition",
                   Expected(exponents=(3, m, m), classification="nearly_free",
                            r=m + 1, epsilon=0, case=3))
    )
    out.append(
        CorpusPair(f"cm-{m}-generic", base, parse_line("x + 3*y + 5*z"), "addition",
                   Expected(exponents=(3, m, m + 1), classification="plus_one_generated",
                            r=m + 2, epsilon=0, case=3))
    )
    return out


# ---------------------------------------------------------------------------
# Free curves with a single singular point


def free_rkC_family(d: int, a=1, b=0, c=0) -> NamedCurve:
    """z^(d-1) y + x^d + a x^2 z^(d-2) + b x z^(d-1) + c z^d."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if d < 5:
        raise BadParameters("this family needs d >= 5")
    if a == 0:
        raise BadParameters("the coefficient a must be nonzero")
    f = HomogeneousPoly.from_dict(
        {
            (0, 1, d - 1): 1,
            (d, 0, 0): 1,
            (2, 0, d - 2): a,
            (1, 0, d - 1): b,
            (0, 0, d): c,
        },
        d,
    )
    return NamedCurve(
        id=f"rkc-{d}",
        f=f,
        expected=Expected(exponents=(2, d - 3), classification="free",
                          tau=(d - 1) ** 2 - 2 * (d - 3), source="derived"),
        params=(d, a, b, c),
    )


def cuspidal_family(k: int) -> NamedCurve:
    """(z^(k-1) y + x^k)^2 z - x^(2k+1), with its singular point (0:1:0)."""
    if k < 2:
        raise BadParameters("the cuspidal family needs k >= 2")
    f = parse_polynomial(f"(z^{k - 1}*y + x^{k})^2*z - x^{2 * k + 1}")
    return NamedCurve(
        id=f"cusp-{k}",
        f=f,
        expected=Expected(exponents=(k, k), classification="free",
                          point=(0, 1, 0), mu_minus_tau_at_point=k * k - 2 * k),
        params=(k,),
    )


# ---------------------------------------------------------------------------
# Gallery


_GALLERY = [
    ("conic-tangent", "x*(x*y - z^2)", (1, 1)),
    ("conic-two-tangents", "x*y*(x*y - z^2)", (1, 2)),
    ("conic-tangent-chord", "x*z*(x*y - z^2)", (1, 2)),
    ("conic-tangent-line", "x*(x + y)*(x*y - z^2)", (2, 2, 2)),
    ("conic-two-tangents-line", "x*y*(x + y)*(x*y - z^2)", (2, 3, 3)),
    ("cubic-pair", "(x^3 + y^3)*(x^3 + y^3 + z^3)", (2, 3)),
    ("cubic-pair-line", "(x^3 + y^3)*(x^3 + y^3 + z^3)*(x + 2*y - z)", (3, 4, 5)),
    ("conic-tangent-chord-pencil", "x*z*(x - z)*(x*y - z^2)", (2, 2)),
    ("conic-chord-pencil", "z*(x - z)*(x*y - z^2)", (2, 2, 2)),
    ("conic-four-lines", "x*y*(x - z)*(y - z)*(x*y - z^2)", (2, 3)),
    ("conic-five-lines", "x*y*z*(x - z)*(y - z)*(x*y - z^2)", (3, 3)),
    ("quartic-octic-line", "x*(x^4 + z^4)*(x^8 + (x*z + y^2)^4)", (5, 7)),
    ("quartic-octic", "(x^4 + z^4)*(x^8 + (x*z + y^2)^4)", (5, 7, 9)),
]

_NOTES = {
    "conic-two-tangents-line": (
        "published exponents (2,3,3); the computation gives free (2,2), as does the "
        "addition case table, since x + y passes through the node (0:0:1)"
    ),
}


def example_gallery() -> list[NamedCurve]:
    out = []
    for gid, text, exps in _GALLERY:
        f = parse_polynomial(text)
        exp = Expected(exponents=exps, classification=_classification(exps, f.degree))
        out.append(NamedCurve(gid, f, exp, note=_NOTES.get(gid, "")))
    return out


def gallery_curve(gid: str) -> NamedCurve:
    for c in example_gallery():
        if c.id == gid:
            return c
    raise UnknownFamily(f"no gallery entry {gid!r}")


def _pair(pid, f, ell, direction, **exp) -> CorpusPair:
    source = exp.pop("source", "published")
    return CorpusPair(pid, parse_polynomial(f), parse_line(ell), direction,
                      Expected(source=source, **exp))


def corpus_pairs(include_cm: Sequence[int] = (3, 4, 5), include_heavy: bool = True) -> list[CorpusPair]:
    """Every curve/line pair used by the regression and conjecture suites."""
    pairs = [
        _pair("conic-tangent+y", "x*(x*y - z^2)", "y", "addition",
              exponents=(1, 2), r=2, case=1, source="derived"),
        _pair("conic-tangent-chord+line", "x*z*(x*y - z^2)", "x - z", "addition",
              exponents=(2, 2), r=2, epsilon=1, case=2),
        _pair("conic-two-tangents+node-line", "x*y*(x*y - z^2)", "x + y", "addition",
              exponents=(2, 2), r=3, epsilon=0, case=2, source="derived"),
        _pair("conic-two-tangents+line", "x*y*(x*y - z^2)", "x + y + z", "addition",
              exponents=(2, 3, 3), r=4, epsilon=0, case=3, source="derived"),
        _pair("cubic-pair+line", "(x^3 + y^3)*(x^3 + y^3 + z^3)", "x + 2*y - z", "addition",
              exponents=(3, 4, 5), case=3),
        _pair("conic-four-lines+z", "x*y*(x - z)*(y - z)*(x*y - z^2)", "z", "addition",
              exponents=(3, 3), r=2, epsilon=2, case=2),
        _pair("conic-two-tangents-y", "x*y*(x*y - z^2)", "y", "deletion",
              exponents=(1, 1), source="derived"),
        _pair("conic-tangent-chord-pencil-x", "x*z*(x - z)*(x*y - z^2)", "x", "deletion",
              exponents=(2, 2, 2), r=1, epsilon=1, case=3),
        _pair("conic-five-lines-z", "x*y*z*(x - z)*(y - z)*(x*y - z^2)", "z", "deletion",
              exponents=(2, 3), r=2, epsilon=2, case=2, source="derived"),
    ]
    for k in (2, 3):
        c = cuspidal_family(k)
        pairs.append(CorpusPair(f"cusp-{k}+z", c.f, parse_line("z"), "addition",
                                Expected(exponents=(k, k + 1), r=1, epsilon=k, case=1,
                                         source="derived")))
    for m in include_cm:
        pairs.extend(conic_line_additions(m))
    if include_heavy:
        pairs.append(
            _pair("quartic-octic-line-x", "x*(x^4 + z^4)*(x^8 + (x*z + y^2)^4)", "x", "deletion",
                  exponents=(5, 7, 9), r=2, case=3)
        )
    return pairs


# ---------------------------------------------------------------------------
# Random quasi-homogeneous germs


@dataclass(frozen=True)
class BranchPair:
    f1: HomogeneousPoly
    f2: HomogeneousPoly
    description: str
    irreducible: bool


def _affine_to_poly(g: dict[tuple[int, int], Fraction]) -> HomogeneousPoly:
    D = max(i + j for i, j in g)
    return HomogeneousPoly.from_dict({(i, j, D - i - j): c for (i, j), c in g.items()}, D)


def _bmul(a, b):
    out = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _bpow(a, n):
    out = {(0, 0): Fraction(1)}
    for _ in range(n):
        out = _bmul(out, a)
    return out


def _badd(a, b, s=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + s * v
    return {k: v for k, v in out.items() if v}


def _random_unimodular(rng: random.Random) -> tuple[int, int, int, int]:
    while True:
        a, b, c, d = (rng.randint(-3, 3) for _ in range(4))
        if a * d - b * c in (1, -1):
            return a, b, c, d


def random_branch(rng: random.Random, p: int, q: int):
    """u^p - v^q after a unimodular linear change and a shear u -> u + c v^j."""
    a, b, c, d = _random_unimodular(rng)
    shear, j = rng.randint(-2, 2), rng.randint(2, 3)
    U = {(1, 0): Fraction(a), (0, 1): Fraction(b)}
    V = {(1, 0): Fraction(c), (0, 1): Fraction(d)}
    U = {k: v for k, v in U.items() if v}
    V = {k: v for k, v in V.items() if v}
    if shear:
        U = _badd(U, {k: v * shear for k, v in _bpow(V, j).items()})
    g = _badd(_bpow(U, p), _bpow(V, q), -1)
    return g, f"u^{p}-v^{q}[{a},{b};{c},{d}|{shear}v^{j}]"


def _exponent_pair(rng: random.Random, max_exp: int) -> tuple[int, int]:
    while True:
        p, q = rng.randint(2, max_exp), rng.randint(2, max_exp)
        if p < q and gcd(p, q) == 1:
            return p, q


def random_branch_pairs(
    count: int, seed: int = 0, irreducible: bool = True, max_exp: int = 5
) -> list[BranchPair]:
    """Seeded pairs of germs at (0:0:1).

    With ``irreducible=True`` both germs are single branches; otherwise the
    first germ is a product of two branches.
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g1, d1 = random_branch(rng, *_exponent_pair(rng, max_exp))
        if not irreducible:
            h, dh = random_branch(rng, *_exponent_pair(rng, max_exp))
            g1, d1 = _bmul(g1, h), f"{d1}*{dh}"
        g2, d2 = random_branch(rng, *_exponent_pair(rng, max_exp))
        out.append(BranchPair(_affine_to_poly(g1), _affine_to_poly(g2), f"{d1} / {d2}", irreducible))
    return out


FAMILIES = ("cm", "rkc", "cusp", "gallery")


def family_instances(family: str, lo: int | None = None, hi: int | None = None,
                     abc: Sequence = (1, 0, 0)) -> list[NamedCurve]:
    if family == "cm":
        return [conic_line_family(m) for m in range(lo or 3, (hi or 6) + 1)]
    if family == "rkc":
        return [free_rkC_family(d, *abc) for d in range(lo or 5, (hi or 7) + 1)]
    if family == "cusp":
        return [cuspidal_family(k) for k in range(lo or 2, (hi or 4) + 1)]
    if family == "gallery":
        return example_gallery()
    raise UnknownFamily(f"unknown family {family!r}; choose one of {', '.join(FAMILIES)}")
