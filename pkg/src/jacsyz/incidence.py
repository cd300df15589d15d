"""Adding a line to a curve, removing one, and the defect epsilon(C, L).

epsilon(C, L) is obtained from two total Tjurina numbers.  Away from L the
singularities of C and C' = C ∪ L coincide.  At q in C ∩ L the line is
smooth, so mu(C', q) - mu(C, q) = 2 (C, L)_q - 1, and summing over the r
points with Bezout gives mu(C') - mu(C) = 2d - r.  Hence

    epsilon(C, L) = sum_q [mu(C', q) - tau(C', q)] - [mu(C, q) - tau(C, q)]
                  = 2d - r - (tau(C') - tau(C)).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import LineIsComponent, NotDivisible, NotReduced, ZeroRestriction
from .jacobian import total_tjurina
from .poly import HomogeneousPoly, LinearForm, count_intersections, divide_exact, is_reduced


@dataclass(frozen=True)
class CurveLinePair:
    f: HomogeneousPoly
    ell: LinearForm
    f_union: HomogeneousPoly
    r: int
    epsilon: int
    tau: int
    tau_union: int

    @property
    def d(self) -> int:
        return self.f.degree


def _count(f: HomogeneousPoly, ell: LinearForm) -> int:
    try:
        return count_intersections(f, ell)
    except ZeroRestriction:
        raise LineIsComponent(f"{ell} is a component of {f}") from None


def _taus(f: HomogeneousPoly, f_union: HomogeneousPoly, parallel: bool) -> tuple[int, int]:
    if not parallel:
        return total_tjurina(f), total_tjurina(f_union)
    with ThreadPoolExecutor(max_workers=2) as pool:
        a = pool.submit(total_tjurina, f)
        b = pool.submit(total_tjurina, f_union)
        return a.result(), b.result()


def epsilon_global(f: HomogeneousPoly, ell: LinearForm) -> int:
    return make_pair(f, ell, check_reduced=False).epsilon


def make_pair(
    f: HomogeneousPoly, ell: LinearForm, check_reduced: bool = True, parallel: bool = False
) -> CurveLinePair:
    r = _count(f, ell)
    if check_reduced and not is_reduced(f):
        raise NotReduced(f"{f} is not reduced")
    f_union = ell.as_poly() * f
    tau, tau_union = _taus(f, f_union, parallel)
    d = f.degree
    return CurveLinePair(
        f=f,
        ell=ell,
        f_union=f_union,
        r=r,
        epsilon=2 * d - r - (tau_union - tau),
        tau=tau,
        tau_union=tau_union,
    )


def delete_line(f_union: HomogeneousPoly, ell: LinearForm, parallel: bool = False) -> CurveLinePair:
    """Pair (f_union / ell, ell); refuses a union in which ell is repeated."""
    f = divide_exact(f_union, ell)
    try:
        divide_exact(f, ell)
    except NotDivisible:
        pass
    else:
        raise NotReduced(f"{ell} divides {f_union} more than once")
    return make_pair(f, ell, parallel=parallel)
