"""Addition and deletion of a line: case prediction and verification.

For a free curve C with exponents (d1, d2) and a line L meeting it in r
points with defect eps, the union C' = C ∪ L falls into one of three cases:

    1. r = d1 + 1 - eps            C' free (d1, d2 + 1)
    2. d1 < d2, r = d2 + 1 - eps   C' free (d1 + 1, d2)
    3. otherwise                   C' plus-one generated (d1 + 1, d2 + 1, d3'),
                                   r = d3' + 1 - eps

Dually, for C' free with exponents (d1', d2') and C = C' minus L:

    1. d1' < d2', r = d1' + 1 - eps    C free (d1', d2' - 1)
    2. r = d2' + 1 - eps               C free (d1' - 1, d2')
    3. r <= d1' - eps                  C plus-one generated (d1', d2', d3),
                                       r = d - d3 - eps

Both predictions are checked against syzygy scans of C and C', together with
the dimension identities coming from the short exact sequences
0 -> D0(f)(-1) -> D0(f') -> H^0(O_L(k + 1 - r - eps)) on L.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

from .errors import NotFree, TheoremMismatch
from .incidence import CurveLinePair
from .jacobian import jacobian_module_table, socle_degree
from .poly import HomogeneousPoly
from .syzygy import SyzygyProfile, d0_dim, mdr, minimal_generator_degrees


class Direction(str, Enum):
    ADDITION = "addition"
    DELETION = "deletion"


def h0_line(m: int) -> int:
    """Sections of O(m) on the projective line."""
    return max(m + 1, 0)


@dataclass(frozen=True)
class IdentityCheck:
    k: int
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class AdditionDeletionReport:
    direction: Direction
    pair: CurveLinePair
    profile_C: SyzygyProfile
    profile_Cprime: SyzygyProfile
    predicted_case: int
    observed_case: int | None
    expected_exponents: tuple[int, ...]
    r_formula_holds: bool
    identity_checks: tuple[IdentityCheck, ...]

    @property
    def identities_hold(self) -> bool:
        return all(c.holds for c in self.identity_checks)

    @property
    def consistent(self) -> bool:
        return self.predicted_case == self.observed_case and self.identities_hold


def _profiles(pair: CurveLinePair, bound: int | None, parallel: bool):
    if not parallel:
        return (
            minimal_generator_degrees(pair.f, bound),
            minimal_generator_degrees(pair.f_union, bound),
        )
    with ThreadPoolExecutor(max_workers=2) as pool:
        a = pool.submit(minimal_generator_degrees, pair.f, bound)
        b = pool.submit(minimal_generator_degrees, pair.f_union, bound)
        return a.result(), b.result()


def predict_addition(d1: int, d2: int, r: int, eps: int) -> tuple[int, tuple[int, ...]]:
    """(case, expected exponents); case 3 lists only (d1 + 1, d2 + 1, r - 1 + eps)."""
    if r == d1 + 1 - eps:
        return 1, tuple(sorted((d1, d2 + 1)))
    if d1 < d2 and r == d2 + 1 - eps:
        return 2, (d1 + 1, d2)
    return 3, (d1 + 1, d2 + 1, r - 1 + eps)


def predict_deletion(d1p: int, d2p: int, d: int, r: int, eps: int) -> tuple[int | None, tuple[int, ...]]:
    if r <= d1p - eps:
        return 3, (d1p, d2p, d - r - eps)
    if d1p < d2p and r == d1p + 1 - eps:
        return 1, (d1p, d2p - 1)
    if r == d2p + 1 - eps:
        return 2, tuple(sorted((d1p - 1, d2p)))
    return None, ()


def _observed_addition(d1: int, d2: int, prof: SyzygyProfile) -> int | None:
    e = prof.exponents
    if prof.is_free:
        if e == tuple(sorted((d1, d2 + 1))):
            return 1
        if d1 < d2 and e == (d1 + 1, d2):
            return 2
        return None
    if prof.is_plus_one and e[:2] == (d1 + 1, d2 + 1):
        return 3
    return None


def _observed_deletion(d1p: int, d2p: int, prof: SyzygyProfile) -> int | None:
    e = prof.exponents
    if prof.is_free:
        if d1p < d2p and e == (d1p, d2p - 1):
            return 1
        if e == tuple(sorted((d1p - 1, d2p))):
            return 2
        return None
    if prof.is_plus_one and e[:2] == (d1p, d2p):
        return 3
    return None


def _dump(report_kind: str, pair: CurveLinePair, pc: SyzygyProfile, pcp: SyzygyProfile, **extra) -> dict:
    return {
        "direction": report_kind,
        "f": str(pair.f),
        "line": str(pair.ell),
        "r": pair.r,
        "epsilon": pair.epsilon,
        "tau": pair.tau,
        "tau_union": pair.tau_union,
        "exponents_C": list(pc.exponents),
        "exponents_Cprime": list(pcp.exponents),
        "d0_C": list(pc.d0_dims),
        "d0_Cprime": list(pcp.d0_dims),
        **extra,
    }


def addition_report(
    pair: CurveLinePair, bound: int | None = None, strict: bool = True, parallel: bool = False
) -> AdditionDeletionReport:
    pc, pcp = _profiles(pair, bound, parallel)
    if not pc.is_free:
        raise NotFree(f"{pair.f} is not free (exponents {pc.exponents})")
    d1, d2 = pc.exponents
    r, eps = pair.r, pair.epsilon
    case, expected = predict_addition(d1, d2, r, eps)
    observed = _observed_addition(d1, d2, pcp)
    if observed == 3:
        r_ok = r == pcp.exponents[2] + 1 - eps
        expected = pcp.exponents if pcp.exponents[:2] == expected[:2] else expected
    else:
        r_ok = r == (d1 + 1 - eps if case == 1 else d2 + 1 - eps)
    k_max = max(pcp.bound, d2 + 2)
    checks = tuple(
        IdentityCheck(
            k, d0_dim(pair.f_union, k), d0_dim(pair.f, k - 1) + h0_line(k + 1 - r - eps)
        )
        for k in range(k_max + 1)
    )
    report = AdditionDeletionReport(
        Direction.ADDITION, pair, pc, pcp, case, observed, expected, r_ok, checks
    )
    if strict and not report.consistent:
        raise TheoremMismatch(
            "addition prediction disagrees with the computation",
            _dump("addition", pair, pc, pcp, predicted=case, observed=observed,
                  identities=[(c.k, c.lhs, c.rhs) for c in checks]),
        )
    return report


def deletion_report(
    pair: CurveLinePair, bound: int | None = None, strict: bool = True, parallel: bool = False
) -> AdditionDeletionReport:
    pc, pcp = _profiles(pair, bound, parallel)
    if not pcp.is_free:
        raise NotFree(f"{pair.f_union} is not free (exponents {pcp.exponents})")
    d1p, d2p = pcp.exponents
    d, r, eps = pair.d, pair.r, pair.epsilon
    case, expected = predict_deletion(d1p, d2p, d, r, eps)
    observed = _observed_deletion(d1p, d2p, pc)
    if observed == 3:
        r_ok = r == d - pc.exponents[2] - eps
    elif pc.is_free:
        e1, e2 = pc.exponents
        r_ok = r == (e1 + 1 - eps if observed == 1 else e2 + 1 - eps)
    else:
        r_ok = False
    table = jacobian_module_table(pair.f)
    T = socle_degree(d)
    k_max = max(d2p + 2, T - d + 3)
    checks = tuple(
        IdentityCheck(
            k,
            d0_dim(pair.f_union, k) - d0_dim(pair.f, k - 1),
            h0_line(k + 1 - r - eps) - table.n(k + d - 2),
        )
        for k in range(k_max + 1)
    )
    report = AdditionDeletionReport(
        Direction.DELETION, pair, pc, pcp, case, observed, expected, r_ok, checks
    )
    if strict and not report.consistent:
        raise TheoremMismatch(
            "deletion prediction disagrees with the computation",
            _dump("deletion", pair, pc, pcp, predicted=case, observed=observed,
                  n_f=list(table.dims_N), identities=[(c.k, c.lhs, c.rhs) for c in checks]),
        )
    return report


def addition_freeness_criterion(report: AdditionDeletionReport) -> bool:
    """C' free iff r <= d2 + 1 - eps, evaluated as a biconditional."""
    d1, d2 = report.profile_C.exponents
    p = report.pair
    return report.profile_Cprime.is_free == (p.r <= d2 + 1 - p.epsilon)


def deletion_freeness_criterion(report: AdditionDeletionReport) -> bool:
    """C free iff r >= d1' + 1 - eps."""
    d1p = report.profile_Cprime.exponents[0]
    p = report.pair
    return report.profile_C.is_free == (p.r >= d1p + 1 - p.epsilon)


def check_propA(f1: HomogeneousPoly, f2: HomogeneousPoly) -> bool:
    """mdr(f1) <= mdr(f1 f2) <= mdr(f1) + deg f2."""
    a = mdr(f1)
    b = mdr(f1 * f2)
    return a <= b <= a + f2.degree
