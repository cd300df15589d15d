"""Jacobian syzygies D0(f), their minimal generator degrees, and classification."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

import flint

from .errors import BoundTooSmall, InconsistentProfile
from .jacobian import graded, total_tjurina
from .linalg import (
    FILTER_PRIMES,
    int_kernel,
    int_rank,
    int_rank_mod_p,
    prime_filter_enabled,
    rref_pivots,
)
from .poly import HomogeneousPoly, dim_s, monomial_basis, monomial_index, partials


@dataclass(frozen=True)
class SyzygyVector:
    degree: int
    a: HomogeneousPoly
    b: HomogeneousPoly
    c: HomogeneousPoly

    def check(self, f: HomogeneousPoly) -> bool:
        fx, fy, fz = partials(f)
        return (self.a * fx + self.b * fy + self.c * fz).is_zero()


@dataclass(frozen=True)
class Free:
    d1: int
    d2: int
    label = "free"

    @property
    def exponents(self):
        return (self.d1, self.d2)


@dataclass(frozen=True)
class PlusOneGenerated:
    d1: int
    d2: int
    d3: int
    nearly_free: bool

    @property
    def label(self):
        return "nearly_free" if self.nearly_free else "plus_one_generated"

    @property
    def exponents(self):
        return (self.d1, self.d2, self.d3)

    @property
    def level(self):
        return self.d3


@dataclass(frozen=True)
class MSyzygy:
    m: int
    exponents: tuple[int, ...]
    label = "m_syzygy"


Classification = Free | PlusOneGenerated | MSyzygy


@dataclass(frozen=True)
class SyzygyProfile:
    degree: int
    generator_degrees: tuple[int, ...]
    classification: Classification
    complete: bool
    bound: int
    d0_dims: tuple[int, ...]
    generators: tuple[SyzygyVector, ...] = field(default=(), compare=False, repr=False)

    @property
    def m(self) -> int:
        return len(self.generator_degrees)

    @property
    def mdr(self) -> int:
        return self.generator_degrees[0]

    @property
    def exponents(self) -> tuple[int, ...]:
        return self.generator_degrees

    @property
    def is_free(self) -> bool:
        return isinstance(self.classification, Free)

    @property
    def is_plus_one(self) -> bool:
        return isinstance(self.classification, PlusOneGenerated)


def hilbert_polynomial_d0(d: int, tau: int, t: int) -> int:
    """3 C(t+2, 2) - C(t+d+1, 2) + tau, binomials taken as polynomials in t."""
    def c2(n):
        return n * (n - 1) // 2

    return 3 * c2(t + 2) - c2(t + d + 1) + tau


def d0_dim(f: HomogeneousPoly, k: int) -> int:
    """dim D0(f)_k = 3 dim S_k - dim (J_f)_{k+d-1}."""
    if k < 0:
        return 0
    return 3 * dim_s(k) - graded(f).jac_rank(k + f.degree - 1)


@lru_cache(maxsize=512)
def _syzygy_basis(f: HomogeneousPoly, k: int) -> tuple[tuple[int, ...], ...]:
    if k < 0:
        return ()
    G = graded(f)
    M = G.macaulay(k + f.degree - 1)
    if prime_filter_enabled() and int_rank_mod_p(M, FILTER_PRIMES[0]) == M.ncols():
        return ()
    return tuple(tuple(v) for v in int_kernel(M))


def _vector_to_syzygy(v, k: int) -> SyzygyVector:
    n = dim_s(k)
    basis = monomial_basis(k)
    comps = []
    for b in range(3):
        comps.append(
            HomogeneousPoly.from_dict(
                {basis[i]: Fraction(v[b * n + i]) for i in range(n) if v[b * n + i]}, k
            )
        )
    return SyzygyVector(k, *comps)


def syzygy_space(f: HomogeneousPoly, k: int) -> list[SyzygyVector]:
    """Echelon basis of D0(f)_k."""
    return [_vector_to_syzygy(v, k) for v in _syzygy_basis(f, k)]


@lru_cache(maxsize=None)
def _shift_map(k: int, var: int) -> tuple[int, ...]:
    """Index map S_{k-1}^3 -> S_k^3 for multiplication by one variable."""
    src = monomial_basis(k - 1)
    idx = monomial_index(k)
    n_src, n_dst = dim_s(k - 1), dim_s(k)
    out = []
    for b in range(3):
        for e in src:
            ne = list(e)
            ne[var] += 1
            out.append(b * n_dst + idx[tuple(ne)])
    assert len(out) == 3 * n_src
    return tuple(out)


def _multiply_up(vectors, k: int) -> list[list[int]]:
    n = 3 * dim_s(k)
    out = []
    for var in range(3):
        smap = _shift_map(k, var)
        for v in vectors:
            w = [0] * n
            for i, a in enumerate(v):
                if a:
                    w[smap[i]] = a
            out.append(w)
    return out


def classify(generator_degrees, d: int) -> Classification:
    """Label from the exponents; contradictions with the d1 + d2 criterion raise."""
    if isinstance(generator_degrees, SyzygyProfile):
        if not generator_degrees.complete:
            raise InconsistentProfile("profile has no completeness certificate")
        generator_degrees = generator_degrees.generator_degrees
    degs = tuple(sorted(generator_degrees))
    m = len(degs)
    if m < 2:
        raise InconsistentProfile(f"D0(f) has rank 2 but {m} generator(s) were found")
    s = degs[0] + degs[1]
    if s == d - 1:
        if m != 2:
            raise InconsistentProfile(f"d1 + d2 = d - 1 but m = {m}")
        return Free(*degs)
    if m == 2:
        raise InconsistentProfile(f"two generators with d1 + d2 = {s} != d - 1 = {d - 1}")
    if s == d:
        if m != 3:
            raise InconsistentProfile(f"d1 + d2 = d but m = {m}")
        return PlusOneGenerated(degs[0], degs[1], degs[2], degs[1] == degs[2])
    if s < d:
        raise InconsistentProfile(f"d1 + d2 = {s} < d - 1")
    return MSyzygy(m, degs)


def _scan(f: HomogeneousPoly, bound: int):
    gens: list[tuple[int, tuple[int, ...]]] = []
    new_counts = []
    dims = []
    prev: tuple = ()
    for k in range(bound + 1):
        basis = _syzygy_basis(f, k)
        dims.append(len(basis))
        image = _multiply_up(prev, k) if prev else []
        if not basis:
            chosen = []
        elif not image:
            chosen = list(basis)
        else:
            rank_img = int_rank(flint.fmpz_mat(image))
            if rank_img == len(basis):
                chosen = []
            else:
                # Greedy completion: pivot columns among the basis vectors
                # appended after the image span the new generators.
                cols = flint.fmpz_mat(image + [list(v) for v in basis]).transpose()
                _, _, pivots = rref_pivots(cols)
                chosen = [basis[p - len(image)] for p in pivots if p >= len(image)]
                if len(chosen) != len(basis) - rank_img:
                    raise InconsistentProfile("generator selection disagrees with rank count")
        new_counts.append(len(chosen))
        gens.extend((k, v) for v in chosen)
        prev = basis
    return gens, new_counts, dims


def minimal_generator_degrees(f: HomogeneousPoly, bound: int | None = None) -> SyzygyProfile:
    """Exponents of f with a completeness certificate.

    With ``bound=None`` the scan starts at 2d - 3 and doubles on failure up
    to 3d.  An explicit bound is used as given.
    """
    d = f.degree
    if bound is not None:
        return _profile(f, bound)
    B = max(2 * d - 3, d - 1)
    while True:
        try:
            return _profile(f, B)
        except BoundTooSmall:
            if B >= 3 * d:
                raise
            B = min(2 * B, 3 * d)


def _profile(f: HomogeneousPoly, B: int) -> SyzygyProfile:
    d = f.degree
    if B < 1:
        raise BoundTooSmall("bound must be at least 1")
    gens, new_counts, dims = _scan(f, B)
    tau = total_tjurina(f)
    complete = (
        new_counts[B] == 0
        and new_counts[B - 1] == 0
        and dims[B] == hilbert_polynomial_d0(d, tau, B)
    )
    if not complete:
        raise BoundTooSmall(f"generator scan for {f} not certified at bound {B}")
    degrees = tuple(k for k, _ in gens)
    return SyzygyProfile(
        degree=d,
        generator_degrees=degrees,
        classification=classify(degrees, d),
        complete=True,
        bound=B,
        d0_dims=tuple(dims),
        generators=tuple(_vector_to_syzygy(v, k) for k, v in gens),
    )


def mdr(f: HomogeneousPoly) -> int:
    """Smallest k with D0(f)_k != 0."""
    k = 0
    while d0_dim(f, k) == 0:
        k += 1
    return k


def free_d0_dim(d1: int, d2: int, k: int) -> int:
    """dim of S(-d1) + S(-d2) in degree k."""
    return sum(comb(k - e + 2, 2) for e in (d1, d2) if k >= e)
