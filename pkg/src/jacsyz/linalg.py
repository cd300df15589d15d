"""Exact dense linear algebra over Q and over prime fields.

The heavy lifting is done by FLINT (through python-flint), whose integer
routines are fraction-free.  Rational matrices are scaled row by row to
integer matrices before elimination, which changes neither rank nor kernel.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import flint

from .errors import BadPrime

Scalar = Fraction

# Three 30-bit primes used by the modular pre-filter.
FILTER_PRIMES = (1073741789, 1073741783, 1073741741)


def prime_filter_enabled() -> bool:
    return os.environ.get("SYZ_PRIME_FILTER", "on").lower() not in ("off", "0", "no")


@dataclass(frozen=True)
class Matrix:
    """Immutable row-major rational matrix."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> Matrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries = []
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
            entries.extend(Fraction(v) for v in r)
        return cls(len(rows), cols, tuple(entries))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def row_list(self) -> list[tuple[Fraction, ...]]:
        return [self.row(i) for i in range(self.rows)]

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        """Matrix-vector product, exact."""
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(
            sum((a * b for a, b in zip(self.row(i), v) if a and b), Fraction(0))
            for i in range(self.rows)
        )

    def to_fmpz(self) -> flint.fmpz_mat:
        return fmpz_from_rows(integer_rows(self.row_list()), self.cols)


def integer_rows(rows: Iterable[Sequence[Fraction]]) -> list[list[int]]:
    """Scale each rational row by the lcm of its denominators."""
    out = []
    for r in rows:
        den = lcm(*(Fraction(v).denominator for v in r)) if r else 1
        out.append([int(Fraction(v) * den) for v in r])
    return out


def fmpz_from_rows(rows: Sequence[Sequence[int]], ncols: int) -> flint.fmpz_mat:
    if not rows:
        return flint.fmpz_mat(0, ncols)
    return flint.fmpz_mat([list(r) for r in rows])


def fmpz_from_columns(columns: Sequence[dict[int, int]], nrows: int) -> flint.fmpz_mat:
    """Build an nrows x len(columns) matrix from sparse columns."""
    m = flint.fmpz_mat(nrows, len(columns))
    for j, col in enumerate(columns):
        for i, v in col.items():
            m[i, j] = v
    return m


# ---------------------------------------------------------------------------
# Rank and kernels over Q


def int_rank(m: flint.fmpz_mat, use_filter: bool = True) -> int:
    """Exact rank of an integer matrix.

    A prime-field rank never exceeds the rational rank, so a modular rank
    equal to min(rows, cols) is itself a proof of full rank.
    """
    r, c = m.nrows(), m.ncols()
    if r == 0 or c == 0:
        return 0
    if use_filter and prime_filter_enabled():
        if _nmod(m, FILTER_PRIMES[0]).rank() == min(r, c):
            return min(r, c)
    return m.rank()


def rref_pivots(m: flint.fmpz_mat) -> tuple[flint.fmpz_mat, int, list[int]]:
    """Fraction-free RREF; returns (R, den, pivot columns)."""
    if m.nrows() == 0 or m.ncols() == 0:
        return m, 1, []
    R, den, rank = m.rref()
    pivots = []
    ncols = R.ncols()
    col = 0
    for i in range(rank):
        while R[i, col] == 0:
            col += 1
        pivots.append(col)
        col += 1
        if col > ncols:
            break
    return R, int(den), pivots


def int_kernel(m: flint.fmpz_mat) -> list[list[int]]:
    """Right kernel basis of an integer matrix.

    One vector per non-pivot column j of the reduced echelon form R of m:
    den * e_j minus the column j of R placed at the pivot positions, then
    made primitive.  R depends only on the row space of m, so the basis is
    independent of the elimination path.
    """
    ncols = m.ncols()
    if ncols == 0:
        return []
    if m.nrows() == 0:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    R, den, pivots = rref_pivots(m)
    if len(pivots) == ncols:
        return []
    rows = R.tolist()[: len(pivots)]
    pivot_set = set(pivots)
    out = []
    for j in range(ncols):
        if j in pivot_set:
            continue
        v = [0] * ncols
        v[j] = den
        for i, p in enumerate(pivots):
            a = rows[i][j]
            if a:
                v[p] = -int(a)
        out.append(_primitive(v))
    return out


def _primitive(v: list[int]) -> list[int]:
    from math import gcd

    g = 0
    for a in v:
        if a:
            g = gcd(g, a)
    if g == 0:
        return v
    lead = next(a for a in v if a)
    if lead < 0:
        g = -g
    return [a // g for a in v]


def rank(m: Matrix) -> int:
    """Rank of m over Q."""
    return int_rank(m.to_fmpz())


def kernel_basis(m: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space of m over Q, in reduced echelon form."""
    if m.cols == 0:
        return []
    if m.rows == 0:
        return [tuple(Fraction(int(i == j)) for i in range(m.cols)) for j in range(m.cols)]
    ker = int_kernel(m.to_fmpz())
    if not ker:
        return []
    R, rnk = flint.fmpq_mat(flint.fmpz_mat(ker)).rref()
    return [
        tuple(Fraction(int(v.p), int(v.q)) for v in (R[i, j] for j in range(m.cols)))
        for i in range(rnk)
    ]


# ---------------------------------------------------------------------------
# Prime fields


def _nmod(m: flint.fmpz_mat, p: int) -> flint.nmod_mat:
    return flint.nmod_mat(m, p)


def rank_mod_p(m: Matrix, p: int) -> int:
    """Rank of m reduced modulo the prime p."""
    rows = []
    for i in range(m.rows):
        row = []
        for v in m.row(i):
            if v.denominator % p == 0:
                raise BadPrime(f"denominator {v.denominator} vanishes modulo {p}")
            row.append(v.numerator * pow(v.denominator, -1, p) % p)
        rows.append(row)
    if m.rows == 0 or m.cols == 0:
        return 0
    return flint.nmod_mat(rows, p).rank()


def int_rank_mod_p(m: flint.fmpz_mat, p: int) -> int:
    if m.nrows() == 0 or m.ncols() == 0:
        return 0
    return _nmod(m, p).rank()
