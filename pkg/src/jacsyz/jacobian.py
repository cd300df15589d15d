"""Graded pieces of J_f, M(f) = S/J_f, the saturation I_f and N(f) = I_f/J_f.

All dimensions come from exact ranks of Macaulay matrices.  The matrix in
degree k has one row per monomial of S_k and one column per product m * f_v,
with m a monomial of degree k - (d - 1) and f_v a partial derivative.  The
same matrix, read as a map S_{k-d+1}^3 -> S_k, has the Jacobian syzygies of
degree k - d + 1 as its kernel.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache

import flint

from .errors import NotStabilized, SymmetryViolation, UnimodalityViolation
from .linalg import fmpz_from_columns, int_rank, rref_pivots
from .poly import HomogeneousPoly, dim_s, monomial_basis, monomial_index, partials


def socle_degree(d: int) -> int:
    """T = 3(d - 2), the centre of symmetry of n(f) is T/2."""
    return 3 * (d - 2)


class GradedData:
    """Per-curve cache of the ranks and normal forms used by every module."""

    def __init__(self, f: HomogeneousPoly):
        self.f = f
        self.d = f.degree
        self.T = socle_degree(self.d)
        g = HomogeneousPoly.from_dict(f.integer_coefficients(), f.degree)
        self.int_partials = [
            [(e, int(c)) for e, c in p.terms] for p in partials(g)
        ]
        self._ranks: dict[int, int] = {}
        self._projections: dict[int, list[list[int]]] = {}
        self._sat: dict[int, int] = {}
        self._lock = threading.RLock()

    def macaulay(self, k: int) -> flint.fmpz_mat:
        """Rows: monomials of S_k; columns: m * f_x, then m * f_y, then m * f_z."""
        src = monomial_basis(k - self.d + 1)
        idx = monomial_index(k)
        columns = []
        for part in self.int_partials:
            for m in src:
                columns.append(
                    {idx[(e[0] + m[0], e[1] + m[1], e[2] + m[2])]: c for e, c in part}
                )
        return fmpz_from_columns(columns, dim_s(k))

    def jac_rank(self, k: int) -> int:
        """dim (J_f)_k."""
        if k < self.d - 1:
            return 0
        with self._lock:
            if k not in self._ranks:
                self._ranks[k] = int_rank(self.macaulay(k))
            return self._ranks[k]

    def projection(self, D: int) -> list[list[int]]:
        """For each monomial of S_D, its normal-form vector in S_D / (J_f)_D.

        Computed from the reduced echelon form of the generators of (J_f)_D;
        all vectors share the same positive scale factor.
        """
        with self._lock:
            if D in self._projections:
                return self._projections[D]
            n = dim_s(D)
            if D < self.d - 1:
                cols = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
            else:
                R, den, pivots = rref_pivots(self.macaulay(D).transpose())
                pivot_set = set(pivots)
                free = [c for c in range(n) if c not in pivot_set]
                rows = R.tolist()
                cols = [None] * n
                for t, c in enumerate(free):
                    col = [0] * len(free)
                    col[t] = den
                    cols[c] = col
                for i, p in enumerate(pivots):
                    row = rows[i]
                    cols[p] = [-int(row[c]) for c in free]
            self._projections[D] = cols
            return cols

    def _saturation_at(self, k: int, N: int) -> int:
        """dim {g in S_k : x^N g, y^N g, z^N g in J_f}."""
        cols = self.projection(k + N)
        n = dim_s(k)
        if not cols or not cols[0]:
            return n
        idx = monomial_index(k + N)
        rows = []
        for m in monomial_basis(k):
            row = []
            for v in range(3):
                e = list(m)
                e[v] += N
                row.extend(cols[idx[tuple(e)]])
            rows.append(row)
        return n - int_rank(flint.fmpz_mat(rows))

    def saturation_dim(self, k: int) -> int:
        with self._lock:
            if k in self._sat:
                return self._sat[k]
        # Beyond degree T the ideals J_f and I_f coincide, so the search for
        # the saturation exponent starts where k + N first exceeds T.
        N = max(1, self.T + 1 - k)
        prev = self._saturation_at(k, N)
        for _ in range(8):
            cur = self._saturation_at(k, N + 1)
            if cur == prev:
                with self._lock:
                    self._sat[k] = cur
                return cur
            N, prev = N + 1, cur
        raise NotStabilized(f"saturation in degree {k} did not stabilize")


@lru_cache(maxsize=64)
def graded(f: HomogeneousPoly) -> GradedData:
    return GradedData(f)


def dim_jacobian_ideal(f: HomogeneousPoly, k: int) -> int:
    """dim (J_f)_k."""
    if k < 0:
        return 0
    return graded(f).jac_rank(k)


def milnor_algebra_dims(f: HomogeneousPoly, k_max: int) -> list[int]:
    """[dim M(f)_k for k = 0..k_max]."""
    G = graded(f)
    return [dim_s(k) - G.jac_rank(k) for k in range(k_max + 1)]


def total_tjurina(f: HomogeneousPoly) -> int:
    """tau(C) as the stable value of dim M(f)_k, certified at T+1 and T+2."""
    G = graded(f)
    a, b = (dim_s(k) - G.jac_rank(k) for k in (G.T + 1, G.T + 2))
    if a != b:
        raise NotStabilized(
            f"dim M(f) is {a} in degree {G.T + 1} but {b} in degree {G.T + 2}; "
            "the curve is probably not reduced"
        )
    return a


def saturation_dims(f: HomogeneousPoly, k: int) -> int:
    """dim (I_f)_k."""
    if k < 0:
        return 0
    return graded(f).saturation_dim(k)


@dataclass(frozen=True)
class JacobianTable:
    degree: int
    T: int
    k_max: int
    dims_J: tuple[int, ...]
    dims_M: tuple[int, ...]
    dims_I: tuple[int, ...]
    dims_N: tuple[int, ...]
    tau_total: int
    nu: int
    sigma: int | None

    def n(self, k: int) -> int:
        """n(f)_k; zero outside [0, T] and checked inside the table window."""
        if k < 0 or k > self.T:
            return 0
        if k > self.k_max:
            raise IndexError(f"n(f)_{k} lies outside the computed window")
        return self.dims_N[k]


def check_symmetry(dims_N, T: int) -> None:
    k_max = len(dims_N) - 1
    for a in range(k_max + 1):
        b = T - a
        other = dims_N[b] if 0 <= b <= k_max else (0 if b < 0 else None)
        if other is not None and dims_N[a] != other:
            raise SymmetryViolation(f"n(f)_{a} = {dims_N[a]} but n(f)_{b} = {other}")


def check_unimodality(dims_N, T: int) -> None:
    mid = T // 2
    for k in range(1, len(dims_N)):
        up = k <= mid
        if (up and dims_N[k] < dims_N[k - 1]) or (not up and dims_N[k] > dims_N[k - 1]):
            raise UnimodalityViolation(
                f"n(f) is not unimodal at degree {k}: {list(dims_N[max(0, k - 2):k + 2])}"
            )


def jacobian_module_table(f: HomogeneousPoly, k_max: int | None = None) -> JacobianTable:
    G = graded(f)
    if k_max is None:
        k_max = G.T
    tau = total_tjurina(f)
    dims_J = tuple(G.jac_rank(k) for k in range(k_max + 1))
    dims_M = tuple(dim_s(k) - j for k, j in enumerate(dims_J))
    dims_I = tuple(G.saturation_dim(k) for k in range(k_max + 1))
    dims_N = tuple(i - j for i, j in zip(dims_I, dims_J))
    check_symmetry(dims_N, G.T)
    check_unimodality(dims_N, G.T)
    nonzero = [k for k, n in enumerate(dims_N) if n]
    return JacobianTable(
        degree=G.d,
        T=G.T,
        k_max=k_max,
        dims_J=dims_J,
        dims_M=dims_M,
        dims_I=dims_I,
        dims_N=dims_N,
        tau_total=tau,
        nu=max(dims_N, default=0),
        sigma=nonzero[0] if nonzero else None,
    )
