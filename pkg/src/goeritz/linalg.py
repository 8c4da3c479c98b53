"""Exact integer linear algebra: Smith normal form and kernels over
finitely generated abelian coefficient groups.

All arithmetic is on Python ints, so entries never overflow.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from functools import reduce
from math import gcd, prod

import numpy as np

DEFAULT_ENUM_CAP = 10**6


def enumeration_cap():
    """Largest number of candidate vectors brute force may visit."""
    return int(os.environ.get("GOERITZ_ENUM_CAP", DEFAULT_ENUM_CAP))


class CapExceeded(RuntimeError):
    code = "CAP_EXCEEDED"

    def __init__(self, candidates, cap):
        self.candidates = candidates
        self.cap = cap
        super().__init__(
            f"CAP_EXCEEDED: {candidates} candidates > cap {cap}; "
            "use solution_count_mod_m for the Smith normal form count"
        )


class IntMatrix:
    """Immutable dense matrix of exact integers."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, ncols=None):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if isinstance(other, IntMatrix):
            return self.shape == other.shape and self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash((self.rows, self.ncols))

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]!r}, ncols={self.ncols})"

    def tolist(self):
        return [list(r) for r in self.rows]

    def transpose(self):
        return IntMatrix(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.nrows,
        )

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.transpose().rows
            return IntMatrix(
                [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows],
                other.ncols,
            )
        vec = tuple(other)
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self.rows)

    def det(self):
        """Determinant by fraction-free (Bareiss) elimination."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("det of a non-square matrix")
        if n == 0:
            return 1
        a = [list(r) for r in self.rows]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k]), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SnfResult:
    """``U @ M @ V == diagonal`` with ``U``, ``V`` unimodular."""

    diag: tuple  # d_1 | d_2 | ... | d_r (positive), then zeros up to min(shape)
    U: IntMatrix
    V: IntMatrix
    shape: tuple

    @property
    def rank(self):
        return sum(1 for x in self.diag if x)

    @property
    def nonzero(self):
        return tuple(x for x in self.diag if x)

    def diagonal_matrix(self):
        m, n = self.shape
        return IntMatrix(
            [[self.diag[i] if i == j else 0 for j in range(n)] for i in range(m)], n
        )


def smith_normal_form(M):
    """Smith normal form with unimodular transforms.

    Pivots are chosen as the entry of smallest absolute value in the active
    submatrix, ties broken by lowest (row, column) index.
    """
    if not isinstance(M, IntMatrix):
        M = IntMatrix(M)
    m, n = M.shape
    a = [list(r) for r in M.rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row dst += q * row src
        if q:
            a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
            U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col dst += q * col src
        if q:
            for r in a:
                r[dst] += q * r[src]
            for r in V:
                r[dst] += q * r[src]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    x = a[i][j]
                    if x and (pivot is None or abs(x) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                q = a[i][t] // p
                add_row(i, t, -q)
                clean = clean and a[i][t] == 0
            for j in range(t + 1, n):
                q = a[t][j] // p
                add_col(j, t, -q)
                clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(
                (
                    i
                    for i in range(t + 1, m)
                    if any(a[i][j] % p for j in range(t + 1, n))
                ),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if pivot is None:
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    diag = tuple(a[i][i] for i in range(min(m, n)))
    return SnfResult(diag, IntMatrix(U, m), IntMatrix(V, n), (m, n))


@dataclass(frozen=True)
class FgAbelianGroup:
    """``Z^free_rank + Z/m_1 + ... + Z/m_k`` with ``m_1 | m_2 | ... | m_k``."""

    invariant_factors: tuple = ()
    free_rank: int = 0

    def __post_init__(self):
        f = tuple(self.invariant_factors)
        if any(x < 2 for x in f) or any(b % a for a, b in zip(f, f[1:])):
            raise ValueError(f"not an invariant factor chain: {f}")
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        object.__setattr__(self, "invariant_factors", f)

    @classmethod
    def trivial(cls):
        return cls()

    @classmethod
    def Z(cls, rank=1):
        return cls((), rank)

    @classmethod
    def cyclic(cls, m):
        return group_normal_form([m])

    @classmethod
    def parse(cls, text):
        return parse_group(text)

    @property
    def order(self):
        """Number of elements, or ``None`` when infinite."""
        return None if self.free_rank else prod(self.invariant_factors)

    @property
    def is_trivial(self):
        return not self.free_rank and not self.invariant_factors

    def cyclic_orders(self):
        """Orders of the cyclic summands; 0 stands for a copy of Z."""
        return [0] * self.free_rank + list(self.invariant_factors)

    def __add__(self, other):
        return direct_sum(self, other)

    def power(self, k):
        if k < 0:
            raise ValueError("negative power")
        return group_normal_form(self.cyclic_orders() * k)

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{m}" for m in self.invariant_factors)
        return " + ".join(parts) if parts else "0"

    def to_dict(self):
        return {
            "invariant_factors": list(self.invariant_factors),
            "free_rank": self.free_rank,
        }


def group_normal_form(orders, free_rank=0):
    """Canonical form of ``Z^free_rank`` plus cyclic groups of the given orders.

    An order of 0 is a copy of Z; orders of 1 are dropped.  Invariant
    factors come from pairwise gcd/lcm exchange, which equals the primary
    decomposition regrouped by largest prime powers.
    """
    free = free_rank + sum(1 for m in orders if m == 0)
    f = sorted(abs(m) for m in orders if abs(m) > 1)
    for i in range(len(f)):
        for j in range(i + 1, len(f)):
            g = gcd(f[i], f[j])
            f[i], f[j] = g, f[i] * f[j] // g
    return FgAbelianGroup(tuple(x for x in f if x > 1), free)


def direct_sum(*groups):
    orders = [m for g in groups for m in g.cyclic_orders()]
    return group_normal_form(orders)


def groups_isomorphic(g1, g2):
    return (
        g1.invariant_factors == g2.invariant_factors
        and g1.free_rank == g2.free_rank
    )


_TERM = re.compile(
    r"^(?:0|Z(?:\^(\d+))?|Z/(\d+)|\(Z/(\d+)\)(?:\^(\d+))?)$"
)


def parse_group(text):
    """Parse ``Z^k + Z/m + (Z/n)^j + ...`` into a canonical group.

    ``Z/m^k`` is rejected as ambiguous; write ``(Z/m)^k`` or ``Z/M``.
    """
    orders = []
    for raw in text.replace(" ", "").split("+"):
        m = _TERM.match(raw)
        if not raw or not m:
            raise ValueError(f"bad group term {raw!r} in {text!r}")
        zrank, cyc, pcyc, pexp = m.groups()
        if raw == "0":
            continue
        if (cyc or pcyc) is not None and int(cyc or pcyc) == 0:
            raise ValueError(f"Z/0 in {text!r}; write Z for the integers")
        if cyc is not None:
            orders.append(int(cyc))
        elif pcyc is not None:
            orders += [int(pcyc)] * int(pexp or 1)
        else:
            orders += [0] * int(zrank or 1)
    return group_normal_form(orders)


def _torsion_of_cyclic(order, d):
    """Order of the d-torsion subgroup ``{x : d x = 0}`` of Z/order (0 means Z)."""
    if order == 0:
        return 0 if d == 0 else 1
    return order if d == 0 else gcd(d, order)


def kernel_structure(M, A):
    """Isomorphism class of ``{v in A^cols : M v = 0}``."""
    if not isinstance(M, IntMatrix):
        M = IntMatrix(M)
    snf = smith_normal_form(M)
    ds = list(snf.nonzero) + [0] * (M.ncols - snf.rank)
    orders = [_torsion_of_cyclic(a, d) for a in A.cyclic_orders() for d in ds]
    return group_normal_form(orders)


def solution_count_mod_m(M, m):
    """Exact number of ``v in (Z/m)^cols`` with ``M v = 0 (mod m)``."""
    if not isinstance(M, IntMatrix):
        M = IntMatrix(M)
    snf = smith_normal_form(M)
    return prod(gcd(d, m) for d in snf.nonzero) * m ** (M.ncols - snf.rank)


@dataclass(frozen=True)
class ModVector:
    modulus: int
    entries: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "entries", tuple(int(x) % self.modulus for x in self.entries)
        )

    def __add__(self, other):
        return ModVector(
            self.modulus, tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def scale(self, k):
        return ModVector(self.modulus, tuple(k * a for a in self.entries))

    def is_zero(self):
        return not any(self.entries)


def kernel_basis_mod_m(M, m):
    """Generators of ``{v : M v = 0 (mod m)}`` read off the column transform."""
    if not isinstance(M, IntMatrix):
        M = IntMatrix(M)
    snf = smith_normal_form(M)
    V = snf.V
    out = []
    for j in range(M.ncols):
        d = snf.diag[j] if j < len(snf.diag) else 0
        scale = m // gcd(d, m) if d else 1
        v = ModVector(m, tuple(scale * V.rows[i][j] for i in range(M.ncols)))
        if not v.is_zero():
            out.append(v)
    return out


def in_kernel_mod_m(M, v, m):
    return all(x % m == 0 for x in M @ v)


def enumerate_solutions_mod_m(M, m, cap=None):
    """Every ``v in (Z/m)^cols`` with ``M v = 0 (mod m)``, by exhaustive search.

    Returns an integer array of shape ``(count, cols)``.  Raises
    :class:`CapExceeded` when ``m ** cols`` exceeds the cap.
    """
    if not isinstance(M, IntMatrix):
        M = IntMatrix(M)
    cap = enumeration_cap() if cap is None else cap
    k = M.ncols
    total = m**k
    if total > cap:
        raise CapExceeded(total, cap)
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    mt = np.array([[x % m for x in r] for r in M.rows], dtype=np.int64).reshape(
        M.nrows, k
    ).T
    powers = m ** np.arange(k, dtype=np.int64)
    found = []
    chunk = 1 << 17
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        cand = (idx[:, None] // powers) % m
        ok = ~((cand @ mt) % m).any(axis=1)
        found.append(cand[ok])
    return np.concatenate(found)


def count_solutions_brute(M, m, cap=None):
    return len(enumerate_solutions_mod_m(M, m, cap))


def rank_mod_p(vectors, p):
    """Rank of a list of integer vectors over the prime field Z/p."""
    rows = [[x % p for x in v] for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def gcd_all(values):
    return reduce(gcd, values, 0)
