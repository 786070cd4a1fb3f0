"""Exact linear algebra over Q, cyclotomic fields, Z and F_p.

Matrices are plain lists of rows. Rational ranks go through fraction-free
(Bareiss) elimination on integer-scaled rows; cyclotomic systems use
Gauss-Jordan elimination over the field. Integer lattices are handled with a
row Hermite normal form and Pfaffians with skew-symmetric (Parlett-Reid)
elimination. Large sparse ranks over F_p use an online echelon basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from sympy import isprime

from .cyclo import Cyclotomic, dot

Matrix = list[list]


class LinalgError(ValueError):
    """Raised for malformed matrices or inconsistent systems."""


# ── Helpers ─────────────────────────────────────────────────────────


def shape(m: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    for row in m:
        if len(row) != cols:
            raise LinalgError("Ragged matrix")
    return rows, cols


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*m)]


def is_rational_matrix(m: Sequence[Sequence]) -> bool:
    return all(isinstance(x, (int, Fraction)) for row in m for x in row)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    """Product of two matrices over Q or a cyclotomic field."""
    if a and b and len(a[0]) != len(b):
        raise LinalgError(f"Cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    cols = transpose(b)
    if is_rational_matrix(a) and is_rational_matrix(b):
        return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]
    return [[dot(row, col) for col in cols] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    if is_rational_matrix(a) and all(isinstance(x, (int, Fraction)) for x in v):
        return [sum(x * y for x, y in zip(row, v)) for row in a]
    return [dot(row, v) for row in a]


def _integer_rows(m: Sequence[Sequence]) -> tuple[list[list[int]], list[int]]:
    """Scale every row by the lcm of its denominators; return rows and scales."""
    rows, scales = [], []
    for row in m:
        scale = 1
        for x in row:
            if isinstance(x, Fraction):
                scale = scale * x.denominator // math.gcd(scale, x.denominator)
        rows.append([int(x * scale) for x in row])
        scales.append(scale)
    return rows, scales


# ── Bareiss elimination ─────────────────────────────────────────────


def _bareiss_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form with column skipping.

    Returns the echelon rows (one per pivot) and the pivot columns. All
    divisions by the previous pivot are exact.
    """
    a = [row[:] for row in rows]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    prev, r = 1, 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        top = a[r]
        p = top[c]
        for i in range(r + 1, nrows):
            row = a[i]
            q = row[c]
            if q:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - q * top[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j]) // prev
            row[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _gauss_jordan(m: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over any exact field (Fraction or Cyclotomic)."""
    a = [[x if isinstance(x, Cyclotomic) else Fraction(x) for x in row] for row in m]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


# ── Operations ──────────────────────────────────────────────────────


def rank_kernel(m: Sequence[Sequence]) -> tuple[int, list[list]]:
    """Rank of m and a basis of its right kernel {x : m x = 0}."""
    nrows, ncols = shape(m)
    if nrows == 0:
        return 0, [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    if is_rational_matrix(m):
        echelon, pivots = _bareiss_echelon(_integer_rows(m)[0])
        free = [c for c in range(ncols) if c not in set(pivots)]
        kernel = []
        for f in free:
            x: list = [Fraction(0)] * ncols
            x[f] = Fraction(1)
            for k in range(len(pivots) - 1, -1, -1):
                row, pc = echelon[k], pivots[k]
                s = sum(row[j] * x[j] for j in range(pc + 1, ncols) if x[j])
                x[pc] = Fraction(-s, row[pc])
            kernel.append([int(v) if v.denominator == 1 else v for v in x])
        return len(pivots), kernel
    reduced, pivots = _gauss_jordan(m)
    pivot_set = set(pivots)
    kernel = []
    for f in (c for c in range(ncols) if c not in pivot_set):
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            x[pc] = -row[f]
        kernel.append(x)
    return len(pivots), kernel


def rank(m: Sequence[Sequence]) -> int:
    """Rank over Q (Bareiss) or over a cyclotomic field (Gauss-Jordan)."""
    if not m:
        return 0
    if is_rational_matrix(m):
        return len(_bareiss_echelon(_integer_rows(m)[0])[1])
    return len(_gauss_jordan(m)[1])


def rref(m: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    shape(m)
    return _gauss_jordan(m)


def solve_linear(a: Sequence[Sequence], b: Sequence) -> list:
    """A solution x of a x = b; free variables are set to zero.

    Raises LinalgError if the system is inconsistent.
    """
    nrows, ncols = shape(a)
    if len(b) != nrows:
        raise LinalgError(f"Right-hand side has length {len(b)}, expected {nrows}")
    augmented = [list(row) + [rhs] for row, rhs in zip(a, b)]
    reduced, pivots = _gauss_jordan(augmented)
    if pivots and pivots[-1] == ncols:
        raise LinalgError("Inconsistent linear system")
    x: list = [0] * ncols
    for row, pc in zip(reduced, pivots):
        x[pc] = row[ncols]
    return [v.numerator if isinstance(v, Fraction) and v.denominator == 1 else v for v in x]


def determinant(m: Sequence[Sequence]):
    nrows, ncols = shape(m)
    if nrows != ncols:
        raise LinalgError(f"Determinant of non-square {nrows}x{ncols} matrix")
    if nrows == 0:
        return 1
    if is_rational_matrix(m):
        rows, scales = _integer_rows(m)
        sign, prev = 1, 1
        a = rows
        n = nrows
        for k in range(n - 1):
            pivot = next((i for i in range(k, n) if a[i][k]), None)
            if pivot is None:
                return 0
            if pivot != k:
                a[k], a[pivot] = a[pivot], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        value = Fraction(sign * a[n - 1][n - 1], math.prod(scales))
        return value.numerator if value.denominator == 1 else value
    a = [list(row) for row in m]
    result = Cyclotomic(1, ((0, 1),))
    for k in range(nrows):
        pivot = next((i for i in range(k, nrows) if a[i][k]), None)
        if pivot is None:
            return Cyclotomic(1)
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            result = -result
        result = result * a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, nrows):
            if a[i][k]:
                f = a[i][k] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return result


def inverse(m: Sequence[Sequence]) -> Matrix:
    n, cols = shape(m)
    if n != cols:
        raise LinalgError(f"Inverse of non-square {n}x{cols} matrix")
    augmented = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(m)]
    reduced, pivots = _gauss_jordan(augmented)
    if pivots != list(range(n)):
        raise LinalgError("Singular matrix")
    return [row[n:] for row in reduced]


# ── Integer lattices ────────────────────────────────────────────────


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (x, y, g) with x*a + y*b == g == gcd(a, b) >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def hnf(m: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row Hermite normal form h of an integer matrix, with u @ m == h.

    Pivots are positive, entries above a pivot lie in [0, pivot) and zero rows
    sit at the bottom. u is unimodular.
    """
    nrows, ncols = shape(m)
    a = [[int(x) for x in row] + [1 if i == j else 0 for j in range(nrows)] for i, row in enumerate(m)]
    width = ncols + nrows
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(r + 1, nrows):
            b = a[i][c]
            if not b:
                continue
            top = a[r][c]
            x, y, g = xgcd(top, b)
            ag, bg = top // g, b // g
            row_r, row_i = a[r], a[i]
            a[r] = [x * u + y * v for u, v in zip(row_r, row_i)]
            a[i] = [ag * v - bg * u for u, v in zip(row_r, row_i)]
        if a[r][c] < 0:
            a[r] = [-v for v in a[r]]
        p = a[r][c]
        for k in range(r):
            q = a[k][c] // p
            if q:
                a[k] = [u - q * v for u, v in zip(a[k], a[r])]
        r += 1
    h = [row[:ncols] for row in a]
    u = [row[ncols:width] for row in a]
    return h, u


def hnf_basis(m: Sequence[Sequence[int]]) -> list[list[int]]:
    """Nonzero rows of the HNF: a canonical basis of the row lattice."""
    h, _ = hnf(m)
    return [row for row in h if any(row)]


# ── Pfaffian ────────────────────────────────────────────────────────


def pfaffian(m: Sequence[Sequence]) -> int | Fraction:
    """Pfaffian of an antisymmetric rational matrix (Parlett-Reid elimination)."""
    n, cols = shape(m)
    if n != cols:
        raise LinalgError(f"Pfaffian needs a square matrix, got {n}x{cols}")
    if n % 2:
        raise LinalgError(f"Pfaffian needs even dimension, got {n}")
    a = [[Fraction(x) for x in row] for row in m]
    for i in range(n):
        for j in range(i, n):
            if a[i][j] != -a[j][i]:
                raise LinalgError(f"Matrix is not antisymmetric at ({i}, {j})")
    pf = Fraction(1)
    for k in range(0, n - 1, 2):
        kp = next((i for i in range(k + 1, n) if a[k][i]), None)
        if kp is None:
            return 0
        if kp != k + 1:
            a[k + 1], a[kp] = a[kp], a[k + 1]
            for row in a:
                row[k + 1], row[kp] = row[kp], row[k + 1]
            pf = -pf
        pivot = a[k][k + 1]
        pf *= pivot
        tau = [a[k][j] / pivot for j in range(k + 2, n)]
        col = [a[i][k + 1] for i in range(k + 2, n)]
        for ii, i in enumerate(range(k + 2, n)):
            row = a[i]
            for jj, j in enumerate(range(k + 2, n)):
                row[j] += tau[ii] * col[jj] - col[ii] * tau[jj]
    return pf.numerator if pf.denominator == 1 else pf


# ── Sparse rank over F_p ────────────────────────────────────────────


@dataclass
class SparseMatrixFp:
    """Rows stored as sorted (column, value) lists with values in [1, p-1]."""
    p: int
    ncols: int
    rows: list[list[tuple[int, int]]] = field(default_factory=list)

    def __post_init__(self):
        if not isprime(self.p):
            raise LinalgError(f"Modulus {self.p} is not prime")

    def add_row(self, entries: dict[int, int]) -> None:
        row = sorted((c, v % self.p) for c, v in entries.items() if v % self.p)
        if row:
            self.rows.append(row)

    @classmethod
    def from_dense(cls, m: Sequence[Sequence[int]], p: int) -> SparseMatrixFp:
        _, ncols = shape(m)
        sparse = cls(p=p, ncols=ncols)
        for row in m:
            sparse.add_row(dict(enumerate(row)))
        return sparse

    def to_dense(self) -> list[list[int]]:
        dense = []
        for row in self.rows:
            out = [0] * self.ncols
            for c, v in row:
                out[c] = v
            dense.append(out)
        return dense


def sparse_rank_fp(m: SparseMatrixFp) -> int:
    """Exact rank over F_p by online echelon reduction.

    Rows are processed shortest first. Each stored pivot row has leading
    coefficient 1 at its lowest column.
    """
    p = m.p
    pivots: dict[int, dict[int, int]] = {}
    for entries in sorted(m.rows, key=len):
        row = {c: v for c, v in entries}
        while row:
            lead = min(row)
            basis_row = pivots.get(lead)
            if basis_row is None:
                inv = pow(row[lead], -1, p)
                pivots[lead] = {c: (v * inv) % p for c, v in row.items()}
                break
            f = row[lead]
            for c, v in basis_row.items():
                value = (row.get(c, 0) - f * v) % p
                if value:
                    row[c] = value
                else:
                    row.pop(c, None)
        if len(pivots) == m.ncols:
            break
    return len(pivots)


def dense_rank_fp(m: Sequence[Sequence[int]], p: int) -> int:
    """Dense elimination over F_p with numpy rows; the oracle for sparse_rank_fp."""
    if p >= 2**31:
        raise LinalgError(f"Modulus {p} too large for int64 elimination")
    a = np.array(m, dtype=np.int64) % p
    if a.size == 0:
        return 0
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        nonzero = np.nonzero(a[r:, c])[0]
        if nonzero.size == 0:
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            a[[r, pivot], :] = a[[pivot, r], :]
        inv = pow(int(a[r, c]), -1, p)
        a[r, :] = (a[r, :] * inv) % p
        for i in range(r + 1, nrows):
            f = int(a[i, c])
            if f:
                a[i, :] = (a[i, :] - f * a[r, :]) % p
        r += 1
        if r == nrows:
            break
    return r
