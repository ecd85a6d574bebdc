"""Exact rational and integer linear algebra.

All arithmetic is over ``fractions.Fraction`` and Python integers, so every
answer is a decision, not a numerical verdict.  Rank and forward elimination
use fraction-free (Bareiss) pivoting on integerized rows to keep intermediate
values small; the feasibility solver is a plain phase-1 simplex with Bland's
rule, which terminates on every input.

All values are immutable once constructed and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .errors import DimensionMismatch, NotFullRank

Vec = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(xs) -> Vec:
    return tuple(frac(x) for x in xs)


def dot(u, v) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatch(f"dot of lengths {len(u)} and {len(v)}")
    return sum((a * b for a, b in zip(u, v)), ZERO)


def mat_vec(rows, v):
    return tuple(dot(r, v) for r in rows)


def transpose(rows):
    return [list(col) for col in zip(*rows)]


@dataclass(frozen=True)
class RatMatrix:
    """Dense rational matrix, row-major entries, immutable."""

    rows: int
    cols: int
    entries: Vec

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch("negative shape")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        object.__setattr__(self, "entries", vec(self.entries))

    @classmethod
    def from_rows(cls, rows) -> "RatMatrix":
        rows = [list(r) for r in rows]
        m = len(rows)
        n = len(rows[0]) if rows else 0
        if any(len(r) != n for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(m, n, tuple(frac(x) for r in rows for x in r))

    def row(self, i) -> Vec:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix.from_rows(transpose(self.to_rows())) if self.rows and self.cols else RatMatrix(self.cols, self.rows, ())


def _rows_of(m) -> list[list[Fraction]]:
    if isinstance(m, RatMatrix):
        return m.to_rows()
    return [[frac(x) for x in r] for r in m]


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _integerize_rows(rows) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (rank/solution-set preserving)."""
    out = []
    for r in rows:
        scale = 1
        for x in r:
            f = frac(x)
            scale = _lcm(scale, f.denominator)
        out.append([int(frac(x) * scale) for x in r])
    return out


def _bareiss_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """In-place fraction-free echelon form; returns (rows, pivot column list)."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    piv_cols: list[int] = []
    r = 0
    prev = 1
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        for i in range(r + 1, m):
            fi = rows[i][c]
            row_i, row_r = rows[i], rows[r]
            for j in range(n):
                row_i[j] = (row_i[j] * pv - fi * row_r[j]) // prev
        prev = pv
        piv_cols.append(c)
        r += 1
    return rows, piv_cols


def rank(m) -> int:
    """Rank over the rationals, computed by fraction-free elimination."""
    rows = _rows_of(m)
    if not rows or not rows[0]:
        return 0
    _, piv = _bareiss_echelon(_integerize_rows(rows))
    return len(piv)


def solve(m, y) -> Optional[Vec]:
    """Some x with Mx = y, or None when the system is inconsistent.

    Forward pass is fraction-free on the integerized augmented matrix; free
    variables are fixed to zero, so the solution is unique exactly when M has
    full column rank.
    """
    rows = _rows_of(m)
    y = [frac(v) for v in y]
    if len(rows) != len(y):
        raise DimensionMismatch(f"{len(rows)} rows vs {len(y)} right-hand sides")
    if not rows:
        return ()
    n = len(rows[0])
    aug = _integerize_rows([r + [v] for r, v in zip(rows, y)])
    m_cnt = len(aug)
    piv_cols: list[int] = []
    r = 0
    prev = 1
    for c in range(n):
        if r == m_cnt:
            break
        p = next((i for i in range(r, m_cnt) if aug[i][c]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        pv = aug[r][c]
        for i in range(r + 1, m_cnt):
            fi = aug[i][c]
            row_i, row_r = aug[i], aug[r]
            for j in range(n + 1):
                row_i[j] = (row_i[j] * pv - fi * row_r[j]) // prev
        prev = pv
        piv_cols.append(c)
        r += 1
    for i in range(r, m_cnt):
        if aug[i][n]:
            return None
    x = [ZERO] * n
    for k in range(len(piv_cols) - 1, -1, -1):
        c = piv_cols[k]
        row = aug[k]
        s = Fraction(row[n])
        for j in range(c + 1, n):
            if row[j]:
                s -= row[j] * x[j]
        x[c] = s / row[c]
    return tuple(x)


def inverse_and_det(rows) -> Optional[tuple[list[list[Fraction]], Fraction]]:
    """(M^-1, det M) for square M, or None when singular."""
    a = _rows_of(rows)
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionMismatch("inverse of a non-square matrix")
    inv = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    det = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return None
        if p != c:
            a[c], a[p] = a[p], a[c]
            inv[c], inv[p] = inv[p], inv[c]
            det = -det
        pv = a[c][c]
        det *= pv
        if pv != 1:
            a[c] = [x / pv for x in a[c]]
            inv[c] = [x / pv for x in inv[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
                inv[i] = [x - f * y for x, y in zip(inv[i], inv[c])]
    return inv, det


def first_independent(vectors, d) -> Optional[list[int]]:
    """Indices of the first d linearly independent vectors, in given order."""
    basis_rows: list[list[Fraction]] = []
    piv: list[int] = []
    chosen: list[int] = []
    for idx, v in enumerate(vectors):
        if len(chosen) == d:
            break
        row = [frac(x) for x in v]
        for b, c in zip(basis_rows, piv):
            if row[c]:
                f = row[c]
                row = [x - f * y for x, y in zip(row, b)]
        c = next((j for j, x in enumerate(row) if x), None)
        if c is None:
            continue
        pv = row[c]
        row = [x / pv for x in row]
        basis_rows.append(row)
        piv.append(c)
        chosen.append(idx)
    return chosen if len(chosen) == d else None


# --- integer lattices ----------------------------------------------------


def _check_int_matrix(rows) -> list[list[int]]:
    out = []
    for r in rows:
        row = []
        for x in r:
            f = frac(x)
            if f.denominator != 1:
                raise ValueError("integer matrix required")
            row.append(int(f))
        out.append(row)
    if out and any(len(r) != len(out[0]) for r in out):
        raise DimensionMismatch("ragged rows")
    return out


def hnf(m) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style Hermite normal form H = U M with U unimodular.

    H is upper echelon with positive pivots; entries above each pivot are
    reduced into [0, pivot).  Zero rows sink to the bottom.
    """
    h = _check_int_matrix(_rows_of(m) if isinstance(m, RatMatrix) else m)
    rows_n = len(h)
    cols_n = len(h[0]) if h else 0
    u = [[1 if i == j else 0 for j in range(rows_n)] for i in range(rows_n)]
    r = 0
    for c in range(cols_n):
        if r == rows_n:
            break
        while True:
            nz = [i for i in range(r, rows_n) if h[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(h[i][c]), i))
            if p != r:
                h[r], h[p] = h[p], h[r]
                u[r], u[p] = u[p], u[r]
            done = True
            for i in range(r + 1, rows_n):
                if h[i][c]:
                    q = h[i][c] // h[r][c]
                    h[i] = [a - q * b for a, b in zip(h[i], h[r])]
                    u[i] = [a - q * b for a, b in zip(u[i], u[r])]
                    if h[i][c]:
                        done = False
            if done:
                break
        if h[r][c]:
            if h[r][c] < 0:
                h[r] = [-a for a in h[r]]
                u[r] = [-a for a in u[r]]
            for i in range(r):
                q = h[i][c] // h[r][c]
                if q:
                    h[i] = [a - q * b for a, b in zip(h[i], h[r])]
                    u[i] = [a - q * b for a, b in zip(u[i], u[r])]
            r += 1
    return h, u


@dataclass(frozen=True)
class IntLatticeBasis:
    """Linearly independent integer vectors generating a lattice."""

    vectors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        vs = tuple(tuple(int(x) for x in v) for v in self.vectors)
        object.__setattr__(self, "vectors", vs)
        if vs:
            d = len(vs[0])
            if any(len(v) != d for v in vs):
                raise DimensionMismatch("basis vectors of mixed dimension")
            if rank(vs) != len(vs):
                raise NotFullRank("basis vectors are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.vectors[0]) if self.vectors else 0


def _as_basis_rows(basis) -> list[list[int]]:
    if isinstance(basis, IntLatticeBasis):
        return [list(v) for v in basis.vectors]
    return _check_int_matrix(basis)


def lattice_member(basis, v) -> bool:
    """Whether v is an integer combination of the basis vectors."""
    rows = _as_basis_rows(basis)
    v = [int(x) for x in v]
    if not rows:
        return not any(v)
    if len(v) != len(rows[0]):
        raise DimensionMismatch(f"vector of length {len(v)} vs basis dimension {len(rows[0])}")
    h, _ = hnf(rows)
    res = list(v)
    for row in h:
        c = next((j for j, x in enumerate(row) if x), None)
        if c is None:
            break
        if res[c]:
            q, rem = divmod(res[c], row[c])
            if rem:
                return False
            res = [a - q * b for a, b in zip(res, row)]
    return not any(res)


def lattice_determinant(basis) -> int:
    """|det| of a square basis (d vectors in dimension d)."""
    rows = _as_basis_rows(basis)
    if not rows or len(rows) != len(rows[0]):
        raise NotFullRank("determinant needs d independent vectors in dimension d")
    h, _ = hnf(rows)
    det = 1
    for i in range(len(rows)):
        p = next((x for x in h[i] if x), 0)
        if p == 0:
            raise NotFullRank("basis vectors are linearly dependent")
        det *= p
    return abs(det)


def lattice_determinant_rect(gens) -> int:
    """Determinant of the lattice spanned by full-column-rank generators (k >= d)."""
    rows = _as_basis_rows(gens)
    if not rows:
        raise NotFullRank("empty generator list")
    d = len(rows[0])
    h, _ = hnf(rows)
    det = 1
    for i in range(d):
        if i >= len(h) or not any(h[i]):
            raise NotFullRank("generators do not span")
        p = next(x for x in h[i] if x)
        det *= p
    return abs(det)


# --- exact LP feasibility -------------------------------------------------


def lp_feasible(aeq, beq, nonneg: Sequence[bool]) -> Optional[Vec]:
    """A point of {x : Aeq x = beq, x_i >= 0 for flagged i}, or None.

    Phase-1 simplex over Fractions with Bland's rule (entering: least index
    with negative reduced cost; leaving: least basic index among tied
    ratios), so the search cannot cycle and the answer is exact.
    """
    rows = _rows_of(aeq)
    b = [frac(v) for v in beq]
    if len(rows) != len(b):
        raise DimensionMismatch(f"{len(rows)} rows vs {len(b)} right-hand sides")
    n = len(rows[0]) if rows else 0
    if any(len(r) != n for r in rows):
        raise DimensionMismatch("ragged rows")
    if len(nonneg) != n:
        raise DimensionMismatch(f"{len(nonneg)} sign flags for {n} variables")
    if not rows:
        return ()

    # split free variables into positive parts: x_i = u_i - w_i
    col_of: list[tuple[int, int]] = []  # (original var, sign)
    for j in range(n):
        col_of.append((j, 1))
    for j in range(n):
        if not nonneg[j]:
            col_of.append((j, -1))
    ncols = len(col_of)

    m = len(rows)
    tab = []
    for i in range(m):
        row = [rows[i][j] * s for (j, s) in col_of]
        rhs = b[i]
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        tab.append(row + [rhs])

    # artificial basis
    total = ncols + m
    for i in range(m):
        ext = [ZERO] * m
        ext[i] = ONE
        tab[i] = tab[i][:ncols] + ext + [tab[i][ncols]]
    basis = [ncols + i for i in range(m)]

    # reduced costs for min sum of artificials
    red = [ZERO] * (total + 1)
    for i in range(m):
        for j in range(total + 1):
            red[j] -= tab[i][j]
    for i in range(m):
        red[ncols + i] += ONE

    while True:
        enter = next((j for j in range(total) if red[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            coef = tab[i][enter]
            if coef > 0:
                ratio = tab[i][total] / coef
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < best[1]):
                    best = (ratio, basis[i], i)
        if best is None:
            raise RuntimeError("phase-1 objective unbounded; inconsistent tableau")
        leave = best[2]
        pv = tab[leave][enter]
        tab[leave] = [x / pv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        if red[enter]:
            f = red[enter]
            red = [x - f * y for x, y in zip(red, tab[leave])]
        basis[leave] = enter

    if -red[total] != 0:
        return None

    x = [ZERO] * n
    for i, bv in enumerate(basis):
        if bv < ncols:
            j, s = col_of[bv]
            x[j] += s * tab[i][total]
    return tuple(x)
