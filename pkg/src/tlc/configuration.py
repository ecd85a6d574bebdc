"""Two-level configurations and their closure algebra.

A configuration is a pair (A, B) of rational vector sets spanning R^d whose
pairwise inner products are all 0 or 1.  The closure of a spanning set X is
the finite set of all vectors with product 0/1 against every member of X;
iterating closure from any spanning seed reaches a fixed pair (a maximal
configuration), and the 0/1 matrix of products is its slack matrix.

Vector sets are kept sorted in a fixed lexicographic order on exact
rationals, so slack matrices and all downstream canonical forms are
deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from . import linalg
from .errors import (
    DegenerateSeed,
    DimensionMismatch,
    NonBinarySlack,
    NotSpanning,
    ParseError,
    RepeatedLine,
)
from .linalg import Vec, frac, vec

SIDE_A = "A"
SIDE_B = "B"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class BinaryMatrix:
    """0/1 matrix, row-major bits.  Distinctness of lines is not enforced here."""

    rows: int
    cols: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch("negative shape")
        bits = tuple(int(b) for b in self.bits)
        if len(bits) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} bits, got {len(bits)}"
            )
        if any(b not in (0, 1) for b in bits):
            raise ValueError("entries must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_rows(cls, rows) -> "BinaryMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        m = len(rows)
        n = len(rows[0]) if rows else 0
        if any(len(r) != n for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(m, n, tuple(x for r in rows for x in r))

    def row_bits(self, i) -> tuple[int, ...]:
        return self.bits[i * self.cols:(i + 1) * self.cols]

    def col_bits(self, j) -> tuple[int, ...]:
        return tuple(self.bits[i * self.cols + j] for i in range(self.rows))

    def row_tuples(self) -> list[tuple[int, ...]]:
        return [self.row_bits(i) for i in range(self.rows)]

    def col_tuples(self) -> list[tuple[int, ...]]:
        return [self.col_bits(j) for j in range(self.cols)]

    def transpose(self) -> "BinaryMatrix":
        return BinaryMatrix.from_rows(self.col_tuples()) if self.rows * self.cols else BinaryMatrix(self.cols, self.rows, ())

    def distinct_lines(self) -> bool:
        rows = self.row_tuples()
        cols = self.col_tuples()
        return len(set(rows)) == len(rows) and len(set(cols)) == len(cols)

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        lines.extend("".join(str(b) for b in self.row_bits(i)) for i in range(self.rows))
        return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> BinaryMatrix:
    """Parse the matrix text format: header ``m n`` then m lines of n bits."""
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty input", line=1)
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError("header must be 'm n'", line=1)
    try:
        m, n = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError("header must be two integers", line=1) from None
    if m < 0 or n < 0:
        raise ParseError("negative shape", line=1)
    bits: list[int] = []
    for i in range(m):
        if 1 + i >= len(lines):
            raise ParseError(f"expected {m} bit rows, found {i}", line=len(lines))
        row = lines[1 + i].rstrip()
        if len(row) != n:
            raise ParseError(f"expected {n} characters", line=2 + i, column=len(row) + 1)
        for j, ch in enumerate(row):
            if ch not in "01":
                raise ParseError(f"invalid character {ch!r}", line=2 + i, column=j + 1)
            bits.append(int(ch))
    for extra in lines[1 + m:]:
        if extra.strip():
            raise ParseError("trailing content after matrix", line=2 + m)
    return BinaryMatrix(m, n, tuple(bits))


def emit_matrix(m: BinaryMatrix) -> str:
    return m.to_text()


@dataclass(frozen=True)
class SlackMatrix:
    """Product matrix of a configuration, with the vectors that label its lines."""

    matrix: BinaryMatrix
    row_labels: tuple[Vec, ...]
    col_labels: tuple[Vec, ...]

    def __post_init__(self):
        if len(self.row_labels) != self.matrix.rows or len(self.col_labels) != self.matrix.cols:
            raise DimensionMismatch("label counts do not match matrix shape")


@dataclass(frozen=True)
class Configuration:
    """Pair (A, B) of spanning vector sets with all pairwise products in {0,1}."""

    d: int
    A: tuple[Vec, ...]
    B: tuple[Vec, ...]
    _maximal: Optional[bool] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.d < 1:
            raise DimensionMismatch("dimension must be at least 1")
        a = tuple(sorted(set(vec(v) for v in self.A)))
        b = tuple(sorted(set(vec(v) for v in self.B)))
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "B", b)
        for side, name in ((a, "A"), (b, "B")):
            if any(len(v) != self.d for v in side):
                raise DimensionMismatch(f"side {name} has vectors of wrong dimension")
            if not spans(side, self.d):
                raise NotSpanning(f"side {name} does not span R^{self.d}")
        for av in a:
            for bv in b:
                p = linalg.dot(av, bv)
                if p != _ZERO and p != _ONE:
                    raise NonBinarySlack(f"product {p} of {av} and {bv}")

    def is_maximal(self) -> bool:
        """Whether A and B are each other's closures.  Cached; fill is idempotent."""
        if self._maximal is None:
            value = closure(self.B, self.d) == self.A and closure(self.A, self.d) == self.B
            object.__setattr__(self, "_maximal", value)
        return self._maximal


def spans(vectors, d: int) -> bool:
    return bool(vectors) and linalg.rank([list(v) for v in vectors]) == d


def closure(vectors, d: int) -> tuple[Vec, ...]:
    """All y with <y, x> in {0,1} for every x in the spanning family.

    Picks the first d independent vectors (in sorted order) as a basis, solves
    the 2^d sign patterns for y, and keeps the solutions whose products with
    the remaining vectors are 0/1.  The computation is integerized: with all
    inputs scaled by a common denominator L and the basis adjugate taken over
    the integers, every filter test is an integer comparison.
    """
    vs = sorted(set(vec(v) for v in vectors))
    if not vs:
        raise NotSpanning("empty family")
    if any(len(v) != d for v in vs):
        raise DimensionMismatch("vectors of wrong dimension")

    scale = 1
    for v in vs:
        for x in v:
            scale = scale // gcd(scale, x.denominator) * x.denominator
    ints = [tuple(int(x * scale) for x in v) for v in vs]

    basis_idx = linalg.first_independent(ints, d)
    if basis_idx is None:
        raise NotSpanning(f"family does not span R^{d}")
    basis_set = set(basis_idx)
    mhat = [list(ints[i]) for i in basis_idx]
    inv_det = linalg.inverse_and_det(mhat)
    assert inv_det is not None
    inv, det = inv_det
    delta = int(det)
    # adjugate columns: adj = inv * det, integral for an integer matrix
    adj_cols = []
    for i in range(d):
        col = []
        for r in range(d):
            e = inv[r][i] * det
            assert e.denominator == 1
            col.append(int(e))
        adj_cols.append(col)

    rest = [ints[j] for j in range(len(ints)) if j not in basis_set]
    target = delta * scale
    out: list[Vec] = []
    for mask in range(1 << d):
        yhat = [0] * d
        mm = mask
        i = 0
        while mm:
            if mm & 1:
                col = adj_cols[i]
                for r in range(d):
                    yhat[r] += col[r]
            mm >>= 1
            i += 1
        if mask:
            yhat = [scale * x for x in yhat]
        ok = True
        for x in rest:
            s = 0
            for a, b in zip(yhat, x):
                if a and b:
                    s += a * b
            if s != 0 and s != target:
                ok = False
                break
        if ok:
            out.append(tuple(Fraction(y, delta) for y in yhat))
    return tuple(sorted(out))


def maximal_completion(seed, d: int) -> Configuration:
    """The maximal configuration generated by a spanning seed on the B side.

    A := closure(seed); B := closure(A).  The pair is a closure fixed point,
    and B contains the seed.  If closure(seed) fails to span, the seed is
    rejected rather than silently patched.
    """
    a = closure(seed, d)
    if not spans(a, d):
        raise DegenerateSeed(f"closure of the seed does not span R^{d}")
    b = closure(a, d)
    cfg = Configuration(d, a, b)
    object.__setattr__(cfg, "_maximal", True)
    return cfg


def slack_matrix(cfg: Configuration) -> SlackMatrix:
    """Matrix of all pairwise products, lines ordered by the sorted vectors."""
    bits = []
    for a in cfg.A:
        for b in cfg.B:
            p = linalg.dot(a, b)
            if p == _ZERO:
                bits.append(0)
            elif p == _ONE:
                bits.append(1)
            else:
                raise NonBinarySlack(f"product {p} of {a} and {b}")
    m = BinaryMatrix(len(cfg.A), len(cfg.B), tuple(bits))
    return SlackMatrix(m, cfg.A, cfg.B)


def from_slack_matrix(m: BinaryMatrix) -> Configuration:
    """A configuration whose slack matrix is m up to row/column order.

    Rank-factorizes m: the first d independent rows form the column labels,
    and each row's coefficient vector over that basis becomes a row label.
    Permutation-equivalent inputs give linearly equivalent outputs.
    """
    if not m.distinct_lines():
        raise RepeatedLine("slack matrices have no repeated row or column")
    rows = m.row_tuples()
    d = linalg.rank(rows)
    if d == 0:
        raise NotSpanning("zero matrix has no configuration")
    basis_idx = linalg.first_independent(rows, d)
    assert basis_idx is not None
    r = [rows[i] for i in basis_idx]
    rt = [[Fraction(r[i][j]) for i in range(d)] for j in range(m.cols)]
    b_side = [vec(col) for col in zip(*r)]
    a_side = []
    for i in range(m.rows):
        coeff = linalg.solve(rt, [Fraction(x) for x in rows[i]])
        assert coeff is not None
        a_side.append(coeff)
    return Configuration(d, tuple(a_side), tuple(b_side))


def is_maximal_in_md(m: BinaryMatrix) -> bool:
    """Whether m is a maximal 0/1 matrix of its rank class.

    Equivalent to submatrix-maximality: m must have distinct lines, positive
    rank, and a rank factorization (A, B) with closure(B) = A and
    closure(A) = B.  Any strictly larger matrix would add a closure vector.
    """
    if m.rows == 0 or m.cols == 0:
        return False
    if not m.distinct_lines():
        return False
    if linalg.rank(m.row_tuples()) == 0:
        return False
    cfg = from_slack_matrix(m)
    return cfg.is_maximal()


def normalization_basis(cfg: Configuration, side: str) -> tuple[Vec, ...]:
    """The first d independent vectors of the side opposite to the one normalized."""
    opp = cfg.B if side == SIDE_A else cfg.A
    idx = linalg.first_independent(opp, cfg.d)
    if idx is None:
        raise NotSpanning("opposite side does not span")
    return tuple(opp[i] for i in idx)


def normalize_to_binary(cfg: Configuration, side: str) -> Configuration:
    """Linearly equivalent configuration with the chosen side inside {0,1}^d.

    Basing the transform on the first d independent vectors of the opposite
    side sends those vectors to e_1..e_d, which forces the chosen side to be
    0/1 coordinate vectors while preserving every product exactly.
    """
    if side not in (SIDE_A, SIDE_B):
        raise ValueError(f"side must be {SIDE_A!r} or {SIDE_B!r}")
    basis = normalization_basis(cfg, side)
    t_rows = [list(col) for col in zip(*basis)]  # T has the basis as columns
    inv_det = linalg.inverse_and_det(t_rows)
    assert inv_det is not None
    t_inv, _ = inv_det
    tt_rows = [list(b) for b in basis]  # rows of T^T

    def apply(rows, v):
        return linalg.mat_vec(rows, v)

    if side == SIDE_A:
        new_a = [apply(tt_rows, a) for a in cfg.A]
        new_b = [apply(t_inv, b) for b in cfg.B]
    else:
        new_a = [apply(t_inv, a) for a in cfg.A]
        new_b = [apply(tt_rows, b) for b in cfg.B]
    out = Configuration(cfg.d, tuple(new_a), tuple(new_b))
    if cfg._maximal is not None:
        object.__setattr__(out, "_maximal", cfg._maximal)
    return out


# --- JSON interchange -----------------------------------------------------


def _rat_to_str(x: Fraction) -> str:
    return str(x)


def _rat_from_str(s: str) -> Fraction:
    s = s.strip()
    if any(ch in s for ch in ".eE"):
        raise ParseError(f"rational {s!r} must be a decimal-free p/q string")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {s!r}") from None


def configuration_to_json(cfg: Configuration) -> str:
    payload = {
        "d": cfg.d,
        "A": [[_rat_to_str(x) for x in v] for v in cfg.A],
        "B": [[_rat_to_str(x) for x in v] for v in cfg.B],
    }
    return json.dumps(payload, sort_keys=True)


def configuration_from_json(text: str) -> Configuration:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"bad JSON: {e}") from None
    try:
        d = int(payload["d"])
        a = [vec(_rat_from_str(x) for x in v) for v in payload["A"]]
        b = [vec(_rat_from_str(x) for x in v) for v in payload["B"]]
    except (KeyError, TypeError) as e:
        raise ParseError(f"configuration JSON needs d, A, B: {e}") from None
    return Configuration(d, tuple(a), tuple(b))


def vectors_from_json_field(payload, key: str, d: int) -> tuple[Vec, ...]:
    try:
        vs = payload[key]
    except (KeyError, TypeError):
        raise ParseError(f"missing field {key!r}") from None
    out = []
    for v in vs:
        w = vec(_rat_from_str(x) for x in v)
        if len(w) != d:
            raise ParseError(f"vector of length {len(w)} in field {key!r}, expected {d}")
        out.append(w)
    return tuple(out)
