"""Canonical forms of 0/1 matrices under independent row and column permutations.

The canonical representative of a matrix M is the permuted copy whose
row-major bit string is lexicographically least over every pair of row and
column permutations.  Two matrices of the same shape are equivalent exactly
when their canonical bytes agree, and the representative of a representative
is itself.

For a fixed row order the optimal column order simply sorts the columns as
top-to-bottom tuples, so the search runs over row orders only: a depth-first
scan maintains the partition of columns into groups tied on the rows chosen
so far, renders each candidate next row as zeros-then-ones inside every
group, and prunes against the best rendering found so far.  Transposes are
NOT identified: a matrix and its transpose are distinct unless they are
permutation-equivalent, which changes class counts and is intentional.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .configuration import BinaryMatrix


@dataclass(frozen=True)
class CanonicalForm:
    shape: tuple[int, int]
    bytes: bytes

    def sha256(self) -> str:
        return hashlib.sha256(self.bytes).hexdigest()


def _render(row, partition):
    parts = []
    for g in partition:
        ones = 0
        for c in g:
            ones += row[c]
        parts.append(b"0" * (len(g) - ones) + b"1" * ones)
    return b"".join(parts)


def _refine(row, partition):
    new = []
    for g in partition:
        zeros = [c for c in g if not row[c]]
        ones = [c for c in g if row[c]]
        if zeros:
            new.append(zeros)
        if ones:
            new.append(ones)
    return new


def _search_min_rows(rows: list[tuple[int, ...]], ncols: int) -> list[bytes]:
    m = len(rows)
    best: list = [None] * m  # rendered rows; None compares as +infinity
    used = [False] * m
    stack_rendered: list[bytes] = []

    def dfs(depth: int, partition):
        if depth == m:
            for t in range(m):
                best[t] = stack_rendered[t]
            return
        cands = []
        for i in range(m):
            if not used[i]:
                cands.append((_render(rows[i], partition), i))
        cands.sort()
        for rendered, i in cands:
            cur_best = best[depth]
            if cur_best is not None and rendered > cur_best:
                break  # candidates are sorted; the rest are worse
            if cur_best is not None and rendered < cur_best:
                for t in range(depth, m):
                    best[t] = None
            used[i] = True
            stack_rendered.append(rendered)
            dfs(depth + 1, _refine(rows[i], partition))
            stack_rendered.pop()
            used[i] = False

    dfs(0, [list(range(ncols))] if ncols else [])
    return best


def canonical_matrix(m: BinaryMatrix) -> BinaryMatrix:
    """The canonical representative of m's permutation class."""
    if m.rows == 0 or m.cols == 0:
        return m
    rendered = _search_min_rows(m.row_tuples(), m.cols)
    bits = tuple(1 if ch == 0x31 else 0 for row in rendered for ch in row)
    return BinaryMatrix(m.rows, m.cols, bits)


def canonical_form(m: BinaryMatrix) -> CanonicalForm:
    """Shape plus the text serialization of the canonical representative."""
    rep = canonical_matrix(m)
    return CanonicalForm((m.rows, m.cols), rep.to_text().encode("ascii"))


def equivalent(m1: BinaryMatrix, m2: BinaryMatrix) -> bool:
    if (m1.rows, m1.cols) != (m2.rows, m2.cols):
        return False
    return canonical_form(m1) == canonical_form(m2)


def dedup_classes(ms) -> list[BinaryMatrix]:
    """One canonical representative per permutation class, sorted by canonical bytes."""
    reps: dict[bytes, BinaryMatrix] = {}
    for m in ms:
        f = canonical_form(m)
        if f.bytes not in reps:
            reps[f.bytes] = canonical_matrix(m)
    return [reps[k] for k in sorted(reps)]
