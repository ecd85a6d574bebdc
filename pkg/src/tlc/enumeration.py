"""Exhaustive generation of maximal classes, plus brute-force maximality oracles.

Every maximal class has a representative whose point side is a set of 0/1
vectors, so seeding a closure completion from every spanning subset of
{0,1}^d and deduplicating canonical slack forms enumerates all classes for
small d.  Two independent oracles cross-check the closure machinery: a
literal one-line-extension test (a matrix with distinct lines is maximal in
its rank class exactly when no 0/1 vector of its row space or column space
can be added as a new line), and a bounded scan that enumerates every tiny
matrix and keeps the extension-free ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import canon
from .canon import CanonicalForm
from .configuration import BinaryMatrix, parse_matrix, slack_matrix
from .errors import DimensionTooLarge
from .linalg import rank

_FULL_SCAN_LIMIT = 4
_SAMPLED_DIM = 5
_ORACLE_DIM_LIMIT = 2
_ORACLE_SIZE_LIMIT = 4


@dataclass(frozen=True)
class EnumStats:
    seeds_total: int
    seeds_spanning: int
    completions: int
    degenerate_seeds: int
    classes: int

    @property
    def dedup_ratio(self) -> float:
        return self.classes / self.completions if self.completions else 0.0


@dataclass(frozen=True)
class EnumerationResult:
    d: int
    classes: tuple[CanonicalForm, ...]
    stats: EnumStats


def _bit_vector(index: int, d: int) -> tuple[int, ...]:
    return tuple((index >> j) & 1 for j in range(d))


def _seed_masks(d: int) -> list[int]:
    n = 1 << d
    masks = [m for m in range(1 << n) if bin(m).count("1") >= d]
    masks.sort(key=lambda m: (bin(m).count("1"), m))
    return masks


def _enum_worker(args):
    d, masks = args
    forms = {}
    spanning = completions = degenerate = 0
    # seeds sharing a first closure share the whole completion
    memo: dict = {}
    from .configuration import Configuration, closure, spans

    for m in masks:
        vectors = [_bit_vector(j, d) for j in range(1 << d) if (m >> j) & 1]
        if rank(vectors) != d:
            continue
        spanning += 1
        a = closure(vectors, d)
        cached = memo.get(a)
        if cached is None:
            if not spans(a, d):
                memo[a] = "degenerate"
                degenerate += 1
                continue
            b = closure(a, d)
            cfg = Configuration(d, a, b)
            object.__setattr__(cfg, "_maximal", True)
            cached = canon.canonical_form(slack_matrix(cfg).matrix)
            memo[a] = cached
        elif cached == "degenerate":
            degenerate += 1
            continue
        completions += 1
        forms[cached.bytes] = cached
    return forms, spanning, completions, degenerate


def enumerate_maximal(
    d: int,
    jobs: int = 1,
    store=None,
    reverse_seeds: bool = False,
    seed_limit: Optional[int] = None,
) -> EnumerationResult:
    """All maximal classes in dimension d, for d <= 4.

    Seeds every spanning subset of {0,1}^d in (popcount, mask) order, which
    is complete because each class has a 0/1 point-side representative that
    reappears as its own seed.  Dimension 5 is allowed only with an explicit
    seed_limit and samples seeds deterministically; that run can miss classes
    and its output is labeled sampled.
    """
    if d < 1 or d > _SAMPLED_DIM:
        raise DimensionTooLarge(f"enumeration is limited to d <= {_SAMPLED_DIM}")
    if d == _SAMPLED_DIM and seed_limit is None:
        raise DimensionTooLarge("dimension 5 needs an explicit seed_limit (sampled, possibly incomplete)")
    if d <= _FULL_SCAN_LIMIT:
        masks = _seed_masks(d)
    else:
        import random

        rng = random.Random(0)
        n = 1 << d
        seen = set()
        while len(seen) < seed_limit:
            m = rng.getrandbits(n)
            if bin(m).count("1") >= d:
                seen.add(m)
        masks = sorted(seen, key=lambda m: (bin(m).count("1"), m))
    if reverse_seeds:
        masks = list(reversed(masks))

    jobs = max(1, int(jobs))
    if jobs == 1 or len(masks) < 256:
        forms, spanning, completions, degenerate = _enum_worker((d, masks))
    else:
        import multiprocessing

        chunk = (len(masks) + jobs - 1) // jobs
        parts_args = [(d, masks[i:i + chunk]) for i in range(0, len(masks), chunk)]
        with multiprocessing.Pool(jobs) as pool:
            parts = pool.map(_enum_worker, parts_args)
        forms = {}
        spanning = completions = degenerate = 0
        for f, s, c, g in parts:
            forms.update(f)
            spanning += s
            completions += c
            degenerate += g

    classes = tuple(forms[k] for k in sorted(forms))
    if store is not None:
        for form in classes:
            store.put(f"md/{d}", form.bytes, ".mat")
    stats = EnumStats(
        seeds_total=len(masks),
        seeds_spanning=spanning,
        completions=completions,
        degenerate_seeds=degenerate,
        classes=len(classes),
    )
    return EnumerationResult(d, classes, stats)


# --- independent oracles ---------------------------------------------------


def _space_echelon(vectors) -> tuple[list[list[Fraction]], list[int]]:
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    for v in vectors:
        row = [Fraction(x) for x in v]
        for b, c in zip(basis, pivots):
            if row[c]:
                f = row[c]
                row = [x - f * y for x, y in zip(row, b)]
        c = next((j for j, x in enumerate(row) if x), None)
        if c is None:
            continue
        pv = row[c]
        basis.append([x / pv for x in row])
        pivots.append(c)
    return basis, pivots


def _in_span(basis, pivots, v) -> bool:
    row = [Fraction(x) for x in v]
    for b, c in zip(basis, pivots):
        if row[c]:
            f = row[c]
            row = [x - f * y for x, y in zip(row, b)]
    return not any(row)


def oracle_is_maximal(m: BinaryMatrix) -> bool:
    """Literal one-line-extension maximality test, independent of closure code.

    m is maximal in its rank class exactly when it has distinct lines,
    positive rank, and no 0/1 vector of its row space (resp. column space)
    outside its rows (resp. columns): appending such a vector is an extension
    inside the class, and any strictly larger matrix provides one.
    """
    rows = m.row_tuples()
    cols = m.col_tuples()
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        return False
    row_basis, row_piv = _space_echelon(rows)
    if not row_basis:
        return False
    col_basis, col_piv = _space_echelon(cols)
    row_set = set(rows)
    for cand in range(1 << m.cols):
        v = tuple((cand >> j) & 1 for j in range(m.cols))
        if v not in row_set and _in_span(row_basis, row_piv, v):
            return False
    col_set = set(cols)
    for cand in range(1 << m.rows):
        v = tuple((cand >> j) & 1 for j in range(m.rows))
        if v not in col_set and _in_span(col_basis, col_piv, v):
            return False
    return True


def oracle_maximal(d: int, max_rows: int = 4, max_cols: int = 4) -> tuple[CanonicalForm, ...]:
    """Scan every 0/1 matrix within the bounds and keep the maximal rank-d ones.

    Sound for d <= 2 with 4x4 bounds: a maximal class there has at most
    2^d <= 4 lines per side, so every extension stays inside the scan window.
    """
    if d > _ORACLE_DIM_LIMIT:
        raise DimensionTooLarge(f"the bounded oracle is limited to d <= {_ORACLE_DIM_LIMIT}")
    if max_rows > _ORACLE_SIZE_LIMIT or max_cols > _ORACLE_SIZE_LIMIT:
        raise DimensionTooLarge(f"the bounded oracle is limited to {_ORACLE_SIZE_LIMIT}x{_ORACLE_SIZE_LIMIT}")
    forms = {}
    for r in range(1, max_rows + 1):
        for c in range(1, max_cols + 1):
            for bits_mask in range(1 << (r * c)):
                bits = tuple((bits_mask >> i) & 1 for i in range(r * c))
                m = BinaryMatrix(r, c, bits)
                if not m.distinct_lines():
                    continue
                if rank(m.row_tuples()) != d:
                    continue
                if oracle_is_maximal(m):
                    f = canon.canonical_form(m)
                    forms[f.bytes] = f
    return tuple(forms[k] for k in sorted(forms))


def transpose_identified_count(classes) -> int:
    """Class count when a matrix and its transpose are considered one object."""
    seen = set()
    count = 0
    for f in classes:
        if f.bytes in seen:
            continue
        m = parse_matrix(f.bytes.decode("ascii"))
        tf = canon.canonical_form(m.transpose())
        seen.add(f.bytes)
        seen.add(tf.bytes)
        count += 1
    return count


def report(results) -> str:
    """Fixed-width table of class counts against the context exponents.

    Counts are artifacts of this computation, not published values.
    """
    lines = [
        "maximal classes by dimension (computed by this run)",
        "d | classes | mod transpose | log2(classes) | d^2/4 | d^2*log2(d) | d^2*log2(d)^3",
    ]
    for res in sorted(results, key=lambda r: r.d):
        d = res.d
        count = len(res.classes)
        mod_t = transpose_identified_count(res.classes)
        log2c = math.log2(count) if count else float("-inf")
        l2d = math.log2(d) if d > 1 else 0.0
        lines.append(
            f"{d} | {count} | {mod_t} | {log2c:.3f} | {d * d / 4:.2f} | {d * d * l2d:.2f} | {d * d * l2d ** 3:.2f}"
        )
    return "\n".join(lines) + "\n"
