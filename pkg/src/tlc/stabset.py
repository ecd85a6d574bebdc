"""Stable set polytopes of bipartite graphs and the graph census.

For a bipartite graph with no isolated node the polytope is cut out by the
nonnegativity rows x_v >= 0 and the edge rows x_u + x_v <= 1, and every
stable set's characteristic vector has slack 0 or 1 against every row.  The
census scans all 2^C(n,2) labeled graphs, counts the bipartite ones, filters
to minimum degree 2, groups those by brute-force isomorphism, and compares
the class count with the number of distinct canonical maximal-slack forms.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Optional

from . import canon, geometry
from .configuration import BinaryMatrix, SlackMatrix, slack_matrix
from .errors import (
    DimensionTooLarge,
    IsolatedNode,
    NotBipartite,
    ParseError,
)
from .linalg import Vec, vec

_CENSUS_LIMIT = 7
_CLASS_LIMIT = 6


@dataclass(frozen=True)
class BipartiteGraph:
    """Simple labeled graph on nodes 0..n-1 with a proper 2-coloring witness."""

    n: int
    edges: tuple[tuple[int, int], ...]
    coloring: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ParseError("graphs need at least one node")
        edges = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ParseError(f"loop at node {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ParseError(f"edge ({u},{v}) out of range")
            edges.append((min(u, v), max(u, v)))
        if len(set(edges)) != len(edges):
            raise ParseError("parallel edge")
        object.__setattr__(self, "edges", tuple(sorted(set(edges))))
        coloring = tuple(int(c) for c in self.coloring)
        object.__setattr__(self, "coloring", coloring)
        if len(coloring) != self.n or any(c not in (0, 1) for c in coloring):
            raise NotBipartite("coloring must assign 0/1 to every node")
        for u, v in self.edges:
            if coloring[u] == coloring[v]:
                raise NotBipartite(f"edge ({u},{v}) is monochromatic")

    @classmethod
    def from_edges(cls, n: int, edges) -> "BipartiteGraph":
        edges = [(int(u), int(v)) for u, v in edges]
        for u, v in edges:
            if u == v:
                raise ParseError(f"loop at node {u}")
        coloring = _two_color(n, edges)
        if coloring is None:
            raise NotBipartite("graph has an odd cycle")
        return cls(n, tuple(edges), coloring)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(u if w == v else w for u, w in self.edges if v in (u, w)))

    def min_degree(self) -> int:
        return min(self.degree(v) for v in range(self.n))


def _two_color(n: int, edges) -> Optional[tuple[int, ...]]:
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    color = [-1] * n
    for start in range(n):
        if color[start] != -1:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if color[y] == -1:
                    color[y] = 1 - color[x]
                    stack.append(y)
                elif color[y] == color[x]:
                    return None
    return tuple(color)


def graph_from_text(text: str) -> BipartiteGraph:
    """Parse 'n' on the first line, then one 'u v' edge per line (0-based)."""
    lines = [ln for ln in text.splitlines()]
    if not lines or not lines[0].strip():
        raise ParseError("missing node count", line=1)
    try:
        n = int(lines[0])
    except ValueError:
        raise ParseError("node count must be an integer", line=1) from None
    edges = []
    for i, ln in enumerate(lines[1:], start=2):
        if not ln.strip():
            continue
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError("edge lines are 'u v'", line=i)
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ParseError("edge endpoints must be integers", line=i) from None
    return BipartiteGraph.from_edges(n, edges)


def graph_to_text(g: BipartiteGraph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def stable_sets(g: BipartiteGraph) -> list[tuple[int, ...]]:
    """All stable sets, as sorted node tuples, by backtracking over nodes in
    decreasing-degree order."""
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    adj = [set(g.neighbors(v)) for v in range(g.n)]
    out: list[tuple[int, ...]] = []

    def extend(pos: int, current: list[int], blocked: set[int]):
        if pos == len(order):
            out.append(tuple(sorted(current)))
            return
        v = order[pos]
        extend(pos + 1, current, blocked)
        if v not in blocked:
            current.append(v)
            extend(pos + 1, current, blocked | adj[v])
            current.pop()

    extend(0, [], set())
    return sorted(out)


def _char_vec(s, n: int) -> Vec:
    members = set(s)
    return vec([1 if v in members else 0 for v in range(n)])


def _basic_rows(g: BipartiteGraph, pad_isolated: bool) -> list[tuple[Vec, Fraction]]:
    rows: list[tuple[Vec, Fraction]] = []
    for v in range(g.n):
        rows.append((vec([1 if i == v else 0 for i in range(g.n)]), Fraction(0)))
    for u, v in g.edges:
        rows.append((vec([-1 if i in (u, v) else 0 for i in range(g.n)]), Fraction(-1)))
    if pad_isolated:
        for v in range(g.n):
            if g.degree(v) == 0:
                rows.append((vec([-1 if i == v else 0 for i in range(g.n)]), Fraction(-1)))
    return rows


def stab_basic_slack(g: BipartiteGraph) -> SlackMatrix:
    """Slack of every stable set against the nonnegativity and edge rows."""
    if any(g.degree(v) == 0 for v in range(g.n)):
        raise IsolatedNode("the row description requires minimum degree 1")
    rows = _basic_rows(g, pad_isolated=False)
    cols = stable_sets(g)
    bits = []
    for a, b in rows:
        for s in cols:
            x = _char_vec(s, g.n)
            slack = sum(ai * xi for ai, xi in zip(a, x)) - b
            assert slack in (0, 1)
            bits.append(int(slack))
    m = BinaryMatrix(len(rows), len(cols), tuple(bits))
    row_labels = tuple(tuple(a) + (b,) for a, b in rows)
    col_labels = tuple(_char_vec(s, g.n) + (Fraction(-1),) for s in cols)
    return SlackMatrix(m, row_labels, col_labels)


def stab_maximal_slack(g: BipartiteGraph) -> SlackMatrix:
    """Maximal slack matrix of the stable set polytope."""
    verts = [_char_vec(s, g.n) for s in stable_sets(g)]
    desc = geometry.complete_maximal_pair(verts)
    return slack_matrix(geometry.polytope_to_configuration(desc))


def simple_vertices(g: BipartiteGraph) -> list[tuple[int, ...]]:
    """Stable sets lying on exactly n rows of the basic description.

    A set S is tight on the n - |S| nonnegativity rows of its non-members and
    on every edge row with an endpoint in S.
    """
    out = []
    for s in stable_sets(g):
        members = set(s)
        tight = (g.n - len(s)) + sum(1 for u, v in g.edges if u in members or v in members)
        if tight == g.n:
            out.append(s)
    return out


def zero_vertex_neighbors(g: BipartiteGraph) -> list[tuple[int, ...]]:
    """Stable sets adjacent to the empty set on the polytope.

    Uses combinatorial adjacency over an exact bounded row description: two
    vertices are adjacent exactly when no third vertex is tight on every row
    tight at both.
    """
    rows = _basic_rows(g, pad_isolated=True)
    cols = stable_sets(g)
    tight_sets = []
    for s in cols:
        x = _char_vec(s, g.n)
        tight = frozenset(
            i for i, (a, b) in enumerate(rows)
            if sum(ai * xi for ai, xi in zip(a, x)) == b
        )
        tight_sets.append(tight)
    empty_idx = cols.index(())
    out = []
    for j, s in enumerate(cols):
        if j == empty_idx:
            continue
        common = tight_sets[empty_idx] & tight_sets[j]
        if not any(
            k != empty_idx and k != j and tight_sets[k] >= common
            for k in range(len(cols))
        ):
            out.append(s)
    return sorted(out)


# --- census ----------------------------------------------------------------


@dataclass(frozen=True)
class CensusReport:
    n: int
    labeled_bipartite: int
    labeled_bipartite_min_degree2: int
    isomorphism_classes_min_degree2: Optional[int]
    maximal_slack_forms_min_degree2: Optional[int]
    lower_exponent_float: float
    upper_exponent: Fraction
    within_lower: bool
    within_upper: bool

    def to_json(self) -> str:
        payload = {
            "nodes": self.n,
            "labeled_bipartite": self.labeled_bipartite,
            "labeled_bipartite_min_degree2": self.labeled_bipartite_min_degree2,
            "isomorphism_classes_min_degree2": self.isomorphism_classes_min_degree2,
            "maximal_slack_forms_min_degree2": self.maximal_slack_forms_min_degree2,
            "bounds": {
                "lower_log2": self.lower_exponent_float,
                "lower_log2_exact_part": str(Fraction(self.n * self.n, 4) + self.n),
                "lower_log2_note": "exact part minus 2*log2(n)",
                "upper_log2": str(self.upper_exponent),
            },
            "within_lower": self.within_lower,
            "within_upper": self.within_upper,
        }
        return json.dumps(payload, sort_keys=True)


def _edge_list(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def _scan_masks(n: int, lo: int, hi: int, keep_masks: bool):
    """Count bipartite / min-degree-2 bipartite edge masks in [lo, hi)."""
    edges = _edge_list(n)
    ne = len(edges)
    bip = 0
    deg2 = 0
    kept = [] if keep_masks else None
    for mask in range(lo, hi):
        adj = [0] * n
        mm = mask
        while mm:
            low = mm & -mm
            e = low.bit_length() - 1
            u, v = edges[e]
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            mm ^= low
        color = [-1] * n
        ok = True
        for start in range(n):
            if color[start] != -1:
                continue
            color[start] = 0
            stack = [start]
            while stack:
                x = stack.pop()
                cx = color[x]
                nb = adj[x]
                while nb:
                    lowb = nb & -nb
                    y = lowb.bit_length() - 1
                    if color[y] == -1:
                        color[y] = 1 - cx
                        stack.append(y)
                    elif color[y] == cx:
                        ok = False
                        break
                    nb ^= lowb
                if not ok:
                    break
            if not ok:
                break
        if not ok:
            continue
        bip += 1
        if all(bin(a).count("1") >= 2 for a in adj):
            deg2 += 1
            if kept is not None:
                kept.append(mask)
    return bip, deg2, kept


def _scan_worker(args):
    return _scan_masks(*args)


def _canonical_mask(n: int, mask: int, edge_index: dict, perms) -> int:
    edges = _edge_list(n)
    best = None
    for p in perms:
        out = 0
        mm = mask
        while mm:
            low = mm & -mm
            e = low.bit_length() - 1
            u, v = edges[e]
            pu, pv = p[u], p[v]
            out |= 1 << edge_index[(min(pu, pv), max(pu, pv))]
            mm ^= low
        if best is None or out < best:
            best = out
    return best


def graph_from_mask(n: int, mask: int) -> BipartiteGraph:
    edges = _edge_list(n)
    chosen = [edges[e] for e in range(len(edges)) if (mask >> e) & 1]
    return BipartiteGraph.from_edges(n, chosen)


def census(n: int, jobs: int = 1, include_classes: Optional[bool] = None) -> CensusReport:
    """Scan all labeled graphs on n nodes and compile the bipartite counts.

    Isomorphism classes and slack forms are computed up to n = 6 by default;
    at n = 7 only the labeled counts are produced.
    """
    if n < 1 or n > _CENSUS_LIMIT:
        raise DimensionTooLarge(f"census is limited to 1 <= n <= {_CENSUS_LIMIT}")
    include = (n <= _CLASS_LIMIT) if include_classes is None else include_classes
    if include and n > _CLASS_LIMIT:
        raise DimensionTooLarge(f"class counts are limited to n <= {_CLASS_LIMIT}")
    ne = len(_edge_list(n))
    total = 1 << ne
    jobs = max(1, int(jobs))
    if jobs == 1 or total < 4096:
        bip, deg2, kept = _scan_masks(n, 0, total, include)
    else:
        import multiprocessing

        chunk = (total + jobs - 1) // jobs
        spans = [(n, i, min(i + chunk, total), include) for i in range(0, total, chunk)]
        with multiprocessing.Pool(jobs) as pool:
            parts = pool.map(_scan_worker, spans)
        bip = sum(p[0] for p in parts)
        deg2 = sum(p[1] for p in parts)
        kept = sorted(x for p in parts for x in (p[2] or [])) if include else None

    iso_classes = None
    slack_forms = None
    if include:
        edge_index = {e: i for i, e in enumerate(_edge_list(n))}
        perms = list(permutations(range(n)))
        reps = sorted({_canonical_mask(n, mask, edge_index, perms) for mask in kept})
        iso_classes = len(reps)
        forms = {canon.canonical_form(stab_maximal_slack(graph_from_mask(n, m)).matrix).bytes
                 for m in reps}
        slack_forms = len(forms)

    upper_exp = Fraction(n * n, 4) + n
    lower_float = float(upper_exp) - 2 * math.log2(n)
    # exact sandwich tests: count^4 vs 2^(n^2+4n) and (count*n^2)^4 vs same
    power = n * n + 4 * n
    within_upper = bip ** 4 <= 2 ** power
    within_lower = (bip * n * n) ** 4 >= 2 ** power
    return CensusReport(
        n=n,
        labeled_bipartite=bip,
        labeled_bipartite_min_degree2=deg2,
        isomorphism_classes_min_degree2=iso_classes,
        maximal_slack_forms_min_degree2=slack_forms,
        lower_exponent_float=lower_float,
        upper_exponent=upper_exp,
        within_lower=within_lower,
        within_upper=within_upper,
    )
