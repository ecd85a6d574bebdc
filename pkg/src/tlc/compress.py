"""Succinct encoding of maximal configurations via lattice generators.

Given a maximal configuration with 0/1 point side B, a short generator list
b_1..b_k is grown from d independent vectors by appending members of B that
lie outside the current integer lattice; each append divides the lattice
determinant by an integer factor of at least 2, so k <= d + d*log2(d).  The
maps zeta(a) = (<a,b_1>,..,<a,b_k>) and phi(b) = integer coordinates of b
over the generators satisfy <zeta(a), phi(b)> = <a,b>, which turns the whole
configuration into a dimension-k face certificate plus the k x d generator
matrix: a weighted graph on k nodes with integer weights at most k(k+1)/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import corrcone, linalg
from .configuration import Configuration, closure
from .errors import (
    DimensionMismatch,
    EmptyDecode,
    NonBinaryProduct,
    NotInLattice,
    NotSpanning,
    ParseError,
)
from .linalg import vec

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered 0/1 generators; the first d are independent, k obeys the log bound."""

    d: int
    gens: tuple[tuple[int, ...], ...]
    det_history: tuple[int, ...]

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.gens)
        object.__setattr__(self, "gens", gens)
        d = self.d
        if any(len(g) != d for g in gens):
            raise DimensionMismatch("generators of wrong dimension")
        if any(x not in (0, 1) for g in gens for x in g):
            raise NonBinaryProduct("generators must be 0/1 vectors")
        if linalg.rank([list(g) for g in gens[:d]]) != d:
            raise NotSpanning("leading generators are not independent")
        k = len(gens)
        # k <= d + d*log2(d), checked exactly: 2^(k-d) <= d^d
        if d == 1:
            if k > 1:
                raise DimensionMismatch("one generator suffices in dimension 1")
        elif (1 << (k - d)) > d ** d:
            raise DimensionMismatch(f"k = {k} exceeds the generator bound for d = {d}")

    @property
    def k(self) -> int:
        return len(self.gens)


@dataclass(frozen=True)
class CompressedConfig:
    gens: GeneratorSet
    cert: corrcone.FaceCertificate

    def __post_init__(self):
        if self.cert.d != self.gens.k:
            raise DimensionMismatch("certificate dimension must equal the generator count")


def select_generators(b_vectors, d: int) -> GeneratorSet:
    """Grow generators until their lattice equals the lattice of all of B.

    Starts from the first d independent vectors in sorted order and appends
    the first vector outside the current lattice, recording the determinant
    after every step; each recorded value divides the previous one with an
    integer quotient of at least 2.
    """
    bs = sorted(set(tuple(int(x) for x in v) for v in b_vectors))
    if any(len(b) != d for b in bs):
        raise DimensionMismatch("vectors of wrong dimension")
    if any(x not in (0, 1) for b in bs for x in b):
        raise NonBinaryProduct("point side must be 0/1 before generator selection")
    idx = linalg.first_independent(bs, d)
    if idx is None:
        raise NotSpanning(f"point side does not span R^{d}")
    chosen = [bs[i] for i in idx]
    dets = [linalg.lattice_determinant_rect(chosen)]
    while True:
        extra = next((b for b in bs if not linalg.lattice_member(chosen, b)), None)
        if extra is None:
            break
        chosen.append(extra)
        dets.append(linalg.lattice_determinant_rect(chosen))
    return GeneratorSet(d, tuple(chosen), tuple(dets))


def zeta(a, gens: GeneratorSet) -> tuple[int, ...]:
    """(<a,b_1>, .., <a,b_k>); every product must come out 0 or 1."""
    av = vec(a)
    out = []
    for g in gens.gens:
        p = linalg.dot(av, [Fraction(x) for x in g])
        if p == _ZERO:
            out.append(0)
        elif p == _ONE:
            out.append(1)
        else:
            raise NonBinaryProduct(f"product {p} of {a} with generator {g}")
    return tuple(out)


def phi(b, gens: GeneratorSet) -> tuple[int, ...]:
    """Integer coordinates of b over the generators; phi(b_i) = e_i exactly.

    Any valid coordinate vector satisfies <zeta(a), phi(b)> = <a, b>, so the
    representative only affects serialized bytes, not decoded content.
    """
    bt = tuple(int(x) for x in b)
    if len(bt) != gens.d:
        raise DimensionMismatch("vector of wrong dimension")
    k = gens.k
    for i, g in enumerate(gens.gens):
        if bt == g:
            return tuple(1 if j == i else 0 for j in range(k))
    h, u = linalg.hnf([list(g) for g in gens.gens])
    mu = [0] * k
    res = list(bt)
    for i in range(k):
        c = next((j for j, x in enumerate(h[i]) if x), None)
        if c is None:
            break
        if res[c]:
            q, rem = divmod(res[c], h[i][c])
            if rem:
                raise NotInLattice(f"{b} is not in the generator lattice")
            mu[i] = q
            res = [a - q * hb for a, hb in zip(res, h[i])]
    if any(res):
        raise NotInLattice(f"{b} is not in the generator lattice")
    lam = [sum(mu[i] * u[i][j] for i in range(k)) for j in range(k)]
    return tuple(lam)


def compress(cfg: Configuration) -> CompressedConfig:
    """Encode a maximal configuration whose B side is 0/1."""
    for v in cfg.B:
        if any(x != 0 and x != 1 for x in v):
            raise NonBinaryProduct("B side must be 0/1; normalize first")
    if not cfg.is_maximal():
        raise ValueError("only maximal configurations are compressed")
    gens = select_generators(cfg.B, cfg.d)
    phis = [phi(b, gens) for b in cfg.B]
    a_prime = corrcone.face_points(gens.k, phis)
    cert = corrcone.certificate_encode(gens.k, a_prime)
    return CompressedConfig(gens, cert)


def decompress(cc: CompressedConfig) -> Configuration:
    """Reconstruct the configuration: decode the face, solve back, close."""
    gens = cc.gens
    a_prime = corrcone.certificate_decode(cc.cert)
    g_rows = [[Fraction(x) for x in g] for g in gens.gens]
    a_side = []
    for ap in a_prime:
        sol = linalg.solve(g_rows, [Fraction(x) for x in ap])
        if sol is not None:
            a_side.append(sol)
    if not a_side:
        raise EmptyDecode("no consistent vector for any decoded face point")
    b_side = closure(a_side, gens.d)
    return Configuration(gens.d, tuple(a_side), b_side)


def weighted_graph_serialize(cc: CompressedConfig) -> str:
    """Text form: 'k d', the k x d generator bits, the upper triangle of the
    symmetric k x k certificate block (node and edge weights), and the tail."""
    gens = cc.gens
    k, d = gens.k, gens.d
    s = cc.cert.s
    lines = [f"{k} {d}"]
    for g in gens.gens:
        lines.append("".join(str(x) for x in g))
    for i in range(k):
        lines.append(" ".join(str(s[i * k + j]) for j in range(i, k)))
    lines.append(" ".join(str(s[k * k + i]) for i in range(k)))
    return "\n".join(lines) + "\n"


def weighted_graph_parse(text: str) -> CompressedConfig:
    lines = [ln for ln in text.splitlines()]
    if not lines:
        raise ParseError("empty weighted-graph text", line=1)
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError("header must be 'k d'", line=1)
    try:
        k, d = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError("header must be two integers", line=1) from None
    if len(lines) < 1 + k + k + 1:
        raise ParseError(f"expected {1 + 2 * k + 1} lines", line=len(lines))
    gen_rows = []
    for i in range(k):
        row = lines[1 + i].strip()
        if len(row) != d or any(ch not in "01" for ch in row):
            raise ParseError(f"generator row must be {d} bits", line=2 + i)
        gen_rows.append(tuple(int(ch) for ch in row))
    block = [[0] * k for _ in range(k)]
    for i in range(k):
        try:
            vals = [int(v) for v in lines[1 + k + i].split()]
        except ValueError:
            raise ParseError("weights must be integers", line=2 + k + i) from None
        if len(vals) != k - i:
            raise ParseError(f"expected {k - i} weights", line=2 + k + i)
        for off, v in enumerate(vals):
            block[i][i + off] = v
            block[i + off][i] = v
    try:
        tail = [int(v) for v in lines[1 + 2 * k].split()]
    except ValueError:
        raise ParseError("tail must be integers", line=2 + 2 * k) from None
    if len(tail) != k:
        raise ParseError(f"expected {k} tail values", line=2 + 2 * k)
    s = tuple(block[i][j] for i in range(k) for j in range(k)) + tuple(tail)
    dets = _recovered_det_history(gen_rows, d)
    gens = GeneratorSet(d, tuple(gen_rows), dets)
    return CompressedConfig(gens, corrcone.FaceCertificate(k, s))


def _recovered_det_history(gen_rows, d: int) -> tuple[int, ...]:
    dets = []
    for k in range(d, len(gen_rows) + 1):
        dets.append(linalg.lattice_determinant_rect(gen_rows[:k]))
    return tuple(dets)
