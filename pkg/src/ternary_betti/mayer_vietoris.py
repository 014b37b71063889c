"""Mayer-Vietoris splitting of ``I(G)`` at a vertex, with the map on homology
computed from explicit cycle representatives.

For a vertex ``v``: ``K' = I(G - v)``, ``K'' = I(G - N(v))`` (the cone on
``L`` with apex ``v``) and ``L = K' & K'' = I(G(v|-))``.  The map
``lambda_i : H_i(L) -> H_i(K') + H_i(K'')`` is assembled by pushing a basis
of ``H_i(L)`` through both inclusions and reading off coordinates in the
target bases; ``beta(N_i)`` is its kernel dimension.  Nothing here uses the
recursion being verified.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ternary_betti import linalg
from ternary_betti.graph import Graph, GraphError, VertexSet, as_mask, residual
from ternary_betti.simplicial import (
    BettiVector,
    SimplicialComplex,
    betti_numbers,
    boundary_columns,
    independence_complex,
    reduced_betti,
)

Chain = dict[int, int]  # face mask -> integer coefficient


@dataclass(frozen=True)
class VertexSplit:
    graph: Graph
    v: int
    K: SimplicialComplex
    K_prime: SimplicialComplex
    K_dprime: SimplicialComplex
    L: SimplicialComplex


def split(g: Graph, v: int) -> VertexSplit:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n={g.n}")
    full = g.vertex_mask
    return VertexSplit(
        graph=g,
        v=v,
        K=independence_complex(g),
        K_prime=independence_complex(g, full & ~(1 << v)),
        K_dprime=independence_complex(g, full & ~g.adj[v]),
        L=independence_complex(g, full & ~g.adj[v] & ~(1 << v)),
    )


class _Quotient:
    """Coordinates of cycles in a fixed basis of ``Z_i / B_i``."""

    def __init__(self, k: SimplicialComplex, i: int):
        self.complex = k
        self.dim = i
        faces = k.faces(i)
        _, kernel = linalg.rank_and_kernel(boundary_columns(k, i))
        ech = linalg.Echelon(track=True)
        for col in boundary_columns(k, i + 1):
            ech.add(col)
        cycles: list[Chain] = []
        for z in kernel:
            rem, _ = ech.add(z, {len(cycles): 1})
            if rem:
                cycles.append({faces[p]: a for p, a in sorted(z.items())})
        self.echelon = ech
        self.cycles = cycles

    def coordinates(self, chain: Chain) -> list[Fraction]:
        index = self.complex.index
        vec = {}
        for f, a in chain.items():
            if f.bit_count() != self.dim + 1 or f not in index:
                raise ValueError(f"face {f:#x} is not a {self.dim}-face of the target complex")
            vec[index[f]] = a
        rem, tag = self.echelon.reduce(vec, {-1: 1})
        if rem:
            raise ValueError("chain is not a cycle of the target complex")
        scale = tag[-1]
        return [Fraction(-tag.get(j, 0), scale) for j in range(len(self.cycles))]


@lru_cache(maxsize=1 << 15)
def _quotient(k: SimplicialComplex, i: int) -> _Quotient:
    return _Quotient(k, i)


@lru_cache(maxsize=1 << 15)
def complex_betti(k: SimplicialComplex) -> BettiVector:
    return reduced_betti(k)


@dataclass(frozen=True)
class HomologyBasis:
    dim: int
    cycles: tuple[Chain, ...]

    def __len__(self) -> int:
        return len(self.cycles)


def homology_basis(k: SimplicialComplex, i: int) -> HomologyBasis:
    """Integer cycles whose classes form a basis of reduced ``H_i(K; Q)``.

    Kernel vectors of ``d_i`` are kept in elimination order whenever they
    are independent of the boundaries and of the cycles kept so far.
    """
    return HomologyBasis(i, tuple(dict(c) for c in _quotient(k, i).cycles))


def chain_boundary(chain: Chain) -> Chain:
    """Boundary of a chain given on face masks (augmented: vertices map to the empty face)."""
    out: Chain = {}
    for f, a in chain.items():
        sign = 1
        rest = f
        while rest:
            low = rest & -rest
            g = f ^ low
            val = out.get(g, 0) + sign * a
            if val:
                out[g] = val
            else:
                out.pop(g, None)
            sign = -sign
            rest ^= low
    return out


@dataclass(frozen=True)
class LambdaMap:
    """Matrix of ``lambda_i`` in the chosen bases: rows ``H_i(K')`` then ``H_i(K'')``."""

    dim: int
    matrix: tuple[tuple[Fraction, ...], ...]
    source_rank: int
    kernel_dim: int


def lambda_map(sp: VertexSplit, i: int) -> LambdaMap:
    """``x -> (x, -x)`` on classes, expressed in the target homology bases."""
    src = _quotient(sp.L, i)
    left = _quotient(sp.K_prime, i)
    right = _quotient(sp.K_dprime, i)
    columns = []
    for h in src.cycles:
        columns.append(left.coordinates(h) + [-c for c in right.coordinates(h)])
    nrows = len(left.cycles) + len(right.cycles)
    matrix = tuple(tuple(col[r] for col in columns) for r in range(nrows))
    rank = linalg.rational_rank(matrix)
    return LambdaMap(i, matrix, len(src.cycles), len(src.cycles) - rank)


@dataclass(frozen=True)
class DimensionRecord:
    i: int
    b_G: int
    b_K_prime: int
    b_K_dprime: int
    b_L: int
    beta: int
    beta_prev: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.b_G, self.b_K_prime, self.b_L, self.beta)


@dataclass
class RecursionVerdict:
    n: int
    v: int
    records: list[DimensionRecord] = field(default_factory=list)
    discrepancies: list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.discrepancies

    def to_dict(self) -> dict:
        return {
            "v": self.v,
            "dims": {str(r.i): list(r.as_tuple()) for r in self.records},
            "holds": self.holds,
            "discrepancies": list(self.discrepancies),
        }


def _faces_check(sp: VertexSplit) -> list[str]:
    out = []
    whole, kp, kdp, l = (sp.K.all_faces(), sp.K_prime.all_faces(),
                         sp.K_dprime.all_faces(), sp.L.all_faces())
    if kp | kdp != whole:
        out.append("faces(K') | faces(K'') != faces(K)")
    if kp & kdp != l:
        out.append("faces(K') & faces(K'') != faces(L)")
    cone = {f | (1 << sp.v) for f in l} | l | {1 << sp.v}
    if kdp != cone:
        out.append("K'' is not the cone over L with apex v")
    return out


def verify_recursion(g: Graph, v: int) -> RecursionVerdict:
    """Check both forms of the splitting identity and ``beta(N_i) <= b_i(L)``.

    The full form uses the Betti numbers of the three split complexes; the
    reduced form recomputes ``G - v`` and ``G(v|-)`` from scratch as graphs.
    """
    sp = split(g, v)
    verdict = RecursionVerdict(g.n, v)
    verdict.discrepancies += _faces_check(sp)
    b_g = complex_betti(sp.K)
    b_kp = complex_betti(sp.K_prime)
    b_kdp = complex_betti(sp.K_dprime)
    b_l = complex_betti(sp.L)
    b_minus = betti_numbers(residual(g, 0, 1 << v)[0])
    b_link = betti_numbers(residual(g, 1 << v, 0)[0])
    top = max(sp.K.dim, 0) + 1
    beta = {-2: 0}
    for i in range(-1, top + 1):
        beta[i] = lambda_map(sp, i).kernel_dim
    for i in range(-1, top + 1):
        rec = DimensionRecord(i, b_g[i], b_kp[i], b_kdp[i], b_l[i], beta[i], beta[i - 1])
        verdict.records.append(rec)
        full = rec.b_K_prime + rec.b_K_dprime - rec.b_L + rec.beta + rec.beta_prev
        if rec.b_G != full:
            verdict.discrepancies.append(f"full identity fails at i={i}: {rec.b_G} != {full}")
        reduced = b_minus[i] - b_link[i] + rec.beta + rec.beta_prev
        if b_g[i] != reduced:
            verdict.discrepancies.append(f"reduced identity fails at i={i}: {b_g[i]} != {reduced}")
        if rec.b_K_dprime:
            verdict.discrepancies.append(f"cone K'' has b_{i} = {rec.b_K_dprime}")
        if not 0 <= rec.beta <= rec.b_L:
            verdict.discrepancies.append(f"beta(N_{i}) = {rec.beta} exceeds b_{i}(L) = {rec.b_L}")
    return verdict


@dataclass
class RestrictedVerdict:
    x: int
    y: int
    v: int
    degenerate: bool
    inner: RecursionVerdict | None
    discrepancies: list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.discrepancies and (self.inner is None or self.inner.holds)


def verify_recursion_restricted(g: Graph, x: VertexSet, y: VertexSet, v: int) -> RestrictedVerdict:
    """The splitting identity on ``G(X|Y)`` at ``v``.

    When ``v`` is adjacent to ``X`` the residual graph does not contain ``v``
    and the identity is the trivial ``G(X|Y+v) = G(X|Y)`` (``degenerate``).
    """
    xm, ym = as_mask(x), as_mask(y)
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n={g.n}")
    if (xm | ym) >> v & 1:
        raise GraphError("pivot must lie outside X and Y")
    sub, mapping = residual(g, xm, ym)
    if v not in mapping:
        return RestrictedVerdict(xm, ym, v, True, None)
    local = mapping.index(v)
    inner = verify_recursion(sub, local)
    out = RestrictedVerdict(xm, ym, v, False, inner)
    minus = betti_numbers(residual(g, xm, ym | (1 << v))[0])
    plus = betti_numbers(residual(g, xm | (1 << v), ym)[0])
    for rec in inner.records:
        if minus[rec.i] != rec.b_K_prime:
            out.discrepancies.append(f"b_{rec.i}(X|Y+v) disagrees with the split complex")
        if plus[rec.i] != rec.b_L:
            out.discrepancies.append(f"b_{rec.i}(X+v|Y) disagrees with the split complex")
    return out
