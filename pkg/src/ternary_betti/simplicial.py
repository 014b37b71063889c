"""Independence complexes, augmented boundary maps, and reduced homology.

Faces are vertex bitmasks labeled in the source graph.  Dimension ``-1`` is
the empty face; it is never stored, but chain group ``C_{-1}`` is ``Z`` and
``boundary_matrix(K, 0)`` is the augmentation row.  With that convention the
complex of the null graph has reduced Betti number 1 in dimension -1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Mapping

from ternary_betti.graph import Graph, members
from ternary_betti.independence import f_euler, independent_masks
from ternary_betti import linalg


@dataclass(frozen=True)
class SimplicialComplex:
    """Faces grouped by dimension; ``faces_by_dim[d]`` holds the (d+1)-sets."""

    vertices: int
    faces_by_dim: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        """Top dimension; -1 when only the empty face is present."""
        return len(self.faces_by_dim) - 1

    @property
    def is_empty(self) -> bool:
        return not self.faces_by_dim

    def faces(self, d: int) -> tuple[int, ...]:
        """Basis of ``C_d``; ``faces(-1) == (0,)`` is the empty face."""
        if d == -1:
            return (0,)
        if 0 <= d < len(self.faces_by_dim):
            return self.faces_by_dim[d]
        return ()

    def face_count(self, d: int) -> int:
        return len(self.faces(d))

    @cached_property
    def index(self) -> dict[int, int]:
        """Position of every face (including the empty face) within its dimension."""
        out = {0: 0}
        for fs in self.faces_by_dim:
            out.update((f, i) for i, f in enumerate(fs))
        return out

    def all_faces(self) -> set[int]:
        return {f for fs in self.faces_by_dim for f in fs}

    def __contains__(self, face: int) -> bool:
        return face in self.index


def complex_from_faces(faces: Iterable[int]) -> SimplicialComplex:
    """Build a complex from nonempty face masks (closure is not checked here)."""
    by_dim: dict[int, list[int]] = {}
    verts = 0
    for f in faces:
        if f:
            by_dim.setdefault(f.bit_count() - 1, []).append(f)
            verts |= f
    top = max(by_dim, default=-1)
    return SimplicialComplex(
        verts,
        tuple(tuple(sorted(by_dim.get(d, []), key=members)) for d in range(top + 1)),
    )


def independence_complex(g: Graph, within: int | None = None) -> SimplicialComplex:
    """``I(G[within])`` with faces labeled by vertices of ``g``."""
    within = g.vertex_mask if within is None else within
    by_dim: list[list[int]] = []
    for s in independent_masks(g, within):
        if s:
            d = s.bit_count() - 1
            if d == len(by_dim):
                by_dim.append([])
            by_dim[d].append(s)
    return SimplicialComplex(within, tuple(tuple(fs) for fs in by_dim))


def boundary_columns(k: SimplicialComplex, n: int) -> list[dict[int, int]]:
    """Columns of ``d_n`` as sparse vectors over positions of (n-1)-faces.

    The face ``[v_0 < ... < v_n]`` maps to ``sum_j (-1)^j [.. v_j omitted ..]``.
    """
    index = k.index
    cols = []
    for f in k.faces(n):
        col = {}
        sign = 1
        rest = f
        while rest:
            low = rest & -rest
            col[index[f ^ low]] = sign
            sign = -sign
            rest ^= low
        cols.append(col)
    return cols


@dataclass(frozen=True)
class BoundaryMatrix:
    """Sparse ``d_n``: rows are (n-1)-faces (the empty face for n = 0), columns n-faces."""

    dim: int
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    entries: Mapping[tuple[int, int], int]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * len(self.cols) for _ in self.rows]
        for (r, c), a in self.entries.items():
            out[r][c] = a
        return out

    def column(self, c: int) -> dict[int, int]:
        return {r: a for (r, cc), a in self.entries.items() if cc == c}

    def dump(self) -> str:
        """Text dump: header ``dim rows cols`` then ``row col value`` per nonzero."""
        lines = [f"{self.dim} {len(self.rows)} {len(self.cols)}"]
        lines += [f"{r} {c} {a}" for (r, c), a in sorted(self.entries.items())]
        return "\n".join(lines) + "\n"


def boundary_matrix(k: SimplicialComplex, n: int) -> BoundaryMatrix:
    if n < 0:
        raise ValueError("boundary dimension must be >= 0")
    entries = {}
    for c, col in enumerate(boundary_columns(k, n)):
        for r, a in col.items():
            entries[(r, c)] = a
    return BoundaryMatrix(n, k.faces(n - 1), k.faces(n), entries)


def parse_matrix_dump(text: str) -> BoundaryMatrix:
    """Inverse of :meth:`BoundaryMatrix.dump`; face labels are not recorded."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    dim, nrows, ncols = map(int, lines[0])
    entries = {(int(r), int(c)): int(a) for r, c, a in lines[1:]}
    return BoundaryMatrix(dim, tuple(range(nrows)), tuple(range(ncols)), entries)


@dataclass(frozen=True)
class BettiVector:
    """Reduced Betti numbers; ``values[0]`` is dimension -1."""

    values: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        j = i + 1
        if 0 <= j < len(self.values):
            return self.values[j]
        return 0

    @property
    def total(self) -> int:
        return sum(self.values)

    @property
    def top(self) -> int:
        """Largest dimension with a stored entry."""
        return len(self.values) - 2

    def nonzero(self) -> dict[int, int]:
        return {i - 1: b for i, b in enumerate(self.values) if b}

    def concentrated(self) -> int | None:
        """The single dimension carrying all the homology, if there is one."""
        nz = self.nonzero()
        return next(iter(nz)) if len(nz) == 1 else None

    def euler_sum(self) -> int:
        """``sum_{i >= -1} (-1)^(i+1) b_i``, which equals ``f_G`` for ``I(G)``."""
        return sum(-b if j % 2 else b for j, b in enumerate(self.values))

    def as_dict(self) -> dict[str, int]:
        return {str(i - 1): b for i, b in enumerate(self.values)}

    def __str__(self) -> str:
        nz = self.nonzero()
        return ", ".join(f"b{i}={b}" for i, b in nz.items()) if nz else "acyclic"


def boundary_ranks(k: SimplicialComplex) -> list[int]:
    """``ranks[n + 1]`` is the rational rank of ``d_n`` for n = -1 .. dim + 1."""
    ranks = [0]
    for n in range(0, k.dim + 2):
        ranks.append(linalg.rank(boundary_columns(k, n)))
    return ranks


def reduced_betti(k: SimplicialComplex) -> BettiVector:
    """``b_i = dim ker d_i - rank d_{i+1}`` over Q for i = -1 .. dim."""
    ranks = boundary_ranks(k)
    values = []
    for i in range(-1, k.dim + 1):
        values.append(k.face_count(i) - ranks[i + 1] - ranks[i + 2])
    return BettiVector(tuple(values))


@lru_cache(maxsize=1 << 16)
def betti_numbers(g: Graph) -> BettiVector:
    """Reduced Betti numbers of ``I(G)`` (memoized on the graph)."""
    return reduced_betti(independence_complex(g))


def total_betti(g: Graph) -> int:
    return betti_numbers(g).total


@dataclass(frozen=True)
class HomologyGroup:
    dim: int
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        parts = ["Z^%d" % self.free_rank] if self.free_rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class IntegralHomology:
    groups: tuple[HomologyGroup, ...] = field(default_factory=tuple)

    def free_ranks(self) -> tuple[int, ...]:
        return tuple(g.free_rank for g in self.groups)

    def has_torsion(self) -> bool:
        return any(g.torsion for g in self.groups)

    def __getitem__(self, i: int) -> HomologyGroup:
        for g in self.groups:
            if g.dim == i:
                return g
        return HomologyGroup(i, 0)


def integral_homology(k: SimplicialComplex) -> IntegralHomology:
    """Reduced integral homology from Smith forms of the augmented boundary maps."""
    factors = {n: linalg.smith_diagonal(boundary_columns(k, n)) for n in range(0, k.dim + 2)}
    factors[-1] = []
    groups = []
    for i in range(-1, k.dim + 1):
        rank_i = len(factors[i])
        above = factors[i + 1]
        free = k.face_count(i) - rank_i - len(above)
        groups.append(HomologyGroup(i, free, tuple(t for t in above if t > 1)))
    return IntegralHomology(tuple(groups))


@dataclass(frozen=True)
class EulerCheck:
    f: int
    betti_sum: int

    @property
    def holds(self) -> bool:
        return self.f == self.betti_sum


def euler_identity_check(g: Graph) -> EulerCheck:
    """Compare ``f_G`` from enumeration with the alternating Betti sum."""
    return EulerCheck(f_euler(g), betti_numbers(g).euler_sum())
