"""Simple undirected graphs on at most 64 vertices, stored as neighbor bitmasks.

Vertex sets are plain ``int`` bitmasks throughout the package: bit ``v`` set
means vertex ``v`` is a member.  Most public functions also accept any
iterable of vertex indices and convert it with :func:`as_mask`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

MAX_VERTICES = 64

VertexSet = Union[int, Iterable[int]]


class GraphError(ValueError):
    """Raised for invalid graph construction or violated preconditions."""


def as_mask(vertices: VertexSet) -> int:
    """Return ``vertices`` as a bitmask; ints are taken to already be masks."""
    if isinstance(vertices, int):
        if vertices < 0:
            raise GraphError("vertex mask must be non-negative")
        return vertices
    mask = 0
    for v in vertices:
        if v < 0:
            raise GraphError(f"negative vertex index {v}")
        mask |= 1 << v
    return mask


def members(mask: int) -> list[int]:
    """Vertex indices of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; ``adj[v]`` is the neighbor bitmask of ``v``."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise GraphError(f"vertex {v} has a neighbor outside 0..{self.n - 1}")
            if nb >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            rest = nb
            while rest:
                low = rest & -rest
                u = low.bit_length() - 1
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
                rest ^= low

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def null(cls) -> "Graph":
        return cls(0, ())

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for v in range(self.n) for u in members(self.adj[v] & ((1 << v) - 1))]

    @property
    def edge_count(self) -> int:
        return sum(nb.bit_count() for nb in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return members(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighborhood(self, mask: int) -> int:
        """Open neighborhood: union of ``N(x)`` over ``x`` in ``mask``."""
        out = 0
        while mask:
            low = mask & -mask
            out |= self.adj[low.bit_length() - 1]
            mask ^= low
        return out

    def closed_neighborhood(self, mask: int) -> int:
        return mask | self.neighborhood(mask)

    def is_independent(self, mask: int) -> bool:
        return not (self.neighborhood(mask) & mask)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def induced_subgraph(g: Graph, vertices: VertexSet) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced on ``vertices``, relabeled ``0..m-1`` in increasing order.

    Returns the subgraph and the map from new labels to labels of ``g``.
    """
    mask = as_mask(vertices)
    if mask & ~g.vertex_mask:
        raise GraphError("vertex set is not contained in the graph")
    keep = members(mask)
    index = {v: i for i, v in enumerate(keep)}
    adj = []
    for v in keep:
        nb = 0
        for u in members(g.adj[v] & mask):
            nb |= 1 << index[u]
        adj.append(nb)
    return Graph(len(keep), tuple(adj)), tuple(keep)


def residual_mask(g: Graph, x: VertexSet, y: VertexSet) -> int:
    """Vertex mask of ``V(G) - N[X] - Y``."""
    xm, ym = as_mask(x), as_mask(y)
    if xm & ym:
        raise GraphError("X and Y must be disjoint")
    if (xm | ym) & ~g.vertex_mask:
        raise GraphError("X or Y contains a vertex outside the graph")
    return g.vertex_mask & ~g.closed_neighborhood(xm) & ~ym


def residual(g: Graph, x: VertexSet, y: VertexSet) -> tuple[Graph, tuple[int, ...]]:
    """The graph ``G(X|Y)`` induced on ``V(G) - N[X] - Y`` plus its index map."""
    return induced_subgraph(g, residual_mask(g, x, y))


FAMILIES = ("cycle", "path", "complete", "empty")


def family(kind: str, size: int) -> Graph:
    """Canonical labeled member of a standard family on ``size`` vertices."""
    if size < 0:
        raise GraphError("family size must be non-negative")
    if kind == "cycle":
        if size < 3:
            raise GraphError("a cycle needs at least 3 vertices")
        return Graph.from_edges(size, [(i, (i + 1) % size) for i in range(size)])
    if kind == "path":
        return Graph.from_edges(size, [(i, i + 1) for i in range(size - 1)])
    if kind == "complete":
        return Graph.from_edges(size, [(u, v) for v in range(size) for u in range(v)])
    if kind == "empty":
        return Graph(size, (0,) * size)
    raise GraphError(f"unknown family {kind!r}; expected one of {', '.join(FAMILIES)}")


def parse_family(text: str) -> Graph:
    """Parse ``kind:size`` such as ``cycle:9``."""
    kind, sep, size = text.partition(":")
    if not sep or not size.strip().isdigit():
        raise GraphError(f"family must look like 'cycle:9', got {text!r}")
    return family(kind.strip(), int(size))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """``g`` followed by ``h`` with ``h``'s vertices shifted by ``g.n``."""
    shift = g.n
    return Graph(g.n + h.n, g.adj + tuple(nb << shift for nb in h.adj))


def add_isolated_vertex(g: Graph) -> Graph:
    return Graph(g.n + 1, g.adj + (0,))


def parse_adjacency_list(text: str) -> Graph:
    """Read the edge-list text format: first line ``n``, then ``u v`` per line."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphError("empty adjacency-list input")
    try:
        n = int(lines[0])
        edges = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise GraphError(f"expected 'u v', got {ln!r}")
            edges.append((int(parts[0]), int(parts[1])))
    except ValueError as exc:
        if isinstance(exc, GraphError):
            raise
        raise GraphError(f"malformed adjacency list: {exc}") from None
    return Graph.from_edges(n, edges)


def format_adjacency_list(g: Graph) -> str:
    return "\n".join([str(g.n)] + [f"{u} {v}" for u, v in g.edges()]) + "\n"


def iter_subsets(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask
