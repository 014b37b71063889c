"""Independent sets and the alternating count ``f_G = sum_A (-1)^|A|``."""

from __future__ import annotations

from typing import Iterator

from ternary_betti.graph import Graph, GraphError, VertexSet, as_mask, members


def _independent_masks(g: Graph, within: int) -> list[int]:
    sets = [0]
    for v in members(within):
        nb = g.adj[v]
        sets += [s | (1 << v) for s in sets if not s & nb]
    return sets


def independent_masks(g: Graph, within: int | None = None) -> list[int]:
    """Independent subsets of ``within`` (default all of ``V(G)``) as masks,
    ordered by cardinality and then lexicographically by sorted vertex list."""
    within = g.vertex_mask if within is None else within
    sets = _independent_masks(g, within)
    sets.sort(key=lambda s: (s.bit_count(), members(s)))
    return sets


def independent_sets(g: Graph) -> Iterator[frozenset[int]]:
    """Every independent set of ``g``, the empty set first."""
    for s in independent_masks(g):
        yield frozenset(members(s))


def independence_count(g: Graph) -> int:
    """Number of independent sets, i.e. the independence polynomial at 1."""
    return len(_independent_masks(g, g.vertex_mask))


def f_euler(g: Graph) -> int:
    """``sum (-1)^|A|`` over all independent sets ``A``, the empty set included."""
    return sum(-1 if s.bit_count() & 1 else 1 for s in _independent_masks(g, g.vertex_mask))


def f_restricted(g: Graph, x: VertexSet, y: VertexSet) -> int:
    """Signed count of independent ``A`` with ``X <= A`` and ``A`` disjoint from ``Y``.

    Evaluated by branching on the lowest free vertex ``v``:
    ``f(X, Y) = f(X + v, Y) + f(X, Y + v)``.  The value depends only on the
    free vertex mask and the parity of ``|X|``, which is the memo key.
    """
    xm, ym = as_mask(x), as_mask(y)
    if xm & ym:
        raise GraphError("X and Y must be disjoint")
    if (xm | ym) & ~g.vertex_mask:
        raise GraphError("X or Y contains a vertex outside the graph")
    if not g.is_independent(xm):
        return 0
    memo: dict[tuple[int, int], int] = {}
    adj = g.adj

    def rec(free: int, parity: int) -> int:
        if not free:
            return -1 if parity else 1
        key = (free, parity)
        hit = memo.get(key)
        if hit is not None:
            return hit
        low = free & -free
        v = low.bit_length() - 1
        # X + v: v joins X, so N[v] leaves the free set
        value = rec(free & ~low & ~adj[v], parity ^ 1) + rec(free & ~low, parity)
        memo[key] = value
        return value

    free = g.vertex_mask & ~g.closed_neighborhood(xm) & ~ym
    return rec(free, xm.bit_count() & 1)
