"""Exhaustive enumeration of small labeled graphs, optionally up to isomorphism."""

from __future__ import annotations

import random
from itertools import permutations
from typing import Iterator

from ternary_betti.graph import Graph, GraphError

MAX_N_LABELED = 7
MAX_N_DEDUP = 6


def edge_slots(n: int) -> list[tuple[int, int]]:
    """Bit ``k`` of an edge mask is the ``k``-th pair ``(i, j)``, ``i < j``, column-major."""
    return [(i, j) for j in range(1, n) for i in range(j)]


def graph_from_edge_mask(n: int, mask: int, slots: list[tuple[int, int]] | None = None) -> Graph:
    slots = slots if slots is not None else edge_slots(n)
    adj = [0] * n
    for k, (i, j) in enumerate(slots):
        if mask >> k & 1:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return Graph(n, tuple(adj))


def edge_mask(g: Graph) -> int:
    mask = 0
    for k, (i, j) in enumerate(edge_slots(g.n)):
        if g.adj[i] >> j & 1:
            mask |= 1 << k
    return mask


def _permutation_tables(n: int) -> list[list[int]]:
    slots = edge_slots(n)
    where = {pair: k for k, pair in enumerate(slots)}
    tables = []
    for perm in permutations(range(n)):
        table = []
        for i, j in slots:
            a, b = perm[i], perm[j]
            table.append(where[(a, b) if a < b else (b, a)])
        tables.append(table)
    return tables


def enumerate_graphs(n: int, dedup: bool = False) -> Iterator[Graph]:
    """All labeled graphs on ``n`` vertices in edge-mask order.

    With ``dedup`` only the minimum edge mask of each isomorphism class is
    yielded.  Masks are visited in increasing order, so the first unseen mask
    of an orbit is its minimum; the orbit is then marked in full.
    """
    limit = MAX_N_DEDUP if dedup else MAX_N_LABELED
    if n < 0 or n > limit:
        raise GraphError(f"n={n} outside 0..{limit} for dedup={dedup}")
    slots = edge_slots(n)
    total = 1 << len(slots)
    if not dedup:
        for mask in range(total):
            yield graph_from_edge_mask(n, mask, slots)
        return
    tables = _permutation_tables(n)
    seen = bytearray(total)
    for mask in range(total):
        if seen[mask]:
            continue
        bits = [k for k in range(len(slots)) if mask >> k & 1]
        for table in tables:
            image = 0
            for k in bits:
                image |= 1 << table[k]
            seen[image] = 1
        yield graph_from_edge_mask(n, mask, slots)


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    """Erdos-Renyi ``G(n, p)`` drawn from ``rng``."""
    edges = [(i, j) for i, j in edge_slots(n) if rng.random() < p]
    return Graph.from_edges(n, edges)
