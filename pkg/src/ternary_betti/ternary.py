"""Induced (chordless) cycles and the ternary property."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from ternary_betti.graph import Graph, members


@dataclass(frozen=True)
class InducedCycleWitness:
    """A cyclic vertex sequence, lowest vertex first, smaller neighbor second."""

    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    def as_list(self) -> list[int]:
        return list(self.vertices)


def is_induced_cycle(g: Graph, seq: Sequence[int]) -> bool:
    """Consecutive vertices adjacent, all other pairs non-adjacent, no repeats."""
    r = len(seq)
    if r < 3 or len(set(seq)) != r:
        return False
    for a in range(r):
        for b in range(a + 1, r):
            consecutive = b == a + 1 or (a == 0 and b == r - 1)
            if g.has_edge(seq[a], seq[b]) != consecutive:
                return False
    return True


def induced_cycles(g: Graph) -> Iterator[InducedCycleWitness]:
    """Each induced cycle of ``g`` exactly once.

    Anchored at the cycle's lowest vertex ``s``; paths from ``s`` only use
    higher vertices and are extended by ``w`` when ``w`` is adjacent to the
    current end but to no earlier interior vertex.  A path closes when ``w``
    is adjacent to ``s``; keeping closures with ``path[1] < w`` drops the
    reversed copy.
    """
    adj = g.adj
    for s in range(g.n):
        higher = g.vertex_mask & ~((1 << (s + 1)) - 1)
        ns = adj[s]
        for a in members(ns & higher):
            # stack items: (path, path mask, union of N(p_1..p_{m-1}))
            stack = [([s, a], (1 << s) | (1 << a), 0)]
            while stack:
                path, pmask, blocked = stack.pop()
                end = path[-1]
                cands = adj[end] & higher & ~pmask & ~blocked
                fresh = blocked | adj[end]
                for w in reversed(members(cands)):
                    if ns >> w & 1:
                        if a < w:
                            yield InducedCycleWitness(tuple(path) + (w,))
                    else:
                        stack.append((path + [w], pmask | (1 << w), fresh))


def is_ternary(g: Graph) -> tuple[bool, InducedCycleWitness | None]:
    """``(True, None)`` if no induced cycle has length divisible by 3,
    else ``(False, witness)`` for the first such cycle found."""
    for cyc in induced_cycles(g):
        if cyc.length % 3 == 0:
            return False, cyc
    return True, None
