"""Exact sparse linear algebra over the integers and rationals.

Vectors are ``dict[int, int]`` mapping a coordinate to a nonzero entry.
Elimination is fraction-free: when a pivot does not divide the entry being
cleared, both vectors are scaled by cofactors and the result is divided by
its content, so entries stay small on the +-1 matrices that boundary maps
produce.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

SparseVec = dict[int, int]


def _combine(m: int, vec: SparseVec, q: int, other: Mapping[int, int]) -> SparseVec:
    """Return ``m * vec - q * other`` without zero entries."""
    if m != 1:
        out = {i: m * a for i, a in vec.items()}
    else:
        out = dict(vec)
    for i, b in other.items():
        val = out.get(i, 0) - q * b
        if val:
            out[i] = val
        else:
            out.pop(i, None)
    return out


def content(*vecs: Mapping[int, int]) -> int:
    g = 0
    for vec in vecs:
        for a in vec.values():
            g = gcd(g, a)
            if g == 1:
                return 1
    return g


class Echelon:
    """Incrementally built echelon basis of a subspace of ``Q^N``.

    Each stored vector is keyed by its largest coordinate (its pivot).  With
    ``track=True`` every vector carries a *tag*, a formal combination that it
    is congruent to; reductions update tags by the same row operations, so a
    vector that reduces to zero exposes a linear relation among tags.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.pivots: dict[int, tuple[SparseVec, SparseVec]] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: Mapping[int, int], tag: Mapping[int, int] | None = None
               ) -> tuple[SparseVec, SparseVec]:
        vec = {i: a for i, a in vec.items() if a}
        tag = dict(tag) if (self.track and tag) else {}
        pivots = self.pivots
        while vec:
            p = max(vec)
            stored = pivots.get(p)
            if stored is None:
                break
            pv, ptag = stored
            a, b = vec[p], pv[p]
            if a % b == 0:
                q = a // b
                vec = _combine(1, vec, q, pv)
                if self.track and ptag:
                    tag = _combine(1, tag, q, ptag)
            else:
                g = gcd(a, b)
                m, q = b // g, a // g
                vec = _combine(m, vec, q, pv)
                if self.track:
                    tag = _combine(m, tag, q, ptag)
                    c = content(vec, tag)
                else:
                    c = content(vec)
                if c > 1:
                    vec = {i: x // c for i, x in vec.items()}
                    if self.track:
                        tag = {i: x // c for i, x in tag.items()}
        return vec, tag

    def add(self, vec: Mapping[int, int], tag: Mapping[int, int] | None = None
            ) -> tuple[SparseVec, SparseVec]:
        """Reduce ``vec`` and store the remainder if it is nonzero.

        Returns the remainder and its tag; an empty remainder means ``vec``
        was already in the span.
        """
        rem, rtag = self.reduce(vec, tag)
        if rem:
            c = content(rem, rtag) if self.track else content(rem)
            if c > 1:
                rem = {i: x // c for i, x in rem.items()}
                rtag = {i: x // c for i, x in rtag.items()}
            self.pivots[max(rem)] = (rem, rtag)
        return rem, rtag


def rank(columns: Iterable[Mapping[int, int]]) -> int:
    """Rank over Q of the matrix whose columns are the given sparse vectors."""
    ech = Echelon()
    for col in columns:
        ech.add(col)
    return len(ech)


def rank_and_kernel(columns: Sequence[Mapping[int, int]]) -> tuple[int, list[SparseVec]]:
    """Rank and an integer basis of the right kernel (vectors over column indices)."""
    ech = Echelon(track=True)
    kernel = []
    for k, col in enumerate(columns):
        rem, tag = ech.add(col, {k: 1})
        if not rem:
            c = content(tag)
            vec = {i: x // c for i, x in tag.items()}
            if vec[max(vec)] < 0:
                vec = {i: -x for i, x in vec.items()}
            kernel.append(vec)
    return len(ech), kernel


def rational_rank(rows: Sequence[Sequence[Fraction | int]]) -> int:
    """Rank of a small dense rational matrix."""
    cols: list[SparseVec] = []
    for row in rows:
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        cols.append({j: int(Fraction(x) * den) for j, x in enumerate(row) if x})
    return rank(cols)


def smith_diagonal(columns: Sequence[Mapping[int, int]]) -> list[int]:
    """Invariant factors (positive, each dividing the next) of an integer matrix.

    ``columns[c]`` maps row index to entry.  Pivots are chosen with the
    smallest absolute value; a unit pivot simply deletes its row and column.
    """
    rows: dict[int, SparseVec] = {}
    cols: dict[int, set[int]] = {}
    for c, col in enumerate(columns):
        for r, a in col.items():
            if a:
                rows.setdefault(r, {})[c] = a
                cols.setdefault(c, set()).add(r)

    def set_entry(r: int, c: int, val: int) -> None:
        if val:
            rows[r][c] = val
            cols.setdefault(c, set()).add(r)
        else:
            rows[r].pop(c, None)
            s = cols.get(c)
            if s is not None:
                s.discard(r)
                if not s:
                    del cols[c]

    diag = []
    while rows:
        best = None
        for r, row in rows.items():
            for c, a in row.items():
                if best is None or abs(a) < abs(best[2]):
                    best = (r, c, a)
                    if abs(a) == 1:
                        break
            if best is not None and abs(best[2]) == 1:
                break
        r, c, p = best
        clean = True
        for r2 in sorted(cols[c] - {r}):
            q = rows[r2][c] // p
            for c2, b in list(rows[r].items()):
                set_entry(r2, c2, rows[r2].get(c2, 0) - q * b)
            if rows[r2].get(c, 0):
                clean = False
            if not rows[r2]:
                del rows[r2]
        if clean:
            # column c is now {r: p}; column operations only touch row r
            for c2 in sorted(set(rows[r]) - {c}):
                q = rows[r][c2] // p
                set_entry(r, c2, rows[r][c2] - q * p)
                if rows[r].get(c2, 0):
                    clean = False
        if clean:
            diag.append(abs(p))
            set_entry(r, c, 0)
            del rows[r]
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            g = gcd(a, b)
            diag[i], diag[j] = g, a // g * b
    return diag
