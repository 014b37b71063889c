"""graph6 encoding (McKay's format) for graphs with up to 64 vertices."""

from __future__ import annotations

from typing import Iterable, Iterator, TextIO

from ternary_betti.graph import Graph, GraphError


class Graph6Error(GraphError):
    """Malformed graph6 text."""


def _pairs(n: int) -> Iterator[tuple[int, int]]:
    # upper triangle, column by column: (0,1), (0,2), (1,2), (0,3), ...
    for j in range(1, n):
        for i in range(j):
            yield i, j


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    return "~" + "".join(chr(63 + (n >> s & 0x3F)) for s in (12, 6, 0))


def to_graph6(g: Graph) -> str:
    bits = [1 if g.adj[i] >> j & 1 else 0 for i, j in _pairs(g.n)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _encode_n(g.n) + body


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 record; an optional ``>>graph6<<`` header is accepted."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6Error("empty graph6 string")
    for ch in s:
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside the graph6 range '?'..'~'")
    if s[0] == "~":
        if len(s) >= 2 and s[1] == "~":
            raise Graph6Error("graphs above 258047 vertices are not supported")
        if len(s) < 4:
            raise Graph6Error("truncated 4-byte length header")
        n = 0
        for ch in s[1:4]:
            n = n << 6 | (ord(ch) - 63)
        if n <= 62:
            raise Graph6Error("non-canonical long length header")
        body = s[4:]
    else:
        n = ord(s[0]) - 63
        body = s[1:]
    if n > 64:
        raise Graph6Error(f"{n} vertices exceeds the 64-vertex limit")
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    if len(body) != need:
        raise Graph6Error(f"expected {need} data characters for n={n}, got {len(body)}")
    value = 0
    for ch in body:
        value = value << 6 | (ord(ch) - 63)
    pad = need * 6 - nbits
    if value & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits")
    value >>= pad
    adj = [0] * n
    pos = nbits - 1
    for i, j in _pairs(n):
        if value >> pos & 1:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        pos -= 1
    return Graph(n, tuple(adj))


def read_graph6_stream(lines: Iterable[str]) -> Iterator[Graph]:
    """Yield graphs from line-delimited graph6 text, skipping blank lines."""
    for line in lines:
        line = line.strip()
        if line:
            yield parse_graph6(line)


def write_graph6(graphs: Iterable[Graph], out: TextIO) -> int:
    count = 0
    for g in graphs:
        out.write(to_graph6(g) + "\n")
        count += 1
    return count
