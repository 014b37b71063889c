"""The d-value calculus on residual graphs and the auxiliary graph ``H``.

``d(X|Y)`` classifies the reduced homology of ``I(G(X|Y))``: ``Dim(k)`` when
it is a single copy of Q in dimension ``k`` (``Dim(-1)`` for the null
residual), ``STAR`` when it vanishes, ``UNDEFINED`` when the total Betti
number is at least 2.  A dependent ``X`` gives ``STAR``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from ternary_betti.graph import Graph, GraphError, VertexSet, as_mask, induced_subgraph, members
from ternary_betti.simplicial import BettiVector, betti_numbers
from ternary_betti.ternary import is_induced_cycle


@dataclass(frozen=True)
class DValue:
    kind: str
    k: int | None = None

    @property
    def is_dim(self) -> bool:
        return self.kind == "dim"

    def __str__(self) -> str:
        if self.kind == "dim":
            return str(self.k)
        return "*" if self.kind == "star" else "undefined"

    def to_json(self) -> int | str:
        return self.k if self.kind == "dim" else str(self)


STAR = DValue("star")
UNDEFINED = DValue("undefined")


@lru_cache(maxsize=None)
def Dim(k: int) -> DValue:
    if k < -1:
        raise ValueError("dimension must be >= -1")
    return DValue("dim", k)


def classify_betti(b: BettiVector) -> DValue:
    total = b.total
    if total == 0:
        return STAR
    if total == 1:
        return Dim(b.concentrated())
    return UNDEFINED


class DCalculator:
    """d-values for one graph, memoized on the residual vertex mask."""

    def __init__(self, g: Graph):
        self.graph = g
        self._by_mask: dict[int, DValue] = {}

    def of_mask(self, mask: int) -> DValue:
        d = self._by_mask.get(mask)
        if d is None:
            d = classify_betti(betti_numbers(induced_subgraph(self.graph, mask)[0]))
            self._by_mask[mask] = d
        return d

    def __call__(self, x: VertexSet = 0, y: VertexSet = 0) -> DValue:
        g = self.graph
        xm, ym = as_mask(x), as_mask(y)
        if xm & ym:
            raise GraphError("X and Y must be disjoint")
        if (xm | ym) & ~g.vertex_mask:
            raise GraphError("X or Y contains a vertex outside the graph")
        if not g.is_independent(xm):
            return STAR
        return self.of_mask(g.vertex_mask & ~g.closed_neighborhood(xm) & ~ym)


@lru_cache(maxsize=256)
def calculator(g: Graph) -> DCalculator:
    return DCalculator(g)


def d_value(g: Graph, x: VertexSet = 0, y: VertexSet = 0) -> DValue:
    return calculator(g)(x, y)


class Pattern(enum.Enum):
    P1 = "(k,*,k)"
    P2 = "(*,*,*)"
    P3 = "(*,k,k)"
    P4 = "(k+1,k,*)"
    ILLEGAL = "illegal"
    SKIPPED = "skipped"


@dataclass(frozen=True)
class Triple:
    values: tuple[DValue, DValue, DValue]
    pattern: Pattern
    k: int | None = None


def classify_values(a: DValue, b: DValue, c: DValue) -> Triple:
    """Match ``(d(X|Y), d(X+v|Y), d(X|Y+v))`` against the four legal shapes."""
    vals = (a, b, c)
    if UNDEFINED in vals:
        return Triple(vals, Pattern.SKIPPED)
    if a.is_dim and b == STAR and c == a:
        return Triple(vals, Pattern.P1, a.k)
    if a == b == c == STAR:
        return Triple(vals, Pattern.P2)
    if a == STAR and b.is_dim and c == b:
        return Triple(vals, Pattern.P3, b.k)
    if a.is_dim and b.is_dim and c == STAR and a.k == b.k + 1:
        return Triple(vals, Pattern.P4, b.k)
    return Triple(vals, Pattern.ILLEGAL)


def classify_triple(g: Graph, x: VertexSet, y: VertexSet, v: int) -> Triple:
    xm, ym = as_mask(x), as_mask(y)
    if not 0 <= v < g.n or (xm | ym) >> v & 1:
        raise GraphError("pivot must be a vertex outside X and Y")
    d = calculator(g)
    bit = 1 << v
    return classify_values(d(xm, ym), d(xm | bit, ym), d(xm, ym | bit))


def disjoint_pairs(n: int, max_support: int | None = None, min_support: int = 0
                   ) -> Iterator[tuple[int, int]]:
    """Disjoint ``(X, Y)`` with ``min_support <= |X + Y| <= max_support``."""
    top = n if max_support is None else min(max_support, n)
    for t in range(min_support, top + 1):
        for w in combinations(range(n), t):
            for xbits in range(1 << t):
                xm = ym = 0
                for j, u in enumerate(w):
                    if xbits >> j & 1:
                        xm |= 1 << u
                    else:
                        ym |= 1 << u
                yield xm, ym


@dataclass
class CheckReport:
    name: str
    checked: int = 0
    violations: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def fail(self, msg: str, limit: int = 50) -> None:
        if len(self.violations) < limit:
            self.violations.append(msg)
        else:
            self.details["truncated"] = self.details.get("truncated", 0) + 1

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "violations": list(self.violations),
            **({"details": self.details} if self.details else {}),
        }


def _fmt(mask: int) -> str:
    return "{" + ",".join(map(str, members(mask))) + "}"


def _triple_tally(d: DCalculator, r: int) -> tuple[dict[str, int], list[tuple[int, Triple]]]:
    """Patterns over pivots ``v`` inside the residual ``r`` of an independent ``X``."""
    adj = d.graph.adj
    a = d.of_mask(r)
    tally: dict[str, int] = {}
    illegal = []
    rest = r
    while rest:
        low = rest & -rest
        rest ^= low
        v = low.bit_length() - 1
        t = classify_values(a, d.of_mask(r & ~low & ~adj[v]), d.of_mask(r & ~low))
        tally[t.pattern.name] = tally.get(t.pattern.name, 0) + 1
        if t.pattern is Pattern.ILLEGAL:
            illegal.append((v, t))
    return tally, illegal


def scan_triples(g: Graph, max_support: int = 3) -> CheckReport:
    """Classify every triple with ``1 <= |X + Y| <= max_support``.

    Triples containing an ``UNDEFINED`` value are tallied as skipped; any
    other triple outside the four legal shapes is a violation.  A triple only
    depends on the residual mask of ``(X, Y)`` and on where ``v`` sits, so
    tallies are shared between pairs with the same residual.
    """
    report = CheckReport("triples")
    counts = {p.name: 0 for p in Pattern}
    d = calculator(g)
    full = g.vertex_mask
    cache: dict[int, tuple[dict[str, int], list[tuple[int, Triple]]]] = {}
    for xm, ym in disjoint_pairs(g.n, max_support, 1):
        pivots = full & ~xm & ~ym
        nx = g.neighborhood(xm)
        if nx & xm:
            counts["P2"] += pivots.bit_count()
            report.checked += pivots.bit_count()
            continue
        r = pivots & ~nx
        hit = cache.get(r)
        if hit is None:
            hit = cache[r] = _triple_tally(d, r)
        tally, illegal = hit
        # v adjacent to X leaves the residual unchanged: (a, *, a)
        outside = (pivots & nx).bit_count()
        if outside:
            a = d.of_mask(r)
            name = classify_values(a, STAR, a).pattern.name
            counts[name] += outside
        for name, c in tally.items():
            counts[name] += c
        report.checked += pivots.bit_count()
        for v, t in illegal:
            a, b, c = t.values
            report.fail(f"X={_fmt(xm)} Y={_fmt(ym)} v={v}: ({a}, {b}, {c})")
    report.details["counts"] = counts
    return report


def _extension_outcome(d: DCalculator, r: int, v1: int, v2: int | None) -> str:
    """Outcome for pivots ``v1`` (in ``r``) and ``v2`` (in ``r``, or adjacent to
    ``X`` when ``None``), given that the premises hold.

    Returns ``"skipped"`` when a d-value the argument passes through is
    undefined, else ``"ok"`` or a string naming the failed reading(s).
    """
    adj = d.graph.adj
    b1 = 1 << v1
    if v2 is None:
        both_add = STAR
        both_avoid = d.of_mask(r & ~b1)
        aux = [d.of_mask(r), d.of_mask(r & ~adj[v1] & ~b1), STAR]
    else:
        b2 = 1 << v2
        both_add = STAR if adj[v1] & b2 else d.of_mask(r & ~adj[v1] & ~adj[v2] & ~b1 & ~b2)
        both_avoid = d.of_mask(r & ~b1 & ~b2)
        aux = [d.of_mask(r & ~b2), d.of_mask(r & ~adj[v1] & ~b1 & ~b2),
               STAR if adj[v1] & b2 else d.of_mask(r & ~adj[v2] & ~b1 & ~b2)]
    aux += [d.of_mask(r & ~b1), both_add, both_avoid]
    if UNDEFINED in aux:
        return "skipped"
    bad = []
    if both_add != STAR:
        bad.append("add")
    if both_avoid != STAR:
        bad.append("avoid")
    return "+".join(bad) or "ok"


def check_extension(g: Graph, max_support: int | None = None) -> CheckReport:
    """Premises ``d(X|Y)=k``, ``d(X+v1|Y)=k-1``, ``d(X+v2|Y)=*``.

    Two readings of the conclusion are evaluated: ``d(X+{v1,v2}|Y)=*``
    ("add", the one used later when proving components of ``H`` complete)
    and ``d(X|Y+{v1,v2})=*`` ("avoid").  Instances whose auxiliary d-values
    are undefined are skipped.  Only the add reading raises violations; the
    avoid reading is tallied in ``details``.
    """
    report = CheckReport("extension")
    d = calculator(g)
    adj = g.adj
    full = g.vertex_mask
    tallies = {"premises": 0, "skipped": 0, "add_reading_violations": 0,
               "avoid_reading_violations": 0}
    cache: dict[int, list[tuple[int, int | None, str]]] = {}
    for xm, ym in disjoint_pairs(g.n, max_support):
        nx = g.neighborhood(xm)
        if nx & xm:
            continue
        pivots = full & ~xm & ~ym
        r = pivots & ~nx
        outcomes = cache.get(r)
        if outcomes is None:
            outcomes = []
            base = d.of_mask(r)
            if base.is_dim and base.k >= 0:
                lower, star = [], []
                for v in members(r):
                    dv = d.of_mask(r & ~adj[v] & ~(1 << v))
                    if dv == Dim(base.k - 1):
                        lower.append(v)
                    elif dv == STAR:
                        star.append(v)
                for v1 in lower:
                    outcomes.append((v1, None, _extension_outcome(d, r, v1, None)))
                    outcomes += [(v1, v2, _extension_outcome(d, r, v1, v2)) for v2 in star]
            cache[r] = outcomes
        outside = (pivots & nx).bit_count()
        for v1, v2, res in outcomes:
            weight = outside if v2 is None else 1
            if not weight:
                continue
            tallies["premises"] += weight
            if res == "skipped":
                tallies["skipped"] += weight
                continue
            if "avoid" in res:
                tallies["avoid_reading_violations"] += weight
            if "add" in res:
                tallies["add_reading_violations"] += weight
                report.fail(f"X={_fmt(xm)} Y={_fmt(ym)} v1={v1} v2={'adj(X)' if v2 is None else v2}")
    report.checked = tallies["premises"] - tallies["skipped"]
    tallies["add_reading_holds"] = tallies["add_reading_violations"] == 0
    tallies["avoid_reading_holds"] = tallies["avoid_reading_violations"] == 0
    report.details.update(tallies)
    return report


class StructureError(ValueError):
    """The graph does not have the shape required to build ``H``."""


@dataclass(frozen=True)
class HGraph:
    """``u ~ v`` in ``H`` iff ``d({u,v}|-) = k - 2``; components sorted by least vertex."""

    base: Graph
    k: int
    h_adj: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]

    def h_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in range(self.base.n) for u in members(self.h_adj[v] & ((1 << v) - 1))]

    def component_of(self) -> dict[int, int]:
        return {v: i for i, comp in enumerate(self.components) for v in comp}


def connected_components(n: int, adj: tuple[int, ...] | list[int]) -> tuple[tuple[int, ...], ...]:
    seen = 0
    comps = []
    for s in range(n):
        if seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for u in members(frontier):
                nxt |= adj[u]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(tuple(members(comp)))
    return tuple(comps)


def h_graph_from_components(g: Graph, k: int, components: list[list[int]]) -> HGraph:
    """An ``HGraph`` whose components are the given cliques (for synthetic tests)."""
    adj = [0] * g.n
    for comp in components:
        mask = as_mask(comp)
        for v in comp:
            adj[v] = mask & ~(1 << v)
    return HGraph(g, k, tuple(adj), tuple(tuple(sorted(c)) for c in sorted(components, key=min)))


def build_h_graph(g: Graph) -> tuple[HGraph, CheckReport]:
    """Build ``H`` and check the pairwise d-value conditions for every pair.

    Raises :class:`StructureError` unless the total Betti number is 2 in a
    single dimension ``k >= 0`` and every vertex has ``d(v|-) = k-1`` and
    ``d(-|v) = k``.
    """
    b = betti_numbers(g)
    k = b.concentrated()
    if b.total != 2 or k is None or k < 0:
        raise StructureError(f"need total Betti 2 in one dimension k >= 0; got {b} (total {b.total})")
    d = calculator(g)
    for v in range(g.n):
        if d(1 << v, 0) != Dim(k - 1):
            raise StructureError(f"vertex {v}: d(v|-) = {d(1 << v, 0)}, expected {k - 1}")
        if d(0, 1 << v) != Dim(k):
            raise StructureError(f"vertex {v}: d(-|v) = {d(0, 1 << v)}, expected {k}")
    adj = [0] * g.n
    for u, v in combinations(range(g.n), 2):
        if k >= 1 and d((1 << u) | (1 << v), 0) == Dim(k - 2):
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    h = HGraph(g, k, tuple(adj), connected_components(g.n, adj))

    report = CheckReport("h_pairs")
    for u, v in combinations(range(g.n), 2):
        report.checked += 1
        pair = (1 << u) | (1 << v)
        uv = f"{{{u},{v}}}"
        if h.h_adj[u] >> v & 1:
            if g.has_edge(u, v):
                report.fail(f"{uv} is an edge of both G and H")
            if d(1 << u, 1 << v) != STAR or d(1 << v, 1 << u) != STAR:
                report.fail(f"{uv} in H but d(u|v), d(v|u) = {d(1 << u, 1 << v)}, {d(1 << v, 1 << u)}")
            if d(0, pair) != Dim(k):
                report.fail(f"{uv} in H but d(-|u,v) = {d(0, pair)}")
        else:
            if d(pair, 0) != STAR:
                report.fail(f"{uv} not in H but d(u,v|-) = {d(pair, 0)}")
            if d(0, pair) != STAR:
                report.fail(f"{uv} not in H but d(-|u,v) = {d(0, pair)}")
            if d(1 << u, 1 << v) != Dim(k - 1) or d(1 << v, 1 << u) != Dim(k - 1):
                report.fail(f"{uv} not in H but d(u|v), d(v|u) = {d(1 << u, 1 << v)}, {d(1 << v, 1 << u)}")
    return h, report


def check_component_diagram(h: HGraph, component: tuple[int, ...] | list[int], t_max: int = 3
                            ) -> CheckReport:
    """Completeness of ``component`` in ``H`` and its d-value rows up to ``t_max``:
    ``k - |X|`` when ``Y`` is empty, ``*`` when both are nonempty, ``k`` when ``X`` is empty."""
    comp = list(component)
    report = CheckReport(f"diagram{tuple(comp)}")
    for u, v in combinations(comp, 2):
        if not h.h_adj[u] >> v & 1:
            report.fail(f"component not complete in H: {u} and {v} not adjacent")
    d = calculator(h.base)
    k = h.k
    for t in range(1, min(t_max, len(comp)) + 1):
        for w in combinations(comp, t):
            for xbits in range(1 << t):
                xs = [u for j, u in enumerate(w) if xbits >> j & 1]
                ys = [u for j, u in enumerate(w) if not xbits >> j & 1]
                got = d(as_mask(xs), as_mask(ys))
                if not ys:
                    want = Dim(k - t) if k - t >= -1 else None
                elif not xs:
                    want = Dim(k)
                else:
                    want = STAR
                report.checked += 1
                if got != want:
                    report.fail(f"X={xs} Y={ys}: d={got}, expected {want if want else 'k-|X| < -1'}")
    return report


def check_neighbor_spread(h: HGraph) -> CheckReport:
    """Every vertex has G-neighbors in at least two H-components."""
    report = CheckReport("neighbor_spread")
    where = h.component_of()
    for v in range(h.base.n):
        report.checked += 1
        hit = {where[u] for u in h.base.neighbors(v)}
        if len(hit) < 2:
            report.fail(f"vertex {v}: G-neighbors meet {len(hit)} component(s)")
    return report


def check_four_components(h: HGraph) -> CheckReport:
    """No two G-edges have their four ends in four distinct H-components."""
    report = CheckReport("four_components")
    where = h.component_of()
    edges = h.base.edges()
    for (a, b), (c, e) in combinations(edges, 2):
        report.checked += 1
        if len({where[a], where[b], where[c], where[e]}) == 4:
            report.fail(f"edges {a}-{b} and {c}-{e} span four components")
    return report


@dataclass(frozen=True)
class OrientedCycleWitness:
    vertices: tuple[int, ...]
    component_indices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)


def orient_and_find_cycle(h: HGraph) -> OrientedCycleWitness:
    """Orient every G-edge from ``C_i`` to ``C_{i+1}`` (mod 3) and return an
    induced directed cycle.

    Walk from vertex 0 along lowest-index out-neighbors until a vertex
    repeats, then shortcut along chords until no chord is left.  A chord
    always yields a strictly shorter directed cycle, so this terminates.
    """
    g = h.base
    if len(h.components) != 3:
        raise StructureError(f"orientation needs exactly 3 components, got {len(h.components)}")
    where = h.component_of()
    out = [0] * g.n
    for v in range(g.n):
        ci = where[v]
        for u in g.neighbors(v):
            cu = where[u]
            if cu == ci:
                raise StructureError(f"edge {v}-{u} lies inside component {ci}")
            if cu == (ci + 1) % 3:
                out[v] |= 1 << u
        if not out[v] or not (g.adj[v] & ~out[v]):
            raise StructureError(f"vertex {v} lacks neighbors in both adjacent components")

    path = [0]
    pos = {0: 0}
    while True:
        nxt = members(out[path[-1]])[0]
        if nxt in pos:
            cycle = path[pos[nxt]:]
            break
        pos[nxt] = len(path)
        path.append(nxt)

    while True:
        r = len(cycle)
        chord = None
        for i in range(r):
            for j in range(i + 2, r):
                if i == 0 and j == r - 1:
                    continue
                if g.has_edge(cycle[i], cycle[j]):
                    chord = (i, j)
                    break
            if chord:
                break
        if chord is None:
            break
        i, j = chord
        a, b = cycle[i], cycle[j]
        if out[a] >> b & 1:
            # arc a -> b: keep b .. a (wrapping) then close with a -> b
            cycle = cycle[j:] + cycle[:i + 1]
        else:
            cycle = cycle[i:j + 1]
    return OrientedCycleWitness(tuple(cycle), tuple(where[v] for v in cycle))


def is_oriented_witness(h: HGraph, w: OrientedCycleWitness) -> bool:
    """Directed, induced in G, and advancing one component per step."""
    where = h.component_of()
    seq = w.vertices
    if not is_induced_cycle(h.base, seq):
        return False
    return all(where[seq[(i + 1) % len(seq)]] == (where[seq[i]] + 1) % 3 for i in range(len(seq)))


def structure_suite(g: Graph, t_max: int = 3) -> dict:
    """Run every structural check on ``g``; raises :class:`StructureError` on bad input."""
    h, pairs = build_h_graph(g)
    checks = [pairs]
    checks += [check_component_diagram(h, comp, t_max) for comp in h.components]
    checks += [check_neighbor_spread(h), check_four_components(h)]
    result = {
        "betti": betti_numbers(g).as_dict(),
        "k": h.k,
        "h_edges": [list(e) for e in h.h_edges()],
        "components": [list(c) for c in h.components],
        "checks": [c.to_dict() for c in checks],
    }
    witness = None
    try:
        witness = orient_and_find_cycle(h)
    except StructureError as exc:
        result["orientation_error"] = str(exc)
    if witness is not None:
        ok = is_oriented_witness(h, witness) and witness.length % 3 == 0
        result["witness"] = {"vertices": list(witness.vertices), "length": witness.length,
                             "valid": ok}
    result["passed"] = all(c.passed for c in checks) and bool(result.get("witness", {}).get("valid"))
    return result
