"""Per-graph verification records and sweeps over enumerated or streamed graphs."""

from __future__ import annotations

import csv
import io
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import islice
from typing import Iterable, Iterator

from ternary_betti.enumeration import enumerate_graphs, random_graph
from ternary_betti.graph import Graph, GraphError
from ternary_betti.graph6 import parse_graph6, read_graph6_stream, to_graph6
from ternary_betti.independence import f_euler
from ternary_betti.mayer_vietoris import verify_recursion
from ternary_betti.simplicial import betti_numbers, independence_complex, integral_homology
from ternary_betti.structure import (
    UNDEFINED,
    StructureError,
    calculator,
    check_extension,
    connected_components,
    scan_triples,
    structure_suite,
)
from ternary_betti.ternary import is_induced_cycle, is_ternary

CHECKS = ("theorem", "euler", "integral", "triples", "extension", "mv", "structure")
BATCH = 2048


@dataclass
class SweepConfig:
    n_values: list[int] = field(default_factory=list)
    dedup: bool = False
    corpus: str | None = None
    random_count: int = 0
    random_p: float = 0.5
    checks: tuple[str, ...] = ("theorem",)
    jobs: int = 1
    seed: int = 0
    max_support: int = 3
    records: str = "all"

    def validate(self) -> None:
        if not self.checks:
            raise GraphError("select at least one check")
        unknown = set(self.checks) - set(CHECKS)
        if unknown:
            raise GraphError(f"unknown checks: {', '.join(sorted(unknown))}")
        if self.records not in ("all", "violations", "none"):
            raise GraphError("records must be all, violations, or none")
        if self.jobs < 1:
            raise GraphError("jobs must be >= 1")
        if self.random_count < 0 or not 0.0 <= self.random_p <= 1.0:
            raise GraphError("invalid random suite parameters")
        if self.corpus is None and not self.n_values:
            raise GraphError("need --n or --corpus")
        for n in self.n_values:
            if self.random_count:
                if not 0 <= n <= 64:
                    raise GraphError(f"n={n} outside 0..64")
            else:
                limit = 6 if self.dedup else 7
                if not 0 <= n <= limit:
                    raise GraphError(f"n={n} outside 0..{limit} for exhaustive enumeration")

    def to_dict(self) -> dict:
        return {
            "n": list(self.n_values),
            "dedup": self.dedup,
            "corpus": self.corpus,
            "random_count": self.random_count,
            "random_p": self.random_p,
            "checks": list(self.checks),
            "seed": self.seed,
            "max_support": self.max_support,
        }


def _theorem(g: Graph, total: int, f: int, ternary: bool, witness) -> dict:
    problems = []
    if ternary and total > 1:
        problems.append(f"ternary graph with total Betti {total}")
    if total >= 2 and ternary:
        problems.append("total Betti >= 2 without an induced cycle of length 0 mod 3")
    if ternary and abs(f) > 1:
        problems.append(f"ternary graph with |f| = {abs(f)}")
    if abs(f) > total:
        problems.append(f"|f| = {abs(f)} exceeds total Betti {total}")
    if witness is not None and not (is_induced_cycle(g, witness.vertices) and witness.length % 3 == 0):
        problems.append("invalid witness")
    return {"passed": not problems, "violations": problems}


def _minimal_high_betti(g: Graph) -> bool:
    """Total Betti >= 2 while every proper induced subgraph has total <= 1."""
    d = calculator(g)
    full = g.vertex_mask
    for v in range(g.n):
        if d.of_mask(full & ~(1 << v)) == UNDEFINED:
            return False
    sub = (full - 1) & full
    while sub:
        if d.of_mask(sub) == UNDEFINED:
            return False
        sub = (sub - 1) & full
    return True


def _structure(g: Graph, total: int) -> dict:
    if total < 2 or not _minimal_high_betti(g):
        return {"passed": True, "minimal": False}
    problems = []
    connected_cycle = (
        g.n % 3 == 0 and g.n >= 3 and all(g.degree(v) == 2 for v in range(g.n))
        and len(connected_components(g.n, g.adj)) == 1
    )
    if not connected_cycle:
        problems.append("minimal graph with total Betti >= 2 is not a cycle of length 0 mod 3")
    try:
        suite = structure_suite(g)
        if not suite["passed"]:
            problems.append("structure suite failed")
    except StructureError as exc:
        problems.append(f"structure precondition: {exc}")
    return {"passed": not problems, "minimal": True, "violations": problems}


def evaluate_graph(g: Graph, checks: Iterable[str] = ("theorem",), max_support: int = 3) -> dict:
    """Every selected check on one graph, as a JSON-ready record."""
    checks = tuple(checks)
    b = betti_numbers(g)
    f = f_euler(g)
    ternary, witness = is_ternary(g)
    g6 = to_graph6(g)
    rec = {
        "graph6": g6,
        "n": g.n,
        "betti": b.as_dict(),
        "total": b.total,
        "f": f,
        "ternary": ternary,
        "witness": witness.as_list() if witness else None,
        "checks": {},
    }
    out = rec["checks"]
    if "theorem" in checks:
        out["theorem"] = _theorem(g, b.total, f, ternary, witness)
    if "euler" in checks:
        euler = b.euler_sum()
        out["euler"] = {"passed": euler == f, "betti_sum": euler}
    if "integral" in checks:
        ih = integral_homology(independence_complex(g))
        free = {str(grp.dim): grp.free_rank for grp in ih.groups}
        torsion = {str(grp.dim): list(grp.torsion) for grp in ih.groups if grp.torsion}
        out["integral"] = {"passed": free == b.as_dict(), "torsion": torsion}
    if "triples" in checks:
        rep = scan_triples(g, max_support)
        out["triples"] = {"passed": rep.passed, "checked": rep.checked,
                          "violations": rep.violations, "counts": rep.details["counts"]}
    if "extension" in checks:
        rep = check_extension(g, max_support)
        out["extension"] = {"passed": rep.passed, "violations": rep.violations, **rep.details}
    if "mv" in checks:
        bad = []
        for v in range(g.n):
            verdict = verify_recursion(g, v)
            if not verdict.holds:
                bad.append(verdict.to_dict())
        out["mv"] = {"passed": not bad, "pivots": g.n, "violations": bad}
    if "structure" in checks:
        out["structure"] = _structure(g, b.total)
    failed = [name for name, res in out.items() if not res["passed"]]
    if failed:
        rec["reproducer"] = {
            "graph6": g6,
            "checks": failed,
            "command": f"echo '{g6}' | ternary-betti sweep --corpus - "
                       f"--check {' '.join(failed)} --max-support {max_support}",
        }
    return rec


def _evaluate_g6(args: tuple[str, tuple[str, ...], int]) -> dict:
    g6, checks, max_support = args
    return evaluate_graph(parse_graph6(g6), checks, max_support)


def graph_source(config: SweepConfig, stream: Iterable[str] | None = None) -> Iterator[Graph]:
    if config.corpus is not None:
        if config.corpus == "-":
            yield from read_graph6_stream(stream if stream is not None else [])
        else:
            with open(config.corpus, encoding="ascii") as fh:
                yield from read_graph6_stream(fh)
        return
    if config.random_count:
        rng = random.Random(config.seed)
        for n in config.n_values:
            for _ in range(config.random_count):
                yield random_graph(n, config.random_p, rng)
        return
    for n in config.n_values:
        yield from enumerate_graphs(n, config.dedup)


def _batches(it: Iterator, size: int) -> Iterator[list]:
    while True:
        chunk = list(islice(it, size))
        if not chunk:
            return
        yield chunk


def run_sweep(config: SweepConfig, command: list[str] | None = None,
              stream: Iterable[str] | None = None, version: str = "") -> dict:
    """Evaluate every source graph; records are sorted by graph6 key."""
    config.validate()
    summary = {"graphs": 0, "ternary": 0, "max_total_betti": 0, "violations": 0,
               "total_betti_histogram": {},
               "checks": {c: {"checked": 0, "violations": 0} for c in config.checks}}
    records = []
    pool = ProcessPoolExecutor(config.jobs) if config.jobs > 1 else None
    try:
        for batch in _batches(iter(graph_source(config, stream)), BATCH):
            if pool is not None:
                work = [(to_graph6(g), config.checks, config.max_support) for g in batch]
                results = list(pool.map(_evaluate_g6, work, chunksize=64))
            else:
                results = [evaluate_graph(g, config.checks, config.max_support) for g in batch]
            for rec in results:
                summary["graphs"] += 1
                summary["ternary"] += rec["ternary"]
                summary["max_total_betti"] = max(summary["max_total_betti"], rec["total"])
                hist = summary["total_betti_histogram"]
                hist[str(rec["total"])] = hist.get(str(rec["total"]), 0) + 1
                bad = False
                for name, res in rec["checks"].items():
                    summary["checks"][name]["checked"] += 1
                    if not res["passed"]:
                        summary["checks"][name]["violations"] += 1
                        bad = True
                summary["violations"] += bad
                if config.records == "all" or (config.records == "violations" and bad):
                    records.append(rec)
    finally:
        if pool is not None:
            pool.shutdown()
    records.sort(key=lambda r: r["graph6"])
    return {
        "tool": "ternary-betti",
        "version": version,
        "command": list(command or []),
        "seed": config.seed,
        "config": config.to_dict(),
        "summary": summary,
        "records": records,
    }


def records_csv(report: dict) -> str:
    """One row per record: graph6, n, total, f, ternary, then each check's verdict."""
    checks = report["config"]["checks"]
    dims = sorted({int(k) for r in report["records"] for k in r["betti"]}, key=int)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["graph6", "n", "total", "f", "ternary"] + [f"b{d}" for d in dims] + checks)
    for r in report["records"]:
        writer.writerow(
            [r["graph6"], r["n"], r["total"], r["f"], int(r["ternary"])]
            + [r["betti"].get(str(d), 0) for d in dims]
            + [int(r["checks"][c]["passed"]) for c in checks]
        )
    return buf.getvalue()
