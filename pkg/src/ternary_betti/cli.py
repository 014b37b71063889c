"""Command-line entry point: ``ternary-betti <command> [options]``.

Exit codes: 0 when everything checked out, 1 for a mathematical violation or
an unmet precondition, 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from ternary_betti import __version__
from ternary_betti.graph import Graph, GraphError, parse_adjacency_list, parse_family
from ternary_betti.graph6 import parse_graph6, read_graph6_stream, to_graph6
from ternary_betti.independence import f_euler
from ternary_betti.mayer_vietoris import verify_recursion
from ternary_betti.simplicial import betti_numbers, independence_complex, integral_homology
from ternary_betti.structure import StructureError, structure_suite
from ternary_betti.sweep import CHECKS, SweepConfig, records_csv, run_sweep
from ternary_betti.ternary import induced_cycles, is_ternary

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def dumps(obj) -> str:
    """Canonical JSON text; identical inputs give identical bytes."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def parse_n_values(tokens: Sequence[str]) -> list[int]:
    """``["6"]``, ``["0-6"]``, ``["3,5", "7"]`` -> sorted distinct ints."""
    out: set[int] = set()
    for tok in tokens:
        for part in tok.split(","):
            part = part.strip()
            if not part:
                continue
            lo, sep, hi = part.partition("-")
            try:
                if sep:
                    a, b = int(lo), int(hi)
                    if a > b:
                        raise UsageError(f"empty range {part!r}")
                    out.update(range(a, b + 1))
                else:
                    out.add(int(part))
            except ValueError:
                raise UsageError(f"bad --n value {part!r}") from None
    if not out:
        raise UsageError("--n needs at least one value")
    return sorted(out)


def _read_file(path: str) -> list[Graph]:
    with open(path, encoding="ascii") as fh:
        text = fh.read()
    first = next((ln.split("#", 1)[0].strip() for ln in text.splitlines()
                  if ln.split("#", 1)[0].strip()), "")
    if first.isdigit():
        return [parse_adjacency_list(text)]
    return list(read_graph6_stream(text.splitlines()))


def read_inputs(args: argparse.Namespace, stdin: TextIO) -> list[tuple[str, Graph]]:
    """Graphs named by exactly one source flag, or graph6 lines on stdin."""
    given = [name for name in ("graph6", "file", "family") if getattr(args, name) is not None]
    if len(given) > 1:
        raise UsageError("use only one of --graph6, --file, --family")
    if args.graph6 is not None:
        graphs = [parse_graph6(args.graph6)]
    elif args.file is not None:
        graphs = _read_file(args.file)
    elif args.family is not None:
        graphs = [parse_family(args.family)]
    else:
        graphs = list(read_graph6_stream(stdin))
    if not graphs:
        raise UsageError("no input graph")
    return [(to_graph6(g), g) for g in graphs]


def _emit(out: TextIO, args: argparse.Namespace, results: list[dict], text_lines: list[str]) -> None:
    if args.report:
        payload = results[0] if len(results) == 1 else results
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(dumps(payload))
    if args.json:
        for res in results:
            out.write(json.dumps(res, sort_keys=True) + "\n")
    else:
        out.write("".join(line + "\n" for line in text_lines))


def _header(command: Sequence[str]) -> dict:
    return {"tool": "ternary-betti", "version": __version__, "command": list(command)}


def cmd_betti(args, command, stdin, out) -> int:
    results, lines, code = [], [], EXIT_OK
    for g6, g in read_inputs(args, stdin):
        b = betti_numbers(g)
        f = f_euler(g)
        euler = b.euler_sum()
        res = {**_header(command), "graph6": g6, "n": g.n, "betti": b.as_dict(),
               "total": b.total, "f": f, "euler": {"betti_sum": euler, "holds": euler == f}}
        line = f"{g6}\tn={g.n}\t{b}\ttotal={b.total}\tf={f}\teuler={'ok' if euler == f else 'FAIL'}"
        if euler != f:
            code = EXIT_VIOLATION
        if args.integral:
            ih = integral_homology(independence_complex(g))
            agrees = {str(grp.dim): grp.free_rank for grp in ih.groups} == b.as_dict()
            res["integral"] = {
                "free": {str(grp.dim): grp.free_rank for grp in ih.groups},
                "torsion": {str(grp.dim): list(grp.torsion) for grp in ih.groups if grp.torsion},
                "agrees": agrees,
            }
            line += f"\tintegral={'ok' if agrees else 'FAIL'}"
            if ih.has_torsion():
                line += "\ttorsion"
            if not agrees:
                code = EXIT_VIOLATION
        results.append(res)
        lines.append(line)
    _emit(out, args, results, lines)
    return code


def cmd_ternary(args, command, stdin, out) -> int:
    results, lines, code = [], [], EXIT_OK
    for g6, g in read_inputs(args, stdin):
        ternary, witness = is_ternary(g)
        lengths: dict[str, int] = {}
        for cyc in induced_cycles(g):
            lengths[str(cyc.length)] = lengths.get(str(cyc.length), 0) + 1
        total = betti_numbers(g).total
        res = {**_header(command), "graph6": g6, "n": g.n, "ternary": ternary,
               "witness": witness.as_list() if witness else None,
               "induced_cycle_lengths": lengths, "total_betti": total}
        if ternary and total > 1:
            # a counterexample to the bound would land here
            res["violation"] = f"ternary graph with total Betti {total}"
            res["reproducer"] = {"graph6": g6, "command": f"ternary-betti ternary --graph6 '{g6}'"}
            code = EXIT_VIOLATION
        results.append(res)
        verdict = "ternary" if ternary else f"not ternary, witness {witness.as_list()}"
        lines.append(f"{g6}\tn={g.n}\t{verdict}\ttotal={total}")
    _emit(out, args, results, lines)
    return code


def cmd_structure(args, command, stdin, out) -> int:
    results, lines, code = [], [], EXIT_OK
    for g6, g in read_inputs(args, stdin):
        res = {**_header(command), "graph6": g6, "n": g.n}
        try:
            res.update(structure_suite(g, args.t_max))
        except StructureError as exc:
            res.update(passed=False, precondition=str(exc))
        if not res["passed"]:
            code = EXIT_VIOLATION
            res["reproducer"] = {"graph6": g6,
                                 "command": f"ternary-betti structure --graph6 '{g6}' --t-max {args.t_max}"}
        results.append(res)
        if "precondition" in res:
            lines.append(f"{g6}\tprecondition failed: {res['precondition']}")
        else:
            wit = res.get("witness")
            lines.append(
                f"{g6}\tk={res['k']}\tcomponents={res['components']}\t"
                f"witness={wit['vertices'] if wit else None}\t{'PASS' if res['passed'] else 'FAIL'}"
            )
            lines += [f"  {c['name']}: {'ok' if c['passed'] else 'FAIL'} ({c['checked']} checked)"
                      for c in res["checks"]]
    _emit(out, args, results, lines)
    return code


def cmd_mv(args, command, stdin, out) -> int:
    results, lines, code = [], [], EXIT_OK
    for g6, g in read_inputs(args, stdin):
        if args.vertex is not None and not 0 <= args.vertex < g.n:
            raise UsageError(f"--vertex {args.vertex} out of range for n={g.n}")
        pivots = [args.vertex] if args.vertex is not None else list(range(g.n))
        verdicts = [verify_recursion(g, v).to_dict() for v in pivots]
        holds = all(v["holds"] for v in verdicts)
        res = {**_header(command), "graph6": g6, "n": g.n, "pivots": verdicts, "holds": holds}
        if not holds:
            code = EXIT_VIOLATION
            res["reproducer"] = {"graph6": g6, "command": f"ternary-betti mv --graph6 '{g6}'"}
        results.append(res)
        lines.append(f"{g6}\tn={g.n}\tpivots={len(pivots)}\t{'holds' if holds else 'FAIL'}")
        lines += [f"  v={v['v']}: " + "; ".join(d for d in v["discrepancies"])
                  for v in verdicts if not v["holds"]]
    _emit(out, args, results, lines)
    return code


def cmd_sweep(args, command, stdin, out) -> int:
    corpus = args.corpus
    if corpus is None and not args.n:
        corpus = "-"
    config = SweepConfig(
        n_values=parse_n_values(args.n) if args.n else [],
        dedup=args.dedup,
        corpus=corpus,
        random_count=args.random,
        random_p=args.p,
        checks=tuple(dict.fromkeys(args.check or ["theorem"])),
        jobs=args.jobs,
        seed=args.seed,
        max_support=args.max_support,
        records=args.records,
    )
    if corpus is not None and config.n_values:
        raise UsageError("use either --n or --corpus, not both")
    report = run_sweep(config, command, stream=stdin, version=__version__)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(dumps(report))
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(records_csv(report))
    s = report["summary"]
    if args.json:
        out.write(dumps(report))
    else:
        out.write(f"graphs={s['graphs']} ternary={s['ternary']} "
                  f"max_total_betti={s['max_total_betti']} violations={s['violations']}\n")
        for name, c in s["checks"].items():
            out.write(f"  {name}: {c['checked']} checked, {c['violations']} violations\n")
        for rec in report["records"]:
            if "reproducer" in rec:
                out.write(f"  reproduce: {rec['reproducer']['command']}\n")
    return EXIT_VIOLATION if s["violations"] else EXIT_OK


def _add_input(p: argparse.ArgumentParser) -> None:
    src = p.add_argument_group("input (default: graph6 lines on stdin)")
    src.add_argument("--graph6", metavar="STR", help="graph as a graph6 string")
    src.add_argument("--file", metavar="PATH", help="adjacency-list file ('n' then 'u v' lines) or graph6 lines")
    src.add_argument("--family", metavar="KIND:N", help="cycle:N, path:N, complete:N or empty:N")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="print JSON instead of text")
    p.add_argument("--report", metavar="PATH", help="write the JSON report to PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ternary-betti",
        description="Exact homology of independence complexes and ternary-graph verification.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("betti", help="reduced Betti numbers, f value and Euler check")
    _add_input(p)
    p.add_argument("--integral", action="store_true", help="also compute integral homology (Smith form)")
    _add_output(p)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("ternary", help="induced cycles and the ternary verdict")
    _add_input(p)
    _add_output(p)
    p.set_defaults(func=cmd_ternary)

    p = sub.add_parser("structure", help="H-graph checks and oriented cycle witness")
    _add_input(p)
    p.add_argument("--t-max", type=int, default=3, help="deepest diagram row to verify (default 3)")
    _add_output(p)
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("mv", help="vertex-splitting identity with the kernel of the homology map")
    _add_input(p)
    p.add_argument("--vertex", type=int, help="single pivot (default: every vertex)")
    _add_output(p)
    p.set_defaults(func=cmd_mv)

    p = sub.add_parser("sweep", help="run checks over enumerated, random or streamed graphs")
    p.add_argument("--n", nargs="+", metavar="N", help="vertex counts, e.g. 6, 0-6 or 3,5")
    p.add_argument("--dedup", action="store_true", help="one graph per isomorphism class (n <= 6)")
    p.add_argument("--corpus", metavar="PATH", help="graph6 file, or '-' for stdin")
    p.add_argument("--random", type=int, default=0, metavar="COUNT",
                   help="COUNT seeded random graphs per n instead of enumeration")
    p.add_argument("--p", type=float, default=0.5, help="edge probability for --random (default 0.5)")
    p.add_argument("--check", nargs="+", action="extend", choices=CHECKS, metavar="CHECK",
                   help=f"checks to run, any of: {', '.join(CHECKS)} (default theorem)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    p.add_argument("--seed", type=int, default=0, help="seed for --random (default 0)")
    p.add_argument("--max-support", type=int, default=3, help="cap on |X u Y| in triple scans (default 3)")
    p.add_argument("--records", choices=("all", "violations", "none"), default="all",
                   help="which per-graph records go into the report")
    p.add_argument("--csv", metavar="PATH", help="write per-graph records as CSV")
    _add_output(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None, stdin: TextIO | None = None,
         stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, argv, stdin, stdout)
    except (UsageError, GraphError, ValueError, OSError) as exc:
        stderr.write(f"ternary-betti: error: {exc}\n")
        return EXIT_USAGE
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
