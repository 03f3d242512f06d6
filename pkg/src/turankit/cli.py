"""Command-line entry point wiring all modules together.

Subcommands: construct, classify, reduce, hom, solve, density, export,
stability. Exit codes: 0 success, 1 usage or validation error, 2 solver
budget exhausted (result is a lower bound only).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from math import comb
from typing import Optional

from .catalog import enumerate_three_edge, verify_classification
from .constructions import (
    Partition,
    complete_rgraph,
    expanded_triangle,
    matching,
    max_odd_bipartite,
    odd_bipartite,
    suspension,
)
from .hypergraph import (
    Hypergraph,
    canonical_regions,
    edge_vertices,
    format_hypergraph,
    max_degree,
    min_positive_degree,
    parse_hypergraph,
)
from .morphisms import find_homomorphism, reduce_to_core, reduce_to_max_degree3
from .solver import (
    ResultCache,
    SolveRecord,
    STATUS_LOWER_BOUND,
    density_sequence,
    export_cnf,
    export_ilp,
    forbidden_triples,
    solve_exact,
    solve_family,
)
from .stability import (
    best_partition,
    deviation,
    heavy_missing_vertices,
    link_partition_scan,
)

ENV_BUDGET_NODES = "TURANKIT_BUDGET_NODES"
ENV_BUDGET_SECS = "TURANKIT_BUDGET_SECS"
REFERENCE_LABEL = "asymptotic reference, not asserted"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad usage; the contract here is 1.
    def error(self, message):
        raise UsageError(message)


def _read_hypergraph(path: str) -> Hypergraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_hypergraph(fh.read())


def _named_family(name: str, args) -> Optional[tuple[Hypergraph, str]]:
    """Resolve a named forbidden family, honoring parameter flags.

    Accepts triangle, k4minus, expanded-triangle (with --k),
    suspended-expanded-triangle (with --i and --r), and matching (with --r
    and --m)."""
    if name == "triangle":
        return expanded_triangle(1), "triangle"
    if name == "k4minus":
        return suspension(expanded_triangle(1), 3), "k4minus"
    if name == "expanded-triangle":
        k = getattr(args, "k", None)
        if k is None:
            raise UsageError("expanded-triangle needs --k")
        return expanded_triangle(k), f"expanded-triangle(k={k})"
    if name == "suspended-expanded-triangle":
        i = getattr(args, "i", None)
        r = getattr(args, "r", None)
        if i is None or r is None:
            raise UsageError("suspended-expanded-triangle needs --i and --r")
        return suspension(expanded_triangle(i), r), f"suspended-expanded-triangle(i={i},r={r})"
    if name == "matching":
        r = getattr(args, "r", None)
        m = getattr(args, "m", None)
        if r is None or m is None:
            raise UsageError("matching needs --r and --m")
        return matching(r, m), f"matching(r={r},m={m})"
    return None

def _resolve_family(args) -> tuple[Hypergraph, str]:
    selector = args.family
    named = _named_family(selector, args)
    if named is not None:
        return named
    if os.path.exists(selector):
        return _read_hypergraph(selector), os.path.basename(selector)
    raise UsageError(
        f"unknown family {selector!r}: not a named family and not a readable file"
    )


def _write_output(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_rows(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _suspension_width(profile: tuple[int, ...], r: int) -> Optional[int]:
    for i in range(1, r // 2 + 1):
        target = suspension(expanded_triangle(i), r)
        if canonical_regions(*target.edges) == tuple(profile):
            return i
    return None


def _reference_lines(profile: tuple[int, ...], r: int) -> list[str]:
    lines = [f"reference: 1/2 three-edge density cap ({REFERENCE_LABEL})"]
    lines.append(
        f"reference: floor(r/2)/r = {r // 2}/{r} "
        f"= {r // 2 / r:.6g} ({REFERENCE_LABEL})"
    )
    width = _suspension_width(profile, r)
    if width is not None:
        lines.append(
            f"reference: i/r = {width}/{r} = {width / r:.6g} ({REFERENCE_LABEL})"
        )
    flag_bounds = {
        (1, 5): Fraction(1, 5),
        (2, 5): Fraction(152, 499),
    }
    if width is not None and (width, r) in flag_bounds:
        bound = flag_bounds[(width, r)]
        lines.append(
            f"reference: {bound.numerator}/{bound.denominator} flag-algebra bound "
            f"({REFERENCE_LABEL})"
        )
    return lines


# -- subcommands -------------------------------------------------------------

def _require(args, family: str, *names: str) -> None:
    missing = [f"--{name.replace('_', '-')}" for name in names if getattr(args, name) is None]
    if missing:
        raise UsageError(f"{family} needs {' and '.join(missing)}")


def cmd_construct(args) -> int:
    family = args.family
    if family == "expanded-triangle":
        _require(args, family, "k")
        h = expanded_triangle(args.k)
    elif family == "suspension":
        if not args.input:
            raise UsageError("suspension needs --input with the base hypergraph")
        _require(args, family, "r")
        h = suspension(_read_hypergraph(args.input), args.r)
    elif family == "odd-bipartite":
        _require(args, family, "n", "k")
        uniformity = 2 * args.k
        if args.best:
            part, h, count = max_odd_bipartite(args.n, uniformity)
            print(f"# best part sizes {part.sizes}: {count} edges", file=sys.stderr)
        else:
            if args.part1 is not None:
                part = Partition.from_part1(args.n, [int(t) for t in args.part1.split(",")])
            elif args.part1_size is not None:
                part = Partition(args.n, (1 << args.part1_size) - 1)
            else:
                raise UsageError("odd-bipartite needs --best, --part1, or --part1-size")
            h = odd_bipartite(part, uniformity)
    elif family == "matching":
        _require(args, family, "r", "m")
        h = matching(args.r, args.m)
    elif family == "complete":
        _require(args, family, "n", "r")
        h = complete_rgraph(args.n, args.r)
    else:
        raise UsageError(f"unknown construct family {family!r}")
    _write_output(format_hypergraph(h), args.output)
    return 0


def cmd_classify(args) -> int:
    catalog = enumerate_three_edge(args.r)
    report = verify_classification(args.r, catalog)
    rows = []
    for entry in catalog.entries:
        if entry.suspension_index is not None:
            tag = f"suspended-expanded-triangle(i={entry.suspension_index})"
        else:
            tag = "min-degree-1"
        rows.append(
            {
                "profile": " ".join(str(x) for x in entry.profile.as_tuple()),
                "min_degree": entry.min_degree,
                "max_degree": entry.max_degree,
                "class": tag,
                "i": entry.suspension_index if entry.suspension_index is not None else "",
            }
        )
    if args.format == "json":
        print(json.dumps({"r": args.r, "classes": rows, "min_degree_two_count": report.class_count}))
    elif args.format == "csv":
        sys.stdout.write(_csv_rows(rows))
    else:
        print(f"three-edge classes for r={args.r}: {len(rows)} total, "
              f"{report.class_count} with min degree >= 2")
        print(f"{'profile':24} {'min':>3} {'max':>3}  class")
        for row in rows:
            print(f"{row['profile']:24} {row['min_degree']:>3} {row['max_degree']:>3}  {row['class']}")
    return 0


def cmd_reduce(args) -> int:
    f1 = _read_hypergraph(args.input)
    if args.to_degree3:
        target, vmap = reduce_to_max_degree3(f1)
        payload = {
            "mode": "to-degree3",
            "target_edges": target.edge_vertex_lists(),
            "map": list(vmap.images),
            "verified": vmap.is_homomorphism(f1, target),
        }
        if args.format == "json":
            print(json.dumps(payload))
        else:
            print("target edges: " + " / ".join(" ".join(map(str, e)) for e in payload["target_edges"]))
            print("map: " + " ".join(f"{v}->{w}" for v, w in enumerate(vmap.images)))
            print(f"verified homomorphism: {payload['verified']}")
        return 0
    trace = reduce_to_core(f1)
    steps = [
        {"x": s.x, "y": s.y, "edges": s.result.edge_vertex_lists()} for s in trace.steps
    ]
    payload = {
        "mode": "core",
        "status": trace.status,
        "steps": steps,
        "terminal_edges": trace.terminal.edge_vertex_lists(),
        "map": list(trace.map.images),
    }
    if args.format == "json":
        print(json.dumps(payload))
    else:
        for idx, step in enumerate(steps):
            print(f"step {idx + 1}: fold {step['x']} -> {step['y']}; edges "
                  + " / ".join(" ".join(map(str, e)) for e in step["edges"]))
        print(f"status: {trace.status}")
        print("map: " + " ".join(f"{v}->{w}" for v, w in enumerate(trace.map.images)))
    return 0


def cmd_hom(args) -> int:
    source = _read_hypergraph(args.source)
    target = _read_hypergraph(args.target)
    vmap = find_homomorphism(source, target)
    if args.format == "json":
        print(json.dumps({"map": list(vmap.images) if vmap else None}))
    elif vmap is None:
        print("none")
    else:
        print(" ".join(f"{v}->{w}" for v, w in enumerate(vmap.images)))
    return 0


def _budgets(args) -> tuple[Optional[int], Optional[float]]:
    nodes = args.budget_nodes
    secs = args.budget_secs
    if nodes is None and os.environ.get(ENV_BUDGET_NODES):
        nodes = int(os.environ[ENV_BUDGET_NODES])
    if secs is None and os.environ.get(ENV_BUDGET_SECS):
        secs = float(os.environ[ENV_BUDGET_SECS])
    return nodes, secs


def _construction_seed(f: Hypergraph, n: int) -> Optional[Hypergraph]:
    """Odd-bipartite seed when the forbidden family is an expanded triangle."""
    profile = canonical_regions(*f.edges)
    k = f.r // 2
    if f.r % 2 == 0 and profile == (0, 0, 0, k, k, k, 0) and n >= f.r:
        return max_odd_bipartite(n, f.r)[1]
    return None


def _print_record(record: SolveRecord, fmt: str, quiet: bool, references: bool) -> None:
    if fmt == "json":
        print(json.dumps(record.to_json_dict()))
        return
    density = record.density()
    print(
        f"family={record.family_name or 'unnamed'} n={record.n} r={record.r} "
        f"optimum={record.optimum} status={record.status}"
    )
    if not quiet:
        print(
            f"density={density.numerator}/{density.denominator} = {float(density):.6g} "
            f"nodes={record.nodes} millis={record.millis}"
        )
        print("witness: " + " / ".join(" ".join(map(str, edge_vertices(e))) for e in record.witness))
        if references:
            for line in _reference_lines(record.family_profile, record.r):
                print(line)


def cmd_solve(args) -> int:
    f, name = _resolve_family(args)
    nodes, secs = _budgets(args)
    seed = _construction_seed(f, args.n) if args.seed_construction else None
    cache = ResultCache(args.cache) if args.cache else None
    record = solve_family(
        f,
        args.n,
        family_name=name,
        cache=cache,
        budget_nodes=nodes,
        budget_secs=secs,
        seed_witness=seed,
    )
    _print_record(record, args.format, args.quiet, references=True)
    return 2 if record.status == STATUS_LOWER_BOUND else 0


def cmd_density(args) -> int:
    f, name = _resolve_family(args)
    nodes, secs = _budgets(args)
    cache = ResultCache(args.cache) if args.cache else None
    n_values = list(range(args.n_from, args.n_to + 1))
    seeds = {}
    if args.seed_construction:
        for n in n_values:
            seed = _construction_seed(f, n)
            if seed is not None:
                seeds[n] = seed
    records = density_sequence(
        f,
        n_values,
        family_name=name,
        cache=cache,
        budget_nodes=nodes,
        budget_secs=secs,
        seed_for=seeds,
    )
    rows = [
        {
            "n": rec.n,
            "optimum": rec.optimum,
            "density": f"{rec.density().numerator}/{rec.density().denominator}",
            "density_float": float(rec.density()),
            "status": rec.status,
        }
        for rec in records
    ]
    if args.format == "json":
        print(json.dumps({"family": name, "records": [r.to_json_dict() for r in records]}))
    elif args.format == "csv":
        sys.stdout.write(_csv_rows(rows))
    else:
        print(f"density sequence for {name}")
        print(f"{'n':>4} {'optimum':>8} {'density':>12} {'float':>10}  status")
        for row in rows:
            print(f"{row['n']:>4} {row['optimum']:>8} {row['density']:>12} "
                  f"{row['density_float']:>10.6g}  {row['status']}")
        if not args.quiet:
            for line in _reference_lines(canonical_regions(*f.edges), f.r):
                print(line)
    if any(rec.status == STATUS_LOWER_BOUND for rec in records):
        return 2
    return 0


def cmd_export(args) -> int:
    f, name = _resolve_family(args)
    system = forbidden_triples(f, args.n, name)
    if args.export_format == "cnf":
        text = export_cnf(system, at_least=args.at_least)
    else:
        text = export_ilp(system)
    _write_output(text, args.output)
    return 0


def cmd_stability(args) -> int:
    h = _read_hypergraph(args.input)
    if args.scan_links:
        scan = link_partition_scan(h, balanced_only=args.balanced)
        rows = [
            {
                "vertex": row.vertex,
                "part1": ",".join(map(str, row.partition.part1_vertices())),
                "bad": row.bad,
                "missing": row.missing,
                "total": row.total,
            }
            for row in scan.rows
        ]
        if args.format == "json":
            print(json.dumps({
                "rows": rows,
                "distances": [list(r) for r in scan.distances],
                "max_distance": scan.max_distance,
                "mean_distance": scan.mean_distance,
            }))
        elif args.format == "csv":
            sys.stdout.write(_csv_rows(rows))
        else:
            print(f"{'vertex':>6} {'part1':20} {'bad':>5} {'missing':>8} {'total':>6}")
            for row in rows:
                print(f"{row['vertex']:>6} {row['part1']:20} {row['bad']:>5} "
                      f"{row['missing']:>8} {row['total']:>6}")
            print(f"max pairwise distance: {scan.max_distance}")
            print(f"mean pairwise distance: {scan.mean_distance:.4f}")
        return 0
    part, report = best_partition(h, balanced_only=args.balanced)
    payload = {
        "part1": part.part1_vertices(),
        "sizes": list(part.sizes),
        "bad": report.bad,
        "missing": report.missing,
        "total": report.total,
    }
    if args.threshold is not None:
        payload["heavy_vertices"] = heavy_missing_vertices(h, part, args.threshold)
        payload["threshold"] = args.threshold
    if args.format == "json":
        print(json.dumps(payload))
    elif args.format == "csv":
        sys.stdout.write(_csv_rows([{
            "part1": ",".join(map(str, payload["part1"])),
            "bad": report.bad,
            "missing": report.missing,
            "total": report.total,
        }]))
    else:
        print(f"best partition part1={payload['part1']} sizes={tuple(part.sizes)}")
        print(f"bad={report.bad} missing={report.missing} total={report.total}")
        if args.threshold is not None:
            print(f"heavy vertices (threshold {args.threshold}): {payload['heavy_vertices']}")
    return 0


# -- parser -------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="turankit", description=__doc__)
    parser.add_argument("--format", choices=("table", "csv", "json"), default="table")
    parser.add_argument("--cache", default="./turan-cache.jsonl",
                        help="result cache path (JSONL), used by solve and density")
    parser.add_argument("--quiet", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit a named construction in the text format")
    p.add_argument("--family", required=True,
                   choices=("expanded-triangle", "suspension", "odd-bipartite",
                            "matching", "complete"))
    p.add_argument("--k", type=int, help="block size (expanded-triangle) or half-uniformity (odd-bipartite)")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--input", help="base hypergraph file (suspension)")
    p.add_argument("--part1", help="comma-separated part1 vertices (odd-bipartite)")
    p.add_argument("--part1-size", type=int, dest="part1_size")
    p.add_argument("--best", action="store_true", help="pick the edge-maximizing part sizes")
    p.add_argument("--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("classify", help="catalog of three-edge classes for one uniformity")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("reduce", help="fold reduction trace for a three-edge hypergraph")
    p.add_argument("--input", required=True)
    p.add_argument("--to-degree3", action="store_true", dest="to_degree3",
                   help="reduce into a max-degree-3 target instead of the plain fold chain")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("hom", help="homomorphism witness between two hypergraph files")
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.set_defaults(func=cmd_hom)

    p = sub.add_parser("solve", help="exact optimum for a forbidden three-edge family")
    p.add_argument("--family", required=True, help="named family or hypergraph file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--budget-nodes", type=int, dest="budget_nodes")
    p.add_argument("--budget-secs", type=float, dest="budget_secs")
    p.add_argument("--seed-construction", action="store_true", dest="seed_construction",
                   help="seed the incumbent from the odd-bipartite construction when applicable")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("density", help="density sequence over a range of n")
    p.add_argument("--family", required=True)
    p.add_argument("--n-from", type=int, required=True, dest="n_from")
    p.add_argument("--n-to", type=int, required=True, dest="n_to")
    p.add_argument("--k", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--budget-nodes", type=int, dest="budget_nodes")
    p.add_argument("--budget-secs", type=float, dest="budget_secs")
    p.add_argument("--seed-construction", action="store_true", dest="seed_construction")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("export", help="emit the conflict system as CNF or an integer program")
    p.add_argument("--family", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--format", choices=("cnf", "ilp"), required=True, dest="export_format")
    p.add_argument("--at-least", type=int, dest="at_least",
                   help="CNF only: also require at least this many selected edges")
    p.add_argument("--output")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("stability", help="odd-bipartite deviation diagnostics")
    p.add_argument("--input", required=True)
    p.add_argument("--balanced", action="store_true",
                   help="restrict the partition scan to near-balanced part sizes")
    p.add_argument("--threshold", type=int)
    p.add_argument("--scan-links", action="store_true", dest="scan_links",
                   help="per-vertex link partition table (odd uniformity)")
    p.set_defaults(func=cmd_stability)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
