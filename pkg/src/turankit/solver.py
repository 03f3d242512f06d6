"""Exact maximum edge counts for a forbidden three-edge pattern.

The problem is encoded as a maximum independent set in a 3-uniform conflict
system: the ground set holds all C(n, r) possible edges and each conflict
triple marks three of them forming a copy of the forbidden pattern. Solving
is branch and bound over include/exclude decisions per ground edge, with a
greedy disjoint-conflict packing bound, root-level symmetry breaking, and an
append-only JSONL result cache keyed by the pattern's region profile.
"""

from __future__ import annotations

import itertools
import json
import os
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Sequence

from .hypergraph import (
    Hypergraph,
    canonical_regions,
    copies_of,
    edge_mask,
    edge_vertices,
    from_masks,
)

SOLVER_VERSION = "1"
DEFAULT_BUDGET_NODES = 100_000_000
DEFAULT_BUDGET_SECS = 300.0

STATUS_OPTIMAL = "proved-optimal"
STATUS_LOWER_BOUND = "lower-bound-only"


class _BudgetExhausted(Exception):
    pass


@dataclass(frozen=True)
class TripleSystem:
    """Conflict encoding of "contains the forbidden pattern" over the
    complete r-graph on n vertices.

    ground holds every possible edge (ascending bit vectors); conflicts are
    index triples into it. A subset of the ground set is pattern-free exactly
    when it contains no conflict triple entirely.
    """

    n: int
    r: int
    ground: tuple[int, ...]
    conflicts: tuple[tuple[int, int, int], ...]
    family_profile: tuple[int, ...]
    family_name: str
    trivial: bool

    def __len__(self) -> int:
        return len(self.ground)


@dataclass(frozen=True)
class SolveRecord:
    """Result of one exact computation: the optimum (or best lower bound on
    budget exhaustion), a verified pattern-free witness, and search stats."""

    family_profile: tuple[int, ...]
    family_name: str
    n: int
    r: int
    optimum: int
    witness: tuple[int, ...]
    status: str
    nodes: int
    millis: int
    version: str

    @property
    def proved_optimal(self) -> bool:
        return self.status == STATUS_OPTIMAL

    def witness_hypergraph(self) -> Hypergraph:
        return from_masks(self.n, self.r, self.witness)

    def density(self) -> Fraction:
        total = comb(self.n, self.r)
        return Fraction(self.optimum, total) if total else Fraction(0)

    def to_json_dict(self) -> dict:
        return {
            "family_profile": list(self.family_profile),
            "family_name": self.family_name,
            "n": self.n,
            "r": self.r,
            "optimum": self.optimum,
            "status": self.status,
            "witness": [edge_vertices(e) for e in self.witness],
            "nodes": self.nodes,
            "millis": self.millis,
            "version": self.version,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "SolveRecord":
        return cls(
            family_profile=tuple(obj["family_profile"]),
            family_name=obj["family_name"],
            n=obj["n"],
            r=obj["r"],
            optimum=obj["optimum"],
            witness=tuple(sorted(edge_mask(vs) for vs in obj["witness"])),
            status=obj["status"],
            nodes=obj["nodes"],
            millis=obj["millis"],
            version=obj["version"],
        )


def forbidden_triples(f: Hypergraph, n: int, family_name: str = "") -> TripleSystem:
    """Materialize the conflict system of the three-edge pattern f on [n].

    When n is smaller than f's support the conflict list is empty and the
    system is flagged trivially unconstrained.
    """
    if len(f.edges) != 3:
        raise ValueError(f"forbidden pattern must have exactly 3 edges, got {len(f.edges)}")
    if n < 0 or n > 64:
        raise ValueError(f"vertex count {n} outside 0..64")
    r = f.r
    if n < r:
        ground: tuple[int, ...] = ()
    else:
        ground = tuple(sorted(edge_mask(c) for c in itertools.combinations(range(n), r)))
    profile = canonical_regions(*f.edges)
    trivial = n < f.support_size
    if trivial or not ground:
        return TripleSystem(n, r, ground, (), profile, family_name, trivial)
    complete = Hypergraph(n, r, ground)
    index = {mask: i for i, mask in enumerate(ground)}
    conflicts = tuple(
        sorted(
            tuple(sorted(index[mask] for mask in triple))
            for triple in copies_of(f, complete)
        )
    )
    return TripleSystem(n, r, ground, conflicts, profile, family_name, trivial)


def _normalize_witness(system: TripleSystem, witness) -> int:
    """Seed witness (Hypergraph or edge masks) -> ground-index bitmask."""
    if witness is None:
        return 0
    masks = witness.edges if isinstance(witness, Hypergraph) else tuple(witness)
    index = {mask: i for i, mask in enumerate(system.ground)}
    selected = 0
    for mask in masks:
        if mask not in index:
            raise ValueError(f"seed edge {edge_vertices(mask)} is not a ground edge")
        selected |= 1 << index[mask]
    for a, b, c in system.conflicts:
        if selected >> a & 1 and selected >> b & 1 and selected >> c & 1:
            raise ValueError("seed witness contains a forbidden triple")
    return selected


def solve_exact(
    system: TripleSystem,
    *,
    budget_nodes: int | None = None,
    budget_secs: float | None = None,
    seed_witness: Optional[Hypergraph | Iterable[int]] = None,
) -> SolveRecord:
    """Branch and bound for the maximum conflict-free subset of the ground set.

    The incumbent starts from the optional seed witness. Branching picks the
    undecided edge lying in the most active conflicts; the bound subtracts a
    greedy packing of active conflicts with disjoint undecided parts from the
    count of undecided edges. Completing within budget proves optimality;
    otherwise the record is marked lower-bound-only. The returned witness is
    re-verified to be conflict-free either way.

    The root fixes the first ground edge to included, which is valid for the
    documented TripleSystem shape: a complete ground set, whose relabeling
    symmetry moves any edge of an optimal solution onto the first one.
    """
    t0 = time.monotonic()
    node_budget = DEFAULT_BUDGET_NODES if budget_nodes is None else budget_nodes
    secs_budget = DEFAULT_BUDGET_SECS if budget_secs is None else budget_secs
    deadline = t0 + secs_budget
    m = len(system.ground)
    conflicts = system.conflicts
    seed_mask = _normalize_witness(system, seed_witness)

    best_val = seed_mask.bit_count()
    best_mask = seed_mask
    nodes = 0
    status = STATUS_OPTIMAL
    full = (1 << m) - 1

    if m == 0:
        pass
    elif not conflicts:
        best_val, best_mask = m, full
    else:
        pairs: list[list[tuple[int, int]]] = [[] for _ in range(m)]
        membership = [0] * m
        conflict_edge_masks = []
        for ci, (a, b, c) in enumerate(conflicts):
            pairs[a].append((b, c))
            pairs[b].append((a, c))
            pairs[c].append((a, b))
            bit = 1 << ci
            membership[a] |= bit
            membership[b] |= bit
            membership[c] |= bit
            conflict_edge_masks.append((1 << a) | (1 << b) | (1 << c))
        all_active = (1 << len(conflicts)) - 1

        def include(inc: int, exc: int, dead: int, e: int):
            # Include edge e and propagate: a conflict with two included
            # edges forces exclusion of its third. Exclusions cascade no
            # further, so one pass over e's conflict partners suffices.
            inc |= 1 << e
            for j, k in pairs[e]:
                jb, kb = 1 << j, 1 << k
                if exc & (jb | kb):
                    continue
                j_in = inc & jb
                k_in = inc & kb
                if j_in and k_in:
                    return None
                if j_in:
                    exc |= kb
                    dead |= membership[k]
                elif k_in:
                    exc |= jb
                    dead |= membership[j]
            return inc, exc, dead

        def dfs(inc: int, exc: int, dead: int):
            nonlocal best_val, best_mask, nodes
            nodes += 1
            if nodes >= node_budget:
                raise _BudgetExhausted
            if not nodes & 255 and time.monotonic() > deadline:
                raise _BudgetExhausted
            active = all_active & ~dead
            exc_count = exc.bit_count()
            if not active:
                # No conflict can still be violated: take every undecided edge.
                val = m - exc_count
                if val > best_val:
                    best_val = val
                    best_mask = full & ~exc
                return
            inc_count = inc.bit_count()
            undecided = m - inc_count - exc_count
            if inc_count + undecided <= best_val:
                return
            counts = [0] * m
            parts2 = []
            parts3 = []
            a = active
            while a:
                low = a & -a
                ci = low.bit_length() - 1
                a ^= low
                u = conflict_edge_masks[ci] & ~inc
                if u.bit_count() == 2:
                    parts2.append(u)
                else:
                    parts3.append(u)
                while u:
                    ub = u & -u
                    counts[ub.bit_length() - 1] += 1
                    u ^= ub
            used = 0
            packed = 0
            for u in parts2:
                if not u & used:
                    packed += 1
                    used |= u
            for u in parts3:
                if not u & used:
                    packed += 1
                    used |= u
            bound = inc_count + undecided - packed
            if bound <= best_val:
                return
            branch = counts.index(max(counts))
            include_state = include(inc, exc, dead, branch)
            exclude_state = (inc, exc | (1 << branch), dead | membership[branch])
            if bound - best_val >= 2:
                order = (include_state, exclude_state)
            else:
                order = (exclude_state, include_state)
            for state in order:
                if state is not None:
                    dfs(*state)

        # Root symmetry breaking: ground edges are interchangeable under
        # vertex relabeling and a single edge is always conflict-free, so
        # some optimum contains the first ground edge.
        root = include(0, 0, 0, 0)
        try:
            if root is not None:
                dfs(*root)
            else:
                raise AssertionError("first ground edge infeasible at the root")
        except _BudgetExhausted:
            status = STATUS_LOWER_BOUND

    witness = tuple(
        system.ground[i] for i in range(m) if best_mask >> i & 1
    )
    for a, b, c in conflicts:
        if best_mask >> a & 1 and best_mask >> b & 1 and best_mask >> c & 1:
            raise AssertionError("witness contains a forbidden triple")
    millis = int((time.monotonic() - t0) * 1000)
    return SolveRecord(
        family_profile=system.family_profile,
        family_name=system.family_name,
        n=system.n,
        r=system.r,
        optimum=best_val,
        witness=witness,
        status=status,
        nodes=nodes,
        millis=millis,
        version=SOLVER_VERSION,
    )


# -- result cache -----------------------------------------------------------

class ResultCache:
    """Append-only JSONL store of solve records.

    One self-contained JSON object per line. Readers ignore a trailing
    partial record, so a crashed or in-progress append never poisons the
    file; any earlier malformed line raises.
    """

    def __init__(self, path: str):
        self.path = path

    def records(self) -> list[SolveRecord]:
        if not os.path.exists(self.path):
            return []
        with open(self.path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
        out = []
        for i, line in enumerate(lines):
            if not line.strip():
                continue
            try:
                out.append(SolveRecord.from_json_dict(json.loads(line)))
            except (json.JSONDecodeError, KeyError):
                if i == len(lines) - 1:
                    break  # append in progress
                raise ValueError(f"corrupt cache line {i + 1} in {self.path}")
        return out

    def lookup(self, profile: tuple[int, ...], n: int, version: str = SOLVER_VERSION) -> Optional[SolveRecord]:
        hit = None
        for rec in self.records():
            if (
                tuple(rec.family_profile) == tuple(profile)
                and rec.n == n
                and rec.version == version
                and rec.proved_optimal
            ):
                hit = rec
        return hit

    def append(self, record: SolveRecord) -> None:
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record.to_json_dict(), separators=(",", ":")) + "\n")


def solve_family(
    f: Hypergraph,
    n: int,
    *,
    family_name: str = "",
    cache: Optional[ResultCache] = None,
    budget_nodes: int | None = None,
    budget_secs: float | None = None,
    seed_witness: Optional[Hypergraph | Iterable[int]] = None,
) -> SolveRecord:
    """Cache-aware wrapper: consult the cache first, otherwise build the
    conflict system, solve, and append the result when proved optimal."""
    profile = canonical_regions(*f.edges) if len(f.edges) == 3 else None
    if profile is None:
        raise ValueError("forbidden pattern must have exactly 3 edges")
    if cache is not None:
        hit = cache.lookup(profile, n)
        if hit is not None:
            return hit
    system = forbidden_triples(f, n, family_name)
    record = solve_exact(
        system,
        budget_nodes=budget_nodes,
        budget_secs=budget_secs,
        seed_witness=seed_witness,
    )
    if cache is not None and record.proved_optimal:
        cache.append(record)
    return record


# -- density sequences -------------------------------------------------------

def density_sequence(
    f: Hypergraph,
    n_values: Sequence[int],
    *,
    family_name: str = "",
    cache: Optional[ResultCache] = None,
    budget_nodes: int | None = None,
    budget_secs: float | None = None,
    seed_for: Optional[dict[int, Hypergraph | Iterable[int]]] = None,
) -> list[SolveRecord]:
    """Solve a run of n values and audit the densities.

    The density ex(n)/C(n, r) of consecutive proved-optimal entries must be
    non-increasing; a violation raises, since it can only come from a solver
    bug. Entries that exhausted their budget are kept but excluded from the
    audit.
    """
    records = []
    for n in sorted(n_values):
        seed = (seed_for or {}).get(n)
        records.append(
            solve_family(
                f,
                n,
                family_name=family_name,
                cache=cache,
                budget_nodes=budget_nodes,
                budget_secs=budget_secs,
                seed_witness=seed,
            )
        )
    audit_density_monotone(records)
    return records


def audit_density_monotone(records: Sequence[SolveRecord]) -> None:
    """Exact-arithmetic check that proved-optimal densities never increase."""
    proved = sorted((r for r in records if r.proved_optimal), key=lambda r: r.n)
    for prev, cur in zip(proved, proved[1:]):
        if cur.density() > prev.density():
            raise RuntimeError(
                f"density increased from n={prev.n} ({prev.density()}) "
                f"to n={cur.n} ({cur.density()}); solver bug"
            )


# -- constraint export --------------------------------------------------------

def export_cnf(system: TripleSystem, at_least: Optional[int] = None) -> str:
    """DIMACS CNF for the conflict system.

    Variable i+1 selects ground edge i (edges ascending by bit vector; the
    comment header lists the vertex sets). One clause -a -b -c per conflict.
    With at_least=t, a sequential-counter encoding over the negated selection
    literals enforces at least t selected edges, using auxiliary variables
    numbered above the selection variables.
    """
    m = len(system.ground)
    clauses: list[tuple[int, ...]] = [
        tuple(-(i + 1) for i in triple) for triple in system.conflicts
    ]
    nvars = m
    if at_least is not None:
        if at_least > m:
            raise ValueError(f"cannot require {at_least} of {m} edges")
        if at_least > 0:
            counter_clauses, nvars = _at_most_k_sequential(
                literals=[-(i + 1) for i in range(m)],
                k=m - at_least,
                next_var=m + 1,
            )
            clauses.extend(counter_clauses)
    lines = [
        f"c conflict-free edge selection: n={system.n} r={system.r} "
        f"family={system.family_name or 'unnamed'}",
        f"c profile={list(system.family_profile)}",
        "c var i selects ground edge i-1; edge vertex sets:",
    ]
    for i, mask in enumerate(system.ground):
        lines.append(f"c var {i + 1} = {' '.join(str(v) for v in edge_vertices(mask))}")
    if at_least is not None:
        lines.append(f"c cardinality: at least {at_least} selected (sequential counter)")
    lines.append(f"p cnf {nvars} {len(clauses)}")
    for clause in clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


def _at_most_k_sequential(literals: list[int], k: int, next_var: int) -> tuple[list[tuple[int, ...]], int]:
    """Sinz sequential-counter clauses for at-most-k over the given literals.

    Returns (clauses, highest variable number used). k = 0 degenerates to
    unit clauses negating every literal.
    """
    n = len(literals)
    if k >= n:
        return [], next_var - 1
    if k == 0:
        return [(-lit,) for lit in literals], next_var - 1
    # s[i][j] (1-based j <= k): the count among the first i+1 literals is >= j
    reg = [[next_var + i * k + j for j in range(k)] for i in range(n - 1)]
    top = next_var + (n - 1) * k - 1
    clauses = []
    clauses.append((-literals[0], reg[0][0]))
    for j in range(1, k):
        clauses.append((-reg[0][j],))
    for i in range(1, n - 1):
        clauses.append((-literals[i], reg[i][0]))
        clauses.append((-reg[i - 1][0], reg[i][0]))
        for j in range(1, k):
            clauses.append((-literals[i], -reg[i - 1][j - 1], reg[i][j]))
            clauses.append((-reg[i - 1][j], reg[i][j]))
        clauses.append((-literals[i], -reg[i - 1][k - 1]))
    clauses.append((-literals[n - 1], -reg[n - 2][k - 1]))
    return clauses, top


def export_ilp(system: TripleSystem) -> str:
    """LP-format integer program: maximize the selected edge count subject to
    x_a + x_b + x_c <= 2 per conflict, all variables binary.

    Variable xi selects ground edge i-1, matching the CNF numbering.
    """
    lines = [
        f"\\ conflict-free edge selection: n={system.n} r={system.r} "
        f"family={system.family_name or 'unnamed'}",
        f"\\ profile={list(system.family_profile)}",
        "Maximize",
        " obj: " + " + ".join(f"x{i + 1}" for i in range(len(system.ground))),
        "Subject To",
    ]
    for ci, (a, b, c) in enumerate(system.conflicts):
        lines.append(f" c{ci + 1}: x{a + 1} + x{b + 1} + x{c + 1} <= 2")
    lines.append("Binary")
    lines.append(" " + " ".join(f"x{i + 1}" for i in range(len(system.ground))))
    lines.append("End")
    return "\n".join(lines) + "\n"
