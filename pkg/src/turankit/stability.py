"""Distance-to-odd-bipartite diagnostics for even-uniformity hypergraphs.

Measures how far a 2k-graph sits from the complete odd-bipartite hypergraph
over a candidate bipartition: which edges are bad (present but even-meeting),
which are missing (odd-meeting but absent), which vertices are heavy in the
missing set, and how two bipartitions differ. Applied to vertex links this
recovers the per-vertex apparatus of the stability analysis at finite n.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

from .constructions import Partition, odd_bipartite_count
from .hypergraph import Hypergraph, edge_mask, edge_vertices, link

BEST_PARTITION_MAX_N = 24


@dataclass(frozen=True)
class DeviationReport:
    """Symmetric difference between a hypergraph and the complete
    odd-bipartite hypergraph over one partition, split into bad edges
    (present, even intersection with part1) and missing edges (odd
    intersection, absent)."""

    partition: Partition
    bad_edges: tuple[int, ...]
    missing_edges: tuple[int, ...]

    @property
    def bad(self) -> int:
        return len(self.bad_edges)

    @property
    def missing(self) -> int:
        return len(self.missing_edges)

    @property
    def total(self) -> int:
        return self.bad + self.missing


def _check_even_uniformity(h: Hypergraph) -> None:
    if h.r % 2 or h.r < 2:
        raise ValueError(f"deviation diagnostics need even uniformity, got r={h.r}")


def deviation(h: Hypergraph, partition: Partition) -> DeviationReport:
    """Exact bad/missing decomposition of h against the partition.

    Walks all C(n, r) vertex sets once, classifying each by intersection
    parity with part1 and membership in h.
    """
    _check_even_uniformity(h)
    if partition.n != h.n:
        raise ValueError(f"partition is over {partition.n} vertices, hypergraph over {h.n}")
    present = h.edge_set()
    p1 = partition.part1
    bad = []
    missing = []
    for combo in itertools.combinations(range(h.n), h.r):
        e = edge_mask(combo)
        odd = (e & p1).bit_count() % 2
        if e in present:
            if not odd:
                bad.append(e)
        elif odd:
            missing.append(e)
    return DeviationReport(partition, tuple(bad), tuple(missing))


def _deviation_total(h: Hypergraph, part1: int, n: int) -> int:
    # Count-only path for partition scans: bad edges by direct parity count,
    # missing edges from the closed-form odd-bipartite size.
    bad = 0
    for e in h.edges:
        if not (e & part1).bit_count() % 2:
            bad += 1
    complete = odd_bipartite_count(n, part1.bit_count(), h.r)
    missing = complete - (len(h.edges) - bad)
    return bad + missing


def best_partition(h: Hypergraph, balanced_only: bool = False) -> tuple[Partition, DeviationReport]:
    """Partition minimizing the total deviation, by exhaustive scan.

    Deviation is invariant under swapping the parts, so only partitions with
    vertex 0 in part1 are scanned; ties break toward the lexicographically
    smallest part1 bit vector. balanced_only restricts to part sizes
    differing by at most one.
    """
    _check_even_uniformity(h)
    n = h.n
    if n > BEST_PARTITION_MAX_N:
        raise ValueError(f"partition scan supports n <= {BEST_PARTITION_MAX_N}, got {n}")
    if n < 1:
        raise ValueError("need at least one vertex")
    allowed_sizes = None
    if balanced_only:
        allowed_sizes = {n // 2, (n + 1) // 2}
    best_mask = None
    best_total = None
    for rest in range(1 << (n - 1)):
        part1 = (rest << 1) | 1
        if allowed_sizes is not None and part1.bit_count() not in allowed_sizes:
            continue
        total = _deviation_total(h, part1, n)
        if best_total is None or total < best_total:
            best_total = total
            best_mask = part1
    partition = Partition(n, best_mask)
    return partition, deviation(h, partition)


def partition_distance(p: Partition, q: Partition) -> int:
    """min(|part1(p) ^ part1(q)|, |part1(p) ^ part2(q)|): zero exactly when
    the partitions agree up to swapping the parts."""
    if p.n != q.n:
        raise ValueError(f"partition sizes differ: {p.n} vs {q.n}")
    direct = (p.part1 ^ q.part1).bit_count()
    swapped = (p.part1 ^ q.part2).bit_count()
    return min(direct, swapped)


def heavy_missing_vertices(h: Hypergraph, partition: Partition, threshold: int) -> list[int]:
    """Vertices whose degree in the missing-edge set reaches the threshold.

    Satisfies the counting bound |result| * threshold <= r * #missing, since
    each missing edge contributes r to the total missing degree.
    """
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    if threshold == 0:
        warnings.warn("threshold 0 selects every vertex", stacklevel=2)
        return list(range(h.n))
    report = deviation(h, partition)
    degs = [0] * h.n
    for e in report.missing_edges:
        for v in edge_vertices(e):
            degs[v] += 1
    return [v for v in range(h.n) if degs[v] >= threshold]


@dataclass(frozen=True)
class LinkPartitionRow:
    vertex: int
    partition: Partition
    bad: int
    missing: int
    total: int


@dataclass(frozen=True)
class LinkPartitionScan:
    rows: tuple[LinkPartitionRow, ...]
    distances: tuple[tuple[int, ...], ...]
    max_distance: int
    mean_distance: float


def link_partition_scan(h: Hypergraph, balanced_only: bool = False) -> LinkPartitionScan:
    """Per-vertex stability table for an odd-uniformity hypergraph.

    For each vertex, the best partition of its link (an even-uniformity
    hypergraph on the same vertex set) with its deviation, plus the full
    pairwise partition-distance matrix and summary statistics.
    """
    if h.r % 2 == 0 or h.r < 3:
        raise ValueError(f"link scan needs odd uniformity >= 3, got r={h.r}")
    rows = []
    for x in range(h.n):
        part, report = best_partition(link(h, x), balanced_only=balanced_only)
        rows.append(
            LinkPartitionRow(
                vertex=x,
                partition=part,
                bad=report.bad,
                missing=report.missing,
                total=report.total,
            )
        )
    dist = tuple(
        tuple(partition_distance(rows[x].partition, rows[y].partition) for y in range(h.n))
        for x in range(h.n)
    )
    offdiag = [dist[x][y] for x in range(h.n) for y in range(x + 1, h.n)]
    return LinkPartitionScan(
        rows=tuple(rows),
        distances=dist,
        max_distance=max(offdiag) if offdiag else 0,
        mean_distance=sum(offdiag) / len(offdiag) if offdiag else 0.0,
    )
