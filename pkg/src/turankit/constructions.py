"""Generators for the named hypergraph families used throughout the package:
expanded triangles, suspensions, complete odd-bipartite hypergraphs,
matchings, and complete r-graphs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable

from .hypergraph import (
    MAX_VERTICES,
    Hypergraph,
    edge_mask,
    edge_vertices,
    from_masks,
)


@dataclass(frozen=True)
class Partition:
    """Ordered bipartition of {0..n-1}; part2 is the complement of part1."""

    n: int
    part1: int

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if self.part1 & ~((1 << self.n) - 1):
            raise ValueError("part1 uses a vertex outside 0..n-1")

    @property
    def part2(self) -> int:
        return ((1 << self.n) - 1) & ~self.part1

    @property
    def sizes(self) -> tuple[int, int]:
        s1 = self.part1.bit_count()
        return (s1, self.n - s1)

    def swapped(self) -> "Partition":
        return Partition(self.n, self.part2)

    def part1_vertices(self) -> list[int]:
        return edge_vertices(self.part1)

    @classmethod
    def from_part1(cls, n: int, vertices: Iterable[int]) -> "Partition":
        return cls(n, edge_mask(vertices))


def expanded_triangle(k: int) -> Hypergraph:
    """Three 2k-edges over three pairwise disjoint k-blocks, each edge the
    union of two blocks. Every vertex has degree 2 and pairwise edge
    intersections have size k.
    """
    if k < 1:
        raise ValueError("block size k must be at least 1")
    if 3 * k > MAX_VERTICES:
        raise ValueError(f"3k = {3 * k} exceeds the {MAX_VERTICES}-vertex capacity")
    block = (1 << k) - 1
    s1, s2, s3 = block, block << k, block << (2 * k)
    return from_masks(3 * k, 2 * k, (s1 | s2, s2 | s3, s3 | s1))


def suspension(f: Hypergraph, r: int) -> Hypergraph:
    """Add r-s fresh apex vertices (highest indices) to every edge of the
    s-uniform f. Every apex ends up with degree |f|.
    """
    s = f.r
    if r < s:
        raise ValueError(f"target uniformity {r} below current uniformity {s}")
    if r == s:
        return f
    extra = r - s
    if f.n + extra > MAX_VERTICES:
        raise ValueError(f"{f.n + extra} vertices exceed the {MAX_VERTICES}-vertex capacity")
    apex = ((1 << extra) - 1) << f.n
    return from_masks(f.n + extra, r, (e | apex for e in f.edges))


def odd_bipartite(partition: Partition, uniformity: int) -> Hypergraph:
    """All uniformity-sets meeting part1 in an odd number of vertices.

    The uniformity must be even, so meeting part1 oddly is the same as
    meeting part2 oddly.
    """
    if uniformity < 2 or uniformity % 2:
        raise ValueError(f"uniformity must be even and >= 2, got {uniformity}")
    n = partition.n
    if n < uniformity:
        raise ValueError(f"need at least {uniformity} vertices, got {n}")
    p1 = partition.part1
    masks = []
    for combo in itertools.combinations(range(n), uniformity):
        e = edge_mask(combo)
        if (e & p1).bit_count() % 2:
            masks.append(e)
    return from_masks(n, uniformity, masks)


def odd_bipartite_count(n: int, part1_size: int, uniformity: int) -> int:
    """Closed-form edge count of the complete odd-bipartite hypergraph with
    the given part sizes: sum over odd j of C(part1, j) * C(n-part1, 2k-j).
    """
    return sum(
        comb(part1_size, j) * comb(n - part1_size, uniformity - j)
        for j in range(1, uniformity + 1, 2)
    )


def max_odd_bipartite(n: int, uniformity: int) -> tuple[Partition, Hypergraph, int]:
    """Edge-maximizing complete odd-bipartite hypergraph on n vertices.

    Scans all part sizes (the count depends only on |part1|) and breaks ties
    toward the more balanced partition. Returns the winning partition, its
    hypergraph, and the edge count.
    """
    if uniformity < 2 or uniformity % 2:
        raise ValueError(f"uniformity must be even and >= 2, got {uniformity}")
    if n < uniformity:
        raise ValueError(f"need at least {uniformity} vertices, got {n}")
    best = None
    for t in range(n // 2 + 1):
        count = odd_bipartite_count(n, t, uniformity)
        imbalance = n - 2 * t
        if best is None or count > best[0] or (count == best[0] and imbalance < best[1]):
            best = (count, imbalance, t)
    count, _, t = best
    partition = Partition(n, (1 << t) - 1)
    return partition, odd_bipartite(partition, uniformity), count


def matching(r: int, m: int, n: int | None = None) -> Hypergraph:
    """m pairwise disjoint r-edges on n vertices (default n = r*m)."""
    if r < 1 or m < 0:
        raise ValueError("need uniformity >= 1 and a non-negative edge count")
    if n is None:
        n = r * m
    if n < r * m:
        raise ValueError(f"{n} vertices cannot hold {m} disjoint {r}-edges")
    block = (1 << r) - 1
    return from_masks(n, r, (block << (i * r) for i in range(m)))


def complete_rgraph(n: int, r: int) -> Hypergraph:
    """All C(n, r) possible edges."""
    if n < r:
        raise ValueError(f"need n >= r, got n={n}, r={r}")
    return from_masks(n, r, (edge_mask(c) for c in itertools.combinations(range(n), r)))
