"""Isomorph-free enumeration of all three-edge r-graphs and verification of
the minimum-degree-two classification.

Classes are enumerated directly as region profiles (the seven Venn-region
cardinalities), which is a complete isomorphism invariant for three-edge
hypergraphs, so no labeled search or canonical-form machinery is needed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .constructions import expanded_triangle, suspension
from .hypergraph import (
    Hypergraph,
    RegionProfile,
    edge_mask,
    from_masks,
    is_isomorphic,
    max_degree,
    min_positive_degree,
)

MIN_UNIFORMITY = 2
MAX_UNIFORMITY = 8


@dataclass(frozen=True)
class CatalogEntry:
    profile: RegionProfile
    representative: Hypergraph
    min_degree: int
    max_degree: int
    # index i such that the class is the r-suspension of the width-i expanded
    # triangle; None for classes with a degree-one vertex
    suspension_index: Optional[int]


@dataclass(frozen=True)
class ThreeEdgeCatalog:
    """One representative per isomorphism class of three-edge r-graphs."""

    r: int
    entries: tuple[CatalogEntry, ...]

    @property
    def min_degree_one(self) -> tuple[CatalogEntry, ...]:
        return tuple(e for e in self.entries if e.min_degree == 1)

    @property
    def min_degree_two(self) -> tuple[CatalogEntry, ...]:
        return tuple(e for e in self.entries if e.min_degree >= 2)

    def __len__(self) -> int:
        return len(self.entries)


def _canonical_profiles(r: int) -> list[tuple[int, ...]]:
    """All region profiles of three pairwise-distinct r-edges, one per class."""
    seen = set()
    for a123 in range(r + 1):
        for a12 in range(r - a123 + 1):
            for a13 in range(r - a123 - a12 + 1):
                a1 = r - a12 - a13 - a123
                for a23 in range(r - a123 - a12 + 1):
                    a2 = r - a12 - a23 - a123
                    a3 = r - a13 - a23 - a123
                    if a2 < 0 or a3 < 0:
                        continue
                    # pairwise distinct edges
                    if a1 + a13 + a2 + a23 == 0:
                        continue
                    if a1 + a12 + a3 + a23 == 0:
                        continue
                    if a2 + a12 + a3 + a13 == 0:
                        continue
                    profile = (a1, a2, a3, a12, a13, a23, a123)
                    canon = min(
                        (
                            profile[p[0]],
                            profile[p[1]],
                            profile[p[2]],
                            profile[q[0]],
                            profile[q[1]],
                            profile[q[2]],
                            profile[6],
                        )
                        for p, q in _S3_ACTION
                    )
                    seen.add(canon)
    return sorted(seen)


def _s3_action() -> list[tuple[tuple[int, int, int], tuple[int, int, int]]]:
    # Relabeling the three edges permutes the singleton regions like the
    # labels and the pair regions like the label pairs.
    pair_index = {frozenset((0, 1)): 3, frozenset((0, 2)): 4, frozenset((1, 2)): 5}
    action = []
    for perm in itertools.permutations(range(3)):
        singles = (perm.index(0), perm.index(1), perm.index(2))
        pairs = tuple(
            pair_index[frozenset((perm.index(a), perm.index(b)))]
            for a, b in ((0, 1), (0, 2), (1, 2))
        )
        action.append((singles, pairs))
    return action


_S3_ACTION = _s3_action()


def realize_profile(profile: tuple[int, ...], r: int) -> Hypergraph:
    """Concrete hypergraph with the given region counts, using contiguous
    index blocks per region in the order (1, 2, 3, 12, 13, 23, 123)."""
    a1, a2, a3, a12, a13, a23, a123 = profile
    sizes = (a1, a2, a3, a12, a13, a23, a123)
    starts = []
    total = 0
    for s in sizes:
        starts.append(total)
        total += s
    blocks = [edge_mask(range(starts[i], starts[i] + sizes[i])) for i in range(7)]
    e1 = blocks[0] | blocks[3] | blocks[4] | blocks[6]
    e2 = blocks[1] | blocks[3] | blocks[5] | blocks[6]
    e3 = blocks[2] | blocks[4] | blocks[5] | blocks[6]
    return from_masks(total, r, (e1, e2, e3))


def enumerate_three_edge(r: int) -> ThreeEdgeCatalog:
    """Catalog of all isomorphism classes of three-edge r-graphs, with no
    isolated vertices, tagged by minimum degree and, for minimum degree two,
    by the matching suspended-expanded-triangle index."""
    if not MIN_UNIFORMITY <= r <= MAX_UNIFORMITY:
        raise ValueError(f"uniformity {r} outside the supported range "
                         f"{MIN_UNIFORMITY}..{MAX_UNIFORMITY}")
    targets = {
        i: suspension(expanded_triangle(i), r) for i in range(1, r // 2 + 1)
    }
    entries = []
    for profile in _canonical_profiles(r):
        rep = realize_profile(profile, r)
        delta = min_positive_degree(rep)
        index = None
        if delta >= 2:
            matches = [i for i, t in targets.items() if is_isomorphic(rep, t)]
            if len(matches) == 1:
                index = matches[0]
            elif len(matches) > 1:
                raise RuntimeError(
                    f"class {profile} matched several suspension targets {matches}"
                )
        entries.append(
            CatalogEntry(
                profile=RegionProfile(*profile),
                representative=rep,
                min_degree=delta,
                max_degree=max_degree(rep),
                suspension_index=index,
            )
        )
    return ThreeEdgeCatalog(r, tuple(entries))


@dataclass(frozen=True)
class ClassificationReport:
    r: int
    class_count: int
    matches: tuple[tuple[RegionProfile, int], ...]


def verify_classification(r: int, catalog: ThreeEdgeCatalog | None = None) -> ClassificationReport:
    """Check that the minimum-degree-two classes are exactly the suspensions
    of expanded triangles of width 1..floor(r/2), one class per width.

    Any mismatch raises with a counterexample dump: it would mean a bug in
    the enumerator, the constructions, or the isomorphism test.
    """
    if catalog is None:
        catalog = enumerate_three_edge(r)
    core_entries = catalog.min_degree_two
    expected = r // 2
    problems = []
    if len(core_entries) != expected:
        problems.append(
            f"expected {expected} min-degree-2 classes, found {len(core_entries)}: "
            f"{[e.profile.as_tuple() for e in core_entries]}"
        )
    unmatched = [e for e in core_entries if e.suspension_index is None]
    if unmatched:
        problems.append(
            "classes matching no suspension target: "
            f"{[e.profile.as_tuple() for e in unmatched]}"
        )
    indices = sorted(e.suspension_index for e in core_entries if e.suspension_index)
    if indices != list(range(1, expected + 1)):
        problems.append(
            f"suspension indices {indices} do not cover 1..{expected} exactly once"
        )
    if problems:
        raise RuntimeError(f"classification failed for r={r}: " + "; ".join(problems))
    matches = tuple(
        (e.profile, e.suspension_index) for e in core_entries
    )
    return ClassificationReport(r=r, class_count=len(core_entries), matches=matches)
