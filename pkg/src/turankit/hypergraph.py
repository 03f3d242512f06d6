"""Uniform hypergraphs on at most 64 vertices, stored as edge bit vectors.

Vertices are the integers 0..n-1 and an edge is an n-bit integer with exactly
r bits set, so intersection, union, and containment checks are single
machine-word operations. Edge tuples are deduplicated and sorted by numeric
value, which makes hypergraph equality a plain value comparison.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

MAX_VERTICES = 64


def edge_mask(vertices: Iterable[int]) -> int:
    """Pack vertex indices into an edge bit vector."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def edge_vertices(mask: int) -> list[int]:
    """Unpack an edge bit vector into sorted vertex indices."""
    vs = []
    while mask:
        low = mask & -mask
        vs.append(low.bit_length() - 1)
        mask ^= low
    return vs


@dataclass(frozen=True)
class Hypergraph:
    """Immutable r-uniform hypergraph on vertex set {0..n-1}."""

    n: int
    r: int
    edges: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if self.r < 1:
            raise ValueError("uniformity must be at least 1")
        full = (1 << self.n) - 1
        prev = -1
        for e in self.edges:
            if e <= prev:
                raise ValueError("edges must be deduplicated and sorted ascending")
            if e & ~full:
                raise ValueError(f"edge {edge_vertices(e)} uses a vertex outside 0..{self.n - 1}")
            if e.bit_count() != self.r:
                raise ValueError(f"edge {edge_vertices(e)} does not have exactly {self.r} vertices")
            prev = e

    def __len__(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        bit = 1 << v
        return sum(1 for e in self.edges if e & bit)

    def degrees(self) -> list[int]:
        degs = [0] * self.n
        for e in self.edges:
            for v in edge_vertices(e):
                degs[v] += 1
        return degs

    @property
    def support_mask(self) -> int:
        mask = 0
        for e in self.edges:
            mask |= e
        return mask

    @property
    def support_size(self) -> int:
        return self.support_mask.bit_count()

    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edges)

    def edge_vertex_lists(self) -> list[list[int]]:
        return [edge_vertices(e) for e in self.edges]

    def core(self) -> "Hypergraph":
        """Copy with isolated vertices removed and the rest relabeled 0..s-1."""
        support = edge_vertices(self.support_mask)
        relabel = {old: new for new, old in enumerate(support)}
        edges = sorted(edge_mask(relabel[v] for v in edge_vertices(e)) for e in self.edges)
        return Hypergraph(len(support), self.r, tuple(edges))


def from_masks(n: int, r: int, masks: Iterable[int]) -> Hypergraph:
    """Build a hypergraph from edge bit vectors, deduplicating and sorting."""
    return Hypergraph(n, r, tuple(sorted(set(masks))))


def make_hypergraph(n: int, r: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    """Build a hypergraph from vertex lists.

    Each listed edge must consist of exactly r distinct vertices in range;
    duplicate edges are silently merged.
    """
    masks = []
    for edge in edges:
        vs = list(edge)
        if len(set(vs)) != len(vs):
            raise ValueError(f"edge {vs} repeats a vertex")
        if len(vs) != r:
            raise ValueError(f"edge {vs} has {len(vs)} vertices, expected {r}")
        for v in vs:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} outside 0..{n - 1}")
        masks.append(edge_mask(vs))
    return from_masks(n, r, masks)


# -- text format ---------------------------------------------------------

def format_hypergraph(h: Hypergraph) -> str:
    """Serialize to the text format: header `n=<n> r=<r>`, one edge per line."""
    lines = [f"n={h.n} r={h.r}"]
    lines.extend(" ".join(str(v) for v in edge_vertices(e)) for e in h.edges)
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> Hypergraph:
    """Parse the text format produced by format_hypergraph.

    Blank lines and lines starting with '#' are ignored. Edges with the wrong
    number of vertices are rejected.
    """
    header = None
    edges = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2 or not parts[0].startswith("n=") or not parts[1].startswith("r="):
                raise ValueError(f"bad header line {line!r}, expected 'n=<n> r=<r>'")
            header = (int(parts[0][2:]), int(parts[1][2:]))
        else:
            edges.append([int(tok) for tok in line.split()])
    if header is None:
        raise ValueError("missing header line 'n=<n> r=<r>'")
    return make_hypergraph(header[0], header[1], edges)


# -- degrees and links ---------------------------------------------------

@dataclass(frozen=True)
class DegreeProfile:
    degrees: tuple[int, ...]
    minimum: int
    maximum: int
    average: float


def degree_profile(h: Hypergraph) -> DegreeProfile:
    """Per-vertex degrees with minimum, maximum, and average."""
    degs = h.degrees()
    if not degs:
        return DegreeProfile((), 0, 0, 0.0)
    return DegreeProfile(tuple(degs), min(degs), max(degs), sum(degs) / len(degs))


def min_positive_degree(h: Hypergraph) -> int:
    """Smallest degree among non-isolated vertices; 0 if there are no edges."""
    degs = [d for d in h.degrees() if d > 0]
    return min(degs) if degs else 0


def max_degree(h: Hypergraph) -> int:
    degs = h.degrees()
    return max(degs) if degs else 0


def link(h: Hypergraph, v: int) -> Hypergraph:
    """Link of v: edge remainders of the edges through v, of uniformity r-1.

    The vertex set is unchanged; v becomes isolated in the result.
    """
    if not 0 <= v < h.n:
        raise ValueError(f"vertex {v} outside 0..{h.n - 1}")
    if h.r < 2:
        raise ValueError("link undefined for 1-uniform hypergraphs")
    bit = 1 << v
    return from_masks(h.n, h.r - 1, (e & ~bit for e in h.edges if e & bit))


def truncate_vertex(h: Hypergraph, x: int) -> Hypergraph:
    """Delete x from every edge. Requires x to lie in every edge.

    The result has uniformity r-1 and the same edge count.
    """
    if not 0 <= x < h.n:
        raise ValueError(f"vertex {x} outside 0..{h.n - 1}")
    bit = 1 << x
    if any(not e & bit for e in h.edges):
        raise ValueError(f"vertex {x} is missing from some edge; cannot truncate")
    if h.r < 2:
        raise ValueError("cannot truncate a 1-uniform hypergraph")
    return from_masks(h.n, h.r - 1, (e & ~bit for e in h.edges))


def drop_vertex(h: Hypergraph, x: int) -> Hypergraph:
    """Keep only the edges avoiding x. Uniformity is unchanged."""
    if not 0 <= x < h.n:
        raise ValueError(f"vertex {x} outside 0..{h.n - 1}")
    bit = 1 << x
    return from_masks(h.n, h.r, (e for e in h.edges if not e & bit))


# -- vertex maps -----------------------------------------------------------

@dataclass(frozen=True)
class VertexMap:
    """Total map from one vertex set into another, not necessarily injective."""

    domain_size: int
    codomain_size: int
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.domain_size:
            raise ValueError("image array length must equal the domain size")
        for w in self.images:
            if not 0 <= w < self.codomain_size:
                raise ValueError(f"image {w} outside 0..{self.codomain_size - 1}")

    def __call__(self, v: int) -> int:
        return self.images[v]

    def apply_mask(self, mask: int) -> int:
        out = 0
        for v in edge_vertices(mask):
            out |= 1 << self.images[v]
        return out

    def is_homomorphism(self, source: Hypergraph, target: Hypergraph) -> bool:
        """True when the image of every source edge is an edge of the target."""
        target_edges = target.edge_set()
        return all(self.apply_mask(e) in target_edges for e in source.edges)

    def then(self, after: "VertexMap") -> "VertexMap":
        """Composition: first apply this map, then `after`."""
        if self.codomain_size != after.domain_size:
            raise ValueError("composition needs matching codomain/domain sizes")
        return VertexMap(
            self.domain_size,
            after.codomain_size,
            tuple(after.images[w] for w in self.images),
        )

    @classmethod
    def identity(cls, n: int) -> "VertexMap":
        return cls(n, n, tuple(range(n)))


# -- three-edge region profile -------------------------------------------

@dataclass(frozen=True, order=True)
class RegionProfile:
    """Venn-region cardinalities of a three-edge hypergraph.

    The seven counts (a1, a2, a3, a12, a13, a23, a123) record how many
    vertices lie in exactly the labeled combination of the three edges. The
    stored tuple is the lexicographic minimum over the six relabelings of the
    edges, which makes equality a complete isomorphism test for three-edge
    hypergraphs: vertices inside one region are interchangeable.
    """

    a1: int
    a2: int
    a3: int
    a12: int
    a13: int
    a23: int
    a123: int

    @classmethod
    def of(cls, h: Hypergraph) -> "RegionProfile":
        if len(h.edges) != 3:
            raise ValueError(f"region profile needs exactly 3 edges, got {len(h.edges)}")
        return cls(*canonical_regions(*h.edges))

    def as_tuple(self) -> tuple[int, ...]:
        return (self.a1, self.a2, self.a3, self.a12, self.a13, self.a23, self.a123)

    @property
    def uniformity(self) -> int:
        return self.a1 + self.a12 + self.a13 + self.a123


def _regions(e1: int, e2: int, e3: int) -> tuple[int, ...]:
    a123 = (e1 & e2 & e3).bit_count()
    a12 = (e1 & e2).bit_count() - a123
    a13 = (e1 & e3).bit_count() - a123
    a23 = (e2 & e3).bit_count() - a123
    a1 = e1.bit_count() - a12 - a13 - a123
    a2 = e2.bit_count() - a12 - a23 - a123
    a3 = e3.bit_count() - a13 - a23 - a123
    return (a1, a2, a3, a12, a13, a23, a123)


def canonical_regions(e1: int, e2: int, e3: int) -> tuple[int, ...]:
    """Region counts minimized over the six orderings of the three edges."""
    return min(_regions(x, y, z) for x, y, z in itertools.permutations((e1, e2, e3)))


# -- isomorphism ----------------------------------------------------------

def _iso_invariants(h: Hypergraph) -> tuple:
    degs = sorted(d for d in h.degrees() if d > 0)
    inters = sorted((a & b).bit_count() for a, b in itertools.combinations(h.edges, 2))
    return (h.r, len(h.edges), h.support_size, tuple(degs), tuple(inters))


def find_isomorphism(f1: Hypergraph, f2: Hypergraph) -> Optional[dict[int, int]]:
    """Search for a bijection between non-isolated vertices mapping edges onto edges.

    Backtracks over degree-compatible assignments; returns None when no
    isomorphism exists. Isolated vertices are ignored on both sides.
    """
    if not f1.edges and not f2.edges:
        return {}
    if _iso_invariants(f1) != _iso_invariants(f2):
        return None
    degs1, degs2 = f1.degrees(), f2.degrees()
    verts1 = sorted((v for v in range(f1.n) if degs1[v]), key=lambda v: (-degs1[v], v))
    cand2 = {v: [w for w in range(f2.n) if degs2[w] == degs1[v]] for v in verts1}
    edges1 = f1.edges
    incident = {v: [i for i, e in enumerate(edges1) if e >> v & 1] for v in verts1}
    img_mask = [0] * len(edges1)
    img_cnt = [0] * len(edges1)
    assignment: dict[int, int] = {}
    used = 0

    def extendable(ei: int) -> bool:
        im = img_mask[ei]
        return any(im & e == im for e in f2.edges)

    def place(idx: int) -> bool:
        nonlocal used
        if idx == len(verts1):
            return True
        v = verts1[idx]
        for w in cand2[v]:
            wb = 1 << w
            if used & wb:
                continue
            ok = True
            touched = []
            for ei in incident[v]:
                img_mask[ei] |= wb
                img_cnt[ei] += 1
                touched.append(ei)
                if not extendable(ei):
                    ok = False
                    break
            if ok:
                used |= wb
                assignment[v] = w
                if place(idx + 1):
                    return True
                used &= ~wb
                del assignment[v]
            for ei in touched:
                img_mask[ei] &= ~wb
                img_cnt[ei] -= 1
        return False

    if place(0):
        return dict(assignment)
    return None


def is_isomorphic(f1: Hypergraph, f2: Hypergraph) -> bool:
    """Isomorphism test ignoring isolated vertices.

    Three-edge inputs are decided by region-profile equality; everything else
    falls back to the backtracking search.
    """
    if not f1.edges and not f2.edges:
        return True
    if f1.r != f2.r or len(f1.edges) != len(f2.edges):
        return False
    if len(f1.edges) == 3:
        return canonical_regions(*f1.edges) == canonical_regions(*f2.edges)
    return find_isomorphism(f1, f2) is not None


# -- copy enumeration ------------------------------------------------------

def copies_of(f: Hypergraph, h: Hypergraph) -> Iterator[tuple[int, int, int]]:
    """Yield the 3-subsets of h's edges forming a copy of the three-edge f.

    Triples are yielded as ascending edge bit vectors. Empty output means h
    is f-free. Isolated vertices are ignored when matching.
    """
    if len(f.edges) != 3:
        raise ValueError(f"pattern must have exactly 3 edges, got {len(f.edges)}")
    if f.r != h.r:
        raise ValueError(f"uniformity mismatch: pattern r={f.r}, host r={h.r}")
    target = canonical_regions(*f.edges)
    a1, a2, a3, a12, a13, a23, a123 = target
    pair_sizes = {a12 + a123, a13 + a123, a23 + a123}
    support = f.support_size
    edges = h.edges
    m = len(edges)
    half = f.r // 2
    if a1 == a2 == a3 == a123 == 0 and f.r % 2 == 0:
        # Pairwise intersections of size r/2 and no triple region: the third
        # edge is forced to be the symmetric difference of the other two.
        edge_set = set(edges)
        seen = set()
        for i in range(m):
            ei = edges[i]
            for j in range(i + 1, m):
                ej = edges[j]
                if (ei & ej).bit_count() != half:
                    continue
                third = ei ^ ej
                if third in edge_set:
                    triple = tuple(sorted((ei, ej, third)))
                    if triple not in seen:
                        seen.add(triple)
                        yield triple
        return
    for i in range(m):
        ei = edges[i]
        for j in range(i + 1, m):
            ej = edges[j]
            if (ei & ej).bit_count() not in pair_sizes:
                continue
            for k in range(j + 1, m):
                ek = edges[k]
                if (ei & ek).bit_count() not in pair_sizes:
                    continue
                if (ej & ek).bit_count() not in pair_sizes:
                    continue
                if (ei | ej | ek).bit_count() != support:
                    continue
                if canonical_regions(ei, ej, ek) == target:
                    yield (ei, ej, ek)


def is_free_of(f: Hypergraph, h: Hypergraph) -> bool:
    """True when h contains no copy of the three-edge pattern f."""
    return next(copies_of(f, h), None) is None
