"""Homomorphism search and degree-one folding reductions for three-edge
hypergraphs.

A fold sends a degree-one vertex x onto a vertex y outside its edge and
rewrites that edge accordingly. Repeating folds drives a three-edge
hypergraph with a degree-one vertex either down to two or fewer edges or to
one where every non-isolated vertex has degree at least two.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .constructions import expanded_triangle, suspension
from .hypergraph import (
    Hypergraph,
    VertexMap,
    edge_vertices,
    from_masks,
    max_degree,
    min_positive_degree,
)

REACHED_MIN_DEGREE_2 = "reached-min-degree-2"
COLLAPSED = "collapsed-to-<=2-edges"


@dataclass(frozen=True)
class FoldStep:
    x: int
    y: int
    result: Hypergraph


@dataclass(frozen=True)
class ReductionTrace:
    """Record of a fold sequence: per-step results, the terminal hypergraph,
    and the composed vertex map, which is always a verified homomorphism
    from the original to the terminal hypergraph.
    """

    original: Hypergraph
    steps: tuple[FoldStep, ...]
    terminal: Hypergraph
    map: VertexMap
    status: str


def find_homomorphism(f1: Hypergraph, f2: Hypergraph) -> Optional[VertexMap]:
    """Exhaustive backtracking search for an edge-preserving vertex map.

    Vertices are assigned in decreasing-degree order with forward checking:
    every partial edge image must stay inside some edge of f2 without
    collapsing two vertices of the same edge. Returns None only when no
    homomorphism exists. Isolated vertices are sent to vertex 0.
    """
    if f1.r != f2.r:
        raise ValueError(f"uniformity mismatch: {f1.r} vs {f2.r}")
    if not f1.edges:
        if f1.n == 0:
            return VertexMap(0, f2.n, ())
        if f2.n == 0:
            return None
        return VertexMap(f1.n, f2.n, (0,) * f1.n)
    if not f2.edges:
        return None

    degs = f1.degrees()
    edges1 = f1.edges
    first_edge = {}
    for v in range(f1.n):
        if degs[v]:
            first_edge[v] = min(i for i, e in enumerate(edges1) if e >> v & 1)
    verts = sorted(first_edge, key=lambda v: (-degs[v], first_edge[v], v))
    incident = {v: [i for i, e in enumerate(edges1) if e >> v & 1] for v in verts}
    img_mask = [0] * len(edges1)
    f2_edges = f2.edges
    images = [0] * f1.n

    def extendable(ei: int) -> bool:
        im = img_mask[ei]
        return any(im & e == im for e in f2_edges)

    def place(idx: int) -> bool:
        if idx == len(verts):
            return True
        v = verts[idx]
        for w in range(f2.n):
            wb = 1 << w
            ok = True
            touched = []
            for ei in incident[v]:
                if img_mask[ei] & wb:
                    ok = False  # would collapse two vertices of one edge
                    break
                img_mask[ei] |= wb
                touched.append(ei)
                if not extendable(ei):
                    ok = False
                    break
            if ok:
                images[v] = w
                if place(idx + 1):
                    return True
            for ei in touched:
                img_mask[ei] &= ~wb
        return False

    if place(0):
        return VertexMap(f1.n, f2.n, tuple(images))
    return None


def fold_vertex(f: Hypergraph, x: int, y: int) -> tuple[Hypergraph, VertexMap]:
    """Fold the degree-one vertex x onto y, rewriting x's edge.

    y must lie outside the unique edge containing x. If the rewritten edge
    already exists the duplicate is merged, dropping the edge count. Returns
    the folded hypergraph and the fold map (identity except x -> y).
    """
    degs = f.degrees()
    if not 0 <= x < f.n or not 0 <= y < f.n:
        raise ValueError("fold vertices out of range")
    if degs[x] != 1:
        raise ValueError(f"vertex {x} has degree {degs[x]}, need exactly 1")
    xb, yb = 1 << x, 1 << y
    host = next(e for e in f.edges if e & xb)
    if host & yb:
        raise ValueError(f"vertex {y} lies in the edge containing {x}")
    rewritten = (host & ~xb) | yb
    folded = from_masks(f.n, f.r, (rewritten if e == host else e for e in f.edges))
    images = list(range(f.n))
    images[x] = y
    fold_map = VertexMap(f.n, f.n, tuple(images))
    if not fold_map.is_homomorphism(f, folded):
        raise AssertionError("fold map failed edge-image verification")
    return folded, fold_map


def _lexicographic_fold_pair(f: Hypergraph) -> tuple[int, int]:
    """Smallest (x, y) with deg(x) = 1 and y in another edge, outside x's edge."""
    degs = f.degrees()
    for x in range(f.n):
        if degs[x] != 1:
            continue
        xb = 1 << x
        host = next(e for e in f.edges if e & xb)
        others = 0
        for e in f.edges:
            if e != host:
                others |= e
        candidates = others & ~host
        if candidates:
            return x, edge_vertices(candidates)[0]
    raise ValueError("no admissible fold pair; is the minimum degree 1?")


def reduce_to_core(f1: Hypergraph) -> ReductionTrace:
    """Fold degree-one vertices until at most two edges remain or every
    non-isolated vertex has degree at least two.

    The input must have exactly three edges and a degree-one vertex. Each
    fold strictly decreases the number of degree-one vertices, so the loop
    terminates; the composed map is re-verified as a homomorphism.
    """
    if len(f1.edges) != 3:
        raise ValueError(f"need exactly 3 edges, got {len(f1.edges)}")
    if min_positive_degree(f1) != 1:
        raise ValueError("minimum non-isolated degree is not 1")
    current = f1
    composed = VertexMap.identity(f1.n)
    steps = []
    while len(current.edges) == 3 and min_positive_degree(current) == 1:
        x, y = _lexicographic_fold_pair(current)
        current, fold_map = fold_vertex(current, x, y)
        composed = composed.then(fold_map)
        steps.append(FoldStep(x, y, current))
    status = COLLAPSED if len(current.edges) <= 2 else REACHED_MIN_DEGREE_2
    if not composed.is_homomorphism(f1, current):
        raise AssertionError("composed reduction map failed verification")
    return ReductionTrace(f1, tuple(steps), current, composed, status)


def _claim_pair(f: Hypergraph) -> Optional[tuple[int, int]]:
    """Smallest (x, y) with deg(x) = 1, deg(y) = 2, and no edge containing both."""
    degs = f.degrees()
    ones = [v for v in range(f.n) if degs[v] == 1]
    twos = [v for v in range(f.n) if degs[v] == 2]
    for x in ones:
        xb = 1 << x
        for y in twos:
            yb = 1 << y
            if not any(e & xb and e & yb for e in f.edges):
                return x, y
    return None


def _degree3_target(r: int) -> Hypergraph:
    # Smallest max-degree-3 member: one apex over a triangle, suspended to r.
    return suspension(expanded_triangle(1), r)


def reduce_to_max_degree3(f1: Hypergraph) -> tuple[Hypergraph, VertexMap]:
    """Map a three-edge hypergraph with a degree-one vertex into a three-edge
    target of maximum degree 3 and minimum degree at least 2.

    Splits on the maximum degree of the input: a perfect matching maps onto
    any max-degree-3 target directly; with a degree-3 vertex the plain fold
    reduction already lands on one; with maximum degree 2 a fold of a
    degree-one vertex onto a degree-two vertex sharing no edge with it
    creates a degree-3 vertex, and the procedure recurses.
    """
    r = f1.r
    if r < 3:
        raise ValueError(f"need uniformity >= 3, got {r}")
    if len(f1.edges) != 3:
        raise ValueError(f"need exactly 3 edges, got {len(f1.edges)}")
    if min_positive_degree(f1) != 1:
        raise ValueError("minimum non-isolated degree is not 1")

    delta_max = max_degree(f1)
    if delta_max == 1:
        target = _degree3_target(r)
        hom = find_homomorphism(f1, target)
        if hom is None:
            raise AssertionError("no homomorphism from a 3-edge matching onto the apex target")
        return target, hom

    if delta_max == 3:
        trace = reduce_to_core(f1)
        if trace.status == REACHED_MIN_DEGREE_2:
            if max_degree(trace.terminal) != 3:
                raise AssertionError("fold reduction lost the degree-3 vertex")
            return trace.terminal, trace.map
        target = _degree3_target(r)
        hom = find_homomorphism(trace.terminal, target)
        if hom is None:
            raise AssertionError("no homomorphism from a <=2-edge remainder onto the apex target")
        return target, trace.map.then(hom)

    # delta_max == 2: fold a degree-one vertex onto a degree-two vertex that
    # shares no edge with it, forcing a degree-3 vertex.
    pair = _claim_pair(f1)
    if pair is None:
        raise AssertionError("no degree-(1,2) fold pair exists; unexpected for max degree 2")
    folded, fold_map = fold_vertex(f1, *pair)
    if len(folded.edges) <= 2:
        target = _degree3_target(r)
        hom = find_homomorphism(folded, target)
        if hom is None:
            raise AssertionError("no homomorphism from a <=2-edge remainder onto the apex target")
        return target, fold_map.then(hom)
    if min_positive_degree(folded) >= 2:
        if max_degree(folded) != 3:
            raise AssertionError("fold did not create a degree-3 vertex")
        return folded, fold_map
    target, rest = reduce_to_max_degree3(folded)
    return target, fold_map.then(rest)
