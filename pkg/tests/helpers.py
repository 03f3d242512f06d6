"""Shared test oracles, deliberately independent of the library's fast paths:
exhaustive subset scans, permutation-based isomorphism, brute-force copy and
homomorphism search, and a miniature DPLL solver for CNF checks."""

import itertools

from turankit import Hypergraph, edge_mask, edge_vertices, from_masks


def subset_scan_optimum(system) -> int:
    """Largest conflict-free subset of the ground set, by scanning all 2^m
    subsets. Usable up to m around 20."""
    import numpy as np

    m = len(system.ground)
    assert m <= 22, "subset scan oracle limited to small ground sets"
    subsets = np.arange(1 << m, dtype=np.uint32)
    ok = np.ones(1 << m, dtype=bool)
    for a, b, c in system.conflicts:
        cmask = np.uint32((1 << a) | (1 << b) | (1 << c))
        ok &= (subsets & cmask) != cmask
    pop = np.zeros(1 << m, dtype=np.uint8)
    for bit in range(m):
        pop += ((subsets >> np.uint32(bit)) & np.uint32(1)).astype(np.uint8)
    return int(pop[ok].max())


def permutation_isomorphic(f1: Hypergraph, f2: Hypergraph) -> bool:
    """Isomorphism by trying every injection between the supports."""
    sup1 = edge_vertices(f1.support_mask)
    sup2 = edge_vertices(f2.support_mask)
    if f1.r != f2.r and f1.edges and f2.edges:
        return False
    if len(sup1) != len(sup2) or len(f1.edges) != len(f2.edges):
        return False
    edges2 = set(f2.edges)
    for images in itertools.permutations(sup2):
        phi = dict(zip(sup1, images))
        if all(edge_mask(phi[v] for v in edge_vertices(e)) in edges2 for e in f1.edges):
            return True
    return False


def brute_force_copies(f: Hypergraph, h: Hypergraph) -> list[tuple[int, int, int]]:
    """Copies of the three-edge f in h, via permutation isomorphism only."""
    out = []
    for triple in itertools.combinations(h.edges, 3):
        candidate = from_masks(h.n, h.r, triple)
        if permutation_isomorphic(f, candidate):
            out.append(tuple(sorted(triple)))
    return out


def all_maps_homomorphism_exists(f1: Hypergraph, f2: Hypergraph) -> bool:
    """Homomorphism existence by checking every vertex map. Tiny inputs only."""
    edges2 = set(f2.edges)
    verts = [v for v in range(f1.n) if f1.degree(v)]
    for images in itertools.product(range(f2.n), repeat=len(verts)):
        phi = dict(zip(verts, images))
        if all(
            edge_mask(phi[v] for v in edge_vertices(e)) in edges2 for e in f1.edges
        ):
            return True
    return False


def parse_dimacs(text: str) -> tuple[int, list[list[int]]]:
    nvars = None
    clauses = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p cnf"):
            _, _, nv, nc = line.split()
            nvars = int(nv)
            continue
        lits = [int(tok) for tok in line.split()]
        assert lits[-1] == 0
        clauses.append(lits[:-1])
    assert nvars is not None
    return nvars, clauses


def dpll_satisfiable(nvars: int, clauses: list[list[int]], fixed: dict[int, bool] | None = None) -> bool:
    """Small DPLL with unit propagation; `fixed` pins variables up front."""
    assignment: dict[int, bool] = dict(fixed or {})

    def value(lit: int):
        var = abs(lit)
        if var not in assignment:
            return None
        val = assignment[var]
        return val if lit > 0 else not val

    def solve(clauses_left: list[list[int]]) -> bool:
        while True:
            unit = None
            simplified = []
            for clause in clauses_left:
                vals = [value(l) for l in clause]
                if any(v is True for v in vals):
                    continue
                undecided = [l for l, v in zip(clause, vals) if v is None]
                if not undecided:
                    return False
                if len(undecided) == 1:
                    unit = undecided[0]
                simplified.append(undecided)
            if unit is None:
                clauses_left = simplified
                break
            assignment[abs(unit)] = unit > 0
            clauses_left = simplified
        if not clauses_left:
            return True
        branch = abs(clauses_left[0][0])
        for choice in (True, False):
            assignment[branch] = choice
            saved = dict(assignment)
            if solve(clauses_left):
                return True
            assignment.clear()
            assignment.update(saved)
            del assignment[branch]
        return False

    return solve([list(c) for c in clauses])


def parse_lp_maximize(text: str):
    """Parse the exported LP text: returns (num_vars, constraint index triples)."""
    lines = [ln.strip() for ln in text.splitlines()]
    obj_line = next(ln for ln in lines if ln.startswith("obj:"))
    variables = obj_line[len("obj:"):].split(" + ")
    nvars = len(variables)
    triples = []
    for ln in lines:
        if ln.startswith("c") and ": " in ln and "<= 2" in ln:
            body = ln.split(": ", 1)[1].replace(" <= 2", "")
            idxs = tuple(sorted(int(tok.strip()[1:]) - 1 for tok in body.split(" + ")))
            triples.append(idxs)
    return nvars, triples


def milp_optimum(nvars: int, triples: list[tuple[int, int, int]]) -> int:
    """Exact optimum of the parsed integer program via scipy's HiGHS backend."""
    import numpy as np
    from scipy.optimize import Bounds, LinearConstraint, milp

    c = -np.ones(nvars)
    constraints = []
    if triples:
        a = np.zeros((len(triples), nvars))
        for row, (i, j, k) in enumerate(triples):
            a[row, i] = a[row, j] = a[row, k] = 1.0
        constraints.append(LinearConstraint(a, -np.inf, 2.0))
    res = milp(c=c, constraints=constraints, integrality=np.ones(nvars), bounds=Bounds(0, 1))
    assert res.status == 0, res.message
    return round(-res.fun)
