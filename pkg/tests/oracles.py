"""Slow, independent reference implementations used only by the tests."""

from __future__ import annotations

import random
from itertools import combinations, permutations, product

from amalgams.invariants import Graph
from amalgams.structures import Structure


def interlace_oracle(s, t, bits) -> bool:
    """Read the pattern off by ranking: the k-th smallest value must come from s iff bits[k] == 0."""
    values = list(s) + list(t)
    if len(set(values)) != len(values):
        return False
    ranked = sorted(values)
    return all((ranked[k] in s) == (bits[k] == 0) for k in range(len(bits)))


def colorable_exhaustive(G: Graph, k: int) -> bool:
    """Try every assignment of k colors; only for small graphs."""
    for colors in product(range(k), repeat=G.order):
        if all(colors[a] != colors[b] for a, b in G.edges):
            return True
    return False


def colorable_backtrack(G: Graph, k: int) -> bool:
    """Complete search over assignments in vertex order, rejecting a partial
    assignment as soon as an edge is monochromatic."""
    colors = [-1] * G.order

    def go(v: int) -> bool:
        if v == G.order:
            return True
        for c in range(k):
            if all(colors[w] != c for w in G.neighbors[v] if w < v):
                colors[v] = c
                if go(v + 1):
                    return True
        colors[v] = -1
        return False

    return go(0)


def chi_oracle(G: Graph) -> int:
    if G.order == 0:
        return 0
    check = colorable_exhaustive if G.order <= 10 else colorable_backtrack
    k = 1
    while not check(G, k):
        k += 1
    return k


def order_isomorphisms(A: Structure, B: Structure) -> list[tuple[int, ...]]:
    """Every bijection A -> B (order-preserving or not) that preserves <, U, X and markers."""
    if A.m != B.m or A.n != B.n:
        return []
    found = []
    for p in permutations(range(B.m)):
        if any(p[i] >= p[j] for i in range(A.m) for j in range(i + 1, A.m)):
            continue
        if {p[u] for u in A.U} != set(B.U):
            continue
        if any(B.h[p[u]] != tuple(p[v] for v in A.h[u]) for u in A.U):
            continue
        if {tuple(sorted((p[a], p[b]))) for a, b in A.X} != set(B.X):
            continue
        found.append(p)
    return found


def embedding_clauses(A: Structure, B: Structure, f) -> bool:
    """Re-check a weak embedding witness clause by clause."""
    f = list(f)
    if len(f) != A.m or len(set(f)) != len(f):
        return False
    if any(not (0 <= v < B.m) for v in f):
        return False
    if any(f[i] >= f[i + 1] for i in range(len(f) - 1)):
        return False
    for u in A.U:
        if f[u] not in B.U:
            return False
        if list(B.h[f[u]]) != [f[v] for v in A.h[u]]:
            return False
    edges_b = {frozenset(p) for p in B.X}
    return all(frozenset((f[a], f[b])) in edges_b for a, b in A.X)


def random_structure(rng: random.Random, n: int, m: int, edge_p: float = 0.4) -> Structure:
    """Any valid structure on m points, not necessarily in a class."""
    h = {}
    for u in range(n - 1, m):
        if rng.random() < 0.5:
            h[u] = tuple(sorted(rng.sample(range(u), n - 1))) + (u,)
    U = sorted(h)
    X = [p for p in combinations(U, 2) if rng.random() < edge_p]
    return Structure.build(n, m, h, X)
