"""Weak substructure containment and bounded class membership.

A weak embedding ``f: A -> B`` is strictly increasing, sends U-vertices to
U-vertices with ``h^B(f(u)) = f(h^A(u))`` and edges to edges.  Non-edges
and non-U vertices carry no constraint.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .amalgam import InterlaceType, interlaces
from .enumeration import Catalog
from .invariants import Graph
from .structures import Edge, Structure

Embedding = tuple[int, ...]


def is_embedding(A: Structure, B: Structure, f: Sequence[int]) -> bool:
    """Check every clause of the weak-embedding definition for the map ``f``."""
    if len(f) != A.m or any(not 0 <= v < B.m for v in f):
        return False
    if any(a >= b for a, b in zip(f, f[1:])):
        return False
    for u, hs in A.markers:
        if f[u] not in B.U_set or B.h[f[u]] != tuple(f[v] for v in hs):
            return False
    return all(B.has_edge(f[a], f[b]) for a, b in A.X)


def _check_arity(A: Structure, B: Structure) -> None:
    if A.n != B.n:
        raise ValueError(f"arity mismatch: {A.n} vs {B.n}")


def weak_embed(A: Structure, B: Structure) -> Embedding | None:
    """Find a weak embedding of ``A`` into ``B`` or return None.

    U-vertices are placed first since choosing ``f(u)`` fixes the images of
    all its markers; the remaining vertices only need room, which is an
    interval-counting condition between consecutive fixed positions.
    """
    _check_arity(A, B)
    if A.m > B.m or len(A.U) > len(B.U) or len(A.X) > len(B.X):
        return None
    if A.m == 0:
        return ()

    deg = {u: len(A.adjacency.get(u, ())) for u in A.U}
    order = sorted(A.U, key=lambda u: (-deg[u], -u))
    b_targets = sorted(B.U)
    fixed: dict[int, int] = {}

    def room_ok(a: int, b: int) -> bool:
        # positions below/above a must fit below/above b, and gaps to
        # neighbouring fixed points must be wide enough
        if b < a or B.m - b < A.m - a:
            return False
        for a2, b2 in fixed.items():
            if (a2 < a and b - b2 < a - a2) or (a2 > a and b2 - b < a2 - a):
                return False
        return True

    def place(u: int, w: int) -> list[int] | None:
        added: list[int] = []
        for a, b in zip(A.h[u], B.h[w]):
            if a in fixed:
                if fixed[a] != b:
                    break
                continue
            if b in used or not room_ok(a, b):
                break
            fixed[a] = b
            used.add(b)
            added.append(a)
        else:
            for v in A.adjacency.get(u, ()):
                if v in fixed and v in A.U_set and v != u and placed.get(v) and not B.has_edge(w, fixed[v]):
                    break
            else:
                return added
        for a in added:
            used.discard(fixed.pop(a))
        return None

    used: set[int] = set()
    placed: dict[int, bool] = {}

    def search(k: int) -> bool:
        if k == len(order):
            return True
        u = order[k]
        if u in fixed:
            # u already pinned as somebody's marker; only one candidate
            candidates = [fixed[u]] if fixed[u] in B.U_set else []
        else:
            candidates = b_targets
        for w in candidates:
            if len(B.h[w]) != len(A.h[u]):
                continue
            added = place(u, w)
            if added is None:
                continue
            placed[u] = True
            if search(k + 1):
                return True
            placed[u] = False
            for a in added:
                used.discard(fixed.pop(a))
        return False

    if not search(0):
        return None

    # fill free positions greedily: each takes the smallest admissible image
    f = [0] * A.m
    prev = -1
    for a in range(A.m):
        f[a] = fixed[a] if a in fixed else prev + 1
        prev = f[a]
    return tuple(f)


def brute_force_embed(A: Structure, B: Structure) -> Embedding | None:
    """Scan every increasing injection; the unpruned reference for :func:`weak_embed`."""
    _check_arity(A, B)
    for f in combinations(range(B.m), A.m):
        if is_embedding(A, B, f):
            return f
    return None


def compose(f: Sequence[int], g: Sequence[int]) -> Embedding:
    """The map ``g . f``."""
    return tuple(g[v] for v in f)


# -- graph level ------------------------------------------------------------


def subgraph_embed(GA: Graph, GB: Graph) -> dict[int, int] | None:
    """Injective edge-preserving vertex map (not necessarily induced), or None."""
    if GA.order > GB.order or len(GA.edges) > len(GB.edges):
        return None
    order = sorted(range(GA.order), key=lambda v: -len(GA.neighbors[v]))
    # prefer vertices adjacent to already-ordered ones
    seq: list[int] = []
    remaining = set(order)
    while remaining:
        nxt = max(
            remaining,
            key=lambda v: (sum(1 for w in GA.neighbors[v] if w in seq), len(GA.neighbors[v]), -v),
        )
        seq.append(nxt)
        remaining.discard(nxt)
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def search(k: int) -> bool:
        if k == len(seq):
            return True
        v = seq[k]
        need = len(GA.neighbors[v])
        for w in range(GB.order):
            if w in used or len(GB.neighbors[w]) < need:
                continue
            if all(GB.has_edge(w, mapping[x]) for x in GA.neighbors[v] if x in mapping):
                mapping[v] = w
                used.add(w)
                if search(k + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    return dict(sorted(mapping.items())) if search(0) else None


# -- membership -------------------------------------------------------------


class Verdict(enum.Enum):
    YES = "yes"
    REFUTED = "refuted"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Membership:
    verdict: Verdict
    level: int | None = None
    index: int | None = None
    witness: Embedding | None = None
    edge: Edge | None = None
    max_level: int | None = None


def refuting_edge(A: Structure, e: InterlaceType) -> Edge | None:
    """An edge of ``A`` whose marker tuples interlace by ``e`` in neither orientation.

    Every class member passes the marker check and weak embeddings preserve
    the relative order of markers, so such an edge can never embed.
    """
    for a, b in A.X:
        s, t = A.h.get(a), A.h.get(b)
        if s is None or t is None:
            return (a, b)
        if not interlaces(s, t, e) and not interlaces(t, s, e):
            return (a, b)
    return None


def _check_catalogs(A: Structure, catalogs: Sequence[Catalog]) -> InterlaceType:
    if not catalogs:
        raise ValueError("no catalogs supplied")
    e = catalogs[0].e
    for c in catalogs:
        if c.n != A.n or c.e != e:
            raise ValueError(f"catalog (n={c.n}, e={c.e}) does not match structure arity {A.n}")
    return e


def find_host(A: Structure, catalogs: Sequence[Catalog]) -> tuple[int, int, Embedding] | None:
    for c in sorted(catalogs, key=lambda c: c.level):
        for i, B in enumerate(c.members):
            f = weak_embed(A, B)
            if f is not None:
                return c.level, i, f
    return None


def class_membership(A: Structure, catalogs: Sequence[Catalog]) -> Membership:
    e = _check_catalogs(A, catalogs)
    edge = refuting_edge(A, e)
    if edge is not None:
        return Membership(Verdict.REFUTED, edge=edge)
    host = find_host(A, catalogs)
    if host is not None:
        level, index, f = host
        return Membership(Verdict.YES, level=level, index=index, witness=f)
    return Membership(Verdict.UNKNOWN, max_level=max(c.level for c in catalogs))
