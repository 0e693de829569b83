"""Graph reducts and exact invariants: chromatic number, girth, odd girth."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .amalgam import InterlaceType, interlaces
from .structures import Edge, Structure


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on ``0..order-1``."""

    order: int
    edges: tuple[Edge, ...] = ()
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        clean = set()
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"loop at {a}")
            if not (0 <= a < self.order and 0 <= b < self.order):
                raise ValueError(f"edge {{{a},{b}}} outside 0..{self.order - 1}")
            clean.add((min(a, b), max(a, b)))
        object.__setattr__(self, "edges", tuple(sorted(clean)))

    @cached_property
    def neighbors(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.order)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def has_edge(self, a: int, b: int) -> bool:
        return b in self.neighbors[a]

    def remove_vertex(self, v: int) -> "Graph":
        keep = [u for u in range(self.order) if u != v]
        idx = {u: i for i, u in enumerate(keep)}
        return Graph(
            self.order - 1,
            tuple((idx[a], idx[b]) for a, b in self.edges if v not in (a, b)),
        )

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in range(self.order):
            label = self.labels[v] if v < len(self.labels) else str(v)
            lines.append(f'  {v} [label="{label}"];')
        lines.extend(f"  {a} -- {b};" for a, b in self.edges)
        lines.append("}")
        return "\n".join(lines) + "\n"


# Plain graphs extracted from structures share the type.
GraphReduct = Graph


def reduct(H: Structure) -> Graph:
    """The graph ``(U, X)`` with ``U`` relabeled ``0..|U|-1`` in order."""
    idx = {u: i for i, u in enumerate(H.U)}
    labels = tuple(f"{u} {list(H.h[u])}" for u in H.U)
    return Graph(len(H.U), tuple((idx[a], idx[b]) for a, b in H.X), labels)


# -- chromatic number -------------------------------------------------------


def _components(G: Graph) -> list[list[int]]:
    seen = [False] * G.order
    out = []
    for s in range(G.order):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [], [s]
        while queue:
            v = queue.pop()
            comp.append(v)
            for w in G.neighbors[v]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        out.append(sorted(comp))
    return out


def _greedy_clique(adj: list[int]) -> int:
    n = len(adj)
    order = sorted(range(n), key=lambda v: -bin(adj[v]).count("1"))
    best = 1 if n else 0
    for v in order:
        size, cand = 1, adj[v]
        while cand:
            # pick the candidate with most neighbors inside cand
            w = max(_bits(cand), key=lambda u: bin(adj[u] & cand).count("1"))
            size += 1
            cand &= adj[w]
        best = max(best, size)
    return best


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _dsatur_order_coloring(adj: list[int]) -> int:
    n = len(adj)
    color = [-1] * n
    classes: list[int] = []
    for _ in range(n):
        v = max(
            (u for u in range(n) if color[u] < 0),
            key=lambda u: (sum(1 for c in classes if adj[u] & c), bin(adj[u]).count("1")),
        )
        for c, mask in enumerate(classes):
            if not adj[v] & mask:
                classes[c] |= 1 << v
                color[v] = c
                break
        else:
            color[v] = len(classes)
            classes.append(1 << v)
    return len(classes)


def _exact_chi(adj: list[int]) -> int:
    """DSATUR branch and bound between a clique lower and greedy upper bound."""
    n = len(adj)
    if n == 0:
        return 0
    lower = _greedy_clique(adj)
    best = _dsatur_order_coloring(adj)
    if best == lower:
        return best
    full = (1 << n) - 1
    classes: list[int] = []

    def search(uncolored: int) -> bool:
        nonlocal best
        if not uncolored:
            best = len(classes)
            return best == lower
        v, vsat, vdeg = -1, -1, -1
        for u in _bits(uncolored):
            sat = sum(1 for c in classes if adj[u] & c)
            deg = bin(adj[u] & uncolored).count("1")
            if sat > vsat or (sat == vsat and deg > vdeg):
                v, vsat, vdeg = u, sat, deg
        rest = uncolored & ~(1 << v)
        for c in range(len(classes)):
            if not adj[v] & classes[c]:
                classes[c] |= 1 << v
                done = search(rest)
                classes[c] &= ~(1 << v)
                if done:
                    return True
        if len(classes) + 1 < best:
            classes.append(1 << v)
            done = search(rest)
            classes.pop()
            if done:
                return True
        return False

    search(full)
    return best


def chromatic_number(G: Graph) -> int:
    """Exact chromatic number; 0 for the empty graph."""
    best = 0
    for comp in _components(G):
        idx = {v: i for i, v in enumerate(comp)}
        adj = [0] * len(comp)
        for v in comp:
            for w in G.neighbors[v]:
                adj[idx[v]] |= 1 << idx[w]
        best = max(best, _exact_chi(adj))
    return best


# -- cycles -----------------------------------------------------------------


def _bfs(G: Graph, root: int) -> tuple[list[int], list[int]]:
    dist = [-1] * G.order
    parent = [-1] * G.order
    dist[root] = 0
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in G.neighbors[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                parent[w] = v
                queue.append(w)
    return dist, parent


def girth(G: Graph) -> int | None:
    best = None
    for root in range(G.order):
        dist, parent = _bfs(G, root)
        for a, b in G.edges:
            if dist[a] < 0 or parent[a] == b or parent[b] == a:
                continue
            length = dist[a] + dist[b] + 1
            if best is None or length < best:
                best = length
    return best


def odd_girth(G: Graph) -> int | None:
    best = None
    for root in range(G.order):
        dist, _ = _bfs(G, root)
        for a, b in G.edges:
            if dist[a] >= 0 and dist[a] == dist[b]:
                length = 2 * dist[a] + 1
                if best is None or length < best:
                    best = length
    return best


def is_bipartite(G: Graph) -> bool:
    return odd_girth(G) is None


# -- markers ----------------------------------------------------------------


def marker_hom_check(H: Structure, e: InterlaceType) -> Edge | None:
    """Return the first edge whose endpoint markers do not interlace by ``e``, else None."""
    if H.n != e.n:
        raise ValueError(f"structure arity {H.n} does not match interlace type {e}")
    for a, b in H.X:
        s, t = H.h[a], H.h[b]
        if interlaces(s, t, e) == interlaces(t, s, e):
            return (a, b)
    return None


def invariant_record(level: int, index: int, H: Structure) -> dict:
    G = reduct(H)
    return {"level": level, "index": index, "chi": chromatic_number(G), "odd_girth": odd_girth(G)}


def girth_record(level: int, index: int, H: Structure) -> dict:
    G = reduct(H)
    return {
        "level": level,
        "index": index,
        "girth": girth(G),
        "odd_girth": odd_girth(G),
        "bipartite": is_bipartite(G),
    }


def graph_from_edges(order: int, edges: Sequence[Sequence[int]]) -> Graph:
    return Graph(order, tuple((a, b) for a, b in edges))
