"""Graphs on increasing n-tuples: interlace graphs and classical shift graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .amalgam import InterlaceType, interlaces
from .invariants import Graph


@dataclass(frozen=True)
class TupleGraph(Graph):
    """A graph whose vertex ``i`` is the ``i``-th increasing ``n``-tuple over ``0..m-1`` in lex order."""

    m: int = 0
    n: int = 0
    tuples: tuple[tuple[int, ...], ...] = field(default=(), compare=False)

    def index(self, t: tuple[int, ...]) -> int:
        return self.tuples.index(tuple(t))


def _tuples(m: int, n: int) -> tuple[tuple[int, ...], ...]:
    if n < 1 or m < n:
        raise ValueError(f"need m >= n >= 1, got m={m}, n={n}")
    return tuple(combinations(range(m), n))


def interlace_graph(m: int, n: int, e: InterlaceType) -> TupleGraph:
    if e.n != n:
        raise ValueError(f"interlace type {e} has arity {e.n}, expected {n}")
    verts = _tuples(m, n)
    edges = tuple(
        (i, j)
        for i, j in combinations(range(len(verts)), 2)
        if interlaces(verts[i], verts[j], e) or interlaces(verts[j], verts[i], e)
    )
    labels = tuple(str(list(t)) for t in verts)
    return TupleGraph(len(verts), edges, labels, m=m, n=n, tuples=verts)


def shift_graph(m: int, n: int) -> TupleGraph:
    """Join ``(x_1..x_n)`` to ``(x_2..x_n, y)`` whenever ``x_n < y``."""
    verts = _tuples(m, n)
    index = {t: i for i, t in enumerate(verts)}
    edges = []
    for i, t in enumerate(verts):
        for y in range(t[-1] + 1, m):
            j = index[t[1:] + (y,)]
            edges.append((i, j))
    labels = tuple(str(list(t)) for t in verts)
    return TupleGraph(len(verts), tuple(edges), labels, m=m, n=n, tuples=verts)
