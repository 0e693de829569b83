"""Finite ordered structures ``(V, <, U, X, h_1..h_n)``.

Vertices are always the positions ``0..m-1`` and the order is the numeric
one, so two structures are order-isomorphic exactly when their canonical
records are equal.  Positions are 0-based; where documentation mentions the
markers ``h_1..h_n`` the index is 1-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

Edge = tuple[int, int]
Markers = tuple[int, ...]


def _edge(a: int, b: int) -> Edge:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class Structure:
    """An ordered structure in canonical position labeling.

    ``markers`` holds ``(u, (h_1(u), ..., h_n(u)))`` pairs sorted by ``u``.
    The constructor only normalizes ordering; use :func:`validate` to check
    the structural invariants.
    """

    n: int
    m: int
    U: tuple[int, ...] = ()
    X: tuple[Edge, ...] = ()
    markers: tuple[tuple[int, Markers], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "U", tuple(sorted(set(self.U))))
        object.__setattr__(
            self, "X", tuple(sorted({_edge(a, b) for a, b in self.X}))
        )
        object.__setattr__(
            self,
            "markers",
            tuple(sorted((u, tuple(hs)) for u, hs in self.markers)),
        )

    @classmethod
    def build(
        cls,
        n: int,
        m: int,
        h: Mapping[int, Sequence[int]],
        X: Iterable[Sequence[int]] = (),
    ) -> "Structure":
        """Build from a marker mapping; ``U`` is the key set of ``h``."""
        return cls(
            n=n,
            m=m,
            U=tuple(h),
            X=tuple(_edge(a, b) for a, b in X),
            markers=tuple((u, tuple(hs)) for u, hs in h.items()),
        )

    @cached_property
    def h(self) -> dict[int, Markers]:
        return dict(self.markers)

    @cached_property
    def U_set(self) -> frozenset[int]:
        return frozenset(self.U)

    @cached_property
    def X_set(self) -> frozenset[Edge]:
        return frozenset(self.X)

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {u: set() for u in self.U}
        for a, b in self.X:
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        return {u: frozenset(vs) for u, vs in adj.items()}

    def has_edge(self, a: int, b: int) -> bool:
        return _edge(a, b) in self.X_set

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "U": list(self.U),
            "X": [list(p) for p in self.X],
            "h": {str(u): list(hs) for u, hs in self.markers},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_record())

    @classmethod
    def from_record(cls, record: Mapping) -> "Structure":
        h = {int(k): tuple(v) for k, v in record.get("h", {}).items()}
        return cls(
            n=int(record["n"]),
            m=int(record["m"]),
            U=tuple(record.get("U", ())),
            X=tuple(tuple(p) for p in record.get("X", ())),
            markers=tuple(h.items()),
        )

    @classmethod
    def loads(cls, line: str) -> "Structure":
        return cls.from_record(json.loads(line))

    def __repr__(self) -> str:
        return f"Structure({self.dumps()})"


def empty_structure(n: int) -> Structure:
    return Structure(n=n, m=0)


def validate(H: Structure) -> list[str]:
    """Return the violated invariants of ``H``; an empty list means valid."""
    problems: list[str] = []
    if H.n < 1:
        problems.append(f"arity n={H.n} must be positive")
    if H.m < 0:
        problems.append(f"size m={H.m} must be nonnegative")
    positions = range(H.m)
    h = dict(H.markers)
    if len(h) != len(H.markers):
        problems.append("duplicate marker entries")
    for u in H.U:
        if u not in positions:
            problems.append(f"U-vertex {u} outside positions 0..{H.m - 1}")
        if u not in h:
            problems.append(f"missing markers at u={u}")
    for u, hs in H.markers:
        if u not in H.U_set:
            problems.append(f"markers given for non-U vertex {u}")
            continue
        if len(hs) != H.n:
            problems.append(f"marker tuple at u={u} has length {len(hs)}, expected {H.n}")
            continue
        if any(v not in positions for v in hs):
            problems.append(f"marker outside positions at u={u}")
        if any(a >= b for a, b in zip(hs, hs[1:])):
            problems.append(f"markers not strictly increasing at u={u}")
        if hs and hs[-1] != u:
            problems.append(f"h_n(x)=x fails at u={u}")
    for a, b in H.X:
        if a == b:
            problems.append(f"loop at {a}")
        elif a not in H.U_set or b not in H.U_set:
            problems.append(f"edge outside U: {{{a},{b}}}")
    return problems


def is_valid(H: Structure) -> bool:
    return not validate(H)


def base_structure(n: int) -> Structure:
    """The level-0 member: ``n`` points, the last one in ``U`` marked by all of them."""
    if n < 1:
        raise ValueError(f"invalid arity n={n}")
    return Structure.build(n, n, {n - 1: tuple(range(n))})


def marker_tuple(H: Structure, u: int) -> Markers:
    try:
        return H.h[u]
    except KeyError:
        raise ValueError(f"vertex {u} is not in U") from None


def induced_substructure(H: Structure, S: Iterable[int]) -> Structure:
    """Restrict ``H`` to ``S`` and relabel to positions ``0..|S|-1``.

    A U-vertex survives only if all of its markers lie in ``S``; edges are
    kept between surviving U-vertices.
    """
    keep = sorted(set(S))
    for v in keep:
        if not 0 <= v < H.m:
            raise ValueError(f"position {v} outside 0..{H.m - 1}")
    relabel = {v: i for i, v in enumerate(keep)}
    h = {
        relabel[u]: tuple(relabel[v] for v in hs)
        for u, hs in H.markers
        if u in relabel and all(v in relabel for v in hs)
    }
    X = [
        (relabel[a], relabel[b])
        for a, b in H.X
        if a in relabel and b in relabel and relabel[a] in h and relabel[b] in h
    ]
    return Structure.build(H.n, len(keep), h, X)


def structures_equal(H1: Structure, H2: Structure) -> bool:
    return H1 == H2


def relabel(H: Structure, image: Sequence[int], m: int) -> Structure:
    """Push ``H`` along a strictly increasing map into ``0..m-1``."""
    if any(a >= b for a, b in zip(image, image[1:])) or len(image) != H.m:
        raise ValueError("relabeling must be strictly increasing on all positions")
    h = {image[u]: tuple(image[v] for v in hs) for u, hs in H.markers}
    X = [(image[a], image[b]) for a, b in H.X]
    return Structure.build(H.n, m, h, X)
