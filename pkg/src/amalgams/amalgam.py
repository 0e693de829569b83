"""Interlacing types and the two self-amalgamations that generate the classes."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .structures import Structure, marker_tuple


@dataclass(frozen=True)
class InterlaceType:
    """A balanced 0/1 word of length ``2n``.

    ``bits[k]`` is the value at 1-based position ``k+1``.  ``zeros`` and
    ``ones`` are the 1-based positions ``a_1<...<a_n`` and ``b_1<...<b_n``.
    """

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.bits) == 0 or len(self.bits) % 2:
            raise ValueError(f"interlace type must have positive even length, got {len(self.bits)}")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("interlace type bits must be 0 or 1")
        if 2 * self.bits.count(0) != len(self.bits):
            raise ValueError("interlace type must have exactly n zeros and n ones")

    @property
    def n(self) -> int:
        return len(self.bits) // 2

    @cached_property
    def zeros(self) -> tuple[int, ...]:
        return tuple(k + 1 for k, b in enumerate(self.bits) if b == 0)

    @cached_property
    def ones(self) -> tuple[int, ...]:
        return tuple(k + 1 for k, b in enumerate(self.bits) if b == 1)

    def complement(self) -> "InterlaceType":
        return InterlaceType(tuple(1 - b for b in self.bits))

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


def make_interlace(bitstring: str) -> InterlaceType:
    if any(c not in "01" for c in bitstring):
        raise ValueError(f"interlace type {bitstring!r} has characters outside 0/1")
    if len(bitstring) % 2:
        raise ValueError(f"interlace type {bitstring!r} has odd length")
    return InterlaceType(tuple(int(c) for c in bitstring))


def interlaces(s: Sequence[int], t: Sequence[int], e: InterlaceType) -> bool:
    """True iff in the merged order of ``s`` and ``t`` the values of ``s`` sit at the zeros of ``e``."""
    if len(s) != e.n or len(t) != e.n:
        raise ValueError(f"tuples of length {len(s)}, {len(t)} do not match arity {e.n}")
    if len(set(s) | set(t)) != 2 * e.n:
        return False
    merged = sorted([(v, 0) for v in s] + [(v, 1) for v in t])
    return tuple(tag for _, tag in merged) == e.bits


@dataclass(frozen=True)
class BlockDecomposition:
    """How an amalgam lays out the blocks of its two copies.

    ``blocks[j]`` is ``(copy, start, stop)``: output block ``j`` carries the
    input interval ``[start, stop)`` from ``copy``.  Everything below
    ``shared_prefix_size`` is common to both copies.
    """

    shared_prefix_size: int
    blocks: tuple[tuple[int, int, int], ...]

    def copy_maps(self, m: int) -> tuple[list[int], list[int]]:
        maps = [list(range(m)), list(range(m))]
        pos = self.shared_prefix_size
        for copy, start, stop in self.blocks:
            for v in range(start, stop):
                maps[copy][v] = pos + v - start
            pos += stop - start
        return maps[0], maps[1]

    @property
    def size(self) -> int:
        return self.shared_prefix_size + sum(stop - start for _, start, stop in self.blocks)


def _glue(H: Structure, layout: BlockDecomposition, extra_edge: bool, x: int) -> Structure:
    c0, c1 = layout.copy_maps(H.m)
    h: dict[int, tuple[int, ...]] = {}
    X: set[tuple[int, int]] = set()
    for c in (c0, c1):
        for u, hs in H.markers:
            h[c[u]] = tuple(c[v] for v in hs)
        X.update((c[a], c[b]) for a, b in H.X)
    if extra_edge:
        X.add((c0[x], c1[x]))
    return Structure.build(H.n, layout.size, h, X)


def edgeless_layout(H: Structure, x: int) -> BlockDecomposition:
    if not 0 <= x < H.m:
        raise ValueError(f"x={x} outside positions 0..{H.m - 1}")
    return BlockDecomposition(x, ((0, x, H.m), (1, x, H.m)))


def one_edge_layout(H: Structure, x: int, e: InterlaceType) -> BlockDecomposition:
    if e.n != H.n:
        raise ValueError(f"interlace type of arity {e.n} for structure of arity {H.n}")
    q = marker_tuple(H, x)
    bounds = list(q) + [H.m]
    blocks: list[tuple[int, int, int] | None] = [None] * (2 * H.n)
    for i in range(H.n):
        interval = (bounds[i], bounds[i + 1])
        blocks[e.zeros[i] - 1] = (0, *interval)
        blocks[e.ones[i] - 1] = (1, *interval)
    return BlockDecomposition(q[0], tuple(blocks))  # type: ignore[arg-type]


def edgeless_amalgam(H: Structure, x: int) -> Structure:
    """``H +_x H``: two copies of ``H`` agreeing below ``x``, copy 0 first, no new edges."""
    return _glue(H, edgeless_layout(H, x), False, x)


def one_edge_amalgam(H: Structure, x: int, e: InterlaceType) -> Structure:
    """``H *_x H``: copies share everything below ``h_1(x)`` and the marker
    intervals of ``x`` alternate according to ``e``; the two images of
    ``x`` become adjacent.
    """
    return _glue(H, one_edge_layout(H, x, e), True, x)


def copy_images(H: Structure, op: str, x: int, e: InterlaceType | None = None) -> tuple[list[int], list[int]]:
    """Positions of copy 0 and copy 1 inside the amalgam built by ``op`` ('+' or '*')."""
    if op == "+":
        return edgeless_layout(H, x).copy_maps(H.m)
    if op == "*":
        if e is None:
            raise ValueError("one-edge amalgam needs an interlace type")
        return one_edge_layout(H, x, e).copy_maps(H.m)
    raise ValueError(f"unknown amalgamation {op!r}")
