"""Level-by-level generation of the classes and the ``.knel`` catalog format."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator

from .amalgam import InterlaceType, edgeless_amalgam, make_interlace, one_edge_amalgam
from .structures import Structure, base_structure

log = logging.getLogger(__name__)

DEFAULT_VERTEX_CAP = 100_000


@dataclass(frozen=True)
class Provenance:
    parent: int
    op: str  # "+" edgeless, "*" one-edge
    x: int


@dataclass
class Catalog:
    n: int
    e: InterlaceType
    level: int
    members: list[Structure] = field(default_factory=list)
    provenance: list[Provenance | None] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Structure]:
        return iter(self.members)

    def header(self) -> dict:
        return {"n": self.n, "e": str(self.e), "level": self.level, "count": len(self.members)}


@dataclass
class Enumeration:
    """Catalogs for levels ``0..T``; ``truncated`` names the first level refused by the cap."""

    catalogs: list[Catalog]
    truncated: int | None = None


def level_zero(n: int, e: InterlaceType) -> Catalog:
    if e.n != n:
        raise ValueError(f"interlace type {e} has arity {e.n}, expected {n}")
    return Catalog(n, e, 0, [base_structure(n)], [None])


def _children(H: Structure, e: InterlaceType) -> Iterator[tuple[str, int, Structure]]:
    for x in range(H.m):
        yield "+", x, edgeless_amalgam(H, x)
    for y in H.U:
        yield "*", y, one_edge_amalgam(H, y, e)


def projected_vertices(c: Catalog) -> int:
    """Total vertex count of all children of ``c`` before deduplication."""
    total = 0
    for H in c.members:
        total += sum(2 * H.m - x for x in range(H.m))
        total += sum(2 * H.m - H.h[y][0] for y in H.U)
    return total


def next_level(c: Catalog) -> Catalog:
    out = Catalog(c.n, c.e, c.level + 1)
    seen: dict[Structure, int] = {}
    for i, H in enumerate(c.members):
        for op, x, child in _children(H, c.e):
            if child not in seen:
                seen[child] = len(out.members)
                out.members.append(child)
                out.provenance.append(Provenance(i, op, x))
    return out


def enumerate_levels(
    n: int, e: InterlaceType | str, T: int, vertex_cap: int = DEFAULT_VERTEX_CAP
) -> Enumeration:
    if isinstance(e, str):
        e = make_interlace(e)
    if T < 0:
        raise ValueError("level bound must be nonnegative")
    catalogs = [level_zero(n, e)]
    while catalogs[-1].level < T:
        projected = projected_vertices(catalogs[-1])
        if projected > vertex_cap:
            log.warning(
                "level %d refused: projected %d vertices exceeds cap %d",
                catalogs[-1].level + 1, projected, vertex_cap,
            )
            return Enumeration(catalogs, truncated=catalogs[-1].level + 1)
        catalogs.append(next_level(catalogs[-1]))
    return Enumeration(catalogs)


def catalog_stats(c: Catalog) -> dict:
    sizes = [H.m for H in c.members]
    us = [len(H.U) for H in c.members]
    xs = [len(H.X) for H in c.members]

    def lo(v: list[int]) -> int:
        return min(v) if v else 0

    def hi(v: list[int]) -> int:
        return max(v) if v else 0

    return {
        "level": c.level,
        "count": len(c.members),
        "min_V": lo(sizes),
        "max_V": hi(sizes),
        "min_U": lo(us),
        "max_U": hi(us),
        "min_X": lo(xs),
        "max_X": hi(xs),
        "edge_bound": 2**c.level - 1,
        "within_edge_bound": hi(xs) <= 2**c.level - 1,
    }


# -- .knel files ------------------------------------------------------------


def write_catalogs(catalogs: Iterable[Catalog], fh: IO[str], truncated: int | None = None) -> None:
    for c in catalogs:
        fh.write(json.dumps(c.header()) + "\n")
        for H in c.members:
            fh.write(H.dumps() + "\n")
    if truncated is not None:
        fh.write(json.dumps({"truncated": True, "level": truncated}) + "\n")


def read_catalogs(fh: IO[str]) -> Enumeration:
    catalogs: list[Catalog] = []
    truncated = None
    pending = 0
    for lineno, line in enumerate(fh, 1):
        line = line.strip()
        if not line:
            continue
        record = json.loads(line)
        if "truncated" in record:
            truncated = record["level"]
        elif "count" in record:
            if pending:
                raise ValueError(f"line {lineno}: header before previous section was complete")
            catalogs.append(Catalog(record["n"], make_interlace(record["e"]), record["level"]))
            pending = record["count"]
        else:
            if not catalogs or pending == 0:
                raise ValueError(f"line {lineno}: structure record outside a catalog section")
            catalogs[-1].members.append(Structure.from_record(record))
            catalogs[-1].provenance.append(None)
            pending -= 1
    if pending:
        raise ValueError(f"catalog section for level {catalogs[-1].level} is short by {pending}")
    return Enumeration(catalogs, truncated)
