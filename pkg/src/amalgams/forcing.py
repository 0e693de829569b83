"""Finite model of the condition poset: validity, extension, Delta-system union, sampling.

Conditions reuse :class:`Structure` as carrier.  The hereditary clause
quantifies over an infinite class, so validity is always relative to the
catalog depth handed in; :class:`ConditionCheck` carries that depth.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .amalgam import InterlaceType, edgeless_amalgam
from .embedding import Verdict, refuting_edge, weak_embed
from .enumeration import Catalog
from .invariants import chromatic_number, marker_hom_check, odd_girth, reduct
from .structures import Structure, base_structure, empty_structure, induced_substructure, validate


@dataclass(frozen=True)
class Condition:
    structure: Structure
    e: InterlaceType

    def __post_init__(self) -> None:
        if self.structure.n != self.e.n:
            raise ValueError(f"structure arity {self.structure.n} does not match interlace type {self.e}")

    @property
    def n(self) -> int:
        return self.structure.n

    def header(self) -> dict:
        return {"n": self.n, "e": str(self.e)}


@dataclass(frozen=True)
class ConditionCheck:
    verdict: Verdict  # YES reads as "valid", REFUTED as "invalid"
    subset: tuple[int, ...] | None = None
    max_level: int | None = None
    max_subset_size: int | None = None
    reason: str = ""

    @property
    def valid(self) -> bool:
        return self.verdict is Verdict.YES

    @property
    def invalid(self) -> bool:
        return self.verdict is Verdict.REFUTED


def refute(q: Condition) -> ConditionCheck | None:
    """The Invalid part of :func:`is_condition`: structural violations or a marker-refuted edge."""
    H = q.structure
    problems = validate(H)
    if problems:
        touched = sorted({v for a, b in H.X if a not in H.U_set or b not in H.U_set for v in (a, b)})
        return ConditionCheck(Verdict.REFUTED, subset=tuple(touched), reason="; ".join(problems))
    edge = refuting_edge(H, q.e)
    if edge is not None:
        a, b = edge
        witness = tuple(sorted(set(H.h[a]) | set(H.h[b])))
        return ConditionCheck(Verdict.REFUTED, subset=witness, reason=f"edge {{{a},{b}}} refuted by markers")
    return None


def _members(q: Condition, catalogs: Sequence[Catalog]) -> list[Structure]:
    if not catalogs:
        raise ValueError("no catalogs supplied")
    for c in catalogs:
        if c.n != q.n or c.e != q.e:
            raise ValueError(f"catalog (n={c.n}, e={c.e}) does not match condition (n={q.n}, e={q.e})")
    return [H for c in sorted(catalogs, key=lambda c: c.level) for H in c.members]


def _embeds_somewhere(A: Structure, hosts: Sequence[Structure], cache: dict[Structure, bool]) -> bool:
    if A not in cache:
        cache[A] = any(weak_embed(A, B) is not None for B in hosts)
    return cache[A]


def is_condition(
    q: Condition, catalogs: Sequence[Catalog], max_subset_size: int | None = None
) -> ConditionCheck:
    """Three-valued check of the hereditary clause against the supplied catalogs.

    Subsets of size at most ``max_subset_size`` (all subsets when None) must
    weak-embed into some catalog member.  Only subsets of exactly that size
    are tried: embeddability passes to induced substructures.
    """
    hosts = _members(q, catalogs)
    max_level = max(c.level for c in catalogs)
    bad = refute(q)
    if bad is not None:
        return ConditionCheck(bad.verdict, bad.subset, max_level, max_subset_size, bad.reason)
    H = q.structure
    cache: dict[Structure, bool] = {}
    if _embeds_somewhere(H, hosts, cache):
        return ConditionCheck(Verdict.YES, max_level=max_level, max_subset_size=max_subset_size)
    k = H.m if max_subset_size is None else min(max_subset_size, H.m)
    if k == H.m:
        return ConditionCheck(
            Verdict.UNKNOWN, subset=tuple(range(H.m)), max_level=max_level, max_subset_size=max_subset_size
        )
    for S in combinations(range(H.m), k):
        if not _embeds_somewhere(induced_substructure(H, S), hosts, cache):
            return ConditionCheck(Verdict.UNKNOWN, subset=S, max_level=max_level, max_subset_size=max_subset_size)
    return ConditionCheck(Verdict.YES, max_level=max_level, max_subset_size=max_subset_size)


def _identity_or(ident: Sequence[int] | None, q1: Structure, q2: Structure) -> Sequence[int]:
    if ident is None:
        ident = range(q1.m)
    ident = list(ident)
    if len(ident) != q1.m or any(not 0 <= v < q2.m for v in ident):
        raise ValueError("identification must map every position of the weaker condition into the stronger one")
    if any(a >= b for a, b in zip(ident, ident[1:])):
        raise ValueError("identification is not order preserving")
    return ident


def extends(q2: Condition, q1: Condition, ident: Sequence[int] | None = None) -> bool:
    """``q2 <= q1`` in the poset, with ``q1``'s positions placed in ``q2`` by ``ident``.

    Clauses: ``V2 ⊇ V1``, ``U1 = U2 ∩ V1``, ``X1 = X2 ∩ [V1]^2`` and each
    ``h_i`` of ``q2`` extends that of ``q1``.
    """
    if q1.n != q2.n or q1.e != q2.e:
        raise ValueError("conditions belong to different (n, e)")
    A, B = q1.structure, q2.structure
    f = _identity_or(ident, A, B)
    for v in range(A.m):
        if (v in A.U_set) != (f[v] in B.U_set):
            return False
    for u, hs in A.markers:
        if B.h[f[u]] != tuple(f[v] for v in hs):
            return False
    image_edges = {(f[a], f[b]) for a, b in A.X}
    inside = set(f)
    restricted = {(a, b) for a, b in B.X if a in inside and b in inside}
    return image_edges == restricted


def delta_identifications(m: int, root: int) -> tuple[list[int], list[int]]:
    """Where the two inputs of :func:`delta_amalgamate` land in the union."""
    tail = m - root
    return list(range(m)), list(range(root)) + [root + tail + k for k in range(tail)]


def delta_amalgamate(q0: Condition, q1: Condition, root: int) -> Condition:
    """Union of two order-isomorphic conditions over a common initial segment.

    Both inputs live on ``A ∪ B_i`` with ``|A| = root`` and are placed as
    ``A < B_0 < B_1``; nothing joins the two tails.
    """
    if q0.e != q1.e:
        raise ValueError("conditions belong to different (n, e)")
    A, B = q0.structure, q1.structure
    if A.m != B.m:
        raise ValueError(f"tails differ in size: {A.m - root} vs {B.m - root}")
    if not 0 <= root <= A.m:
        raise ValueError(f"root size {root} outside 0..{A.m}")
    if A != B:
        raise ValueError("conditions are not isomorphic over the root")
    if root == A.m:
        return q0
    return Condition(edgeless_amalgam(A, root), q0.e)


# -- random growth ----------------------------------------------------------


def _append_base(H: Structure) -> Structure:
    base = base_structure(H.n)
    h = dict(H.h)
    h.update({H.m + u: tuple(H.m + v for v in hs) for u, hs in base.markers})
    return Structure.build(H.n, H.m + base.m, h, H.X)


def _partner_edge(H: Structure, u: int, e: InterlaceType, flip: bool) -> tuple[Structure, list[int]]:
    """Insert a fresh marker tuple interlacing with ``u``'s by ``e`` and join its top to ``u``.

    With ``flip`` the existing tuple takes the ones of ``e`` instead of the zeros.
    Returns the new structure and the identification of old positions.
    """
    s = H.h[u]
    mine, theirs = (e.ones, e.zeros) if flip else (e.zeros, e.ones)
    # fresh vertex j goes just after the last s_i preceding it in the pattern,
    # or just before s_1 when none precedes it
    after: dict[int, list[int]] = {}
    for j, pos in enumerate(theirs):
        preceding = [i for i, p in enumerate(mine) if p < pos]
        anchor = s[preceding[-1]] if preceding else s[0] - 1
        after.setdefault(anchor, []).append(j)
    new_pos: list[int] = [0] * H.n
    old_map: list[int] = []
    cursor = 0
    for j in after.get(-1, []):
        new_pos[j] = cursor
        cursor += 1
    for v in range(H.m):
        old_map.append(cursor)
        cursor += 1
        for j in after.get(v, []):
            new_pos[j] = cursor
            cursor += 1
    h = {old_map[w]: tuple(old_map[v] for v in hs) for w, hs in H.markers}
    h[new_pos[-1]] = tuple(new_pos)
    X = [(old_map[a], old_map[b]) for a, b in H.X] + [(old_map[u], new_pos[-1])]
    return Structure.build(H.n, cursor, h, X), old_map


@dataclass
class SampleResult:
    condition: Condition
    moves: list[str] = field(default_factory=list)
    # idents[k] places the condition before move k inside the one after it
    idents: list[list[int]] = field(default_factory=list)
    stats: dict = field(default_factory=dict)


def sample_chain(
    n: int,
    e: InterlaceType,
    steps: int,
    seed: int,
    catalogs: Sequence[Catalog] | None = None,
    max_vertices: int = 48,
) -> SampleResult:
    """Grow a condition by ``steps`` random extensions, deterministically in ``seed``.

    Moves: append a base block, take the Delta-system union with a shifted
    copy over a random root, or attach a new U-vertex whose markers
    interlace with an existing one by ``e`` and join the two.  A move is
    admissible when the result stays within ``max_vertices`` and is not
    refuted; every move yields an extension of the previous condition.
    """
    if e.n != n:
        raise ValueError(f"interlace type {e} has arity {e.n}, expected {n}")
    rng = random.Random(seed)
    q = Condition(empty_structure(n), e)
    moves: list[str] = []
    idents: list[list[int]] = []
    for _ in range(steps):
        H = q.structure
        options = ["base", "delta"] + (["edge"] if H.U else [])
        rng.shuffle(options)
        for move in options:
            if move == "base":
                cand = _append_base(H)
                ident = list(range(H.m))
                label = "base"
            elif move == "delta":
                if H.m == 0:
                    continue
                root = rng.randrange(H.m)
                cand = delta_amalgamate(q, q, root).structure
                ident = delta_identifications(H.m, root)[0]
                label = f"delta root={root}"
            else:
                u = rng.choice(H.U)
                flip = rng.random() < 0.5
                cand, ident = _partner_edge(H, u, e, flip)
                label = f"edge u={u} flip={int(flip)}"
            if cand.m > max_vertices:
                continue
            nxt = Condition(cand, e)
            if refute(nxt) is None:
                q = nxt
                moves.append(label)
                idents.append(ident)
                break
        else:
            break
    G = reduct(q.structure)
    stats = {
        "V": q.structure.m,
        "U": len(q.structure.U),
        "X": len(q.structure.X),
        "chi": chromatic_number(G),
        "odd_girth": odd_girth(G),
        "markers_ok": marker_hom_check(q.structure, e) is None,
    }
    if catalogs is not None:
        check = is_condition(q, catalogs, max_subset_size=3)
        stats["verdict"] = check.verdict.value
    return SampleResult(q, moves, idents, stats)
