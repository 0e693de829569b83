import random

import pytest
from hypothesis import given, settings, strategies as st

from amalgams.amalgam import copy_images, edgeless_amalgam, make_interlace
from amalgams.embedding import Verdict, weak_embed
from amalgams.enumeration import enumerate_levels
from amalgams.forcing import (
    Condition,
    delta_amalgamate,
    delta_identifications,
    extends,
    is_condition,
    sample_chain,
)
from amalgams.invariants import marker_hom_check
from amalgams.structures import Structure, base_structure, empty_structure, induced_substructure

E01 = make_interlace("01")
E0101 = make_interlace("0101")


def extends_oracle(q2, q1, ident):
    """The four extension clauses, evaluated on explicit sets."""
    A, B = q1.structure, q2.structure
    img = {v: ident[v] for v in range(A.m)}
    V = set(img.values())
    U_ok = {img[u] for u in A.U} == set(B.U) & V
    X_ok = {frozenset((img[a], img[b])) for a, b in A.X} == {frozenset(p) for p in B.X if set(p) <= V}
    h_ok = all(B.h.get(img[u]) == tuple(img[v] for v in A.h[u]) for u in A.U)
    return len(V) == A.m and U_ok and X_ok and h_ok


def test_is_condition_examples(k2):
    cats = list(k2)
    assert is_condition(Condition(base_structure(2), E0101), cats).verdict is Verdict.YES
    for c in cats:
        for H in c.members[:20]:
            assert is_condition(Condition(H, E0101), cats).verdict is Verdict.YES
    nested = Structure.build(2, 4, {1: (0, 1), 3: (2, 3)}, [(1, 3)])
    res = is_condition(Condition(nested, E0101), cats)
    assert res.verdict is Verdict.REFUTED and res.subset == (0, 1, 2, 3)


def test_is_condition_flags_edges_outside_U(k1):
    q = Condition(Structure(n=1, m=2, U=(0,), X=((0, 1),), markers=((0, (0,)),)), E01)
    res = is_condition(q, list(k1))
    assert res.invalid and "edge outside U" in res.reason


def test_is_condition_unknown_reports_depth():
    cats = enumerate_levels(1, "01", 1).catalogs
    tri = Structure.build(1, 3, {0: (0,), 1: (1,), 2: (2,)}, [(0, 1), (0, 2), (1, 2)])
    res = is_condition(Condition(tri, E01), cats)
    assert res.verdict is Verdict.UNKNOWN and res.max_level == 1
    # every pair does embed, so the bounded check passes
    assert is_condition(Condition(tri, E01), cats, max_subset_size=2).valid


def test_is_condition_mismatch(k1):
    with pytest.raises(ValueError):
        is_condition(Condition(base_structure(2), E0101), list(k1))


def test_extends_examples(k2):
    member = k2[1].members[2]
    q, base = Condition(member, E0101), Condition(base_structure(2), E0101)
    assert extends(q, q)
    c0, _ = copy_images(base_structure(2), "*", 1, E0101)
    ident = [c0[v] for v in range(2)]
    assert ident == [0, 2]
    assert extends(q, base, ident) == extends_oracle(q, base, ident) is True
    # the other copy too; the extra edge sits outside the image
    c1 = copy_images(base_structure(2), "*", 1, E0101)[1]
    assert extends(q, base, c1) is True
    # an identification onto a non-U vertex breaks the U clause
    assert extends(q, base, [0, 1]) == extends_oracle(q, base, [0, 1]) is False
    bare = Condition(Structure.build(2, 4, member.h), E0101)
    assert not extends(bare, q)
    with pytest.raises(ValueError):
        extends(q, base, [2, 0])


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32))
def test_extends_agrees_with_oracle_and_is_transitive(seed):
    rng = random.Random(seed)
    cats = enumerate_levels(2, "0101", 2).catalogs
    H = rng.choice(rng.choice(cats).members)
    T = sorted(rng.sample(range(H.m), rng.randint(0, H.m)))
    S = sorted(rng.sample(T, rng.randint(0, len(T))))
    q3, q2, q1 = (Condition(induced_substructure(H, P), E0101) for P in (range(H.m), T, S))
    f = [T.index(v) for v in S]
    assert extends(q2, q1, f) == extends_oracle(q2, q1, f)
    if extends(q3, q2, T) and extends(q2, q1, f):
        assert extends(q3, q1, [T[i] for i in f])
    # antisymmetry: mutual extension with a bijective identification means equality
    if len(S) == len(T) and extends(q2, q1, f) and extends(q1, q2, list(range(len(S)))):
        assert q1 == q2


def test_delta_examples(k1):
    cats = list(k1)
    b = Condition(base_structure(2), E0101)
    joint = delta_amalgamate(b, b, 0)
    assert joint.structure == edgeless_amalgam(base_structure(2), 0)
    cats2 = enumerate_levels(2, "0101", 2).catalogs
    assert is_condition(joint, cats2).valid

    edge = Condition(next(H for H in cats[1].members if H.X), E01)
    joint = delta_amalgamate(edge, edge, 0)
    assert (joint.structure.m, len(joint.structure.X)) == (4, 2)
    assert is_condition(joint, cats[:3]).valid
    for ident in delta_identifications(2, 0):
        assert extends(joint, edge, ident)

    with pytest.raises(ValueError):
        delta_amalgamate(edge, Condition(cats[2].members[0], E01), 0)
    with pytest.raises(ValueError):
        delta_amalgamate(edge, Condition(Structure.build(1, 2, {0: (0,), 1: (1,)}), E01), 0)


def test_mirror_subsets_embed_in_edgeless_amalgam(k2):
    rng = random.Random(3)
    for c in k2[1:]:
        for H in rng.sample(c.members, min(8, len(c))):
            x = rng.randrange(H.m)
            out = edgeless_amalgam(H, x)
            c0, c1 = copy_images(H, "+", x)
            s = [v for v in range(x) if rng.random() < 0.5]
            s0 = [v for v in range(x, H.m) if rng.random() < 0.5]
            mirror = sorted(set(s) | {c0[v] for v in s0} | {c1[v] for v in s0})
            assert weak_embed(induced_substructure(out, mirror), out) is not None


def test_sample_chain_examples(k1):
    assert sample_chain(1, E01, 0, seed=5).condition.structure == empty_structure(1)
    a = sample_chain(2, E0101, 12, seed=11)
    b = sample_chain(2, E0101, 12, seed=11)
    assert a.condition == b.condition and a.moves == b.moves
    res = sample_chain(1, E01, 30, seed=1, catalogs=list(k1))
    assert marker_hom_check(res.condition.structure, E01) is None
    assert res.stats["markers_ok"] and res.stats["verdict"] != "refuted"
    assert is_condition(res.condition, list(k1), max_subset_size=3).verdict is not Verdict.REFUTED


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(["01", "10", "0101", "0110"]))
def test_sampled_moves_extend(seed, word):
    e = make_interlace(word)
    full = sample_chain(e.n, e, 10, seed)
    assert len(full.moves) == len(full.idents) <= 10
    prev = Condition(empty_structure(e.n), e)
    for k, ident in enumerate(full.idents, 1):
        nxt = sample_chain(e.n, e, k, seed).condition
        assert extends(nxt, prev, ident)
        prev = nxt
    assert prev == full.condition
    assert marker_hom_check(full.condition.structure, e) is None
