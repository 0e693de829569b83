import io

import pytest

from amalgams.amalgam import make_interlace
from amalgams.embedding import weak_embed
from amalgams.enumeration import (
    Catalog,
    catalog_stats,
    enumerate_levels,
    next_level,
    read_catalogs,
    write_catalogs,
)
from amalgams.invariants import marker_hom_check, reduct
from amalgams.structures import Structure, base_structure, validate


def test_level_one_n1(k1):
    members = set(k1[1].members)
    two_points = Structure.build(1, 2, {0: (0,), 1: (1,)})
    edge = Structure.build(1, 2, {0: (0,), 1: (1,)}, [(0, 1)])
    assert members == {two_points, edge}


def test_level_one_n2(k2):
    # two edgeless choices and one one-edge choice, all distinct
    assert len(k2[1]) == 3
    assert [p.op for p in k2[1].provenance] == ["+", "+", "*"]


def test_empty_catalog():
    c = next_level(Catalog(1, make_interlace("01"), 4))
    assert (c.level, len(c)) == (5, 0)
    assert catalog_stats(c)["count"] == 0


def test_level_zero_only():
    cats = enumerate_levels(1, "01", 0).catalogs
    assert len(cats) == 1 and cats[0].members == [base_structure(1)]


def test_triangle_at_level_two(k1):
    tri = Structure.build(1, 3, {0: (0,), 1: (1,), 2: (2,)}, [(0, 1), (0, 2), (1, 2)])
    assert tri in k1[2].members


def test_stats_examples(k1, k2):
    s = catalog_stats(k2[0])
    assert (s["count"], s["min_V"], s["max_V"], s["max_X"]) == (1, 2, 2, 0)
    s = catalog_stats(k1[1])
    assert (s["count"], s["max_X"]) == (2, 1)


# regression values frozen from a run of the generator
@pytest.mark.parametrize(
    "n,word,counts",
    [
        (1, "01", [1, 2, 8, 54, 611]),
        (1, "10", [1, 2, 8, 54, 611]),
        (2, "0101", [1, 3, 17, 167, 2870]),
        (2, "0110", [1, 3, 17, 167, 2868]),
    ],
)
def test_level_counts(n, word, counts):
    en = enumerate_levels(n, word, 4)
    assert [len(c) for c in en.catalogs] == counts
    assert en.truncated is None


def test_truncation_is_deterministic():
    a = enumerate_levels(2, "0101", 5, vertex_cap=10**5)
    b = enumerate_levels(2, "0101", 5, vertex_cap=10**5)
    assert a.truncated == b.truncated == 5
    assert [c.members for c in a.catalogs] == [c.members for c in b.catalogs]


def test_size_bounds_and_markers(k1, k2):
    for cats, word in ((k1, "01"), (k2, "0101")):
        e = make_interlace(word)
        for c in cats:
            t = c.level
            assert len(set(c.members)) == len(c.members)
            for H in c.members:
                assert validate(H) == []
                assert len(H.X) <= 2**t - 1
                assert len(H.U) <= 2**t and H.m <= H.n * 2**t
                assert marker_hom_check(H, e) is None


def test_parents_embed_into_children(k2):
    for parent, child in zip(k2[:-1], k2[1:]):
        for j, H in enumerate(child.members):
            P = parent.members[child.provenance[j].parent]
            assert weak_embed(P, H) is not None


def test_catalog_file_round_trip(k2):
    buf = io.StringIO()
    write_catalogs(k2, buf)
    text = buf.getvalue()
    first = text.splitlines()[0]
    assert first == '{"n": 2, "e": "0101", "level": 0, "count": 1}'
    back = read_catalogs(io.StringIO(text))
    assert back.truncated is None
    assert [c.members for c in back.catalogs] == [c.members for c in k2]
    again = io.StringIO()
    write_catalogs(back.catalogs, again)
    assert again.getvalue() == text
    assert [catalog_stats(c) for c in back.catalogs] == [catalog_stats(c) for c in k2]


def test_truncation_marker_in_file():
    en = enumerate_levels(1, "01", 3, vertex_cap=30)
    buf = io.StringIO()
    write_catalogs(en.catalogs, buf, en.truncated)
    assert buf.getvalue().splitlines()[-1] == '{"truncated": true, "level": %d}' % en.truncated
    assert read_catalogs(io.StringIO(buf.getvalue())).truncated == en.truncated


def test_reducts_of_level_one(k1):
    orders = sorted((reduct(H).order, len(reduct(H).edges)) for H in k1[1].members)
    assert orders == [(2, 0), (2, 1)]
