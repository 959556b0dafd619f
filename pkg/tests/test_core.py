import pytest
from hypothesis import given, settings, strategies as st

from turan3.core import (
    Hypergraph,
    HypergraphError,
    ParseError,
    all_triples,
    decode,
    degree,
    disjoint_union,
    encode,
    induced,
    is_connected,
    make,
    read_h3,
    relabel,
    write_h3,
)


@st.composite
def hypergraphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    tri = all_triples(n)
    picks = draw(st.lists(st.sampled_from(tri), unique=True)) if tri else []
    return Hypergraph(n, tuple(picks))


def test_normalizes_and_sorts():
    h = make(5, [(4, 2, 0), (1, 0, 2)])
    assert h.edges == ((0, 1, 2), (0, 2, 4))
    assert (2, 0, 4) in h
    assert len(h) == 2


@pytest.mark.parametrize(
    "edges",
    [[(0, 0, 1)], [(0, 1, 5)], [(0, 1, 2), (2, 1, 0)], [(0, 1)], [(-1, 0, 1)]],
)
def test_invalid_edges(edges):
    with pytest.raises(HypergraphError):
        make(5, edges)


def test_incidence_and_degree():
    h = make(4, [(0, 1, 2), (0, 1, 3)])
    assert h.incidence[0] == ((0, 1, 2), (0, 1, 3))
    assert degree(h, 2) == 1 and h.degree(0) == 2
    with pytest.raises(HypergraphError):
        degree(h, 4)


def test_connectivity():
    assert is_connected(make(0))
    assert is_connected(make(1))
    assert not is_connected(make(2))
    assert is_connected(make(5, [(0, 1, 2), (2, 3, 4)]))
    assert not is_connected(make(6, [(0, 1, 2), (2, 3, 4)]))  # isolated vertex 5
    assert not is_connected(make(6, [(0, 1, 2), (3, 4, 5)]))


def test_union_and_induced():
    a = make(3, [(0, 1, 2)])
    u = disjoint_union(a, a)
    assert u.n == 6 and u.edges == ((0, 1, 2), (3, 4, 5))
    k = induced(make(5, all_triples(5)), [4, 1, 2, 3])
    assert k.n == 4 and len(k) == 4


def test_relabel_requires_permutation():
    h = make(3, [(0, 1, 2)])
    with pytest.raises(HypergraphError):
        relabel(h, [0, 0, 1])


def test_decode_examples():
    h = decode("# comment\n5 2\n0 1 2\n1 3 4\n")
    assert h.n == 5 and h.edges == ((0, 1, 2), (1, 3, 4))
    assert decode("4 0\n").edges == ()


@pytest.mark.parametrize(
    "text,line",
    [
        ("", 1),
        ("5\n", 1),
        ("5 2\n0 1 2\n", 2),
        ("5 1\n2 1 0\n", 2),
        ("5 1\n0 1 5\n", 2),
        ("5 2\n1 2 3\n0 1 2\n", 3),
        ("5 1\n0 1 x\n", 2),
    ],
)
def test_decode_errors_name_the_line(text, line):
    with pytest.raises(ParseError) as err:
        decode(text)
    assert err.value.line == line


@settings(max_examples=100, deadline=None)
@given(hypergraphs())
def test_encode_roundtrip(h):
    assert decode(encode(h)) == h


def test_file_roundtrip(tmp_path):
    h = make(6, [(0, 1, 2), (3, 4, 5)])
    p = tmp_path / "g.h3"
    write_h3(h, p)
    assert p.read_text() == "6 2\n0 1 2\n3 4 5\n"
    assert read_h3(p) == h
