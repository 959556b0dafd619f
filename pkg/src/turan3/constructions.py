"""Builders for the named extremal and near-extremal 3-graphs.

Labelings are fixed so that written ``.h3`` files are reproducible:
star centers sit at vertex 0, ``h_cp`` uses ``{x, y, z} = {0, 1, 2}`` and
``h_pm`` shares vertex 3 between its clique and its star.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

from .core import Hypergraph, HypergraphError, all_triples
from .frame import TriangleFrame


def complete(n: int) -> Hypergraph:
    return Hypergraph(n, tuple(all_triples(n)))


def full_star(n: int) -> Hypergraph:
    if n < 1:
        raise HypergraphError("a star needs at least one vertex")
    return Hypergraph(n, tuple((0, a, b) for a, b in combinations(range(1, n), 2)))


def cover(n: int, m: int) -> Hypergraph:
    """All triples meeting ``{0, ..., m-1}``: C(n,3) - C(n-m,3) edges."""
    if not 0 <= m <= n:
        raise HypergraphError(f"cover needs 0 <= m <= n, got m={m}, n={n}")
    return Hypergraph(n, tuple(t for t in all_triples(n) if t[0] < m))


def h_cp(n: int) -> Hypergraph:
    """Triangle-free graph containing a linear path, with C(n-2,2)+1 edges."""
    if n < 7:
        raise HypergraphError("h_cp needs n >= 7")
    x, y, z = 0, 1, 2
    rest = range(3, n)
    edges = [(x, y, z)]
    edges += [(x, y, w) for w in rest]
    edges += [(z, a, b) for a, b in combinations(rest, 2)]
    return Hypergraph(n, tuple(edges))


def h_pm(n: int) -> Hypergraph:
    """K4 on {0,1,2,3} plus the full star centered at 3 on {3, ..., n-1}."""
    if n < 7:
        raise HypergraphError("h_pm needs n >= 7")
    edges = list(combinations(range(4), 3))
    edges += [(3, a, b) for a, b in combinations(range(4, n), 2)]
    return Hypergraph(n, tuple(edges))


def hilton_milner(n: int) -> Hypergraph:
    """Triple {1,2,3} plus every triple through 0 that meets it (3n-8 edges)."""
    if n < 6:
        raise HypergraphError("hilton_milner needs n >= 6")
    e = {1, 2, 3}
    edges = [(1, 2, 3)]
    edges += [(0, a, b) for a, b in combinations(range(1, n), 2) if a in e or b in e]
    return Hypergraph(n, tuple(edges))


def connected_cp_extremal(n: int) -> Hypergraph:
    """(U-triples minus Z1) plus T2 on the triangle frame with s = n-6: 3n-8 edges."""
    if n < 7:
        raise HypergraphError("connected_cp_extremal needs n >= 7")
    fr = TriangleFrame(n - 6)
    z1 = set(fr.Z1)
    edges = [t for t in fr.U_triples if t not in z1] + fr.T2
    return Hypergraph(n, tuple(edges))


def edge_count_formula(kind: str, n: int, m: int | None = None) -> int:
    """Closed-form edge count of each builder."""
    if kind == "complete":
        return comb(n, 3)
    if kind == "full_star":
        return comb(n - 1, 2)
    if kind == "cover":
        return comb(n, 3) - comb(n - m, 3)
    if kind == "h_cp":
        return comb(n - 2, 2) + 1
    if kind == "h_pm":
        return comb(n - 4, 2) + 4
    if kind in ("hilton_milner", "connected_cp_extremal"):
        return 3 * n - 8
    raise KeyError(kind)


BUILDERS = {
    "complete": complete,
    "full_star": full_star,
    "cover": cover,
    "h_cp": h_cp,
    "h_pm": h_pm,
    "hilton_milner": hilton_milner,
    "connected_cp_extremal": connected_cp_extremal,
}


def build(kind: str, n: int, m: int | None = None) -> Hypergraph:
    try:
        fn = BUILDERS[kind]
    except KeyError:
        raise HypergraphError(f"unknown construction {kind!r}; choose from {sorted(BUILDERS)}")
    if kind == "cover":
        if m is None:
            raise HypergraphError("cover needs --m")
        return fn(n, m)
    return fn(n)
