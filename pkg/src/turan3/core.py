"""3-uniform hypergraphs on vertices 0..n-1 and the ``.h3`` text format."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

Triple = tuple[int, int, int]


class HypergraphError(ValueError):
    """Malformed hypergraph data."""


class ParseError(HypergraphError):
    """Malformed ``.h3`` text; ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _normalize(n: int, triple: Iterable[int]) -> Triple:
    t = tuple(int(v) for v in triple)
    if len(t) != 3:
        raise HypergraphError(f"edge {t} is not a triple")
    if len(set(t)) != 3:
        raise HypergraphError(f"edge {t} has a repeated vertex")
    for v in t:
        if not 0 <= v < n:
            raise HypergraphError(f"vertex {v} of edge {t} out of range [0, {n})")
    a, b, c = sorted(t)
    return (a, b, c)


@dataclass(frozen=True)
class Hypergraph:
    """Immutable 3-uniform hypergraph.

    ``edges`` is kept as a lexicographically sorted tuple of increasing
    triples. Per-vertex incidence lists are built on construction.
    """

    n: int
    edges: tuple[Triple, ...] = ()
    incidence: tuple[tuple[Triple, ...], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise HypergraphError(f"vertex count must be a non-negative integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        norm = [_normalize(self.n, e) for e in self.edges]
        norm.sort()
        for prev, cur in zip(norm, norm[1:]):
            if prev == cur:
                raise HypergraphError(f"duplicate edge {cur}")
        object.__setattr__(self, "edges", tuple(norm))
        inc: list[list[Triple]] = [[] for _ in range(self.n)]
        for e in norm:
            for v in e:
                inc[v].append(e)
        object.__setattr__(self, "incidence", tuple(tuple(x) for x in inc))

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, triple) -> bool:
        return tuple(sorted(triple)) in self.edge_set

    @property
    def edge_set(self) -> frozenset[Triple]:
        # cached on first use; frozen dataclass needs object.__setattr__
        try:
            return self.__dict__["_edge_set"]
        except KeyError:
            s = frozenset(self.edges)
            object.__setattr__(self, "_edge_set", s)
            return s

    def degree(self, v: int) -> int:
        return degree(self, v)

    def __str__(self) -> str:
        return f"Hypergraph(n={self.n}, m={len(self.edges)})"


def make(n: int, edges: Iterable[Sequence[int]] = ()) -> Hypergraph:
    """Validate and normalize; duplicate triples raise rather than merge."""
    return Hypergraph(n, tuple(tuple(e) for e in edges))


def all_triples(n: int) -> list[Triple]:
    """All C(n,3) triples of [0, n) in lexicographic order."""
    return list(combinations(range(n), 3))


def degree(h: Hypergraph, v: int) -> int:
    if not 0 <= v < h.n:
        raise HypergraphError(f"vertex {v} out of range [0, {h.n})")
    return len(h.incidence[v])


def is_connected(h: Hypergraph) -> bool:
    """Spanning connectivity: isolated vertices make ``h`` disconnected.

    The single vertex with no edges counts as connected; so does n=0.
    """
    if h.n <= 1:
        return True
    parent = list(range(h.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, c in h.edges:
        ra = find(a)
        for v in (b, c):
            rv = find(v)
            if rv != ra:
                parent[rv] = ra
    if any(not inc for inc in h.incidence):
        return False
    root = find(0)
    return all(find(v) == root for v in range(h.n))


def disjoint_union(h1: Hypergraph, h2: Hypergraph) -> Hypergraph:
    shift = h1.n
    edges = list(h1.edges) + [(a + shift, b + shift, c + shift) for a, b, c in h2.edges]
    return Hypergraph(h1.n + h2.n, tuple(edges))


def induced(h: Hypergraph, vertices: Iterable[int]) -> Hypergraph:
    """Subhypergraph induced on ``vertices``, relabeled 0..k-1 in increasing order."""
    members = sorted(set(int(v) for v in vertices))
    for v in members:
        if not 0 <= v < h.n:
            raise HypergraphError(f"vertex {v} out of range [0, {h.n})")
    label = {v: i for i, v in enumerate(members)}
    keep = [
        (label[a], label[b], label[c])
        for a, b, c in h.edges
        if a in label and b in label and c in label
    ]
    return Hypergraph(len(members), tuple(keep))


def relabel(h: Hypergraph, perm: Sequence[int]) -> Hypergraph:
    """Image of ``h`` under the vertex map ``v -> perm[v]`` (a permutation of [0, n))."""
    if sorted(perm) != list(range(h.n)):
        raise HypergraphError("relabeling must be a permutation of the vertex set")
    return Hypergraph(h.n, tuple((perm[a], perm[b], perm[c]) for a, b, c in h.edges))


def encode(h: Hypergraph) -> str:
    lines = [f"{h.n} {len(h.edges)}"]
    lines.extend(f"{a} {b} {c}" for a, b, c in h.edges)
    return "\n".join(lines) + "\n"


def decode(text: str) -> Hypergraph:
    """Parse ``.h3`` text. Lines starting with '#' are ignored."""
    rows = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        rows.append((lineno, line))
    if not rows:
        raise ParseError(1, "missing header 'n m'")
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ParseError(lineno, f"bad header {header!r}, expected 'n m'")
    n, m = int(parts[0]), int(parts[1])
    body = rows[1:]
    if len(body) != m:
        where = body[-1][0] if body else lineno
        raise ParseError(where, f"header announces {m} edges, found {len(body)}")
    edges: list[Triple] = []
    for lineno, line in body:
        parts = line.split()
        if len(parts) != 3 or not all(p.isdigit() for p in parts):
            raise ParseError(lineno, f"bad edge line {line!r}")
        a, b, c = (int(p) for p in parts)
        if not a < b < c:
            raise ParseError(lineno, f"edge {a} {b} {c} is not strictly increasing")
        if c >= n:
            raise ParseError(lineno, f"vertex {c} out of range [0, {n})")
        if edges and (a, b, c) <= edges[-1]:
            raise ParseError(lineno, "edges not in strictly increasing lexicographic order")
        edges.append((a, b, c))
    return Hypergraph(n, tuple(edges))


def read_h3(path) -> Hypergraph:
    with open(path, encoding="ascii", newline="") as fh:
        return decode(fh.read())


def write_h3(h: Hypergraph, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(encode(h))
