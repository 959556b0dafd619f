"""Named forbidden/required configurations and subhypergraph embedding.

Containment is as a (not necessarily induced) subhypergraph: an injective
vertex map sending every pattern edge onto a host edge.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Iterator, Optional, Sequence

from .core import Hypergraph, HypergraphError, Triple


class PatternError(ValueError):
    pass


@dataclass(frozen=True)
class Pattern:
    id: str
    graph: Hypergraph

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def components(self) -> list[list[int]]:
        return _components(self.graph)

    @property
    def is_connected(self) -> bool:
        return len(self.components) <= 1

    def __str__(self) -> str:
        return self.id


@dataclass(frozen=True)
class Embedding:
    """``map[i]`` is the host vertex assigned to pattern vertex ``i``."""

    map: tuple[int, ...]

    def image(self, pattern: Pattern) -> list[Triple]:
        m = self.map
        return sorted(tuple(sorted((m[a], m[b], m[c]))) for a, b, c in pattern.graph.edges)

    def is_valid(self, host: Hypergraph, pattern: Pattern) -> bool:
        m = self.map
        if len(m) != pattern.n or len(set(m)) != len(m):
            return False
        if any(not 0 <= v < host.n for v in m):
            return False
        return all(e in host.edge_set for e in self.image(pattern))


_PATH = ((0, 1, 2), (2, 3, 4), (4, 5, 6))
_TRIANGLE = ((0, 1, 2), (2, 3, 4), (0, 4, 5))
_F5 = ((0, 1, 2), (2, 3, 4), (0, 1, 4))


def _matching(k: int) -> Hypergraph:
    return Hypergraph(3 * k, tuple((3 * i, 3 * i + 1, 3 * i + 2) for i in range(k)))


def _copies_of_path(s: int) -> Hypergraph:
    edges = []
    for i in range(s):
        edges.extend((a + 7 * i, b + 7 * i, c + 7 * i) for a, b, c in _PATH)
    return Hypergraph(7 * s, tuple(edges))


def build_pattern(pid: str, s: Optional[int] = None) -> Pattern:
    """Catalog lookup by ASCII id.

    Accepted ids: ``P3_3``, ``C3_3``, ``F5``, ``K4_3``, ``M2``, ``M4``, ... (``M<k>``:
    ``k`` disjoint triples), ``2P3_3``, ``3P3_3``, ... (``<s>P3_3``). The parametric
    families also accept ``M(2s)`` / ``sP3_3`` with ``s`` given separately.
    """
    key = pid.strip()
    if key == "P3_3":
        return Pattern("P3_3", Hypergraph(7, _PATH))
    if key == "C3_3":
        return Pattern("C3_3", Hypergraph(6, _TRIANGLE))
    if key == "F5":
        return Pattern("F5", Hypergraph(5, _F5))
    if key == "K4_3":
        return Pattern("K4_3", Hypergraph(4, tuple(combinations(range(4), 3))))
    if key in ("M(2s)", "sP3_3"):
        if s is None or s < 1:
            raise PatternError(f"{key} needs a parameter s >= 1, got {s!r}")
        return build_pattern(f"M{2 * s}" if key == "M(2s)" else f"{s}P3_3")
    m = re.fullmatch(r"M(\d+)", key)
    if m:
        k = int(m.group(1))
        if k < 1:
            raise PatternError("matching size must be at least 1")
        return Pattern(f"M{k}", _matching(k))
    m = re.fullmatch(r"(\d+)P3_3", key)
    if m:
        k = int(m.group(1))
        if k < 1:
            raise PatternError("number of path copies must be at least 1")
        if k == 1:
            return build_pattern("P3_3")
        return Pattern(f"{k}P3_3", _copies_of_path(k))
    raise PatternError(f"unknown pattern id {pid!r}")


def custom_pattern(graph: Hypergraph, name: str = "CUSTOM") -> Pattern:
    return Pattern(name, graph)


def parse_family(text: str | Iterable[str]) -> list[Pattern]:
    """Comma-separated ids (or an iterable of ids) to patterns."""
    if isinstance(text, str):
        ids = [t for t in (x.strip() for x in text.split(",")) if t]
    else:
        ids = list(text)
    if not ids:
        raise PatternError("empty pattern family")
    return [build_pattern(i) for i in ids]


def _components(h: Hypergraph) -> list[list[int]]:
    """Vertex sets of connected components; isolated vertices are their own component."""
    parent = list(range(h.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, c in h.edges:
        for v in (b, c):
            ra, rv = find(a), find(v)
            if ra != rv:
                parent[rv] = ra
    groups: dict[int, list[int]] = {}
    for v in range(h.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def _edge_order(pattern: Hypergraph) -> list[Triple]:
    """Pattern edges so that each edge after the first of its component meets an earlier one."""
    remaining = list(pattern.edges)
    order: list[Triple] = []
    seen: set[int] = set()
    while remaining:
        best = max(remaining, key=lambda e: (sum(v in seen for v in e), -remaining.index(e)))
        remaining.remove(best)
        order.append(best)
        seen.update(best)
    return order


def iter_embeddings(host: Hypergraph, pattern: Pattern) -> Iterator[Embedding]:
    """All embeddings, host edges tried in lexicographic order."""
    pg = pattern.graph
    p = pg.n
    if p > host.n:
        return
    order = _edge_order(pg)
    isolated = [v for v in range(p) if not pg.incidence[v]]
    assign = [-1] * p
    used = [False] * host.n

    def finish():
        # isolated pattern vertices take unused host vertices, smallest first
        free = [v for v in range(host.n) if not used[v]]
        if len(free) < len(isolated):
            return
        for combo in permutations(free, len(isolated)):
            for u, v in zip(isolated, combo):
                assign[u] = v
            yield Embedding(tuple(assign))
        for u in isolated:
            assign[u] = -1

    def rec(k):
        if k == len(order):
            yield from finish()
            return
        e = order[k]
        mapped = [assign[u] for u in e if assign[u] >= 0]
        if mapped:
            pivot = min(mapped, key=lambda v: len(host.incidence[v]))
            candidates = host.incidence[pivot]
        else:
            candidates = host.edges
        todo = [u for u in e if assign[u] < 0]
        for he in candidates:
            if any(v not in he for v in mapped):
                continue
            targets = [v for v in he if v not in mapped]
            if any(used[v] for v in targets):
                continue
            for perm in permutations(targets):
                for u, v in zip(todo, perm):
                    assign[u] = v
                    used[v] = True
                yield from rec(k + 1)
                for u, v in zip(todo, perm):
                    assign[u] = -1
                    used[v] = False

    yield from rec(0)


def find_embedding(host: Hypergraph, pattern: Pattern) -> Optional[Embedding]:
    for emb in iter_embeddings(host, pattern):
        return emb
    return None


def is_free(host: Hypergraph, family: Iterable[Pattern]) -> bool:
    return all(find_embedding(host, p) is None for p in family)


def contains_some(host: Hypergraph, family: Iterable[Pattern]) -> bool:
    return any(find_embedding(host, p) is not None for p in family)


def first_witness(host: Hypergraph, family: Sequence[Pattern]) -> Optional[tuple[Pattern, Embedding]]:
    for p in family:
        emb = find_embedding(host, p)
        if emb is not None:
            return p, emb
    return None


def _component_copies(pattern: Hypergraph, comp: list[int], n: int) -> set[frozenset[Triple]]:
    """Distinct edge sets of copies of one connected component inside K_n^3."""
    label = {v: i for i, v in enumerate(comp)}
    sub = Hypergraph(
        len(comp),
        tuple((label[a], label[b], label[c]) for a, b, c in pattern.edges if a in label),
    )
    base: set[frozenset[Triple]] = set()
    for perm in permutations(range(sub.n)):
        base.add(frozenset(tuple(sorted((perm[a], perm[b], perm[c]))) for a, b, c in sub.edges))
    out: set[frozenset[Triple]] = set()
    for vs in combinations(range(n), sub.n):
        for edges in base:
            out.add(frozenset((vs[a], vs[b], vs[c]) for a, b, c in edges))
    return out


def copies(pattern: Pattern, n: int) -> list[tuple[Triple, ...]]:
    """Edge sets of all copies of ``pattern`` in the complete 3-graph on ``n`` vertices.

    Each copy is a sorted tuple of triples; the list is sorted and duplicate free.
    Isolated pattern vertices only require ``n >= pattern.n``.
    """
    pg = pattern.graph
    if pg.n > n:
        return []
    comps = [c for c in _components(pg) if len(c) > 1 or pg.incidence[c[0]]]
    if not comps:
        return [()]
    comp_copies = []
    for comp in comps:
        cs = _component_copies(pg, comp, n)
        comp_copies.append(
            [(e, frozenset(v for t in e for v in t)) for e in sorted(cs, key=sorted)]
        )
    found: set[tuple[Triple, ...]] = set()

    def rec(i, used_vertices, acc):
        if i == len(comp_copies):
            found.add(tuple(sorted(acc)))
            return
        for edges, verts in comp_copies[i]:
            if used_vertices & verts:
                continue
            rec(i + 1, used_vertices | verts, acc + list(edges))

    rec(0, frozenset(), [])
    return sorted(found)


__all__ = [
    "Embedding",
    "HypergraphError",
    "Pattern",
    "PatternError",
    "build_pattern",
    "contains_some",
    "copies",
    "custom_pattern",
    "find_embedding",
    "first_witness",
    "is_free",
    "iter_embeddings",
    "parse_family",
]
