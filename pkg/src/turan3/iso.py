"""Canonical forms and isomorphism for 3-uniform hypergraphs.

The canonical form of ``H`` is the lexicographically smallest sorted edge
list over all vertex relabelings. For edge lists of equal length this is the
same as the lexicographically largest 0/1 indicator vector over triples in
lexicographic order, which is what the search below maximizes bit by bit.

Labels are assigned in an ordered partition of the vertices. Triples are
scanned in lexicographic order; the vertices holding labels ``a`` and ``b``
are individualized by branching, and each block of candidate third labels is
split into common neighbours of ``(a, b)`` first, non-neighbours second,
because any other order loses at the first differing bit. Vertices whose
transposition is an automorphism ("twins") are branched on once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import Hypergraph, Triple


@dataclass(frozen=True, order=True)
class CanonicalForm:
    n: int
    canonical_edges: tuple[Triple, ...]

    def to_hypergraph(self) -> Hypergraph:
        return Hypergraph(self.n, self.canonical_edges)


def _co_neighbourhoods(h: Hypergraph) -> list[list[int]]:
    co = [[0] * h.n for _ in range(h.n)]
    for a, b, c in h.edges:
        co[a][b] |= 1 << c
        co[b][a] |= 1 << c
        co[a][c] |= 1 << b
        co[c][a] |= 1 << b
        co[b][c] |= 1 << a
        co[c][b] |= 1 << a
    return co


def _twin_classes(n: int, co: list[list[int]]) -> list[int]:
    """Representative of each vertex's twin class (transposition is an automorphism)."""
    rep = list(range(n))
    for u in range(n):
        if rep[u] != u:
            continue
        for v in range(u + 1, n):
            if rep[v] != v:
                continue
            mask = ~((1 << u) | (1 << v))
            if all(
                (co[u][w] & mask) == (co[v][w] & mask)
                for w in range(n)
                if w != u and w != v
            ):
                rep[v] = u
    return rep


class _Canonizer:
    def __init__(self, h: Hypergraph):
        self.n = h.n
        self.co = _co_neighbourhoods(h)
        self.twin = _twin_classes(h.n, self.co)
        self.best: list[int] | None = None
        self.best_cells: list[list[int]] | None = None
        self.count = 0
        self.bits: list[int] = []
        self.gt_at: int | None = None
        self.path: list[int] = []
        self.best_path: list[int] = []
        self.gens: list[list[int]] = []
        self.version = 0
        self.abort: int | None = None

    def run(self):
        n = self.n
        if n < 3:
            self.best = []
            self.best_cells = [[v] for v in range(n)]
            self.count = math.factorial(n)
            return
        self._rec([list(range(n))], 0, 1)

    # bits comparison against the incumbent; returns False to prune
    def _push(self, bit: int) -> bool:
        k = len(self.bits)
        self.bits.append(bit)
        if self.best is None or self.gt_at is not None:
            return True
        ref = self.best[k]
        if bit > ref:
            self.gt_at = k
        elif bit < ref:
            return False
        return True

    def _truncate(self, length: int):
        del self.bits[length:]
        if self.gt_at is not None and self.gt_at >= length:
            self.gt_at = None

    @staticmethod
    def _locate(cells, pos):
        start = 0
        for i, cell in enumerate(cells):
            if start + len(cell) > pos:
                return i, start
            start += len(cell)
        raise AssertionError("position outside partition")

    def _orbit_rep(self, v, candidates):
        """An already-explored vertex in ``v``'s orbit under automorphisms fixing the path."""
        fixed = self.path
        gens = [g for g in self.gens if all(g[f] == f for f in fixed)]
        if not gens:
            return None
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in gens:
            for x in range(self.n):
                rx, ry = find(x), find(g[x])
                if rx != ry:
                    parent[ry] = rx
        rv = find(v)
        for u in candidates:
            if find(u) == rv:
                return u
        return None

    def _branch(self, cells, i, a, b):
        cell = cells[i]
        depth = len(self.path)
        sizes: dict[int, int] = {}
        for v in cell:
            sizes[self.twin[v]] = sizes.get(self.twin[v], 0) + 1
        done: dict[int, tuple[int, int]] = {}
        for v in cell:
            if self.twin[v] not in sizes:
                continue
            k = sizes.pop(self.twin[v])
            u = self._orbit_rep(v, done)
            if u is not None:
                ver, per = done[u]
                if ver == self.version:
                    self.count += k * per
                done[v] = (ver, per)
                continue
            before, ver0 = self.count, self.version
            rest = [w for w in cell if w != v]
            self.path.append(v)
            self._rec(cells[:i] + [[v], rest] + cells[i + 1 :], a, b)
            self.path.pop()
            if self.abort is not None:
                if self.abort != depth:
                    return
                # best is unchanged since ``before``: v's subtree mirrors the best child's
                self.abort = None
                ver, per = done[self.best_path[depth]]
                self.count = before + k * per
                done[v] = (ver, per)
                continue
            gained = self.count - before if self.version == ver0 else self.count
            self.count += (k - 1) * gained
            done[v] = (self.version, gained)

    def _push_zeros(self, count: int) -> bool:
        for _ in range(count):
            if not self._push(0):
                return False
        return True

    def _rec(self, cells, a, b):
        n = self.n
        co = self.co
        mark = len(self.bits)
        cells = list(cells)
        ok = True
        while ok:
            if a > n - 3:
                self._leaf(cells)
                break
            i, start = self._locate(cells, a)
            cell = cells[i]
            if len(cell) > 1:
                tail = 0
                for x in cells[i:]:
                    for v in x:
                        tail |= 1 << v
                if start == a and all(co[v][u] & tail == 0 for v in cell for u in range(n) if tail >> u & 1):
                    # no edge meets this cell inside the unlabeled tail: its blocks are all zero
                    span = len(cell)
                    ok = self._push_zeros(sum(math.comb(n - 1 - p, 2) for p in range(a, a + span)))
                    a += span
                    b = a + 1
                    continue
                self._branch(cells, i, a, b)
                break
            va = cell[0]
            if b > n - 2:
                a += 1
                b = a + 1
                continue
            i, start = self._locate(cells, b)
            cell = cells[i]
            if len(cell) > 1:
                tail = 0
                for x in cells[i:]:
                    for v in x:
                        tail |= 1 << v
                if start == b and all(co[va][v] & tail == 0 for v in cell):
                    span = len(cell)
                    ok = self._push_zeros(sum(n - 1 - p for p in range(b, b + span)))
                    b += span
                    continue
                self._branch(cells, i, a, b)
                break
            nbr = co[va][cell[0]]
            c = b + 1
            while c < n:
                i, start = self._locate(cells, c)
                cell = cells[i]
                inside = [u for u in cell if nbr >> u & 1]
                outside = [u for u in cell if not nbr >> u & 1]
                for bit in [1] * len(inside) + [0] * len(outside):
                    if not self._push(bit):
                        ok = False
                        break
                if not ok:
                    break
                cells[i : i + 1] = [x for x in (inside, outside) if x]
                c += len(cell)
            b += 1
        self._truncate(mark)

    def _leaf(self, cells):
        mult = 1
        for cell in cells:
            mult *= math.factorial(len(cell))
        order = [v for cell in cells for v in cell]
        if self.best is None or self.gt_at is not None:
            self.best = list(self.bits)
            self.best_cells = [list(c) for c in cells]
            self.best_path = list(self.path)
            self.count = mult
            self.version += 1
            self.gt_at = None
            return
        # equal leaf: record the automorphism and unwind to the divergence point
        best_order = [v for cell in self.best_cells for v in cell]
        gamma = [0] * self.n
        for p, v in enumerate(best_order):
            gamma[v] = order[p]
        self.gens.append(gamma)
        for d, (x, y) in enumerate(zip(self.path, self.best_path)):
            if x != y:
                self.abort = d
                return
        self.count += mult

    def labeling(self) -> list[int]:
        """Map vertex -> canonical label for one optimal relabeling."""
        label = [0] * self.n
        pos = 0
        for cell in self.best_cells:
            for v in cell:
                label[v] = pos
                pos += 1
        return label


def _canonize(h: Hypergraph) -> _Canonizer:
    cz = _Canonizer(h)
    cz.run()
    return cz


def canonical_labeling(h: Hypergraph) -> list[int]:
    """A relabeling ``perm`` with ``relabel(h, perm)`` equal to the canonical form."""
    return _canonize(h).labeling()


def canonical_form(h: Hypergraph) -> CanonicalForm:
    cz = _canonize(h)
    label = cz.labeling()
    edges = sorted(tuple(sorted((label[a], label[b], label[c]))) for a, b, c in h.edges)
    return CanonicalForm(h.n, tuple(edges))


def is_canonical(h: Hypergraph) -> bool:
    """True when ``h``'s own edge list is already its canonical form."""
    return canonical_form(h).canonical_edges == h.edges


def are_isomorphic(h1: Hypergraph, h2: Hypergraph) -> bool:
    if h1.n != h2.n or len(h1.edges) != len(h2.edges):
        return False
    return canonical_form(h1) == canonical_form(h2)


def automorphism_count(h: Hypergraph) -> int:
    """Order of the automorphism group (number of optimal relabelings)."""
    return _canonize(h).count
