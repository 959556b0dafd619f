"""Exact extremal search over edge sets of 3-graphs on n labeled vertices.

The engine is a depth-first branch-and-bound over candidate triples in
lexicographic order (include branching: each edge set is reached once, by
adding its triples in increasing order). Forbidden configurations are
compiled into conflict sets; when all but one triple of a conflict set are
chosen, the last one is killed. A node is cut when its edge count plus the
number of live candidates after the branching point cannot reach the
incumbent, which is seeded from the named constructions.

Isomorph rejection is orderly: at depths up to ``iso_depth`` a partial edge
set is kept only if it is its own canonical form (lex-min), which is sound
because every prefix of a lex-min edge list is lex-min. Conditional searches
instead fix a labeled copy of each required member on the lowest vertices.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .constructions import (
    complete,
    connected_cp_extremal,
    cover,
    full_star,
    h_cp,
    h_pm,
    hilton_milner,
)
from .core import Hypergraph, all_triples, disjoint_union, is_connected
from .iso import CanonicalForm, are_isomorphic, canonical_form, is_canonical
from .patterns import (
    Pattern,
    contains_some,
    copies,
    custom_pattern,
    find_embedding,
    is_free,
)

log = logging.getLogger(__name__)

ENGINE_VERSION = "1.0.0"
HARD_MAX_N = 14
DEFAULT_MAX_N = 10


class SearchError(ValueError):
    pass


@dataclass(frozen=True)
class SearchProblem:
    n: int
    forbidden: tuple[Pattern, ...]
    required: Optional[tuple[Pattern, ...]] = None
    connected: bool = False
    exclude_subgraph_of: Optional[Hypergraph] = None
    anchor: Optional[Hypergraph] = None

    def __post_init__(self):
        object.__setattr__(self, "forbidden", tuple(self.forbidden))
        if self.required is not None:
            object.__setattr__(self, "required", tuple(self.required))
        if self.n < 0:
            raise SearchError("n must be non-negative")
        if not self.forbidden:
            raise SearchError("the forbidden family must be nonempty")
        for f in self.forbidden:
            if not f.graph.edges:
                raise SearchError(f"forbidden pattern {f.id} has no edges")
        if self.required is not None:
            if not self.required:
                raise SearchError("the required family, when given, must be nonempty")
            for g in self.required:
                if not is_free(g.graph, self.forbidden):
                    raise SearchError(
                        f"required pattern {g.id} contains a forbidden pattern; problem is vacuous"
                    )
        if self.anchor is not None:
            if self.anchor.n > self.n:
                raise SearchError("anchor has more vertices than n")
            if not is_free(self.anchor, self.forbidden):
                raise SearchError("anchor contains a forbidden pattern; problem is vacuous")
            if self.required is not None and not contains_some(self.anchor, self.required):
                raise SearchError("anchor contains no required pattern")

    @property
    def second_order(self) -> bool:
        return self.exclude_subgraph_of is not None

    def describe(self) -> dict:
        return {
            "n": self.n,
            "forbid": [p.id for p in self.forbidden],
            "require": [p.id for p in self.required] if self.required else [],
            "connected": self.connected,
            "second_order": self.second_order,
        }

    def fingerprint(self) -> str:
        d = self.describe()
        parts = [
            f"n={d['n']}",
            "forbid=" + ",".join(sorted(d["forbid"])),
            "require=" + ",".join(sorted(d["require"])),
            f"connected={int(d['connected'])}",
            f"second_order={int(d['second_order'])}",
        ]
        if self.exclude_subgraph_of is not None:
            parts.append("exclude=" + _edges_key(self.exclude_subgraph_of))
        if self.anchor is not None:
            parts.append("anchor=" + _edges_key(self.anchor))
        parts.append(f"engine={ENGINE_VERSION}")
        return ";".join(parts)


def _edges_key(h: Hypergraph) -> str:
    return f"{h.n}:" + "|".join(f"{a}.{b}.{c}" for a, b, c in h.edges)


@dataclass
class SearchResult:
    max_edges: Optional[int]
    extremal: list[CanonicalForm]
    nodes_explored: int = 0
    elapsed: float = 0.0

    @property
    def graphs(self) -> list[Hypergraph]:
        return [cf.to_hypergraph() for cf in self.extremal]

    def to_json(self, problem: SearchProblem) -> dict:
        return {
            "problem": problem.describe(),
            "max_edges": self.max_edges,
            "extremal": [
                {"n": cf.n, "edges": [list(e) for e in cf.canonical_edges]}
                for cf in self.extremal
            ],
            "nodes_explored": self.nodes_explored,
            "elapsed_ms": round(self.elapsed * 1000.0, 3),
            "engine_version": ENGINE_VERSION,
        }

    @classmethod
    def from_json(cls, data: dict) -> "SearchResult":
        ext = [
            CanonicalForm(int(g["n"]), tuple(tuple(int(v) for v in e) for e in g["edges"]))
            for g in data["extremal"]
        ]
        return cls(
            max_edges=data["max_edges"],
            extremal=ext,
            nodes_explored=int(data.get("nodes_explored", 0)),
            elapsed=float(data.get("elapsed_ms", 0.0)) / 1000.0,
        )


# ----------------------------------------------------------------------------
# compilation of a problem into kernel arrays


@dataclass
class _Compiled:
    n: int
    triples: list
    index: dict
    tri: np.ndarray
    cs_ptr: np.ndarray
    cs_mem: np.ndarray
    tr_ptr: np.ndarray
    tr_sets: np.ndarray
    req_ptr: np.ndarray = field(default_factory=lambda: np.zeros(1, np.int64))
    req_mem: np.ndarray = field(default_factory=lambda: np.zeros(0, np.int64))
    # a requirement was given but no required set fits in the universe
    unsatisfiable: bool = False


def _csr(sets: Sequence[Sequence[int]]) -> tuple[np.ndarray, np.ndarray]:
    ptr = np.zeros(len(sets) + 1, np.int64)
    for i, s in enumerate(sets):
        ptr[i + 1] = ptr[i] + len(s)
    mem = np.fromiter((t for s in sets for t in s), np.int64, count=int(ptr[-1]))
    return ptr, mem


def compile_universe(
    n: int,
    forbidden: Iterable[Pattern],
    universe: Optional[Sequence[tuple]] = None,
    required_sets: Optional[Sequence[Sequence[tuple]]] = None,
) -> _Compiled:
    """Conflict structure of ``forbidden`` restricted to the candidate ``universe``.

    Copies of a forbidden pattern that use a triple outside the universe can
    never be completed and are dropped.
    """
    triples = list(universe) if universe is not None else all_triples(n)
    index = {t: i for i, t in enumerate(triples)}
    sets = set()
    for pat in forbidden:
        for cp in copies(pat, n):
            try:
                sets.add(tuple(sorted(index[e] for e in cp)))
            except KeyError:
                continue
    sets = sorted(sets)
    cs_ptr, cs_mem = _csr(sets)
    by_triple: list[list[int]] = [[] for _ in triples]
    for ci, s in enumerate(sets):
        for t in s:
            by_triple[t].append(ci)
    tr_ptr, tr_sets = _csr(by_triple)
    tri = np.array(triples, dtype=np.int64).reshape(-1, 3)
    comp = _Compiled(n, triples, index, tri, cs_ptr, cs_mem, tr_ptr, tr_sets)
    if required_sets:
        req = []
        for rs in required_sets:
            try:
                req.append(tuple(sorted(index[e] for e in rs)))
            except KeyError:
                continue
        comp.req_ptr, comp.req_mem = _csr(sorted(set(req)))
        comp.unsatisfiable = not req
    return comp


# ----------------------------------------------------------------------------
# worker plumbing

_WORKER: dict = {}


def _init_worker(comp: _Compiled, opts: dict):
    _WORKER["comp"] = comp
    _WORKER["opts"] = opts


def _run_kernel(comp: _Compiled, opts: dict, forced: Sequence[int], start: int, floor: int,
                expand_only: bool = False):
    if comp.unsatisfiable:
        return int(floor), [], 0, []
    forced_arr = np.array(sorted(forced), dtype=np.int64)
    best, records, n_rec, nodes, children, n_children = _kernels.search(
        len(comp.triples), comp.tri, comp.n, forced_arr, int(start), int(floor),
        bool(opts["fixed_floor"]), bool(expand_only),
        comp.cs_ptr, comp.cs_mem, comp.tr_ptr, comp.tr_sets,
        comp.req_ptr, comp.req_mem, bool(opts["connected"]), bool(opts["nonstar"]),
    )
    recs = [tuple(np.flatnonzero(records[i]).tolist()) for i in range(n_rec)]
    return int(best), recs, int(nodes), children[:n_children].tolist()


def _task(args):
    forced, start, floor = args
    best, recs, nodes, _ = _run_kernel(_WORKER["comp"], _WORKER["opts"], forced, start, floor)
    return best, recs, nodes


# ----------------------------------------------------------------------------
# seeding


def _seed_candidates(n: int) -> list[Hypergraph]:
    out = [complete(n)]
    if n >= 1:
        out.append(full_star(n))
        out.extend(cover(n, m) for m in range(2, n))
    if n >= 6:
        out.append(hilton_milner(n))
    if n >= 7:
        out += [h_cp(n), h_pm(n), connected_cp_extremal(n)]
    for k in range(3, n):
        rest = n - k
        out.append(disjoint_union(complete(k), complete(rest)))
        if rest >= 1:
            out.append(disjoint_union(complete(k), full_star(rest)))
    out.sort(key=len, reverse=True)
    return out


def _is_star_like(h: Hypergraph) -> bool:
    if not h.edges:
        return True
    common = set(h.edges[0])
    for e in h.edges[1:]:
        common &= set(e)
    return bool(common)


def _embeds_into(h: Hypergraph, host: Hypergraph) -> bool:
    if len(h.edges) > len(host.edges) or h.n > host.n:
        return False
    return find_embedding(host, custom_pattern(h)) is not None


def satisfies(p: SearchProblem, h: Hypergraph, *, star_exclusion: bool = False) -> bool:
    """Constraint check of one graph, independent of the search internals."""
    if h.n != p.n:
        return False
    if not is_free(h, p.forbidden):
        return False
    if p.required is not None and not contains_some(h, p.required):
        return False
    if p.anchor is not None and not _embeds_into(p.anchor, h):
        return False
    if p.connected and not is_connected(h):
        return False
    if p.exclude_subgraph_of is not None:
        if star_exclusion:
            if _is_star_like(h):
                return False
        elif _embeds_into(h, p.exclude_subgraph_of):
            return False
    return True


def seed_incumbent(p: SearchProblem, star_exclusion: bool = False) -> tuple[int, Optional[Hypergraph]]:
    """Largest feasible construction, or (-1, None)."""
    for h in _seed_candidates(p.n):
        if satisfies(p, h, star_exclusion=star_exclusion):
            return len(h.edges), h
    return -1, None


# ----------------------------------------------------------------------------
# driver


def _check_n(n: int, max_n: int):
    if n > HARD_MAX_N:
        raise SearchError(f"n={n} exceeds the hard limit {HARD_MAX_N}")
    if n > max_n:
        raise SearchError(f"n={n} exceeds the configured limit {max_n} (raise max_n)")


def _full_star_of(h: Hypergraph) -> bool:
    return h.n >= 1 and are_isomorphic(h, full_star(h.n))


def _dedupe(graphs: Iterable[Hypergraph]) -> list[CanonicalForm]:
    return sorted({canonical_form(g) for g in graphs})


class _Run:
    def __init__(self, comp: _Compiled, opts: dict, jobs: int):
        self.comp = comp
        self.opts = opts
        self.jobs = jobs
        self.nodes = 0

    def explore(self, roots: list[tuple[tuple[int, ...], int]], floor: int, orderly_depth: int):
        """Expand ``roots`` level by level (orderly filter), then run the subtrees.

        Returns (best, records). Records carry every node whose count reached
        the incumbent of the invocation that visited it.
        """
        comp, opts = self.comp, self.opts
        n = comp.n
        best = floor
        records: list[tuple[int, tuple[int, ...]]] = []
        frontier = list(roots)
        for _level in range(orderly_depth):
            nxt_frontier = []
            for forced, start in frontier:
                b, recs, nodes, children = _run_kernel(comp, opts, forced, start, best, expand_only=True)
                self.nodes += nodes
                if b > best and not opts["fixed_floor"]:
                    best = b
                records.extend((len(r), r) for r in recs)
                for t in children:
                    child = tuple(sorted(forced + (t,)))
                    if opts["orderly"]:
                        g = Hypergraph(n, tuple(comp.triples[i] for i in child))
                        if not is_canonical(g):
                            continue
                    nxt_frontier.append((child, t + 1))
            frontier = nxt_frontier
        tasks = [(forced, start, best) for forced, start in frontier]
        if self.jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(
                max_workers=self.jobs, initializer=_init_worker, initargs=(comp, opts)
            ) as ex:
                outs = list(ex.map(_task, tasks, chunksize=max(1, len(tasks) // (4 * self.jobs))))
        else:
            _init_worker(comp, opts)
            outs = [_task(t) for t in tasks]
        for b, recs, nodes in outs:
            self.nodes += nodes
            records.extend((len(r), r) for r in recs)
            if b > best and not opts["fixed_floor"]:
                best = b
        return best, records


def extremal_search(
    p: SearchProblem,
    *,
    max_n: int = DEFAULT_MAX_N,
    jobs: int = 1,
    iso_depth: int = 4,
    anchored: bool = True,
    seed: bool = True,
) -> SearchResult:
    """Exact optimum and full extremal family (up to isomorphism) of ``p``."""
    _check_n(p.n, max_n)
    t0 = time.perf_counter()
    n = p.n

    star_exclusion = p.exclude_subgraph_of is not None and _full_star_of(p.exclude_subgraph_of)
    floor, _ = seed_incumbent(p, star_exclusion) if seed else (-1, None)

    anchors: list[Hypergraph] = []
    required_sets = None
    if p.anchor is not None:
        anchors = [p.anchor]
    elif p.required is not None:
        members = []
        for g in p.required:
            if g.n <= n and all(not are_isomorphic(g.graph, m.graph) for m in members):
                members.append(g)
        if anchored:
            anchors = [g.graph for g in members]
            if not anchors:
                return SearchResult(None, [], 0, time.perf_counter() - t0)
        else:
            required_sets = [cp for g in members for cp in copies(g, n)]
            if not required_sets:
                return SearchResult(None, [], 0, time.perf_counter() - t0)

    comp = compile_universe(n, p.forbidden, required_sets=required_sets)
    deferred = p.exclude_subgraph_of is not None and not star_exclusion
    opts = {
        "connected": p.connected,
        "nonstar": star_exclusion,
        "fixed_floor": False,
        "orderly": not anchors,
    }
    run = _Run(comp, opts, jobs)

    if not anchors:
        roots = [((), 0)]
    else:
        roots = [(tuple(sorted(comp.index[e] for e in a.edges)), 0) for a in anchors]

    def collect(floor_value):
        best, records = run.explore(roots, floor_value, iso_depth)
        return best, records

    if not deferred:
        best, records = collect(floor)
        graphs = [
            Hypergraph(n, tuple(comp.triples[i] for i in r)) for size, r in records if size == best
        ]
        if best < 0 or not graphs:
            return SearchResult(None, [], run.nodes, time.perf_counter() - t0)
        result = SearchResult(best, _dedupe(graphs), run.nodes, time.perf_counter() - t0)
        return result

    # general exclusion: fixed floors from the unconstrained optimum downward,
    # exclusion checked on recorded graphs
    host = p.exclude_subgraph_of
    base_best, _ = collect(floor)
    opts["fixed_floor"] = True
    k = base_best
    lowest = max(floor, 0)
    while k >= lowest:
        _, records = collect(k)
        graphs = [
            Hypergraph(n, tuple(comp.triples[i] for i in r)) for size, r in records if size == k
        ]
        keep = [g for g in _dedupe(graphs) if not _embeds_into(g.to_hypergraph(), host)]
        if keep:
            return SearchResult(k, keep, run.nodes, time.perf_counter() - t0)
        k -= 1
    return SearchResult(None, [], run.nodes, time.perf_counter() - t0)


def constrained_max(
    n: int,
    universe: Sequence[tuple],
    forced: Sequence[tuple],
    forbidden: Sequence[Pattern],
    required_sets: Optional[Sequence[Sequence[tuple]]] = None,
) -> tuple[Optional[int], list[Hypergraph], int]:
    """Largest forbidden-free edge set with ``forced <= H <= universe``.

    With ``required_sets``, ``H`` must also contain one of them entirely.
    Returns ``(max_edges or None, optimal graphs as labeled, nodes)``.
    """
    comp = compile_universe(n, forbidden, universe=universe, required_sets=required_sets)
    opts = {"connected": False, "nonstar": False, "fixed_floor": False, "orderly": False}
    forced_idx = tuple(sorted(comp.index[e] for e in forced))
    best, recs, nodes, _ = _run_kernel(comp, opts, forced_idx, 0, -1)
    graphs = [Hypergraph(n, tuple(comp.triples[i] for i in r)) for r in recs if len(r) == best]
    if best < 0 or not graphs:
        return None, [], nodes
    return best, graphs, nodes


# ----------------------------------------------------------------------------
# public wrappers


def _store():
    from .store import default_store

    return default_store()


def _cached(p: SearchProblem, use_cache: bool, **kw) -> SearchResult:
    store = _store() if use_cache else None
    if store is not None:
        hit = store.get(p)
        if hit is not None:
            return hit
    res = extremal_search(p, **kw)
    if store is not None:
        store.put(p, res)
    return res


def turan(n: int, forbidden: Sequence[Pattern], *, use_cache: bool = False, **kw):
    """``(ex_3(n; F), extremal canonical forms)``; ``n = 0`` gives 0 by convention."""
    p = SearchProblem(n, tuple(forbidden))
    if n == 0:
        return 0, [CanonicalForm(0, ())]
    res = _cached(p, use_cache, **kw)
    return res.max_edges, res.extremal


def conditional_turan(
    n: int,
    forbidden: Sequence[Pattern],
    required: Sequence[Pattern],
    connected: bool = False,
    *,
    use_cache: bool = False,
    **kw,
):
    """``(ex_3(n; F | G), extremal forms)``; the count is ``None`` when infeasible."""
    p = SearchProblem(n, tuple(forbidden), tuple(required), connected=connected)
    res = _cached(p, use_cache, **kw)
    return res.max_edges, res.extremal


def second_order_problem(n: int, forbidden: Sequence[Pattern], **kw) -> SearchProblem:
    """Problem excluding subgraphs of the unique extremal graph; errors if not unique."""
    base = extremal_search(SearchProblem(n, tuple(forbidden)), **kw)
    if base.max_edges is None or len(base.extremal) != 1:
        raise SearchError(
            f"extremal family for n={n} has {len(base.extremal)} members; "
            "second-order number needs a unique extremal graph"
        )
    host = base.extremal[0].to_hypergraph()
    if len(host.edges) == len(all_triples(n)):
        raise SearchError(
            f"the extremal graph for n={n} is complete; every graph embeds into it"
        )
    return SearchProblem(n, tuple(forbidden), exclude_subgraph_of=host)


def second_order(n: int, forbidden: Sequence[Pattern], *, use_cache: bool = False, **kw):
    p = second_order_problem(n, forbidden, **kw)
    res = _cached(p, use_cache, **kw)
    return res.max_edges, res.extremal


def certify(result: SearchResult, p: SearchProblem) -> bool:
    """Re-check every listed graph against the constraints and the claimed count."""
    if result.max_edges is None:
        return not result.extremal
    if not result.extremal:
        return False
    star_excl = p.exclude_subgraph_of is not None and _full_star_of(p.exclude_subgraph_of)
    seen = set()
    prev = None
    for cf in result.extremal:
        if cf.n != p.n or len(cf.canonical_edges) != result.max_edges:
            return False
        try:
            h = Hypergraph(cf.n, cf.canonical_edges)
        except ValueError:
            return False
        if h.edges != tuple(cf.canonical_edges):
            return False
        if canonical_form(h) != cf or cf in seen:
            return False
        if prev is not None and not prev < cf:
            return False
        if not satisfies(p, h, star_exclusion=star_excl):
            return False
        seen.add(cf)
        prev = cf
    return True
