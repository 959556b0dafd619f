"""Value tables for the main results, assembled from (cached) searches."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Optional

from .core import all_triples
from .patterns import build_pattern
from .search import (
    SearchError,
    SearchProblem,
    SearchResult,
    extremal_search,
)
from .store import ResultsStore


def solve(p: SearchProblem, store: Optional[ResultsStore] = None, **kw) -> SearchResult:
    if store is not None:
        hit = store.get(p)
        if hit is not None:
            return hit
    res = extremal_search(p, **kw)
    if store is not None:
        store.put(p, res)
    return res


def second_order_of(n: int, forbidden, store=None, **kw) -> tuple[SearchProblem, SearchResult]:
    """Second-order problem and result, via the cached unconstrained search."""
    base = solve(SearchProblem(n, tuple(forbidden)), store, **kw)
    if base.max_edges is None or len(base.extremal) != 1:
        raise SearchError(f"extremal family for n={n} has {len(base.extremal)} members")
    host = base.extremal[0].to_hypergraph()
    if len(host.edges) == len(all_triples(n)):
        raise SearchError(f"the extremal graph for n={n} is complete")
    p = SearchProblem(n, tuple(forbidden), exclude_subgraph_of=host)
    return p, solve(p, store, **kw)


@dataclass
class Table:
    theorem: str
    title: str
    columns: list[str]
    rows: list[list] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "title": self.title,
            "columns": self.columns,
            "rows": [dict(zip(self.columns, r)) for r in self.rows],
        }

    def render(self) -> str:
        cells = [[str(c) for c in self.columns]] + [["-" if v is None else str(v) for v in r] for r in self.rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(self.columns))]
        lines = [self.title]
        for k, r in enumerate(cells):
            lines.append("  ".join(v.rjust(w) for v, w in zip(r, widths)))
            if k == 0:
                lines.append("  ".join("-" * w for w in widths))
        return "\n".join(lines)


_AUDIT = ["nodes", "elapsed_ms"]


def _audit(res: SearchResult) -> list:
    return [res.nodes_explored, round(res.elapsed * 1000.0, 1)]


def _main(max_n, store, kw) -> Table:
    fam = [build_pattern("P3_3")]
    t = Table("main", "ex_3(n; P3_3) and the number of extremal classes", ["n", "ex", "|Ex|"] + _AUDIT)
    for n in range(3, max_n + 1):
        res = solve(SearchProblem(n, fam), store, **kw)
        t.rows.append([n, res.max_edges, len(res.extremal)] + _audit(res))
    return t


def _triangle(max_n, store, kw) -> Table:
    fam = [build_pattern("C3_3")]
    t = Table("triangle", "ex_3(n; C3_3) against C(n-1,2)", ["n", "ex", "C(n-1,2)", "|Ex|"] + _AUDIT)
    for n in range(6, max_n + 1):
        res = solve(SearchProblem(n, fam), store, **kw)
        t.rows.append([n, res.max_edges, comb(n - 1, 2), len(res.extremal)] + _audit(res))
    return t


def _conditional(max_n, store, kw) -> Table:
    f, g = [build_pattern("P3_3")], [build_pattern("C3_3")]
    t = Table(
        "conditional",
        "ex_3(n; P3_3 | C3_3), plain and connected",
        ["n", "ex", "|Ex|", "ex_con", "3n-8"] + _AUDIT,
    )
    for n in range(7, max_n + 1):
        res = solve(SearchProblem(n, f, g), store, **kw)
        con = solve(SearchProblem(n, f, g, connected=True), store, **kw)
        t.rows.append(
            [n, res.max_edges, len(res.extremal), con.max_edges, 3 * n - 8]
            + [res.nodes_explored + con.nodes_explored, round((res.elapsed + con.elapsed) * 1000.0, 1)]
        )
    return t


def _ekr(max_n, store, kw) -> Table:
    fam = [build_pattern("M2")]
    t = Table(
        "ekr",
        "ex_3(n; M2) and the second-order number against 3n-8",
        ["n", "ex", "C(n-1,2)", "ex2", "3n-8", "|Ex2|"] + _AUDIT,
    )
    for n in range(7, max_n + 1):
        res = solve(SearchProblem(n, fam), store, **kw)
        _, sec = second_order_of(n, fam, store, **kw)
        t.rows.append(
            [n, res.max_edges, comb(n - 1, 2), sec.max_edges, 3 * n - 8, len(sec.extremal)]
            + [res.nodes_explored + sec.nodes_explored, round((res.elapsed + sec.elapsed) * 1000.0, 1)]
        )
    return t


def _small_values(max_n, store, kw) -> Table:
    p, c, m = build_pattern("P3_3"), build_pattern("C3_3"), build_pattern("M2")
    t = Table(
        "conjecture",
        "small values of ex_3(n; P3_3 | M2) and ex_3(n; C3_3 | M2) beside construction lower bounds",
        ["n", "ex(P|M2)", "C(n-4,2)+4", "ex(C|M2)", "C(n-2,2)+1"] + _AUDIT,
    )
    for n in range(6, min(max_n, 8) + 1):
        a = solve(SearchProblem(n, [p], [m]), store, **kw)
        b = solve(SearchProblem(n, [c], [m]), store, **kw)
        t.rows.append(
            [n, a.max_edges, comb(n - 4, 2) + 4, b.max_edges, comb(n - 2, 2) + 1]
            + [a.nodes_explored + b.nodes_explored, round((a.elapsed + b.elapsed) * 1000.0, 1)]
        )
    return t


THEOREMS: dict[str, Callable] = {
    "main": _main,
    "triangle": _triangle,
    "conditional": _conditional,
    "ekr": _ekr,
    "conjecture": _small_values,
}


def build_report(theorem: str, upto: int = 8, store: Optional[ResultsStore] = None, **kw) -> list[Table]:
    names = list(THEOREMS) if theorem == "all" else [theorem]
    out = []
    for name in names:
        if name not in THEOREMS:
            raise SearchError(f"unknown theorem {name!r}; choose from all, {', '.join(THEOREMS)}")
        out.append(THEOREMS[name](upto, store, kw))
    return out
