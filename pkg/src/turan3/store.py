"""Append-only JSON-lines cache of search results keyed by problem fingerprint."""

from __future__ import annotations

import json
import logging
import os
from pathlib import Path
from typing import Optional

from .core import Hypergraph
from .patterns import Pattern
from .search import SearchProblem, SearchResult, certify

log = logging.getLogger(__name__)

ENV_VAR = "TURAN_CACHE"


def default_path() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "turan3" / "results.jsonl"


def _graph_json(h: Optional[Hypergraph]):
    if h is None:
        return None
    return {"n": h.n, "edges": [list(e) for e in h.edges]}


def _graph_from(d) -> Optional[Hypergraph]:
    if d is None:
        return None
    return Hypergraph(int(d["n"]), tuple(tuple(e) for e in d["edges"]))


def _pattern_json(p: Pattern) -> dict:
    return {"id": p.id, **_graph_json(p.graph)}


def problem_to_json(p: SearchProblem) -> dict:
    return {
        "n": p.n,
        "forbidden": [_pattern_json(f) for f in p.forbidden],
        "required": [_pattern_json(g) for g in p.required] if p.required else None,
        "connected": p.connected,
        "exclude_subgraph_of": _graph_json(p.exclude_subgraph_of),
        "anchor": _graph_json(p.anchor),
    }


def problem_from_json(d: dict) -> SearchProblem:
    def pats(items):
        return tuple(Pattern(it["id"], _graph_from(it)) for it in items)

    return SearchProblem(
        n=int(d["n"]),
        forbidden=pats(d["forbidden"]),
        required=pats(d["required"]) if d.get("required") else None,
        connected=bool(d["connected"]),
        exclude_subgraph_of=_graph_from(d.get("exclude_subgraph_of")),
        anchor=_graph_from(d.get("anchor")),
    )


class ResultsStore:
    """Fingerprint -> SearchResult, persisted one JSON object per line.

    Lines that fail to parse, or whose result does not certify against its
    problem, are skipped with a warning. A later line for the same
    fingerprint replaces an earlier one.
    """

    def __init__(self, path):
        self.path = Path(path)
        self.entries: dict[str, tuple[SearchProblem, SearchResult]] = {}
        self._load()

    def _load(self):
        if not self.path.exists():
            return
        with open(self.path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    rec = json.loads(line)
                    prob = problem_from_json(rec["problem"])
                    res = SearchResult.from_json(rec["result"])
                    if rec["fingerprint"] != prob.fingerprint():
                        raise ValueError("fingerprint mismatch")
                except (ValueError, KeyError, TypeError) as exc:
                    log.warning("%s:%d: skipping corrupt cache entry (%s)", self.path, lineno, exc)
                    continue
                if not certify(res, prob):
                    log.warning("%s:%d: skipping cache entry that fails certification", self.path, lineno)
                    continue
                self.entries[rec["fingerprint"]] = (prob, res)

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, p: SearchProblem) -> Optional[SearchResult]:
        hit = self.entries.get(p.fingerprint())
        return hit[1] if hit else None

    def put(self, p: SearchProblem, res: SearchResult) -> None:
        fp = p.fingerprint()
        old = self.entries.get(fp)
        if old is not None and old[1].to_json(p) == res.to_json(p):
            return
        rec = {"fingerprint": fp, "problem": problem_to_json(p), "result": res.to_json(p)}
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
        self.entries[fp] = (p, res)


_DEFAULT: dict[Path, ResultsStore] = {}


def default_store() -> ResultsStore:
    path = default_path()
    if path not in _DEFAULT:
        _DEFAULT[path] = ResultsStore(path)
    return _DEFAULT[path]


def cache_get(p: SearchProblem, store: Optional[ResultsStore] = None) -> Optional[SearchResult]:
    return (store or default_store()).get(p)


def cache_put(p: SearchProblem, res: SearchResult, store: Optional[ResultsStore] = None) -> None:
    (store or default_store()).put(p, res)
