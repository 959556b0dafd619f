"""Mechanical checks of the triangle-frame configuration facts and small-s bounds.

Every check produces a :class:`Report`. Each instance records either an
explicit embedding witness of the path ``P3_3`` (host edges plus vertex map)
or the condition under which it is exempt. Failures are report content,
never exceptions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Optional

from . import _kernels
from .constructions import cover
from .core import Hypergraph, Triple
from .frame import TriangleFrame, x, y
from .patterns import Embedding, Pattern, build_pattern, find_embedding
from .search import constrained_max


class VerifyError(ValueError):
    pass


def _path() -> Pattern:
    return build_pattern("P3_3")


@dataclass
class Instance:
    label: str
    extra: list[Triple]
    witness: Optional[Embedding] = None
    exempt: Optional[str] = None
    ok: bool = True
    note: str = ""

    def to_json(self) -> dict:
        out: dict = {"instance": self.label, "extra_edges": [list(e) for e in self.extra]}
        if self.exempt is not None:
            out["exempt"] = self.exempt
        elif self.witness is not None:
            out["witness"] = {"map": list(self.witness.map)}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Report:
    check: str
    instances: list[Instance] = field(default_factory=list)
    params: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)
    symmetry: str = ""

    @property
    def failed(self) -> list[Instance]:
        return [i for i in self.instances if not i.ok]

    @property
    def n_passed(self) -> int:
        return sum(1 for i in self.instances if i.ok)

    @property
    def ok(self) -> bool:
        return not self.failed

    def to_json(self, include_witnesses: bool = True) -> dict:
        out = {
            "check": self.check,
            "instances": len(self.instances),
            "passed": self.n_passed,
            "failed": [i.to_json() for i in self.failed],
            "ok": self.ok,
            "params": self.params,
        }
        if self.values:
            out["values"] = self.values
        if self.symmetry:
            out["symmetry"] = self.symmetry
        if include_witnesses:
            out["witnesses"] = [i.to_json() for i in self.instances if i.ok]
        return out


def frame_host(frame: TriangleFrame, extra) -> Hypergraph:
    """The triangle ``C`` together with ``extra`` on the frame's vertex set."""
    return Hypergraph(frame.n, tuple(sorted(set(frame.C) | set(extra))))


def _path_instance(frame: TriangleFrame, label: str, extra) -> Instance:
    extra = sorted(set(extra))
    host = frame_host(frame, extra)
    emb = find_embedding(host, _path())
    if emb is None:
        return Instance(label, extra, ok=False, note="no P3_3 in host")
    return Instance(label, extra, witness=emb)


def _name(frame: TriangleFrame, e) -> str:
    return "{" + ",".join(frame.name(v) for v in e) + "}"


def _check_s(s: int, lo: int, what: str):
    if int(s) != s or s < lo:
        raise VerifyError(f"{what} needs s >= {lo}, got {s!r}")


def verify_cross_edges(s: int = 2) -> Report:
    """Every cross triple outside ``T`` already creates a path with the triangle alone."""
    _check_s(s, 2, "verify_cross_edges")
    fr = TriangleFrame(s)
    allowed = set(fr.T)
    rep = Report("cross", params={"s": s})
    for e in combinations(range(fr.n), 3):
        if fr.classify(e) != "cross":
            continue
        if e in allowed:
            rep.instances.append(Instance(_name(fr, e), [e], exempt="e in T"))
            continue
        rep.instances.append(_path_instance(fr, _name(fr, e), [e]))
    rep.symmetry = (
        "W vertices are interchangeable and a cross triple meets W in one or two "
        "vertices, so s=2 realizes every cross triple shape"
    )
    return rep


def verify_fact_pusto(s: int = 4) -> Report:
    """Any ``e`` in ``T`` meeting a triple ``g`` inside ``W`` gives a path."""
    _check_s(s, 4, "verify_fact_pusto")
    fr = TriangleFrame(s)
    rep = Report("pusto", params={"s": s})
    for e in fr.T:
        for g in fr.W_triples:
            label = f"e={_name(fr, e)} g={_name(fr, g)}"
            if not set(e) & set(g):
                rep.instances.append(Instance(label, [e, g], exempt="e and g disjoint"))
                continue
            rep.instances.append(_path_instance(fr, label, [e, g]))
    rep.symmetry = (
        "e meets W in one vertex and g is a W-triple through it; with s=4 both "
        "placements of g (containing or avoiding the other vertices) occur, and "
        "larger W adds only relabeled copies"
    )
    return rep


def verify_fact_disjoint(s: int = 2) -> Report:
    """Disjoint ``e`` in ``T1`` and ``f`` in ``T`` give a path."""
    _check_s(s, 2, "verify_fact_disjoint")
    fr = TriangleFrame(s)
    rep = Report("disjoint", params={"s": s})
    for e in fr.T1:
        for f in fr.T:
            label = f"e={_name(fr, e)} f={_name(fr, f)}"
            if set(e) & set(f):
                rep.instances.append(Instance(label, sorted({e, f}), exempt="e and f intersect"))
                continue
            rep.instances.append(_path_instance(fr, label, [e, f]))
    rep.symmetry = "disjoint e and f use two distinct W vertices, which s=2 provides"
    return rep


def _t(*vs) -> Triple:
    a, b, c = sorted(vs)
    return (a, b, c)


def exclusion_cases() -> list[tuple[str, TriangleFrame, list[Triple], list[Triple]]]:
    """(name, frame, witness edges, exclusion set) for each exclusion claim."""
    f2 = TriangleFrame(2)
    w = f2.w(1)
    cases = [
        ("X1", f2, [_t(x(1), y(1), w)], f2.X1),
        ("X2", f2, [_t(x(1), x(2), w)], f2.X2),
        ("Y", f2, [_t(x(1), x(2), w), _t(x(1), x(3), w)], f2.Y),
        ("Z1", f2, [_t(x(1), x(2), w), _t(x(1), x(3), w), _t(x(2), x(3), w)], f2.Z1),
    ]
    # Z2: h' and h'' through x1, y1 on distinct w', w''; the pair {x1x2w, x1x3w}
    # sits either on w' itself, on w'', or on a third vertex
    f3 = TriangleFrame(3)
    w1, w2, w3 = f3.w(1), f3.w(2), f3.w(3)
    base = [_t(x(1), y(1), w1), _t(x(1), y(1), w2)]
    for tag, wv in (("w=w'", w1), ("w=w''", w2), ("w distinct", w3)):
        cases.append(
            (f"Z2[{tag}]", f3, base + [_t(x(1), x(2), wv), _t(x(1), x(3), wv)], f3.Z2)
        )
    return cases


def verify_exclusions() -> Report:
    """Each excluded triple completes a path with the triangle and its witnesses.

    The witness configuration alone is also checked to be path-free, otherwise
    the exclusion would hold vacuously.
    """
    rep = Report("exclusions")
    sizes = {}
    for name, fr, wit, excl in exclusion_cases():
        sizes[name] = len(excl)
        base_free = find_embedding(frame_host(fr, wit), _path()) is None
        inst_base = Instance(f"{name}: witnesses alone", list(wit), exempt="path-free base")
        if not base_free:
            inst_base = Instance(
                f"{name}: witnesses alone", list(wit), ok=False,
                note="witness configuration already contains P3_3",
            )
        rep.instances.append(inst_base)
        for t in excl:
            label = f"{name}: t={_name(fr, t)}"
            if t in fr.C or t in wit:
                rep.instances.append(
                    Instance(label, list(wit), ok=False, note="excluded triple already present")
                )
                continue
            rep.instances.append(_path_instance(fr, label, list(wit) + [t]))
    rep.values = {"sizes": sizes}
    return rep


# ---------------------------------------------------------------------------
# bipartite graphs with bounded matching number


def _check_konig(t: int, s: int, m: int):
    for v in (t, s, m):
        if int(v) != v or v < 0:
            raise VerifyError("t, s, m must be non-negative integers")
    if not (t <= s and m <= t and s <= 6):
        raise VerifyError(f"need m <= t <= s <= 6, got t={t}, s={s}, m={m}")


@lru_cache(maxsize=None)
def _konig_max(t: int, s: int, m: int) -> int:
    """Max edge count of a ``t x s`` bipartite graph with matching number <= m.

    Rows are enumerated as non-increasing bitmasks (row order is irrelevant);
    a branch stops once its matching number exceeds ``m`` (adding edges never
    lowers it) or once full remaining rows could not beat the incumbent.
    """
    masks = list(range((1 << s) - 1, -1, -1))
    weight = [bin(v).count("1") for v in range(1 << s)]
    best = 0
    rows: list[int] = []

    def rec(i, lo, edges):
        nonlocal best
        if edges > best:
            best = edges
        if i == t or edges + (t - i) * s <= best:
            return
        for k in range(lo, len(masks)):
            r = masks[k]
            if edges + weight[r] * (t - i) <= best:
                continue
            rows.append(r)
            if _kernels.max_matching_size(rows, s) <= m:
                rec(i + 1, k, edges + weight[r])
            rows.pop()

    rec(0, 0, 0)
    return best


def verify_konig(t: int, s: int, m: int) -> tuple[int, bool]:
    _check_konig(t, s, m)
    best = _konig_max(t, s, m)
    return best, best == s * m


def verify_konig_all(max_s: int = 5) -> Report:
    rep = Report("konig", params={"max_s": max_s})
    table = {}
    for s in range(0, max_s + 1):
        for t in range(0, s + 1):
            for m in range(0, t + 1):
                best, ok = verify_konig(t, s, m)
                table[f"{t},{s},{m}"] = best
                rep.instances.append(
                    Instance(f"t={t} s={s} m={m}", [], exempt=f"max={best}, s*m={s * m}", ok=ok)
                )
    rep.values = {"max_edges": table}
    return rep


# ---------------------------------------------------------------------------
# small-s bounds by constrained exhaustive search


@dataclass
class _Max:
    value: Optional[int]
    witness: Optional[Hypergraph]
    nodes: int

    def to_json(self) -> dict:
        return {
            "max": self.value,
            "witness": [list(e) for e in self.witness.edges] if self.witness else None,
            "nodes": self.nodes,
        }


def _maximize(fr: TriangleFrame, universe, required=None, offset: int = 0) -> _Max:
    best, graphs, nodes = constrained_max(fr.n, sorted(universe), fr.C, [_path()], required)
    if best is None:
        return _Max(None, None, nodes)
    return _Max(best - offset, graphs[0], nodes)


def lemma_maxima(s: int) -> dict[str, _Max]:
    """True maxima behind the bounds for one ``s``.

    ``total``: |H[U]| + |H(U,W)| over path-free ``C <= H <= C(U,3) + T``.
    ``total_cross``: the same with at least one cross edge.
    ``cross``: |H & T| over path-free ``C <= H <= C + T``.
    ``cross1``: |H & T1| over path-free ``C <= H <= C + T1``.
    """
    fr = TriangleFrame(s)
    full = set(fr.U_triples) | set(fr.T)
    return {
        "total": _maximize(fr, full),
        "total_cross": _maximize(fr, full, required=[[e] for e in fr.T]),
        "cross": _maximize(fr, set(fr.C) | set(fr.T), offset=3),
        "cross1": _maximize(fr, set(fr.C) | set(fr.T1), offset=3),
    }


def verify_lemma_bounds(s: int) -> Report:
    if s not in (1, 2, 3):
        raise VerifyError(f"verify_lemma_bounds supports s in {{1, 2, 3}}, got {s!r}")
    mx = lemma_maxima(s)
    rep = Report("lemmas", params={"s": s})
    rep.values = {k: v.to_json() for k, v in mx.items()}

    def bound(label, key, limit):
        got = mx[key].value
        ok = got is not None and got <= limit
        inst = Instance(f"{label}: max={got} <= {limit}", [], exempt="bound holds" if ok else None, ok=ok)
        if not ok:
            inst.note = f"maximum {got} exceeds {limit}"
        rep.instances.append(inst)

    bound("total with a cross edge", "total_cross", 13 + max(3 * s, 6))
    if s >= 2:
        bound("total", "total", 14 + 3 * s)
    if s >= 3:
        bound("total with a cross edge, s>=3", "total_cross", 10 + 3 * s)
    if s >= 2:
        bound("|H & T|", "cross", 3 * s)
    if s >= 3:
        bound("|H & T1|", "cross1", s)
    return rep


# ---------------------------------------------------------------------------
# counting identities


def verify_counting_identities(max_s: int = 10, max_n: int = 20) -> Report:
    rep = Report("identities", params={"max_s": max_s, "max_n": max_n})
    for s in range(0, max_s + 1):
        fr = TriangleFrame(s)
        a, b = len(fr.T1), len(fr.T2)
        ok = a == b == 3 * s and len(set(fr.T)) == 6 * s
        rep.instances.append(Instance(f"|T1|=|T2|=3s at s={s}", [], exempt=f"{a}, {b}", ok=ok))
    for s in (1, 2, 3):
        m = 2 * s - 1
        for n in range(max(m, 3), max_n + 1):
            got = len(cover(n, m).edges)
            want = math.comb(n, 3) - math.comb(n - m, 3)
            rep.instances.append(
                Instance(f"|cover({n},{m})|", [], exempt=f"{got} = {want}", ok=got == want)
            )
    for n in range(3, max_n + 1):
        got = len(cover(n, 1).edges)
        rep.instances.append(
            Instance(f"|cover({n},1)| = C(n-1,2)", [], exempt=str(got), ok=got == math.comb(n - 1, 2))
        )
    return rep


# ---------------------------------------------------------------------------


def revalidate(rep: Report, s: Optional[int] = None) -> bool:
    """Re-check every emitted witness against its host, independently of the check."""
    pat = _path()
    frames = {}
    for inst in rep.instances:
        if inst.witness is None:
            continue
        need = max(max(e) for e in inst.extra) + 1 if inst.extra else 6
        k = s if s is not None else max(0, need - 6)
        fr = frames.setdefault(k, TriangleFrame(k))
        if not inst.witness.is_valid(frame_host(fr, inst.extra), pat):
            return False
    return True


FACTS = ("cross", "pusto", "disjoint", "exclusions", "konig", "lemmas", "identities")


def run_facts(which: str = "all", s: Optional[int] = None) -> list[Report]:
    """Reports for one fact name (or ``all``), at the default or a given ``s``."""
    names = FACTS if which == "all" else (which,)
    out = []
    for name in names:
        if name == "cross":
            out.append(verify_cross_edges(2 if s is None else s))
        elif name == "pusto":
            out.append(verify_fact_pusto(4 if s is None else s))
        elif name == "disjoint":
            out.append(verify_fact_disjoint(2 if s is None else s))
        elif name == "exclusions":
            out.append(verify_exclusions())
        elif name == "konig":
            out.append(verify_konig_all(5 if s is None else s))
        elif name == "lemmas":
            out.extend(verify_lemma_bounds(k) for k in ((1, 2, 3) if s is None else (s,)))
        elif name == "identities":
            out.append(verify_counting_identities())
        else:
            raise VerifyError(f"unknown fact {name!r}; choose from all, {', '.join(FACTS)}")
    return out
