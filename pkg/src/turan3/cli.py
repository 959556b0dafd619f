"""Command-line front end. Exit codes: 0 success, 1 check/verify failure, 2 usage error."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import report as rp
from .constructions import build
from .core import HypergraphError, encode, read_h3
from .patterns import PatternError, first_witness, parse_family
from .search import DEFAULT_MAX_N, SearchError, SearchProblem, certify
from .store import default_store
from .verify import FACTS, VerifyError, run_facts


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise _Usage()


class _Usage(Exception):
    pass


def _search_flags(sp, *, require_required=False):
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--forbid", required=True, help="comma-separated pattern ids, e.g. P3_3,C3_3")
    sp.add_argument("--require", required=require_required, help="comma-separated required pattern ids")
    sp.add_argument("--connected", action="store_true")
    sp.add_argument("--second-order", action="store_true")
    sp.add_argument("--emit-extremal", metavar="OUT.json")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    sp.add_argument("--no-cache", action="store_true", help="neither read nor write the results store")


def make_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="turan", description="Exact small Turan numbers of 3-graphs")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    _search_flags(sub.add_parser("turan", help="ex_3(n; F), optionally conditional or second order"))
    _search_flags(sub.add_parser("conditional", help="ex_3(n; F | G)"), require_required=True)
    _search_flags(sub.add_parser("second-order", help="second-order number"))

    c = sub.add_parser("construct", help="write a named construction as .h3")
    c.add_argument("--kind", required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--m", type=int)
    c.add_argument("-o", "--output")

    k = sub.add_parser("check", help="test an .h3 file for forbidden patterns")
    k.add_argument("--file", required=True)
    k.add_argument("--forbid", required=True)

    v = sub.add_parser("verify", help="configuration fact checks")
    v.add_argument("--facts", default="all", choices=("all",) + FACTS)
    v.add_argument("--s", type=int)
    v.add_argument("--witnesses", action="store_true", help="include passing witnesses in the JSON")

    r = sub.add_parser("report", help="value tables for the main results")
    r.add_argument("--theorem", default="main", choices=("all",) + tuple(rp.THEOREMS))
    r.add_argument("--max-n", type=int, default=8)
    r.add_argument("--jobs", type=int, default=1)
    r.add_argument("--json", action="store_true")
    r.add_argument("--no-cache", action="store_true")
    return ap


def _cmd_search(a) -> int:
    if a.cmd == "second-order":
        a.second_order = True
    forbidden = parse_family(a.forbid)
    required = parse_family(a.require) if a.require else None
    store = None if a.no_cache else default_store()
    kw = {"jobs": a.jobs, "max_n": a.max_n}
    if a.second_order:
        if required is not None or a.connected:
            raise SearchError("--second-order cannot be combined with --require or --connected")
        p, res = rp.second_order_of(a.n, forbidden, store, **kw)
    else:
        p = SearchProblem(a.n, tuple(forbidden), tuple(required) if required else None, connected=a.connected)
        res = rp.solve(p, store, **kw)
    if res.max_edges is None:
        print("max_edges: NONE (no hypergraph meets the constraints)")
    else:
        print(f"max_edges: {res.max_edges}")
    print(f"extremal classes: {len(res.extremal)}")
    for i, cf in enumerate(res.extremal):
        print(f"  [{i}] " + " ".join("".join(str(v) for v in e) if cf.n <= 10 else "-".join(map(str, e))
                                      for e in cf.canonical_edges))
    print(f"nodes explored: {res.nodes_explored}, elapsed: {res.elapsed * 1000.0:.1f} ms")
    if a.emit_extremal:
        with open(a.emit_extremal, "w", encoding="utf-8") as fh:
            json.dump(res.to_json(p), fh)
            fh.write("\n")
    return 0 if certify(res, p) else 1


def _cmd_construct(a) -> int:
    h = build(a.kind, a.n, a.m)
    text = encode(h)
    if a.output:
        with open(a.output, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
        print(f"wrote {a.kind}({a.n}) with {len(h.edges)} edges to {a.output}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_check(a) -> int:
    h = read_h3(a.file)
    fam = parse_family(a.forbid)
    hit = first_witness(h, fam)
    if hit is None:
        print("FREE")
        return 0
    pat, emb = hit
    print(f"CONTAINS {pat.id}")
    print("map: " + " ".join(f"{i}->{v}" for i, v in enumerate(emb.map)))
    print("edges: " + " ".join("{%d,%d,%d}" % e for e in emb.image(pat)))
    return 1


def _cmd_verify(a) -> int:
    reps = run_facts(a.facts, a.s)
    out = [r.to_json(include_witnesses=a.witnesses) for r in reps]
    json.dump(out if len(out) > 1 else out[0], sys.stdout, indent=1)
    sys.stdout.write("\n")
    return 0 if all(r.ok for r in reps) else 1


def _cmd_report(a) -> int:
    store = None if a.no_cache else default_store()
    tables = rp.build_report(a.theorem, a.max_n, store, jobs=a.jobs, max_n=max(a.max_n, DEFAULT_MAX_N))
    if a.json:
        json.dump([t.to_json() for t in tables], sys.stdout, indent=1)
        sys.stdout.write("\n")
    else:
        print("\n\n".join(t.render() for t in tables))
    return 0


_COMMANDS = {
    "turan": _cmd_search,
    "conditional": _cmd_search,
    "second-order": _cmd_search,
    "construct": _cmd_construct,
    "check": _cmd_check,
    "verify": _cmd_verify,
    "report": _cmd_report,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    ap = make_parser()
    try:
        a = ap.parse_args(argv)
    except _Usage:
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return _COMMANDS[a.cmd](a)
    except (SearchError, PatternError, HypergraphError, VerifyError, OSError) as exc:
        print(f"turan {a.cmd}: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
