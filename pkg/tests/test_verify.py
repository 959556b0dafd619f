import pytest

from turan3.frame import TriangleFrame, x, y
from turan3.patterns import build_pattern
from turan3.verify import (
    VerifyError,
    exclusion_cases,
    frame_host,
    lemma_maxima,
    revalidate,
    run_facts,
    verify_counting_identities,
    verify_cross_edges,
    verify_exclusions,
    verify_fact_disjoint,
    verify_fact_pusto,
    verify_konig,
    verify_lemma_bounds,
)

P = build_pattern("P3_3")


def _every_instance_accounted(rep):
    for inst in rep.instances:
        assert inst.witness is not None or inst.exempt is not None or not inst.ok


def _find(rep, extra):
    extra = sorted(extra)
    return next(i for i in rep.instances if i.extra == extra)


def test_cross_edges():
    rep = verify_cross_edges(2)
    assert rep.ok and len(rep.instances) == 36
    assert sum(i.exempt == "e in T" for i in rep.instances) == 12
    fr = TriangleFrame(2)
    e = tuple(sorted((y(1), y(2), fr.w(1))))
    inst = _find(rep, [e])
    assert inst.witness is not None and inst.witness.is_valid(frame_host(fr, [e]), P)
    assert _find(rep, [tuple(sorted((x(1), x(2), fr.w(1))))]).exempt == "e in T"
    assert revalidate(rep, 2)
    _every_instance_accounted(rep)


def test_cross_edges_larger_s():
    assert verify_cross_edges(3).ok


def test_pusto():
    rep = verify_fact_pusto(4)
    assert rep.ok and len(rep.instances) == 24 * 4
    fr = TriangleFrame(4)
    e = tuple(sorted((x(1), y(1), fr.w(1))))
    inst = _find(rep, [e, (fr.w(1), fr.w(2), fr.w(3))])
    assert inst.witness is not None
    assert any(i.exempt == "e and g disjoint" for i in rep.instances)
    assert revalidate(rep, 4)


def test_disjoint():
    rep = verify_fact_disjoint(2)
    assert rep.ok
    fr = TriangleFrame(2)
    e = tuple(sorted((x(1), y(1), fr.w(1))))
    f = tuple(sorted((x(2), y(2), fr.w(2))))
    assert _find(rep, [e, f]).witness is not None
    assert _find(rep, [e]).exempt == "e and f intersect"  # e = f
    assert revalidate(rep, 2)


@pytest.mark.parametrize("fn,bad", [(verify_cross_edges, 1), (verify_fact_pusto, 3), (verify_fact_disjoint, 1)])
def test_s_preconditions(fn, bad):
    with pytest.raises(VerifyError):
        fn(bad)


def test_exclusions():
    rep = verify_exclusions()
    assert rep.ok
    assert rep.values["sizes"] == {
        "X1": 7, "X2": 5, "Y": 8, "Z1": 10,
        "Z2[w=w']": 10, "Z2[w=w'']": 10, "Z2[w distinct]": 10,
    }
    # base configurations are path-free, so each exclusion is not vacuous
    assert all(i.ok for i in rep.instances if i.label.endswith("witnesses alone"))
    for name, fr, wit, excl in exclusion_cases():
        for t in excl:
            inst = next(i for i in rep.instances if i.label.startswith(name + ":") and i.extra == sorted(set(wit) | {t}))
            assert inst.witness.is_valid(frame_host(fr, inst.extra), P)


@pytest.mark.parametrize("args,want", [((3, 5, 1), (5, True)), ((2, 2, 2), (4, True)), ((3, 4, 2), (8, True))])
def test_konig_examples(args, want):
    assert verify_konig(*args) == want


def test_konig_brute_force_3x4():
    # all 2^12 bipartite graphs
    from turan3._kernels import max_matching_size

    for m in range(4):
        best = 0
        for code in range(1 << 12):
            rows = [(code >> (4 * r)) & 15 for r in range(3)]
            if max_matching_size(rows, 4) <= m:
                best = max(best, bin(code).count("1"))
        assert verify_konig(3, 4, m)[0] == best


@pytest.mark.parametrize("args", [(4, 3, 1), (2, 3, 3), (7, 7, 1), (-1, 2, 0)])
def test_konig_preconditions(args):
    with pytest.raises(VerifyError):
        verify_konig(*args)


def test_konig_s6():
    assert verify_konig(6, 6, 3) == (18, True)


def test_lemma_maxima_monotone_in_s():
    vals = [lemma_maxima(s) for s in (1, 2, 3)]
    cross = [v["cross"].value for v in vals]
    assert cross == sorted(cross)
    for s, v in zip((1, 2, 3), vals):
        assert v["total"].value == 20  # H[U] complete, no cross edges
        w = v["total_cross"].witness
        assert w is not None and any(TriangleFrame(s).classify(e) == "cross" for e in w.edges)


def test_lemma_range():
    with pytest.raises(VerifyError):
        verify_lemma_bounds(4)


def test_identities():
    rep = verify_counting_identities()
    assert rep.ok
    assert any(i.label == "|cover(7,3)|" and i.exempt == "31 = 31" for i in rep.instances)


def test_report_json_shape():
    rep = verify_fact_disjoint(2)
    d = rep.to_json()
    assert {"check", "instances", "passed", "failed"} <= set(d)
    assert d["instances"] == d["passed"] and d["failed"] == []
    assert all("witness" in w or "exempt" in w for w in d["witnesses"])


def test_run_facts_names():
    assert [r.check for r in run_facts("exclusions")] == ["exclusions"]
    with pytest.raises(VerifyError):
        run_facts("nope")
