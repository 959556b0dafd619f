"""Hot loops of the extremal search.

The same source runs either compiled with numba (default) or as plain
Python over numpy arrays. Set ``TURAN_JIT=0`` to force the pure path.

Universe: candidate triples indexed ``0..N-1``; ``tri[t]`` holds the three
vertices. A conflict set is a set of triple indices that must not all be
chosen (the edge set of one forbidden copy). A required set is a set of
triple indices of which at least one must be fully chosen.
"""

from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False


def jit_enabled() -> bool:
    flag = os.environ.get("TURAN_JIT", "1").strip().lower()
    return HAVE_NUMBA and flag not in ("0", "false", "no", "off")


def _add(t, in_s, killed, cnt, cs_ptr, cs_mem, tr_ptr, tr_sets):
    in_s[t] = 1
    for k in range(tr_ptr[t], tr_ptr[t + 1]):
        c = tr_sets[k]
        cnt[c] += 1
        if cnt[c] == cs_ptr[c + 1] - cs_ptr[c] - 1:
            for j in range(cs_ptr[c], cs_ptr[c + 1]):
                m = cs_mem[j]
                if in_s[m] == 0:
                    killed[m] += 1
                    break


def _remove(t, in_s, killed, cnt, cs_ptr, cs_mem, tr_ptr, tr_sets):
    for k in range(tr_ptr[t], tr_ptr[t + 1]):
        c = tr_sets[k]
        if cnt[c] == cs_ptr[c + 1] - cs_ptr[c] - 1:
            for j in range(cs_ptr[c], cs_ptr[c + 1]):
                m = cs_mem[j]
                if in_s[m] == 0:
                    killed[m] -= 1
                    break
        cnt[c] -= 1
    in_s[t] = 0


def _feasible(in_s, n_tri, tri, nverts, req_ptr, req_mem, want_connected, want_nonstar):
    n_req = req_ptr.shape[0] - 1
    if n_req > 0:
        ok = False
        for r in range(n_req):
            full = True
            for j in range(req_ptr[r], req_ptr[r + 1]):
                if in_s[req_mem[j]] == 0:
                    full = False
                    break
            if full:
                ok = True
                break
        if not ok:
            return False
    if want_nonstar:
        common = (1 << nverts) - 1
        m = 0
        for t in range(n_tri):
            if in_s[t]:
                m += 1
                common &= (1 << tri[t, 0]) | (1 << tri[t, 1]) | (1 << tri[t, 2])
        if m == 0 or common != 0:
            return False
    if want_connected and nverts > 1:
        parent = np.arange(nverts)
        covered = np.zeros(nverts, np.uint8)
        for t in range(n_tri):
            if in_s[t]:
                a = tri[t, 0]
                while parent[a] != a:
                    a = parent[a]
                for q in range(3):
                    v = tri[t, q]
                    covered[v] = 1
                    while parent[v] != v:
                        v = parent[v]
                    if v != a:
                        parent[v] = a
        for v in range(nverts):
            if covered[v] == 0:
                return False
        root = 0
        while parent[root] != root:
            root = parent[root]
        for v in range(nverts):
            r = v
            while parent[r] != r:
                r = parent[r]
            if r != root:
                return False
    return True


def _search(
    n_tri, tri, nverts, forced, start, floor, fixed_floor, expand_only,
    cs_ptr, cs_mem, tr_ptr, tr_sets, req_ptr, req_mem, want_connected, want_nonstar,
):
    """Depth-first include-branching over triple indices >= ``start``.

    Returns ``(best, records, n_records, nodes, children, n_children)``.
    A node whose edge count is at least ``best`` and that passes the
    record-time filters is stored; without ``fixed_floor`` the incumbent
    rises to the largest count seen and earlier records are dropped.
    With ``expand_only`` only the root is visited and its admissible
    children are returned instead of being explored.
    """
    n_sets = cs_ptr.shape[0] - 1
    in_s = np.zeros(n_tri, np.uint8)
    killed = np.zeros(n_tri, np.int32)
    cnt = np.zeros(n_sets, np.int32)
    for f in forced:
        in_s[f] = 1
    for c in range(n_sets):
        k = 0
        for j in range(cs_ptr[c], cs_ptr[c + 1]):
            k += in_s[cs_mem[j]]
        cnt[c] = k
        if k == cs_ptr[c + 1] - cs_ptr[c] - 1:
            for j in range(cs_ptr[c], cs_ptr[c + 1]):
                if in_s[cs_mem[j]] == 0:
                    killed[cs_mem[j]] += 1
                    break
    size0 = forced.shape[0]
    best = floor
    cap = 64
    records = np.zeros((cap, n_tri), np.uint8)
    n_rec = 0
    nodes = 0
    children = np.zeros(n_tri, np.int64)
    n_children = 0
    chosen = np.zeros(n_tri + 1, np.int64)
    nxt = np.zeros(n_tri + 2, np.int64)
    suf = np.zeros((n_tri + 2, n_tri + 1), np.int32)
    d = 0
    nxt[0] = start
    entering = True
    while True:
        size = size0 + d
        if entering:
            entering = False
            nodes += 1
            lo = nxt[d]
            suf[d, n_tri] = 0
            for t in range(n_tri - 1, lo - 1, -1):
                alive = 1 if (in_s[t] == 0 and killed[t] == 0) else 0
                suf[d, t] = suf[d, t + 1] + alive
            if best < 0 or size >= best:
                if _feasible(in_s, n_tri, tri, nverts, req_ptr, req_mem, want_connected, want_nonstar):
                    if size > best and not fixed_floor:
                        best = size
                        n_rec = 0
                    if n_rec == cap:
                        bigger = np.zeros((2 * cap, n_tri), np.uint8)
                        bigger[:cap] = records
                        records = bigger
                        cap *= 2
                    records[n_rec, :] = in_s
                    n_rec += 1
            if expand_only:
                for t in range(lo, n_tri):
                    if in_s[t] == 0 and killed[t] == 0:
                        if best >= 0 and size + suf[d, t] < best:
                            break
                        children[n_children] = t
                        n_children += 1
                break
        t = nxt[d]
        while t < n_tri and (in_s[t] != 0 or killed[t] != 0):
            t += 1
        if t < n_tri and best >= 0 and size + suf[d, t] < best:
            t = n_tri
        if t >= n_tri:
            if d == 0:
                break
            d -= 1
            _remove(chosen[d], in_s, killed, cnt, cs_ptr, cs_mem, tr_ptr, tr_sets)
            nxt[d] = chosen[d] + 1
            continue
        _add(t, in_s, killed, cnt, cs_ptr, cs_mem, tr_ptr, tr_sets)
        chosen[d] = t
        d += 1
        nxt[d] = t + 1
        entering = True
    return best, records, n_rec, nodes, children, n_children


_py_search = _search

if HAVE_NUMBA:
    _add_jit = numba.njit(cache=True)(_add)
    _remove_jit = numba.njit(cache=True)(_remove)
    _feasible_jit = numba.njit(cache=True)(_feasible)
else:  # pragma: no cover
    _add_jit = _remove_jit = _feasible_jit = None

_jit_search = None


def _compiled():
    """Compile ``_search`` against the jitted helpers (done once, cached on disk)."""
    global _jit_search
    if _jit_search is None:
        glb = dict(_search.__globals__)
        glb.update(_add=_add_jit, _remove=_remove_jit, _feasible=_feasible_jit)
        fn = type(_search)(_search.__code__, glb, "_search_jit")
        _jit_search = numba.njit(cache=True)(fn)
    return _jit_search


def search(*args):
    if jit_enabled():
        return _compiled()(*args)
    return _py_search(*args)


def max_matching_size(rows, n_right):
    """Maximum matching of a bipartite graph given as row bitmasks (augmenting paths)."""
    t = len(rows)
    match_right = [-1] * n_right

    def augment(r, seen):
        m = rows[r]
        for c in range(n_right):
            if m >> c & 1 and not seen[c]:
                seen[c] = True
                if match_right[c] < 0 or augment(match_right[c], seen):
                    match_right[c] = r
                    return True
        return False

    size = 0
    for r in range(t):
        if augment(r, [False] * n_right):
            size += 1
    return size
