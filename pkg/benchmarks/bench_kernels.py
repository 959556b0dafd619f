"""Search kernel timing: numba-compiled vs the pure numpy/Python path.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--quick]

Both paths run the same kernel source on the same compiled problems; node
counts must agree, so any mismatch is reported as an error.
"""
import argparse
import time

from turan3 import _kernels
from turan3.patterns import build_pattern
from turan3.search import SearchProblem, _Run, compile_universe, seed_incumbent


def cases(quick):
    P, C, M2 = build_pattern("P3_3"), build_pattern("C3_3"), build_pattern("M2")
    out = [
        ("ex(6; C3_3)", SearchProblem(6, (C,))),
        ("ex(7; M2)", SearchProblem(7, (M2,))),
        ("ex(7; P3_3)", SearchProblem(7, (P,))),
    ]
    if not quick:
        out += [("ex(8; C3_3)", SearchProblem(8, (C,))), ("ex(8; P3_3)", SearchProblem(8, (P,)))]
    return out


def run_kernel(p, jit):
    # plain unanchored search without orderly pruning: every node goes through the kernel
    _kernels.jit_enabled = (lambda: jit) if jit else (lambda: False)
    comp = compile_universe(p.n, p.forbidden)
    floor, _ = seed_incumbent(p)
    opts = {"connected": False, "nonstar": False, "fixed_floor": False, "orderly": False}
    run = _Run(comp, opts, jobs=1)
    t = time.perf_counter()
    best, _ = run.explore([((), 0)], floor, 0)
    return best, run.nodes, time.perf_counter() - t


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true")
    a = ap.parse_args()
    if not _kernels.HAVE_NUMBA:
        print("numba not installed; only the pure path is available")
        return
    original = _kernels.jit_enabled
    _kernels.jit_enabled = lambda: True
    t = time.perf_counter()
    run_kernel(SearchProblem(4, (build_pattern("K4_3"),)), True)  # first call compiles or loads the cache
    print(f"first numba call (compile or cache load): {time.perf_counter() - t:.2f}s")
    print(f"{'problem':<14}{'max':>5}{'nodes':>10}{'numba s':>10}{'pure s':>10}{'speedup':>9}")
    try:
        for name, p in cases(a.quick):
            fast = min(run_kernel(p, True)[2] for _ in range(a.repeat))
            best, nodes, _ = run_kernel(p, True)
            b2, n2, slow = run_kernel(p, False)
            if (b2, n2) != (best, nodes):
                raise SystemExit(f"{name}: paths disagree ({best}, {nodes}) vs ({b2}, {n2})")
            print(f"{name:<14}{best:>5}{nodes:>10}{fast:>10.4f}{slow:>10.3f}{slow / fast:>8.0f}x")
    finally:
        _kernels.jit_enabled = original


if __name__ == "__main__":
    main()
