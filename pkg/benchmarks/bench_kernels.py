"""Compare the compiled kernel backend against the pure-Python fallback.

The backend is chosen at import time, so each (workload, backend) cell runs
in a fresh subprocess with MACLANE_PURE_PYTHON set accordingly.  Workloads
are real call paths, not microloops: a full degree-3 cohomology computation,
the five-equation scan of the order-25 categorical-ring example, and a raw
defect scan of the eight cocycle equations on an order-4 ring.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import os
import subprocess
import sys
import time

WORKLOADS = {}


def workload(fn):
    WORKLOADS[fn.__name__] = fn
    return fn


@workload
def cohomology_z4_degree3():
    """H^3 of Z/4 on Z/2 via reduction, kernel search included."""
    from maclane import engine, rings
    R = rings.make_zn(4)
    M = rings.make_bimodule_via_hom(R, 2, [0, 1, 0, 1])
    H = engine.cohomology(R, M, 3)
    assert H.order == 2


@workload
def catring_scan_n5():
    """check_R1_R5 on the (Z/5)[e] example: 9.7M tuples in the worst
    equation."""
    from maclane import catring
    R, M, lam = catring.appendix_lambda(5)
    assert catring.check_R1_R5(R, M, lam) == []


@workload
def cocycle_scan_dual():
    """Defect scan of the degree-3 cocycle system for a random cochain over
    (Z/2)[e]; counts only, no collection."""
    from maclane import cochains, equations, kernels, rings
    import random
    R = rings.make_dual_numbers(rings.make_zn(2))
    M = rings.make_bimodule_via_hom(R, 2, [0, 0, 1, 1])
    c = cochains.random_cochain(R, M, "maclane3", random.Random(1))
    for _ in range(20):
        kernels.check_system(equations.SYSTEMS["maclane3"], R, M, c.tables,
                             collect="count")


def run_child(name):
    t0 = time.perf_counter()
    WORKLOADS[name]()
    print(f"{time.perf_counter() - t0:.4f}")


def run_cell(name, pure, repeat):
    env = dict(os.environ)
    env.pop("MACLANE_PURE_PYTHON", None)
    if pure:
        env["MACLANE_PURE_PYTHON"] = "1"
    best = None
    for _ in range(repeat):
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--workload", name],
            env=env, capture_output=True, text=True, check=True)
        t = float(out.stdout.strip())
        best = t if best is None else min(best, t)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--workload", help=argparse.SUPPRESS)
    ap.add_argument("--repeat", type=int, default=3,
                    help="runs per cell, best time wins (default 3)")
    args = ap.parse_args()
    if args.workload:
        run_child(args.workload)
        return
    from maclane.kernels import BACKEND
    if BACKEND != "compiled":
        print("note: compiled backend unavailable, both columns are pure",
              file=sys.stderr)
    width = max(len(n) for n in WORKLOADS)
    print(f"{'workload':<{width}}  {'compiled':>9}  {'pure':>9}  {'ratio':>6}")
    for name in WORKLOADS:
        fast = run_cell(name, pure=False, repeat=args.repeat)
        slow = run_cell(name, pure=True, repeat=args.repeat)
        ratio = slow / fast if fast else float("inf")
        print(f"{name:<{width}}  {fast:>8.3f}s  {slow:>8.3f}s  {ratio:>5.1f}x")


if __name__ == "__main__":
    main()
