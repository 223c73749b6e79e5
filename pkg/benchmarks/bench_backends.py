"""Wall time of the numba kernels against the pure-numpy kernels.

Each backend runs in its own interpreter because TWAPSP_BACKEND is read at
import time. Usage:

    python benchmarks/bench_backends.py [--n 100 200 400] [--width 10] [--reps 3]
"""

import argparse
import json
import os
import subprocess
import sys

CHILD = """
import json, statistics, sys, time
from twapsp import _backend, apsp
from twapsp.generators import gen_chordal
from twapsp.heaps import HeapKind
from twapsp.ordering import Heuristic, order_vertices

sizes, width, reps = json.loads(sys.argv[1])
rows = []
for n in sizes:
    g = gen_chordal(n, width, n)
    d = order_vertices(g, Heuristic.MIN_DEGREE)
    solvers = {
        "CHLEQ": lambda: apsp.chleq_apsp(g, d),
        "SNOWBALL": lambda: apsp.snowball(g, d),
        "SNOWBALL_SEP": lambda: apsp.snowball_separators(g, d),
        "FLOYD_WARSHALL": lambda: apsp.floyd_warshall(g),
        "JOHNSON": lambda: apsp.johnson(g, HeapKind.BINARY),
    }
    for name, fn in solvers.items():
        fn()  # compile or warm caches
        times = []
        for _ in range(reps):
            t = time.perf_counter()
            fn()
            times.append(time.perf_counter() - t)
        rows.append([n, name, statistics.median(times)])
json.dump({"backend": _backend.BACKEND, "rows": rows}, sys.stdout)
"""


def run(backend, sizes, width, reps):
    env = dict(os.environ, TWAPSP_BACKEND=backend)
    arg = json.dumps([sizes, width, reps])
    out = subprocess.run([sys.executable, "-c", CHILD, arg], env=env, check=True,
                         capture_output=True, text=True)
    return json.loads(out.stdout)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, nargs="+", default=[100, 200, 400])
    p.add_argument("--width", type=int, default=10)
    p.add_argument("--reps", type=int, default=3)
    args = p.parse_args(argv)

    fast = run("numba", args.n, args.width, args.reps)
    slow = run("numpy", args.n, args.width, args.reps)
    if fast["backend"] != "numba":
        print("numba is not installed; both columns use the numpy kernels", file=sys.stderr)
    print(f"{'n':>6} {'algorithm':<15} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    for (n, name, a), (_, _, b) in zip(fast["rows"], slow["rows"]):
        print(f"{n:>6} {name:<15} {a:>10.4f} {b:>10.4f} {b / a:>8.1f}")


if __name__ == "__main__":
    main()
