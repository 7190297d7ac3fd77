"""Compare the numba kernels against the pure-Python fallback.

Each backend runs in its own interpreter because the choice is made at
import time from ``LCIS_DISABLE_NUMBA``.

    python3 benchmarks/bench_backends.py --sizes 500 2000 8000 --repeat 3
"""
import argparse
import json
import os
import subprocess
import sys
import time

WORKER = r"""
import json, math, sys, time
import numpy as np
from lcis._jit import BACKEND
from lcis.fast import lcis_fast
from lcis.oracle import lcis_length_dp
from lcis.veb import VebMap
from lcis.veb.reference import make_script, run_differential

sizes, repeat, dp_cap = json.loads(sys.argv[1])

def best(fn):
    fn()  # warm-up (and compile, for numba)
    out = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        out = min(out, time.perf_counter() - t0)
    return out

rows = []
for n in sizes:
    rng = np.random.default_rng(n)
    al = max(1, math.isqrt(n))
    a, b = rng.integers(1, al + 1, n), rng.integers(1, al + 1, n)
    rows.append({"backend": BACKEND, "task": "fast", "n": n, "seconds": best(lambda: lcis_fast(a, b))})
    if n <= dp_cap:
        rows.append({"backend": BACKEND, "task": "dp", "n": n, "seconds": best(lambda: lcis_length_dp(a, b))})
    script = make_script(4 * n, 10 * n, rng)
    def veb():
        m = VebMap(4 * n)
        run_differential(m.pool, m.root, 4 * n, *script)
    rows.append({"backend": BACKEND, "task": "veb", "n": n, "seconds": best(veb)})
print(json.dumps(rows))
"""


def run_backend(disable, sizes, repeat, dp_cap):
    env = dict(os.environ)
    if disable:
        env["LCIS_DISABLE_NUMBA"] = "1"
    else:
        env.pop("LCIS_DISABLE_NUMBA", None)
    t0 = time.perf_counter()
    out = subprocess.run(
        [sys.executable, "-c", WORKER, json.dumps([sizes, repeat, dp_cap])],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1]), time.perf_counter() - t0


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[500, 2000, 8000])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--dp-cap", type=int, default=4000, help="skip the quadratic DP above this n")
    ap.add_argument("--json", action="store_true", help="emit raw rows instead of a table")
    args = ap.parse_args(argv)

    rows, wall = [], {}
    for disable in (False, True):
        r, w = run_backend(disable, args.sizes, args.repeat, args.dp_cap)
        rows += r
        wall["python" if disable else "numba"] = w
    if args.json:
        print(json.dumps({"rows": rows, "wall": wall}, indent=1))
        return
    by = {(r["task"], r["n"], r["backend"]): r["seconds"] for r in rows}
    print(f"{'task':<6}{'n':>8}{'numba s':>12}{'python s':>12}{'speedup':>10}")
    for task in ("fast", "dp", "veb"):
        for n in args.sizes:
            nb, py = by.get((task, n, "numba")), by.get((task, n, "python"))
            if nb is None or py is None:
                continue
            print(f"{task:<6}{n:>8}{nb:>12.4f}{py:>12.4f}{py / nb:>9.1f}x")
    print(f"process wall time incl. startup: numba {wall['numba']:.1f} s, python {wall['python']:.1f} s")


if __name__ == "__main__":
    main()
