"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N] [--end-to-end]

The end-to-end timings run ``crhom verify-paper`` in a subprocess, once
with ``CRHOM_PURE=1`` and once without.
"""

import argparse
import importlib
import os
import random
import subprocess
import sys
import time
import timeit
from fractions import Fraction


def _poly(rng, nvars, deg, nterms):
    out = {}
    for _ in range(nterms):
        m = tuple(sorted(rng.randrange(nvars) + 1001 for _ in range(rng.randint(0, deg))))
        out[m] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return {m: c for m, c in out.items() if c}


def _matrix(rng, r, c):
    return [[Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(c)] for _ in range(r)]


def workloads(seed=0):
    rng = random.Random(seed)
    pa, pb = _poly(rng, 4, 6, 60), _poly(rng, 4, 6, 60)
    rows = _matrix(rng, 24, 30)
    sparse = [[x if rng.random() < 0.2 else Fraction(0) for x in r] for r in _matrix(rng, 60, 80)]
    return {
        "poly_mul 60x60 terms": lambda k: k.poly_mul(pa, pb),
        "poly_add": lambda k: k.poly_add(pa, pb, Fraction(-3, 2)),
        "rref dense 24x30": lambda k: k.rref([list(r) for r in rows], 30),
        "rref sparse 60x80": lambda k: k.rref([list(r) for r in sparse], 80),
    }


def bench(repeat):
    mods = [importlib.import_module("crhom._kernels_py")]
    try:
        mods.append(importlib.import_module("crhom._kernels_c"))
    except ImportError:
        print("compiled kernels not built; timing the fallback only")
    print(f"{'workload':24s}" + "".join(f"{m.BACKEND:>12s}" for m in mods) + ("   speedup" if len(mods) == 2 else ""))
    for name, fn in workloads().items():
        times = []
        for m in mods:
            n, _ = timeit.Timer(lambda: fn(m)).autorange()
            best = min(timeit.repeat(lambda: fn(m), number=n, repeat=repeat)) / n
            times.append(best)
        row = f"{name:24s}" + "".join(f"{t * 1e3:10.3f}ms" for t in times)
        if len(times) == 2:
            row += f"   {times[0] / times[1]:6.2f}x"
        print(row)


def end_to_end():
    for label, env in (("python", {"CRHOM_PURE": "1"}), ("compiled", {})):
        t0 = time.perf_counter()
        subprocess.run(
            [sys.executable, "-m", "crhom", "verify-paper"],
            env={**os.environ, **env},
            stdout=subprocess.DEVNULL,
            check=False,
        )
        print(f"verify-paper ({label}): {time.perf_counter() - t0:.2f}s")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--end-to-end", action="store_true")
    a = ap.parse_args()
    bench(a.repeat)
    if a.end_to_end:
        end_to_end()


if __name__ == "__main__":
    main()
