"""Compiled against pure-Python GF(p) row reduction.

Runs the two rref kernels on identical random matrices, checks that they
agree, and reports the median time per call.  A second section times a
real workload (Hom/Ext tables of a Nakayama algebra) under each backend.

    python benchmarks/bench_gf.py --repeat 20
"""

from __future__ import annotations

import argparse
import json
import statistics
import time

import numpy as np

from nakcot.core import _gf_fallback, linalg
from nakcot.core.algebra import NakayamaAlgebra
from nakcot.core.category import ModCat

try:
    from nakcot.core import _gf
except ImportError:  # extension not built
    _gf = None


def _median_seconds(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def kernel_rows(sizes, primes, repeat: int, seed: int) -> list[dict]:
    rng = np.random.default_rng(seed)
    rows = []
    for p in primes:
        for n in sizes:
            a = rng.integers(0, p, size=(n, n + n // 2), dtype=np.int64)
            ref, piv = _gf_fallback.rref(a.copy(), p)
            row = {"p": p, "shape": list(a.shape), "python_s": _median_seconds(lambda: _gf_fallback.rref(a.copy(), p), repeat)}
            if _gf is not None:
                got, gpiv = _gf.rref(a.copy(), p)
                if not (np.array_equal(got, ref) and list(gpiv) == list(piv)):
                    raise AssertionError(f"backends disagree on a {a.shape} matrix over GF({p})")
                row["compiled_s"] = _median_seconds(lambda: _gf.rref(a.copy(), p), repeat)
                row["speedup"] = row["python_s"] / row["compiled_s"]
            rows.append(row)
    return rows


def workload_rows(n: int, m: int) -> list[dict]:
    rows = []
    backends = ["python"] + (["compiled"] if _gf is not None else [])
    tables = {}
    for name in backends:
        linalg.use_backend(name)
        cat = ModCat(NakayamaAlgebra(n, m))
        t0 = time.perf_counter()
        hom = cat.hom_table
        ext = [cat.ext_table(d) for d in range(1, cat.global_dimension + 1)]
        rows.append({"backend": name, "workload": f"hom+ext tables n={n} m={m}", "seconds": time.perf_counter() - t0})
        tables[name] = (hom, ext)
    if len(tables) == 2:
        (h1, e1), (h2, e2) = tables.values()
        if not (np.array_equal(h1, h2) and all(np.array_equal(x, y) for x, y in zip(e1, e2))):
            raise AssertionError("backends produce different tables")
    linalg.use_backend("compiled" if _gf is not None else "python")
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--sizes", default="8,16,32,64,128")
    ap.add_argument("--primes", default="2,3,7")
    ap.add_argument("--repeat", type=int, default=15)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true", help="print JSON instead of a table")
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    primes = [int(s) for s in args.primes.split(",")]
    kern = kernel_rows(sizes, primes, args.repeat, args.seed)
    work = workload_rows(9, 4)
    if args.json:
        print(json.dumps({"kernel": kern, "workload": work}, indent=2))
        return
    if _gf is None:
        print("compiled extension not built; python timings only")
    print(f"{'p':>3} {'shape':>10} {'python ms':>10} {'compiled ms':>12} {'speedup':>8}")
    for r in kern:
        shape = "x".join(map(str, r["shape"]))
        comp = f"{1e3 * r['compiled_s']:12.3f}" if "compiled_s" in r else f"{'-':>12}"
        sp = f"{r['speedup']:8.1f}" if "speedup" in r else f"{'-':>8}"
        print(f"{r['p']:>3} {shape:>10} {1e3 * r['python_s']:10.3f} {comp} {sp}")
    print()
    for r in work:
        print(f"{r['backend']:>9}: {r['workload']} in {r['seconds']:.2f}s")


if __name__ == "__main__":
    main()
