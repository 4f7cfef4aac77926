"""Compare the compiled and numpy multistart kernels on table knots.

    python benchmarks/bench_lm.py [--seeds 4096] [--repeat 3] [--knots 3_1 4_1 7_4]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from suturekit import kernels
from suturekit.diagram import wirtinger
from suturekit.repvar import _relation_array, _sample_starts
from suturekit.table import lookup


def bench(knot_id: str, seeds: int, repeat: int) -> dict:
    pres = wirtinger(lookup(knot_id).diagram())
    rel = _relation_array(pres)
    starts = _sample_starts(pres.n_generators, seeds, 0)
    row = {"knot": knot_id, "generators": pres.n_generators}
    results = {}
    for name in kernels.available_backends():
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            pts, res, _ = kernels.lm_batch(starts, rel, backend=name)
            best = min(best, time.perf_counter() - t0)
        row[name] = best
        results[name] = (pts, res)
    if len(results) == 2:
        (pa, ra), (pb, rb) = results.values()
        ok = (ra <= 1e-10) & (rb <= 1e-10)
        row["converged_agree"] = bool(np.array_equal(ra <= 1e-10, rb <= 1e-10))
        row["max_point_gap"] = float(np.max(np.abs(pa[ok] - pb[ok]))) if ok.any() else 0.0
    return row


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=4096)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--knots", nargs="*", default=["3_1", "4_1", "5_2", "6_3", "7_4", "7_7"])
    a = ap.parse_args()
    print(f"backends: {', '.join(kernels.available_backends())}; seeds {a.seeds}, best of {a.repeat}")
    for k in a.knots:
        r = bench(k, a.seeds, a.repeat)
        line = f"{r['knot']:>4}  n={r['generators']:<2}"
        for name in kernels.available_backends():
            line += f"  {name} {r[name]:7.3f}s"
        if "cython" in r and "numpy" in r:
            line += f"  speedup {r['numpy'] / r['cython']:5.1f}x"
            line += f"  agree {r['converged_agree']}  max gap {r['max_point_gap']:.1e}"
        print(line)


if __name__ == "__main__":
    main()
