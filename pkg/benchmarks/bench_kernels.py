"""Compare the compiled and numpy kernel backends on the hot loops.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from negadual import _pykernels
from negadual.codes import _chunks, _prime_matrix, digit_tables
from negadual.construct import build_theorem2, build_theorem7, grs_self_dual, shorten_theorem3

try:
    from negadual import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None


def _enumerate(mod, C):
    F = C.field
    T = digit_tables(C)
    out = [mod.min_weight_chunk(T, F.p, C.n, F.m, lead, fixed, 0) for lead, fixed in _chunks(C.k, F.order)]
    return min(r[0] for r in out), sum(r[1] for r in out)


def _minors(mod, C):
    F = C.field
    inv = np.zeros(F.p, dtype=np.int64)
    inv[1:] = [pow(a, -1, F.p) for a in range(1, F.p)]
    return mod.first_rank_deficient_subset(_prime_matrix(C), F.p, C.k, inv)


def _time(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    L6, _ = grs_self_dual(13)
    T3, _ = shorten_theorem3(L6)
    E1, _, _ = build_theorem2(13, 6)
    H, _ = build_theorem7(7, 6)
    cases = [
        ("enumerate [8,4] GF(13)", _enumerate, E1.code),
        ("enumerate [8,4] GF(49)", _enumerate, H.code),
        ("enumerate [12,6] GF(13)", _enumerate, T3),
        ("minors [14,7] GF(13)", _minors, L6),
    ]
    backends = [("numpy", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    print(f"{'case':28s}" + "".join(f"{name:>12s}" for name, _ in backends) + f"{'speedup':>10s}")
    for label, fn, C in cases:
        times, results = [], []
        for _, mod in backends:
            t, r = _time(lambda: fn(mod, C), args.repeat)
            times.append(t)
            results.append(r)
        assert all(str(r) == str(results[0]) for r in results), (label, results)
        speed = f"{times[0] / times[-1]:9.1f}x" if len(times) > 1 else ""
        print(f"{label:28s}" + "".join(f"{t:11.4f}s" for t in times) + speed)


if __name__ == "__main__":
    main()
