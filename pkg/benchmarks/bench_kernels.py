"""Compiled versus pure-Python kernels on the three hot loops.

    python benchmarks/bench_kernels.py [--repeat N]

Prints the best wall time per kernel and backend and the speed-up.  Both
backends are checked to produce identical results before timing counts.
"""

import argparse
import time

import numpy as np

from dreamcontrast import _backend, _rng
from dreamcontrast.classify._common import to_csr
from dreamcontrast.features import FeatureVector


def gibbs_case(kern):
    rng = _rng.make_rng(1)
    D, V, T, N = 200, 500, 20, 20000
    doc = np.sort(rng.integers(0, D, N)).astype(np.int32)
    word = rng.integers(0, V, N).astype(np.int32)
    z = rng.integers(0, T, N).astype(np.int32)
    n_dt = np.zeros((D, T), np.int64)
    n_wt = np.zeros((V, T), np.int64)
    np.add.at(n_dt, (doc, z), 1)
    np.add.at(n_wt, (word, z), 1)
    n_t = np.bincount(z, minlength=T).astype(np.int64)
    u = rng.random(N)

    def run():
        kern.gibbs_sweep(doc, word, z, n_dt, n_wt, n_t, 0.25, 0.01, u)
        return z.copy()
    return run


def sparse_docs(n, V, per_doc, seed):
    rng = _rng.make_rng(seed)
    vecs = [FeatureVector(str(i), tuple(sorted(set(rng.integers(0, V, per_doc).tolist()))))
            for i in range(n)]
    return to_csr(vecs), rng


def winnow_case(kern):
    (indptr, indices), rng = sparse_docs(3000, 7500, 60, 2)
    y = rng.integers(0, 2, 3000).astype(np.int8)

    def run():
        wp, wn = np.full((2, 7500), 2.0), np.full((2, 7500), 1.0)
        touched = np.zeros((2, 7500), np.uint8)
        kern.winnow_pass(indptr, indices, y, wp, wn, touched, 1.05, 0.95, 2.5, 0.5)
        return wp
    return run


def smo_case(kern):
    (indptr, indices), rng = sparse_docs(400, 2000, 30, 3)
    y = np.where(rng.random(400) < 0.5, 1.0, -1.0)

    def run():
        return np.asarray(kern.smo_solve(indptr, indices, y, 1.0, 1e-3, 10 * 400 * 400, 400)[0])
    return run


CASES = {"gibbs_sweep": gibbs_case, "winnow_pass": winnow_case, "smo_solve": smo_case}


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = _backend.available()
    if "compiled" not in backends:
        print("compiled extension not built; only the Python backend is available")
    print(f"{'kernel':<12} " + " ".join(f"{b:>10}" for b in backends) + "   speed-up")
    for name, make in CASES.items():
        outputs = {b: make(_backend.load(b))() for b in backends}
        if len(backends) == 2:
            a, b = outputs.values()
            assert np.allclose(a, b, atol=1e-9), f"{name}: backends disagree"
        times = {b: best_time(make(_backend.load(b)), args.repeat) for b in backends}
        speed = times["python"] / times["compiled"] if "compiled" in times else float("nan")
        print(f"{name:<12} " + " ".join(f"{times[b]:>9.4f}s" for b in backends) + f"   {speed:8.1f}x")


if __name__ == "__main__":
    main()
