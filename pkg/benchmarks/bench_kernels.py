"""Benchmark the compiled kernels against the pure-numpy fallback.

Times the two hot loops on representative workloads: the autocorrelation
pitch search over a batch of tapered frames, and full dual-coordinate-descent
epochs for SVC and SVR at feature-vector width. Run with:

    python3 benchmarks/bench_kernels.py
"""

import argparse
import time

import numpy as np

from adspeech._kernels import fallback

try:
    from adspeech._kernels import _core
except ImportError:
    _core = None


def best_of(repeats, fn, *args):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def pitch_workload(n_frames):
    rng = np.random.default_rng(0)
    t = np.arange(400) / 16000.0
    rows = [
         0.3 * np.sin(2 * np.pi * rng.uniform(80, 350) * t)
        + 0.05 * rng.standard_normal(400)
        for _ in range(n_frames)
    ]
    frames = np.vstack(rows) * np.hamming(400)[None, :]
    return (np.ascontiguousarray(frames), 40, 290)


def epoch_workload(n_rows, dim, seed=1):
    rng = np.random.default_rng(seed)
    X = np.ascontiguousarray(np.hstack([rng.normal(size=(n_rows, dim)), np.ones((n_rows, 1))]))
    y_cls = np.where(rng.uniform(size=n_rows) > 0.5, 1.0, -1.0)
    y_reg = rng.uniform(0, 30, size=n_rows)
    qii = np.einsum("ij,ij->i", X, X)
    order = rng.permutation(n_rows).astype(np.int64)
    return X, y_cls, y_reg, qii, order


def run_epochs(module, kind, X, y, qii, order, n_epochs):
    alpha = np.zeros(len(y))
    w = np.zeros(X.shape[1])
    for _ in range(n_epochs):
        if kind == "svc":
            module.svc_epoch(X, y, qii, alpha, w, order, 1.0)
        else:
            module.svr_epoch(X, y, qii, alpha, w, order, 1.0, 1.0)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--frames", type=int, default=200, help="pitch-search batch size")
    parser.add_argument("--rows", type=int, default=200, help="solver training rows")
    parser.add_argument("--dim", type=int, default=1260, help="solver feature width")
    parser.add_argument("--epochs", type=int, default=20, help="solver epochs per run")
    parser.add_argument("--repeats", type=int, default=3, help="take the best of this many runs")
    args = parser.parse_args()

    if _core is None:
        print("compiled backend unavailable; timing the fallback only")

    cases = []
    frames, lo, hi = pitch_workload(args.frames)
    cases.append((
        f"acf_pitch_search ({args.frames} frames)",
        lambda m: m.acf_pitch_search(frames, lo, hi),
    ))
    X, y_cls, y_reg, qii, order = epoch_workload(args.rows, args.dim)
    cases.append((
        f"svc_epoch x{args.epochs} ({args.rows}x{args.dim + 1})",
        lambda m: run_epochs(m, "svc", X, y_cls, qii, order, args.epochs),
    ))
    cases.append((
        f"svr_epoch x{args.epochs} ({args.rows}x{args.dim + 1})",
        lambda m: run_epochs(m, "svr", X, y_reg, qii, order, args.epochs),
    ))

    width = max(len(name) for name, _ in cases)
    print(f"{'workload':<{width}}  {'python':>10}  {'cython':>10}  {'speedup':>8}")
    for name, fn in cases:
        t_py = best_of(args.repeats, fn, fallback)
        if _core is None:
            print(f"{name:<{width}}  {t_py * 1000:>8.1f}ms  {'-':>10}  {'-':>8}")
        else:
            t_cy = best_of(args.repeats, fn, _core)
            print(
                f"{name:<{width}}  {t_py * 1000:>8.1f}ms  {t_cy * 1000:>8.1f}ms"
                f"  {t_py / t_cy:>7.1f}x"
            )


if __name__ == "__main__":
    main()
