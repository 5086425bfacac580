"""Time the numba kernels against the numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each row runs the same workload twice, once per backend, after a warm-up
call (so numba compile time is excluded), and checks the outputs agree.
"""

import argparse
import os
import time

import numpy as np

from flagchar import _kernels as Kn
from flagchar import flags, monomial
from flagchar.analysis import decompose_component
from flagchar.combinat import Tableau
from flagchar.field import fq_make
from flagchar.monomial import orbit_partition
from flagchar.pattern import Split


def _timed(fn, repeat):
    fn()
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def _run(fn, repeat, numpy_only):
    if numpy_only:
        os.environ["FLAGCHAR_NO_NUMBA"] = "1"
    else:
        os.environ.pop("FLAGCHAR_NO_NUMBA", None)
    flags._model.cache_clear()
    monomial.monomial_action.cache_clear()
    return _timed(fn, repeat)


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def workloads():
    rng = np.random.default_rng(0)
    F = fq_make(3)
    q, m = 3, 12
    digits = rng.integers(0, q, size=(200_000, m)).astype(np.int16)
    codes = Kn.encode_np(digits, q)
    tgt = np.array([1, 4, 7], dtype=np.int64)
    src = np.array([0, 2, 3], dtype=np.int64)
    coef = np.array([1, 2, 1], dtype=np.int64)
    images = np.stack([rng.permutation(50_000) for _ in range(8)])
    N = 729
    theta = rng.integers(0, 3, size=(N, N))
    sigma = rng.permutation(N)
    perm = np.stack([rng.permutation(N) for _ in range(64)])
    exps = rng.integers(0, 3, size=perm.shape)
    classes = rng.integers(0, 20, size=N)

    s = Tableau((3, 3), [[1, 2, 3], [4, 5, 6]])
    s5 = Tableau((3, 2), [[1, 2, 3], [4, 5]])
    return [
        ("apply_updates 200k x 12", lambda: Kn.apply_updates(digits, tgt, src, coef, 5, 2, F.add_t, F.mul_t, F.theta_t)),
        ("encode 200k x 12", lambda: Kn.encode(digits, q)),
        ("decode 200k x 12", lambda: Kn.decode(codes, m, q)),
        ("partition 8 gens on 50k", lambda: Kn.partition(images)),
        ("fourier_counts N=729", lambda: Kn.fourier_counts(theta, sigma, 3)),
        ("fixed_counts 64 x 729", lambda: Kn.fixed_counts(perm, exps, classes, 20, 3)),
        ("orbit_partition (3,3) q=3", lambda: orbit_partition(Split.from_tableau(s, F)).orbit_of),
        ("decompose_component (3,2) q=2", lambda: decompose_component(s5, fq_make(2)).orbit_count),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not Kn.HAVE_NUMBA:
        print("numba is not installed; nothing to compare")
        return 1
    print(f"{'workload':34s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}  agree")
    for name, fn in workloads():
        t_nb, out_nb = _run(fn, args.repeat, numpy_only=False)
        t_np, out_np = _run(fn, args.repeat, numpy_only=True)
        print(f"{name:34s} {t_nb:10.4f} {t_np:10.4f} {t_np / t_nb:8.1f}  {_same(out_nb, out_np)}")
    os.environ.pop("FLAGCHAR_NO_NUMBA", None)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
