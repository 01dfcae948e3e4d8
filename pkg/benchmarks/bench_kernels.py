"""numba kernels vs the numpy / pure-Python fallback.

    python benchmarks/bench_kernels.py            # full order-4 sweep
    python benchmarks/bench_kernels.py --subset 20000

The numba timings exclude compilation (one warm-up call on a tiny input).
Both paths must give identical results; a mismatch aborts the run.
"""
import argparse
import time

import numpy as np

from lquasi._accel import NUMBA_ENABLED
from lquasi.construct import affine_cyclic
from lquasi.corpus import left_quasigroups
from lquasi.kernels import free as fk
from lquasi.kernels import sweep


def timed(f, *args, **kw):
    t = time.perf_counter()
    out = f(*args, **kw)
    return out, time.perf_counter() - t


def bench_sweeps(mul, ldiv):
    rows = []
    warm = mul[:2], ldiv[:2]
    for name, fn in (("connected", lambda m, l, u: sweep.batch_connected(m, use_numba=u)),
                     ("superconnected", lambda m, l, u: sweep.batch_superconnected(m, l, use_numba=u)),
                     ("p2_in_HS", lambda m, l, u: sweep.batch_p2(m, l, use_numba=u)),
                     ("congruence props", lambda m, l, u: sweep.batch_congruence_props(m, l, use_numba=u))):
        fn(*warm, True)
        a, t_nb = timed(fn, mul, ldiv, True)
        b, t_np = timed(fn, mul, ldiv, False)
        if not np.array_equal(a, b):
            raise SystemExit(f"{name}: numba and numpy disagree")
        rows.append((name, len(mul), t_nb, t_np))
    return rows


def bench_free(samples):
    rows = []
    fk.free_closure(samples[0].mul, samples[0].ldiv, _gens(samples[0].order), 10)
    for Q in samples:
        g = _gens(Q.order)
        a, t_nb = timed(fk.free_closure, Q.mul, Q.ldiv, g, 20000)
        b, t_py = timed(fk.free_closure_python, Q.mul, Q.ldiv, g, 20000)
        if a[1] != b[1]:
            raise SystemExit(f"free closure of {Q.name}: sizes {a[1]} != {b[1]}")
        rows.append((f"F(2) of {Q.name} ({a[1]} elements)", 1, t_nb, t_py))
    return rows


def _gens(n):
    return np.stack([np.repeat(np.arange(n), n), np.tile(np.arange(n), n)]).astype(np.int64)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--subset", type=int, default=None, help="random subset of the order-4 tables")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not NUMBA_ENABLED:
        raise SystemExit("numba is disabled (LQUASI_DISABLE_NUMBA); nothing to compare")

    mul = sweep.all_tables(4)
    if args.subset:
        rng = np.random.default_rng(args.seed)
        mul = mul[np.sort(rng.choice(len(mul), args.subset, replace=False))]
    ldiv = sweep.ldiv_tables(mul)

    reps = left_quasigroups(3)
    samples = [affine_cyclic(5, 2), reps[32]]
    rows = bench_sweeps(mul, ldiv) + bench_free(samples)

    print(f"{'kernel':40s} {'inputs':>8s} {'numba s':>9s} {'fallback s':>11s} {'speedup':>8s}")
    for name, k, t_nb, t_np in rows:
        print(f"{name:40s} {k:8d} {t_nb:9.3f} {t_np:11.3f} {t_np / max(t_nb, 1e-9):7.1f}x")


if __name__ == "__main__":
    main()
