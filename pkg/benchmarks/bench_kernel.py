"""Benchmark: compiled vs pure-Python term-map kernel.

Two tiers: the raw kernel primitives on synthetic sparse maps, and the
full rewriting engine (normal-ordered products) with each kernel swapped
into the shared dispatch module.  Run:

    python benchmarks/bench_kernel.py [--trials N]
"""

import argparse
import random
import time

from srak.coeffs import _kernel, _kernel_py, rat

try:
    from srak.coeffs import _kernel_cy
except ImportError:
    _kernel_cy = None

KERNEL_FUNCS = ("eadd", "madd", "maxpy", "mscale", "mneg", "mmul", "emap_axpy")


def rand_map(rng, arity=2, n=30):
    out = {}
    while len(out) < n:
        e = tuple(rng.randint(0, 6) for _ in range(arity))
        out[e] = rat(rng.randint(-9, 9) or 1, rng.randint(1, 7))
    return out


def bench_micro(impl, pairs, reps):
    t0 = time.perf_counter()
    for _ in range(reps):
        for a, b in pairs:
            impl.mmul(a, b)
            acc = dict(a)
            impl.maxpy(acc, b, rat(3, 2))
            impl.madd(a, b)
    return time.perf_counter() - t0


def swap_kernel(impl):
    for name in KERNEL_FUNCS:
        setattr(_kernel, name, getattr(impl, name))


def bench_engine(impl, trials):
    swap_kernel(impl)
    from srak import groups as G
    from srak import sra as S
    from srak.selftest import associativity_suite

    grp = G.group_from_spec({"builtin": {"type": "symmetric", "n": 3, "rep": "reflection"}})
    rd = G.symplectic_reflections(grp)
    alg = S.SRAlgebra.omega_form(grp, rd)  # fresh caches per run
    t0 = time.perf_counter()
    failures = associativity_suite(alg, trials)
    dt = time.perf_counter() - t0
    assert failures == 0
    return dt


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=40, help="engine associativity trials")
    ap.add_argument("--reps", type=int, default=200, help="micro benchmark repetitions")
    args = ap.parse_args()

    rng = random.Random(7)
    pairs = [(rand_map(rng), rand_map(rng)) for _ in range(20)]

    print("kernel backends: pure=yes compiled=%s" % ("yes" if _kernel_cy else "no"))
    t_py = bench_micro(_kernel_py, pairs, args.reps)
    print("micro  pure-python : %7.3fs" % t_py)
    if _kernel_cy:
        t_cy = bench_micro(_kernel_cy, pairs, args.reps)
        print("micro  compiled    : %7.3fs   (speedup %.2fx)" % (t_cy, t_py / t_cy))

    e_py = bench_engine(_kernel_py, args.trials)
    print("engine pure-python : %7.3fs   (%d associativity trials)" % (e_py, args.trials))
    if _kernel_cy:
        e_cy = bench_engine(_kernel_cy, args.trials)
        print("engine compiled    : %7.3fs   (speedup %.2fx)" % (e_cy, e_py / e_cy))
    swap_kernel(_kernel_cy or _kernel_py)


if __name__ == "__main__":
    main()
