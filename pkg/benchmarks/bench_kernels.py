"""Time the jitted kernels against their interpreted bodies.

    python benchmarks/bench_kernels.py [--repeat N]

Uses the seed-lexicon grammar so the machines have realistic sizes. The
interpreted path is the exact code that runs under JMORPH_DISABLE_NUMBA=1.
"""
import argparse
import statistics
import time

import numpy as np

from jmorph import _accel, _kernels, fst, verbs
from jmorph.lexicon import seed_lexicon
from jmorph.symbols import OTHER, encode


def timed(fn, repeat):
    fn()  # warm-up (and JIT compile)
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def compose_args(a, b):
    sigma = a.sigma | b.sigma
    a, b = fst._harmonize(a, sigma), fst._harmonize(b, sigma)
    return (a.start, a.final_mask, *a.csr, b.n_states, b.start, b.final_mask, *b.csr)


def lattice_args(t, surface):
    codes = np.array([c if c in t.sigma else OTHER for c in encode(surface)], np.int64)
    return (t.n_states, t.start, t.final_mask, *t.csr, codes, fst.MAX_EPSILON_CHAIN)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not _accel.USE_NUMBA:
        raise SystemExit("numba is disabled or missing; unset JMORPH_DISABLE_NUMBA")

    morph = verbs.morphotactics(seed_lexicon())
    phon = verbs.phonology()
    gen = fst.compose(morph, phon).inverse
    finals = np.array(sorted(gen.finals), np.int64)

    cases = [
        ("compose morphotactics x phonology", _kernels.compose_product, compose_args(morph, phon)),
        ("apply lattice 信じられている", _kernels.apply_lattice, lattice_args(gen, "信じられている")),
        ("trim generator", _kernels.trim_mask, (gen.n_states, gen.start, finals, gen.src, gen.dst)),
    ]
    print(f"{'kernel':<36} {'numba ms':>10} {'python ms':>10} {'speedup':>8}")
    for name, kernel, kargs in cases:
        fast = timed(lambda: kernel(*kargs), args.repeat)
        slow = timed(lambda: _accel.py_func(kernel)(*kargs), max(1, args.repeat // 2))
        print(f"{name:<36} {fast * 1e3:10.2f} {slow * 1e3:10.2f} {slow / fast:8.1f}x")
    vec = timed(lambda: _kernels.trim_mask_numpy(gen.n_states, gen.start, finals, gen.src, gen.dst), args.repeat)
    print(f"{'trim generator (numpy fixed point)':<36} {'':>10} {vec * 1e3:10.2f}")


if __name__ == "__main__":
    main()
