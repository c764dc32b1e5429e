"""Time each hot kernel on the numba and the pure-numpy backend.

    python benchmarks/bench_kernels.py [--repeat 5]

The first numba call per kernel is a warm-up (JIT or cache load) and is not timed.
Results from both backends are compared before timing.
"""

import argparse
import time

import numpy as np

from gammaring.enumeration import default_corpus
from gammaring.fuzzy import constraints_for
from gammaring.kernels import backend_module
from gammaring.operator import generator_actions


def workloads():
    corpus = default_corpus()
    big = max(corpus, key=lambda g: (g.s_size * g.g_size, g.s_size))
    rng = np.random.default_rng(0)
    cons = constraints_for(big, "h_two_sided").rows
    n = big.s_size
    batch = rng.integers(0, 6, (20_000, n)).astype(np.int64)
    _, gens = generator_actions(big, "left")
    tables = [(g.add_s, g.add_g, g.prod) for g in corpus]

    def axioms(k):
        for t in tables:
            k.axiom_witnesses(*t)

    def satisfies(k):
        return k.batch_satisfies(batch, cons)

    def chain(k):
        return k.enumerate_chain(n, 9, cons)

    def repair(k):
        for row in batch[:2000]:
            k.repair(row, cons, 100)

    def multiset(k):
        return k.multiset_codes(gens, big.add_s, 8)

    return big.label, [
        (f"axiom_witnesses x{len(tables)} structures", axioms),
        (f"batch_satisfies {batch.shape[0]} vectors", satisfies),
        (f"enumerate_chain n={n} k=9", chain),
        ("repair 2000 vectors", repair),
        (f"multiset_codes {len(gens)} generators len<=8", multiset),
    ]


def best_of(fn, k, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(k)
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    np_k, nb_k = backend_module("numpy"), backend_module("numba")
    label, jobs = workloads()
    print(f"structure for constraint kernels: {label}")
    print(f"{'kernel':45s} {'numpy (s)':>11s} {'numba (s)':>11s} {'speedup':>8s}")
    for name, fn in jobs:
        a, b = fn(np_k), fn(nb_k)  # warm-up, and a parity check where results exist
        if a is not None and not np.array_equal(a, b):
            raise SystemExit(f"backends disagree on {name}")
        t_np = best_of(fn, np_k, args.repeat)
        t_nb = best_of(fn, nb_k, args.repeat)
        print(f"{name:45s} {t_np:11.4f} {t_nb:11.4f} {t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
