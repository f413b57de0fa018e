"""Compare the compiled and pure-Python product kernels.

    python benchmarks/bench_kernels.py [--repeat 3]

Each workload runs once per available backend; the best of ``--repeat``
wall-clock times is reported together with the speedup over ``python``.
"""
import argparse
import random
import time
from fractions import Fraction

from heatjet import heat, kernels
from heatjet.combinatorics import multi_indices
from heatjet.fixtures import random_normal_2jet
from heatjet.jet import Jet
from heatjet.laplacian import build_laplacian


def dense_jet(d, order, seed):
    rng = random.Random(seed)
    coeffs = {a: Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for t in range(order + 1) for a in multi_indices(d, t)}
    return Jet(d, order, coeffs)


def workloads():
    a, b = dense_jet(3, 16, 1), dense_jet(3, 16, 2)
    u = dense_jet(3, 12, 3)
    u = u - u.value_at_origin() + 1
    g3 = random_normal_2jet(3, seed=0, order=24)
    return [
        ("jet product d=3 N=16", lambda: a * b),
        ("inv_sqrt d=3 N=12", lambda: u.inv_sqrt()),
        ("a_3 binomial form, random d=3", lambda: heat.a_n_binomial_form(g3, 3)),
        ("a_3 multi-index form, random d=3", lambda: heat.a_n_multiindex_form(g3, 3)),
    ]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        build_laplacian.cache_clear()
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = kernels.available_backends()
    previous = kernels.backend_name()
    print(f"{'workload':<36}" + "".join(f"{name:>12}" for name in backends) + f"{'speedup':>10}")
    try:
        for label, fn in workloads():
            row = {}
            for name in backends:
                kernels.use_backend(name)
                row[name] = best_of(fn, args.repeat)
            speed = row["python"] / min(row.values()) if len(row) > 1 else 1.0
            print(f"{label:<36}" + "".join(f"{row[n]:>11.3f}s" for n in backends) + f"{speed:>9.1f}x")
    finally:
        kernels.use_backend(previous)


if __name__ == "__main__":
    main()
