"""Compare the compiled and pure-Python polynomial kernels.

Usage: python benchmarks/bench_kernels.py [--repeat 5]

Each workload runs once per available backend; the table reports the best
wall time and the speedup of the compiled kernel.
"""

import argparse
import random
import time

from gcconf import _backend
from gcconf.gc import check_jacobi, unit_element
from gcconf.modules import check_module_axioms, direct_sum, gc_dual, gc_standard
from gcconf.poly import DEL, LAMBDA, MU_, MPoly, Scalar


def _rand_poly(rng, deg, nterms):
    terms = {}
    for _ in range(nterms):
        e = (rng.randint(0, deg), rng.randint(0, deg), rng.randint(0, deg))
        terms[e] = Scalar(rng.randint(-50, 50), rng.randint(1, 20))
    return MPoly(terms)


def poly_products():
    rng = random.Random(1)
    pairs = [(_rand_poly(rng, 6, 40), _rand_poly(rng, 6, 40)) for _ in range(40)]
    for a, b in pairs:
        _ = a * b


def poly_powers():
    base = DEL + LAMBDA * Scalar(3, 7) + MU_ * Scalar(-2, 5) + Scalar(1, 3)
    for n in range(1, 25):
        _ = base**n


def jacobi_gc2():
    rng = random.Random(2)
    for _ in range(10):
        els = []
        for _ in range(3):
            f = MPoly({(k,): Scalar(rng.randint(-5, 5), rng.randint(1, 4)) for k in range(3)})
            els.append(unit_element(rng.randint(0, 3), rng.randrange(2), rng.randrange(2), 2, f))
        assert check_jacobi(*els).ok


def module_axioms_gc2():
    M = direct_sum([gc_standard(Scalar(1, 2), 2), gc_dual(Scalar(-1, 3), 2)])
    assert not check_module_axioms(M, 3)


WORKLOADS = [
    ("poly products (40 pairs, ~40 terms)", poly_products),
    ("powers of a linear form (n <= 24)", poly_powers),
    ("Jacobi checks in gc_2 (10 triples)", jacobi_gc2),
    ("module axioms, rank-4 gc_2 module, n <= 3", module_axioms_gc2),
]


def best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = _backend.available()
    prev = _backend.name()
    print(f"{'workload':45s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    try:
        for label, fn in WORKLOADS:
            times = {}
            for b in backends:
                _backend.use(b)
                times[b] = best_time(fn, args.repeat)
            row = f"{label:45s}" + "".join(f"{times[b] * 1000:10.1f}ms" for b in backends)
            if "cython" in times:
                row += f"{times['python'] / times['cython']:11.1f}x"
            print(row)
    finally:
        _backend.use(prev)


if __name__ == "__main__":
    main()
