"""Compare the compiled and pure-Python polynomial kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Kernel timings call both modules directly on identical random inputs.
The end-to-end workload (generic cocycle for the Sweedler algebra plus
the 64-triple cocycle check) runs in subprocesses, one per backend,
selected with HOPFGEN_PURE_PYTHON.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit

from gmpy2 import mpq

from hopfgen._kernels import _pykernels as py
from hopfgen.scalar import packing

try:
    from hopfgen._kernels import _ckernels as cy
except ImportError:  # extension not built
    cy = None

WORKLOAD = """
import time
from hopfgen.cocycle import builtin_cocycle, cocycle_check
from hopfgen.generic import build_generic
from hopfgen.hopf import sweedler
from hopfgen._kernels import BACKEND
t0 = time.perf_counter()
H = sweedler()
G = build_generic(H, builtin_cocycle("sweedler_abc"))
assert cocycle_check(H, G.sigma).passed
print(BACKEND, time.perf_counter() - t0)
"""


def random_poly(rng, pk, nvars, terms, max_exp):
    out = {}
    for _ in range(terms):
        m = pk.pack([rng.randint(0, max_exp) for _ in range(nvars)])
        out[m] = out.get(m, mpq(0)) + mpq(rng.randint(-9, 9), rng.randint(1, 5))
    return {k: v for k, v in out.items() if v}


def kernel_cases(rng):
    pk = packing(4)
    a = random_poly(rng, pk, 4, 40, 4)
    b = random_poly(rng, pk, 4, 40, 4)
    ab = py.poly_mul(a, b)
    # divisors x_i^3 + (terms of degree <= 2): grlex leads are the cubes,
    # so reduction terminates in the span of monomials with exponents < 3
    small = random_poly(rng, pk, 4, 12, 2)
    divisors = []
    for i in range(4):
        lead = [0] * 4
        lead[i] = 3
        tail = {}
        for _ in range(2):
            e = [0] * 4
            e[rng.randrange(4)] = rng.randint(0, 2)
            tail[pk.pack(e)] = mpq(rng.randint(1, 9), rng.randint(1, 5))
        divisors.append({pk.pack(lead): mpq(1), **tail})
    target = py.poly_mul(small, small)
    return {
        "poly_add": lambda k: k.poly_add(a, b),
        "poly_mul": lambda k: k.poly_mul(a, b),
        "poly_div_exact": lambda k: k.poly_div_exact(ab, b, pk.guard),
        "poly_reduce": lambda k: k.poly_reduce(target, divisors, pk.guard),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    rng = random.Random(1)
    cases = kernel_cases(rng)
    print(f"{'kernel':<16}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for name, f in cases.items():
        n = 3
        tp = min(timeit.repeat(lambda: f(py), number=n, repeat=args.repeat)) / n * 1e3
        if cy is None:
            print(f"{name:<16}{tp:>14.3f}{'n/a':>14}{'':>10}")
            continue
        assert f(py) == f(cy), name
        tc = min(timeit.repeat(lambda: f(cy), number=n, repeat=args.repeat)) / n * 1e3
        print(f"{name:<16}{tp:>14.3f}{tc:>14.3f}{tp / tc:>9.2f}x")
    print()
    print("end-to-end: build_generic(sweedler) + 64-triple cocycle check")
    for pure in ("1", ""):
        env = dict(os.environ, HOPFGEN_PURE_PYTHON=pure)
        best = None
        for _ in range(max(1, args.repeat // 2)):
            out = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True, check=True)
            backend, secs = out.stdout.split()
            best = float(secs) if best is None else min(best, float(secs))
        print(f"  {backend:<8}{best * 1e3:>10.1f} ms")


if __name__ == "__main__":
    main()
