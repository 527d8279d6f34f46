"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Also times one end-to-end closure with each backend forced through
WEYLFORGE_PURE_PYTHON in a child process.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction

from weylforge import _pykernels

try:
    from weylforge import _ckernels
except ImportError:
    _ckernels = None


def make_series(rng, n, radix, bound):
    out = {}
    while len(out) < n:
        coords = [rng.randint(0, bound // 2) for _ in range(2)]
        if sum(coords) <= bound:
            out[coords[0] + radix * coords[1]] = rng.randint(-50, 50) or 1
    return out


def make_rows(rng, n, width):
    rows = {}
    for k in range(0, width, 2):
        if len(rows) >= n:
            break
        row = {k: Fraction(1)}
        for j in rng.sample(range(k + 1, width + 10), 6):
            row[j] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        rows[k] = row
    return rows


def bench(repeat):
    rng = random.Random(0)
    radix, bound = 40, 30
    a, b = make_series(rng, 200, radix, bound), make_series(rng, 200, radix, bound)
    rows = make_rows(rng, 60, 200)
    vecs = [{j: Fraction(rng.randint(1, 9)) for j in rng.sample(range(200), 30)} for _ in range(50)]
    cases = {
        "series_mul": lambda m: m.series_mul(a, b, radix, bound),
        "reduce_vector": lambda m: [m.reduce_vector(rows, v) for v in vecs],
    }
    print(f"{'kernel':<16}{'python (s)':>12}{'compiled (s)':>14}{'speedup':>10}")
    for name, fn in cases.items():
        tp = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=repeat))
        if _ckernels is None:
            print(f"{name:<16}{tp:>12.4f}{'n/a':>14}{'':>10}")
            continue
        assert fn(_pykernels) == fn(_ckernels)
        tc = min(timeit.repeat(lambda: fn(_ckernels), number=1, repeat=repeat))
        print(f"{name:<16}{tp:>12.4f}{tc:>14.4f}{tp / tc:>9.1f}x")


END_TO_END = """
import time
from weylforge import commalg, kernels
from weylforge.hwdata import evaluation_psi, standard_sequence, weight
from weylforge.modeng import build_M
from weylforge.rootsys import positive_roots, validate_gcm
A = commalg.PolyAlgebra(1)
table = positive_roots(validate_gcm([[2, -1], [-1, 2]]), 7)
seq = standard_sequence(weight(1, 1), commalg.point_ideal(A, {0: 2}), table)
B = commalg.quotient_algebra(commalg.point_ideal(A, {0: 4}))
t0 = time.perf_counter()
build_M(evaluation_psi(A, [(0, (1, 1))]), seq, B, 6).dims(6)
print(kernels.BACKEND, round(time.perf_counter() - t0, 3))
"""


def end_to_end():
    for pure in ("0", "1"):
        env = dict(os.environ, WEYLFORGE_PURE_PYTHON=pure)
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True)
        backend, secs = out.stdout.split()
        print(f"build_M A2 H=6 [{backend}]: {secs}s")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    bench(args.repeat)
    end_to_end()


if __name__ == "__main__":
    main()
