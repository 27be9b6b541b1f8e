"""Benchmark the compiled kernel against the pure-Python fallback.

Two views:
  * kernel level: sparse series products and scalar arithmetic on
    identical inputs, both implementations in one process;
  * pipeline level: a full prenormalization run, each backend in its own
    process (selection happens at import).

Run from the repository root:  python benchmarks/bench_kernel.py
"""

import os
import random
import subprocess
import sys
import time
from fractions import Fraction

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from holonorm import _gauss as pykernel  # noqa: E402

try:
    from holonorm import _gauss_c as ckernel
except ImportError:
    ckernel = None


def build_series(kernel, rng, nterms, max_deg):
    out = {}
    for _ in range(nterms):
        e = (rng.randint(0, max_deg), rng.randint(0, max_deg), rng.randint(0, max_deg))
        out[e] = kernel.GaussRational(
            Fraction(rng.randint(-9, 9), rng.randint(1, 7)),
            Fraction(rng.randint(-9, 9), rng.randint(1, 7)),
        )
    return out


def bench_kernel(kernel, label, nterms=60, cap=12, reps=40):
    rng = random.Random(42)
    a = build_series(kernel, rng, nterms, 6)
    b = build_series(kernel, rng, nterms, 6)
    t0 = time.perf_counter()
    for _ in range(reps):
        out = kernel.series_mul(a, b, cap)
    dt = time.perf_counter() - t0
    print(f"  {label:>8}: {reps} sparse products of ~{nterms} terms: "
          f"{dt:.3f}s ({dt / reps * 1000:.1f} ms each, {len(out)} result terms)")
    return dt


def bench_scalars(kernel, label, reps=20000):
    rng = random.Random(7)
    xs = [
        kernel.GaussRational(
            Fraction(rng.randint(-99, 99), rng.randint(1, 50)),
            Fraction(rng.randint(-99, 99), rng.randint(1, 50)),
        )
        for _ in range(64)
    ]
    t0 = time.perf_counter()
    acc = xs[0]
    for i in range(reps):
        acc = xs[i % 64] * xs[(i + 7) % 64] + xs[(i + 13) % 64]
    dt = time.perf_counter() - t0
    print(f"  {label:>8}: {reps} fused multiply-adds: {dt:.3f}s")
    return dt


PIPELINE_SNIPPET = r"""
import random, time
from fractions import Fraction
from holonorm.algebra import Series
from holonorm.backend import BACKEND, GaussRational
from holonorm.field import VectorField, JetMap, pushforward
from holonorm.normalform import prenormalize

rng = random.Random(5)
V = ("z", "w")
model = VectorField(
    Series(V, 14, {(1, 1): GaussRational(-2)}, exact=True),
    Series(V, 14, {(0, 2): GaussRational(1), (0, 3): GaussRational(1)}, exact=True),
)
f = {(1, 0): GaussRational(1)}
g = {(0, 1): GaussRational(1)}
for _ in range(6):
    a, b = rng.randint(0, 3), rng.randint(0, 3)
    if 2 <= a + b <= 4:
        f[(a, b)] = GaussRational(Fraction(rng.randint(-3, 3), rng.randint(1, 3)),
                                  Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
    a, b = rng.randint(0, 3), rng.randint(1, 3)
    if 2 <= a + b <= 4:
        g[(a, b)] = GaussRational(Fraction(rng.randint(-3, 3), rng.randint(1, 3)),
                                  Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
h = JetMap(Series(V, 12, f, exact=True), Series(V, 12, g, exact=True))
x = pushforward(h, model, cap=12)
t0 = time.perf_counter()
for _ in range(3):
    prenormalize(x, 12)
print(f"  {BACKEND:>8}: 3 prenormalization runs at order 12: "
      f"{time.perf_counter() - t0:.3f}s")
"""


def main():
    print("scalar arithmetic")
    t_py = bench_scalars(pykernel, "python")
    if ckernel is not None:
        t_c = bench_scalars(ckernel, "compiled")
        print(f"  speedup: {t_py / t_c:.2f}x")

    print("series products")
    t_py = bench_kernel(pykernel, "python")
    if ckernel is not None:
        t_c = bench_kernel(ckernel, "compiled")
        print(f"  speedup: {t_py / t_c:.2f}x")

    print("prenormalization pipeline (per-process backend selection)")
    sys.stdout.flush()
    env = dict(os.environ)
    env["HOLONORM_PURE_PYTHON"] = "1"
    subprocess.run([sys.executable, "-c", PIPELINE_SNIPPET], env=env, check=True)
    if ckernel is not None:
        env.pop("HOLONORM_PURE_PYTHON")
        subprocess.run([sys.executable, "-c", PIPELINE_SNIPPET], env=env, check=True)


if __name__ == "__main__":
    main()
