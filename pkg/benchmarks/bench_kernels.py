"""Compiled vs pure-Python scalar kernels, plus one end-to-end solve.

    python benchmarks/bench_kernels.py [--repeat 5]

Kernel timings call both modules directly, so one process covers both.  The
end-to-end row runs ``solve_full`` in a subprocess per backend because the
backend is chosen at import.
"""

import argparse
import os
import subprocess
import sys
import timeit

from fraclap import _pykernels

try:
    from fraclap import _ckernels
except ImportError:
    _ckernels = None

ARGS = {
    "j0": [0.1 + 0.37 * i for i in range(200)],
    "j1": [0.1 + 0.37 * i for i in range(200)],
    "i0": [0.05 + 0.2 * i for i in range(200)],
    "k0": [0.01 + 0.2 * i for i in range(200)],
    "k1": [0.01 + 0.2 * i for i in range(200)],
    "cgamma": [complex(0.3 + 0.01 * i, 0.5 * i) for i in range(200)],
}

E2E = ("import time; from fraclap import ModelParams, solve_full; p = ModelParams(alpha=0.9);"
       "t = time.perf_counter(); [solve_full(p, 0.05 * 1.03 ** i) for i in range(60)];"
       "print(time.perf_counter() - t)")


def bench(fn, xs, repeat):
    loop = lambda: [fn(x) for x in xs]  # noqa: E731
    return min(timeit.repeat(loop, number=20, repeat=repeat)) / (20 * len(xs))


def end_to_end(pure):
    env = dict(os.environ)
    if pure:
        env["FRACLAP_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", E2E], env=env, capture_output=True,
                         text=True, check=True)
    return float(out.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; only the fallback is timed")
    print(f"{'kernel':8} {'python ns':>10} {'cython ns':>10} {'speedup':>8} {'max diff':>10}")
    for name, xs in ARGS.items():
        py = getattr(_pykernels, name)
        t_py = bench(py, xs, args.repeat) * 1e9
        if _ckernels is None:
            print(f"{name:8} {t_py:10.0f}")
            continue
        cy = getattr(_ckernels, name)
        t_cy = bench(cy, xs, args.repeat) * 1e9
        diff = max(abs(py(x) - cy(x)) / max(abs(py(x)), 1e-300) for x in xs)
        print(f"{name:8} {t_py:10.0f} {t_cy:10.0f} {t_py / t_cy:8.1f} {diff:10.1e}")
    t_py = end_to_end(True)
    line = f"solve_full x60: python {t_py:.2f} s"
    if _ckernels is not None:
        t_cy = end_to_end(False)
        line += f", cython {t_cy:.2f} s ({t_py / t_cy:.1f}x)"
    print(line)


if __name__ == "__main__":
    main()
