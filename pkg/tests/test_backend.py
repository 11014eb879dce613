import os
import subprocess
import sys

import pytest

from fraclap import _pykernels

ck = pytest.importorskip("fraclap._ckernels")

POINTS = [1e-6, 0.3, 1.0, 1.99, 2.0, 2.01, 7.5, 24.9, 25.0, 25.1, 29.9, 30.0, 30.1, 80.0,
          300.0]


@pytest.mark.parametrize("name", ["j0", "j1", "i0", "i1", "k0", "k1"])
def test_real_kernels_match(name):
    py, cy = getattr(_pykernels, name), getattr(ck, name)
    for x in POINTS + [-x for x in POINTS if name[0] in "ji"]:
        if name[0] == "k" and x <= 0:
            continue
        a, b = py(x), cy(x)
        assert abs(a - b) <= 4e-15 * max(abs(a), 1e-300), (name, x)


def test_gamma_matches():
    for z in (0.5, 3.25, -1.5 + 0.2j, 0.4 + 40j, 12.0 - 3j):
        a, b = _pykernels.cgamma(complex(z)), ck.cgamma(complex(z))
        assert abs(a - b) <= 1e-14 * abs(a)


def _probe(pure):
    code = ("import fraclap; from fraclap import ModelParams, solve_full;"
            "print(fraclap.BACKEND, repr(solve_full(ModelParams(alpha=0.9), 1.7).value))")
    env = dict(os.environ)
    env.pop("FRACLAP_PURE_PYTHON", None)
    if pure:
        env["FRACLAP_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    return out[0], float(out[1])


def test_backend_switch_and_end_to_end_parity():
    cy_name, cy_val = _probe(pure=False)
    py_name, py_val = _probe(pure=True)
    assert (cy_name, py_name) == ("cython", "python")
    assert abs(cy_val - py_val) <= 1e-13
