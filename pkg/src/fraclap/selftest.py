"""Identity checks run by ``fraclap selftest``.

Each check compares a computed quantity with an independent reference and
reports the discrepancy against its own tolerance (or a global override).
"""

from __future__ import annotations

import math
from typing import NamedTuple

from . import mellin, model, specfun
from .dequad import QuadratureConfig, de_finite, de_oscillatory, de_semiinfinite
from .hankel import HankelConfig, hankel_partitioned, wynn_epsilon


class CheckResult(NamedTuple):
    name: str
    error: float
    tol: float
    passed: bool


def _wronskian():
    worst = 0.0
    for i in range(50):
        x = 1e-3 * (5e4) ** (i / 49)
        w = x * (specfun.bessel_k(0, x) * specfun.bessel_i(1, x)
                 + specfun.bessel_i(0, x) * specfun.bessel_k(1, x))
        worst = max(worst, abs(w - 1.0))
    return worst


def _k0_reduction():
    p = model.ModelParams(alpha=1.0)
    return max(abs(model.solve_point(p, r).value / specfun.bessel_k(0, r) - 1.0)
               for r in (0.5, 1.0, 2.0, 5.0))


def _de_exp():
    return abs(de_semiinfinite(lambda x: math.exp(-x)).value - 1.0)


def _de_lorentz():
    return abs(de_semiinfinite(lambda x: 1.0 / (1.0 + x * x)).value - math.pi / 2)


def _de_invsqrt():
    return abs(de_finite(lambda x: 1.0 / math.sqrt(x), 0.0, 1.0).value - 2.0)


def _de_j0():
    return abs(de_oscillatory(lambda x: 1.0, "bessel_j0").value - 1.0)


def _wynn_leibniz():
    sums, acc = [], 0.0
    for k in range(21):
        acc += (-1) ** k / (2 * k + 1)
        sums.append(acc)
    return abs(wynn_epsilon(sums) - math.pi / 4)


def _wynn_log2():
    sums, acc = [], 0.0
    for k in range(1, 16):
        acc += (-1) ** (k + 1) / k
        sums.append(acc)
    return abs(wynn_epsilon(sums) - math.log(2.0))


def _hankel_k0():
    cfg = HankelConfig(n_intervals=15,
                       inner_cfg=QuadratureConfig(abs_tol=1e-14, rel_tol=1e-12))
    res = hankel_partitioned(lambda x: x / (x * x + 1.0), 1.0, cfg)
    return abs(res.value - specfun.bessel_k(0, 1.0))


def _contour_vs_quadrature():
    p = model.ModelParams(alpha=0.9)
    return max(abs(mellin.hfun_point_solution(1.8, 1.0, r) - model.solve_point(p, r).value)
               for r in (1.0, 2.0))


def _contour_abscissa():
    shifted = mellin.ContourSpec(c=2.0 - 0.9 + 0.4)
    return abs(mellin.hfun_point_solution(1.8, 1.0, 1.0)
               - mellin.hfun_point_solution(1.8, 1.0, 1.0, contour=shifted))


def _mellin_kernel():
    p = model.ModelParams(alpha=0.75)
    cfg = QuadratureConfig(abs_tol=1e-10, rel_tol=1e-9)
    numeric = de_semiinfinite(lambda x: model.solve_point(p, x).value, cfg).value
    return abs(numeric - mellin.mellin_kernel_C(1.0, 1.5, 1.0).real)


def _integer_equivalence():
    p = model.ModelParams(alpha=1.0)
    return max(abs(model.solve_full(p, r).value - model.solve_integer(p, r))
               for r in (0.1, 0.5, 1.0, 2.0, 10.0))


CHECKS = (
    ("wronskian_ik", _wronskian, 1e-11),
    ("k0_reduction", _k0_reduction, 1e-8),
    ("de_exp", _de_exp, 1e-12),
    ("de_lorentzian", _de_lorentz, 1e-12),
    ("de_inverse_sqrt", _de_invsqrt, 1e-12),
    ("de_oscillatory_j0", _de_j0, 1e-9),
    ("wynn_leibniz_pi4", _wynn_leibniz, 1e-8),
    ("wynn_log2", _wynn_log2, 1e-10),
    ("hankel_partition_k0", _hankel_k0, 1e-8),
    ("contour_vs_quadrature", _contour_vs_quadrature, 1e-4),
    ("contour_abscissa", _contour_abscissa, 1e-6),
    ("mellin_kernel", _mellin_kernel, 1e-5),
    ("integer_equivalence", _integer_equivalence, 1e-6),
)


def run_checks(tol: float | None = None) -> list:
    """Run every check; ``tol`` replaces the per-check tolerances."""
    results = []
    for name, fn, default in CHECKS:
        limit = default if tol is None else tol
        try:
            err = float(fn())
        except Exception:  # a crashing check is a failed check
            err = math.inf
        results.append(CheckResult(name, err, limit, err <= limit))
    return results
