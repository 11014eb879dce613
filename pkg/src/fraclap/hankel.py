"""Hankel-type integrals by partitioning at Bessel zeros.

``int_0^inf F(rho) J_nu(rho z) d rho`` is split at the refined asymptotic
zeros of J_nu (scaled by 1/z), each piece is integrated with tanh-sinh, and
the cumulative sums are extrapolated with Wynn's epsilon algorithm.  The part
beyond the last zero is not computed; the last piece is reported as the error
bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import specfun
from ._backend import kernels as _k
from .dequad import QuadratureConfig, QuadratureResult, de_finite
from .errors import ConvergenceError, DomainError, EvaluationError

__all__ = [
    "PartialSumTable",
    "HankelConfig",
    "wynn_epsilon",
    "epsilon_table",
    "tail_estimate",
    "partition_points",
    "hankel_partitioned",
]

# denominators smaller than this freeze the lozenge
_TINY = 1e-300


@dataclass(frozen=True)
class PartialSumTable:
    sums: tuple

    def __post_init__(self):
        object.__setattr__(self, "sums", tuple(float(s) for s in self.sums))
        if not self.sums:
            raise DomainError("partial-sum table must not be empty")

    @property
    def count(self) -> int:
        return len(self.sums)

    @classmethod
    def from_terms(cls, terms: Sequence[float]) -> "PartialSumTable":
        acc = 0.0
        sums = []
        for t in terms:
            acc += t
            sums.append(acc)
        return cls(tuple(sums))


@dataclass(frozen=True)
class HankelConfig:
    n_intervals: int = 15
    nu: specfun.BesselOrder = specfun.BesselOrder.ZERO
    inner_cfg: QuadratureConfig = field(default_factory=QuadratureConfig)
    accelerate: bool = True

    def __post_init__(self):
        if self.n_intervals < 2:
            raise DomainError(f"n_intervals must be >= 2, got {self.n_intervals}")
        object.__setattr__(self, "nu", specfun.BesselOrder.coerce(self.nu))


def epsilon_table(sums: Sequence[float]) -> list:
    """Columns eps_0, eps_1, ... of Wynn's table (eps_0 = the sums).

    Building stops at the first column whose construction hits a vanishing
    difference; the returned columns are all complete.
    """
    cols = [list(sums)]
    prev = [0.0] * (len(sums) + 1)  # eps_{-1}
    cur = cols[0]
    while len(cur) > 1:
        nxt = []
        for n in range(len(cur) - 1):
            d = cur[n + 1] - cur[n]
            if abs(d) < _TINY:
                return cols
            nxt.append(prev[n + 1] + 1.0 / d)
        prev, cur = cur, nxt
        cols.append(cur)
    return cols


def wynn_epsilon(table) -> float:
    """Extrapolated limit of a sequence of partial sums.

    Only even columns are estimates.  The deepest even column is taken unless
    its change from the previous even column is more than ten times the
    change before it, in which case the last stable column wins.
    """
    if not isinstance(table, PartialSumTable):
        table = PartialSumTable(tuple(table))
    if table.count < 3:
        raise DomainError(f"epsilon algorithm needs >= 3 partial sums, got {table.count}")
    cols = epsilon_table(table.sums)
    estimates = [col[-1] for col in cols[::2]]
    best = estimates[0]
    last_change = None
    for prev, cand in zip(estimates, estimates[1:]):
        if not math.isfinite(cand):
            break
        change = abs(cand - prev)
        if last_change is not None and change >= 10.0 * last_change and change > 0.0:
            break
        best = cand
        last_change = change
    return best


def tail_estimate(last_interval_value: float) -> float:
    """Error bound reported for a partitioned transform: the last piece."""
    return abs(float(last_interval_value))


def partition_points(nu, z: float, n_intervals: int) -> list:
    """0 followed by the first ``n_intervals`` refined zeros of J_nu, over z."""
    pts = [0.0]
    for k in range(1, n_intervals + 1):
        pts.append(specfun.bessel_j_zero(nu, k, refined=True).value / z)
    return pts


def hankel_partitioned(F: Callable[[float], float], z: float,
                       cfg: HankelConfig | None = None) -> QuadratureResult:
    """``int_0^inf F(rho) J_nu(rho z) d rho``; any rho weight belongs in F."""
    cfg = cfg or HankelConfig()
    z = float(z)
    if not (z > 0.0 and math.isfinite(z)):
        raise DomainError(f"z must be positive, got {z}")
    kernel = _k.j0 if cfg.nu == 0 else _k.j1

    def integrand(rho):
        return F(rho) * kernel(rho * z)

    pts = partition_points(cfg.nu, z, cfg.n_intervals)
    pieces = []
    nodes = 0
    for k in range(cfg.n_intervals):
        try:
            res = de_finite(integrand, pts[k], pts[k + 1], cfg.inner_cfg)
        except EvaluationError as exc:
            raise EvaluationError(f"interval {k} [{pts[k]}, {pts[k + 1]}]: {exc}") from exc
        if not res.converged:
            raise ConvergenceError(
                f"interval {k} [{pts[k]}, {pts[k + 1]}] did not converge "
                f"(err_est={res.err_est:.3g})")
        pieces.append(res.value)
        nodes += res.nodes_used
    table = PartialSumTable.from_terms(pieces)
    value = wynn_epsilon(table) if cfg.accelerate else table.sums[-1]
    return QuadratureResult(value, tail_estimate(pieces[-1]), nodes, True,
                            table.sums)
