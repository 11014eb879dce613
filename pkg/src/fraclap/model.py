"""Steady-state radial profiles of the fractional reaction-diffusion system.

    -D (-Laplacian)^alpha c + sigma 1(r < L) - q c = 0,   c(inf) = 0

in two dimensions with a uniform disk source of radius L.  D is folded into
the source and rate at construction (sigma' = sigma/D, q' = q/D); every
evaluator works with the effective values.

Solution paths
--------------
solve_integer    closed form in I0/K0 (alpha = 1 only)
solve_full       sigma L int J0(rho r) J1(rho L) / (rho^2alpha + q) d rho
solve_ring       ring source on r = L, kernel J0(rho r) J0(rho L) rho
solve_point      point source at the origin, kernel J0(rho r) rho
asymptotic_tail  leading algebraic term of solve_point for large r

For products of two Bessel functions the quadrature is keyed on the factor
that oscillates faster (J0 at rho r when r >= L, the L-factor otherwise); the
slower one is treated as part of the amplitude.

The algebraic tail is written in the scaled radius z = q^(1/a) r:

    c(r) ~ sigma q^(2/a - 1) Gamma(a/2 + 1)^2 2^(a+1) sin(pi a/2) / (pi z^(a+2))
         = sigma Gamma(a/2 + 1)^2 2^(a+1) sin(pi a/2) / (pi q^2 r^(a+2))

which follows from the scaling c(r; q) = q^(2/a-1) c(q^(1/a) r; 1).
"""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from ._backend import kernels as _k
from .dequad import QuadratureConfig, QuadratureResult, de_finite, de_oscillatory
from .errors import CalibrationError, DomainError, UsageError
from .hankel import HankelConfig, hankel_partitioned
from . import specfun

__all__ = [
    "ModelParams",
    "Method",
    "Sample",
    "RadialProfile",
    "ENGINES",
    "DEFAULT_CFG",
    "solve_integer",
    "solve_full",
    "solve_ring",
    "calibrate_ring",
    "solve_point",
    "asymptotic_tail",
    "log_grid",
    "evaluate",
    "profile",
]

ENGINES = ("oscillatory", "partitioned")
DEFAULT_CFG = QuadratureConfig(abs_tol=1e-15, rel_tol=1e-11)
_DEGENERATE_I2 = 1e-14


@dataclass(frozen=True)
class ModelParams:
    sigma: float = 1.0
    q: float = 1.0
    D: float = 1.0
    L: float = 1.0
    alpha: float = 1.0
    sigma_eff: float = field(init=False)
    q_eff: float = field(init=False)

    def __post_init__(self):
        for name in ("sigma", "q", "D", "L", "alpha"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v}")
            object.__setattr__(self, name, v)
        if not 0.0 < self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.q <= 0 or self.D <= 0 or self.L <= 0:
            raise DomainError("q, D and L must be positive")
        if self.sigma < 0:
            raise DomainError(f"sigma must be non-negative, got {self.sigma}")
        object.__setattr__(self, "sigma_eff", self.sigma / self.D)
        object.__setattr__(self, "q_eff", self.q / self.D)

    @property
    def a(self) -> float:
        return 2.0 * self.alpha

    @property
    def beta(self) -> float:
        return 2.0 * self.alpha - 1.0

    def as_dict(self) -> dict:
        return {"sigma": self.sigma, "q": self.q, "D": self.D, "L": self.L,
                "alpha": self.alpha}


class Method(str, enum.Enum):
    INTEGER_CLOSED = "integer_closed"
    FULL_QUADRATURE = "full_quadrature"
    RING = "ring"
    POINT_ASYMPTOTIC = "point_asymptotic"
    TAIL_ASYMPTOTIC = "tail_asymptotic"
    HFUN = "hfun"

    @property
    def has_error(self) -> bool:
        return self in (Method.FULL_QUADRATURE, Method.RING, Method.POINT_ASYMPTOTIC)


class Sample(NamedTuple):
    r: float
    c: float
    err_est: float | None


@dataclass(frozen=True)
class RadialProfile:
    method: Method
    params: ModelParams
    samples: tuple

    def __post_init__(self):
        rs = [s.r for s in self.samples]
        if any(b <= a for a, b in zip(rs, rs[1:])):
            raise DomainError("profile radii must be strictly increasing")
        if self.method.has_error and any(s.err_est is None for s in self.samples):
            raise DomainError(f"{self.method.value} samples need error estimates")

    @property
    def r(self):
        return [s.r for s in self.samples]

    @property
    def c(self):
        return [s.c for s in self.samples]


def _scaled(res: QuadratureResult, factor: float) -> QuadratureResult:
    return QuadratureResult(res.value * factor, res.err_est * abs(factor),
                            res.nodes_used, res.converged, res.history)


_ZERO = QuadratureResult(0.0, 0.0, 0, True)


def _check_r(r, strict=False):
    r = float(r)
    if not math.isfinite(r) or r < 0 or (strict and r == 0):
        raise DomainError(f"radius must be {'positive' if strict else 'non-negative'}, got {r}")
    return r


def _denominator(alpha, q):
    if alpha == 1.0:
        return lambda rho: rho * rho + q
    a = 2.0 * alpha
    return lambda rho: rho ** a + q


def _check_engine(engine):
    if engine not in ENGINES:
        raise UsageError(f"unknown engine {engine!r}; choose from {ENGINES}")


def _bessel_product(nu_r, r, nu_l, L, amplitude, engine, cfg, hankel_intervals):
    """int_0^inf J_nu_r(rho r) J_nu_l(rho L) amplitude(rho) d rho."""
    kern = {0: _k.j0, 1: _k.j1}
    if r >= L:
        fast_nu, fast_w, slow, slow_w = nu_r, r, kern[nu_l], L
    else:
        fast_nu, fast_w, slow, slow_w = nu_l, L, kern[nu_r], r

    if slow_w == 0.0:
        slow_at_zero = 1.0 if slow is _k.j0 else 0.0

        def g(rho):
            return slow_at_zero * amplitude(rho)
    else:
        def g(rho):
            return slow(rho * slow_w) * amplitude(rho)

    if engine == "oscillatory":
        return de_oscillatory(g, "bessel_j0" if fast_nu == 0 else "bessel_j1",
                              fast_w, cfg)
    hcfg = HankelConfig(n_intervals=hankel_intervals, nu=fast_nu,
                        inner_cfg=QuadratureConfig(abs_tol=max(cfg.abs_tol, 1e-14),
                                                   rel_tol=cfg.rel_tol))
    return hankel_partitioned(g, fast_w, hcfg)


def solve_integer(params: ModelParams, r: float) -> float:
    """Closed-form profile for alpha = 1.

    Inside the source:  sigma/q - (sigma L / sqrt q) K1(sqrt q L) I0(sqrt q r)
    outside:            (sigma L / sqrt q) I1(sqrt q L) K0(sqrt q r)
    and the mean of both at r = L.
    """
    if params.alpha != 1.0:
        raise UsageError(f"solve_integer needs alpha = 1, got {params.alpha}")
    r = _check_r(r)
    sigma, q, L = params.sigma_eff, params.q_eff, params.L
    if sigma == 0.0:
        return 0.0
    sq = math.sqrt(q)
    pref = sigma * L / sq

    def inner(x):
        return sigma / q - pref * specfun.bessel_k(1, sq * L) * specfun.bessel_i(0, sq * x)

    def outer(x):
        return pref * specfun.bessel_i(1, sq * L) * specfun.bessel_k(0, sq * x)

    if r < L:
        return inner(r)
    if r > L:
        return outer(r)
    return 0.5 * (inner(r) + outer(r))


def solve_full(params: ModelParams, r: float, engine: str = "oscillatory",
               cfg: QuadratureConfig | None = None,
               hankel_intervals: int = 15) -> QuadratureResult:
    """Full fractional solution sigma L int J0(rho r) J1(rho L)/(rho^2alpha + q)."""
    _check_engine(engine)
    r = _check_r(r)
    if params.sigma_eff == 0.0:
        return _ZERO
    den = _denominator(params.alpha, params.q_eff)
    res = _bessel_product(0, r, 1, params.L, lambda rho: 1.0 / den(rho), engine,
                          cfg or DEFAULT_CFG, hankel_intervals)
    return _scaled(res, params.sigma_eff * params.L)


def _point_kernel(params, R, cfg):
    den = _denominator(params.alpha, params.q_eff)
    return de_oscillatory(lambda rho: rho / den(rho), "bessel_j0", R, cfg)


def _ring_integral(params, r, engine, cfg, hankel_intervals):
    """int J0(rho r) J0(rho L) rho / (rho^2alpha + q) d rho.

    Sampling J0(rho r) J0(rho L) at the zeros of either factor aliases away
    its non-oscillating part when r is near L, so the oscillatory engine uses
    Graf's addition theorem instead,
        J0(rho r) J0(rho L) = (1/pi) int_0^pi J0(rho R(theta)) d theta,
    with R^2 = (r - L)^2 + 4 r L sin^2(theta/2), and averages the
    point-source kernel over theta.
    """
    cfg = cfg or DEFAULT_CFG
    if engine == "partitioned":
        den = _denominator(params.alpha, params.q_eff)
        return _bessel_product(0, r, 0, params.L, lambda rho: rho / den(rho), engine,
                               cfg, hankel_intervals)
    L = params.L
    diff2 = (r - L) ** 2
    four_rl = 4.0 * r * L
    inner_nodes = 0
    inner_ok = True

    def over_theta(theta):
        nonlocal inner_nodes, inner_ok
        s = math.sin(0.5 * theta)
        R = math.sqrt(diff2 + four_rl * s * s)
        if R == 0.0:
            # only reachable when theta underflows at r = L; the DE weight is 0 there
            return 0.0
        res = _point_kernel(params, R, cfg)
        inner_nodes += res.nodes_used
        inner_ok = inner_ok and res.converged
        return res.value

    outer = de_finite(over_theta, 0.0, math.pi,
                      QuadratureConfig(abs_tol=max(cfg.abs_tol, 1e-13), rel_tol=1e-10))
    return QuadratureResult(outer.value / math.pi, outer.err_est / math.pi,
                            outer.nodes_used + inner_nodes,
                            outer.converged and inner_ok, outer.history)


def solve_ring(params: ModelParams, sigma_ring: float, r: float,
               engine: str = "oscillatory", cfg: QuadratureConfig | None = None,
               hankel_intervals: int = 15) -> QuadratureResult:
    """Ring source of intensity sigma_ring on r = L:
    sigma_ring int J0(rho r) J0(rho L) rho / (rho^2alpha + q) d rho."""
    _check_engine(engine)
    r = _check_r(r, strict=True)
    sigma_ring = float(sigma_ring)
    if sigma_ring == 0.0:
        return _ZERO
    return _scaled(_ring_integral(params, r, engine, cfg, hankel_intervals), sigma_ring)


def calibrate_ring(params: ModelParams, engine: str = "oscillatory",
                   cfg: QuadratureConfig | None = None,
                   hankel_intervals: int = 15) -> float:
    """Ring intensity that reproduces solve_full at r = L: sigma L I1 / I2."""
    _check_engine(engine)
    if params.sigma_eff == 0.0:
        return 0.0
    L = params.L
    den = _denominator(params.alpha, params.q_eff)
    i1 = _bessel_product(0, L, 1, L, lambda rho: 1.0 / den(rho), engine,
                         cfg or DEFAULT_CFG, hankel_intervals).value
    i2 = _ring_integral(params, L, engine, cfg, hankel_intervals).value
    if abs(i2) < _DEGENERATE_I2:
        raise CalibrationError(f"ring integral at r = L is degenerate ({i2:.3g})")
    return params.sigma_eff * L * i1 / i2


def solve_point(params: ModelParams, r: float, engine: str = "oscillatory",
                cfg: QuadratureConfig | None = None,
                hankel_intervals: int = 15) -> QuadratureResult:
    """Point source at the origin: sigma int J0(rho r) rho / (rho^a + q) d rho.

    Diverges at r = 0 for a <= 2, so r must be positive.
    """
    _check_engine(engine)
    r = float(r)
    if not (math.isfinite(r) and r > 0):
        raise DomainError(f"point-source solution diverges at r = 0; need r > 0, got {r}")
    if params.sigma_eff == 0.0:
        return _ZERO
    den = _denominator(params.alpha, params.q_eff)

    def g(rho):
        return rho / den(rho)

    cfg = cfg or DEFAULT_CFG
    if engine == "oscillatory":
        res = de_oscillatory(g, "bessel_j0", r, cfg)
    else:
        res = hankel_partitioned(g, r, HankelConfig(
            n_intervals=hankel_intervals,
            inner_cfg=QuadratureConfig(abs_tol=max(cfg.abs_tol, 1e-14), rel_tol=cfg.rel_tol)))
    return _scaled(res, params.sigma_eff)


def asymptotic_tail(params: ModelParams, r: float) -> float:
    """Leading algebraic term of solve_point for large r (see module notes).

    Defined for a = 2 alpha in (1, 2]; it vanishes at a = 2 where the decay
    is exponential.
    """
    a = params.a
    if not 1.0 < a <= 2.0:
        raise DomainError(f"algebraic tail needs a = 2 alpha in (1, 2], got {a}")
    r = _check_r(r, strict=True)
    if a == 2.0:
        return 0.0
    q = params.q_eff
    z = q ** (1.0 / a) * r
    c1 = (math.gamma(0.5 * a + 1.0) ** 2 * 2.0 ** (a + 1.0) * math.sin(0.5 * math.pi * a)
          / (math.pi * z ** (a + 2.0)))
    return params.sigma_eff * q ** (2.0 / a - 1.0) * c1


def log_grid(r_min: float, r_max: float, points: int) -> list:
    """Log-spaced radii, endpoints included."""
    if not (0 < r_min < r_max) or points < 2:
        raise DomainError(f"need 0 < r_min < r_max and points >= 2, got "
                          f"({r_min}, {r_max}, {points})")
    lo = math.log(r_min)
    step = (math.log(r_max) - lo) / (points - 1)
    grid = [math.exp(lo + i * step) for i in range(points)]
    grid[0] = float(r_min)
    grid[-1] = float(r_max)
    return grid


def evaluate(method, params: ModelParams, r: float, *, ring_sigma: float | None = None,
             cfg: QuadratureConfig | None = None):
    """One profile value: returns (c, err_est or None)."""
    method = Method(method)
    if method is Method.INTEGER_CLOSED:
        return solve_integer(params, r), None
    if method is Method.FULL_QUADRATURE:
        res = solve_full(params, r, cfg=cfg)
    elif method is Method.RING:
        if ring_sigma is None:
            ring_sigma = calibrate_ring(params, cfg=cfg)
        res = solve_ring(params, ring_sigma, r, cfg=cfg)
    elif method is Method.POINT_ASYMPTOTIC:
        res = solve_point(params, r, cfg=cfg)
    elif method is Method.TAIL_ASYMPTOTIC:
        return asymptotic_tail(params, r), None
    else:
        from .mellin import hfun_point_solution

        if params.sigma_eff == 0.0:
            return 0.0, None
        value = hfun_point_solution(params.a, params.q_eff, r, "contour")
        return params.sigma_eff * value, None
    return res.value, res.err_est


def thread_count(threads: int | None = None) -> int:
    """Worker count: explicit value, else FRACLAP_THREADS, 0 meaning auto."""
    if threads is None:
        try:
            threads = int(os.environ.get("FRACLAP_THREADS", "0"))
        except ValueError:
            threads = 0
    if threads <= 0:
        threads = os.cpu_count() or 1
    return threads


def profile(params: ModelParams, method, radii: Sequence[float],
            threads: int | None = None, cfg: QuadratureConfig | None = None) -> RadialProfile:
    """Evaluate ``method`` on ``radii``; samples come back in radius order
    regardless of how many workers ran."""
    method = Method(method)
    radii = [float(r) for r in radii]
    ring_sigma = calibrate_ring(params, cfg=cfg) if method is Method.RING else None

    def one(r):
        c, err = evaluate(method, params, r, ring_sigma=ring_sigma, cfg=cfg)
        return Sample(r, c, err)

    n = min(thread_count(threads), len(radii))
    if n <= 1:
        samples = [one(r) for r in radii]
    else:
        with ThreadPoolExecutor(max_workers=n) as pool:
            samples = list(pool.map(one, radii))
    return RadialProfile(method, params, tuple(samples))
