"""Double-exponential quadrature.

Three engines share one driver: the trapezoid rule on the whole t-line after
a variable change ``x = phi(t)``, with the step halved level by level until two
successive levels agree.

* :func:`de_finite` -- tanh-sinh, ``x = (a+b)/2 + (b-a)/2 tanh(pi/2 sinh t)``
* :func:`de_semiinfinite` -- ``x = exp(pi/2 sinh t)`` on (0, inf)
* :func:`de_oscillatory` -- Ooura's map ``x = M t / (1 - exp(-6 sinh t))``
  with ``M = pi / h`` so that, for large t, nodes sit on the zeros of the
  kernel.  For Bessel kernels the asymptotic zeros are not exact zeros, the
  sampled residual alternates in sign, and the trailing partial sums are
  Euler-averaged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from ._backend import kernels as _k
from .errors import DomainError, EvaluationError

__all__ = [
    "QuadratureConfig",
    "QuadratureResult",
    "de_finite",
    "de_semiinfinite",
    "de_oscillatory",
    "OSCILLATORY_KINDS",
]

_HALF_PI = 0.5 * math.pi
_EPS = 2.220446049250313e-16
# truncation threshold relative to the tolerance
_TAIL_FACTOR = 2.0 ** -6
# consecutive negligible terms required before a side is closed
_QUIET_RUN = 2
_MIN_LEVELS = 3
_EULER_DEPTH = 10


@dataclass(frozen=True)
class QuadratureConfig:
    h0: float = 0.25
    max_levels: int = 10
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_nodes: int = 200_000

    def __post_init__(self):
        if not (self.h0 > 0 and math.isfinite(self.h0)):
            raise DomainError(f"h0 must be positive, got {self.h0}")
        if self.max_levels < 1:
            raise DomainError(f"max_levels must be >= 1, got {self.max_levels}")
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("tolerances must be positive")
        if self.max_nodes < 16:
            raise DomainError(f"max_nodes too small: {self.max_nodes}")

    def tolerance(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    err_est: float
    nodes_used: int
    converged: bool
    # estimate after each level, coarsest first
    history: tuple = field(default=(), compare=False, repr=False)

    def __float__(self):
        return self.value


class _Side:
    """Outward walk bookkeeping for one half of the t-line."""

    __slots__ = ("quiet", "prev", "prev2")

    def __init__(self):
        self.quiet = 0
        self.prev = None
        self.prev2 = None


def _walk(f, node, h, start, step, thresh, side, budget):
    """Sum f over nodes t = start, start+step, ... until terms are negligible.

    ``node(t)`` returns (x, weight) or None once the map leaves the
    representable range.  Returns (sum, abs_sum, count).
    """
    total = 0.0
    abs_total = 0.0
    count = 0
    j = 0
    while count < budget:
        t = start + j * step
        j += 1
        nw = node(t)
        if nw is None:
            break
        x, w = nw
        if w == 0.0:
            break
        fx = f(x)
        count += 1
        term = w * fx
        if not math.isfinite(term):
            # endpoint-limit failure: accept only if the walk was already decaying
            if (side.prev is not None and side.prev2 is not None
                    and abs(side.prev) < abs(side.prev2)):
                break
            raise EvaluationError(f"integrand is not finite at x={x!r} (f={fx!r})")
        total += term
        abs_total += abs(term)
        side.prev2, side.prev = side.prev, term
        if abs(term) * h < thresh:
            side.quiet += 1
            if side.quiet >= _QUIET_RUN:
                break
        else:
            side.quiet = 0
    return total, abs_total, count


def _stagnant(diffs, rounding):
    """True once refinement stopped paying off at the rounding floor."""
    return (len(diffs) >= 3 and diffs[-1] >= diffs[-2]
            and diffs[-1] <= 1e3 * rounding)


def _run_levels(f, node, cfg: QuadratureConfig) -> QuadratureResult:
    """Trapezoid levels h0, h0/2, ... reusing earlier nodes (nested grids)."""
    h = cfg.h0
    thresh = cfg.abs_tol * _TAIL_FACTOR
    budget = cfg.max_nodes

    # level 0: t = 0, +-h, +-2h, ...
    nw = node(0.0)
    if nw is None:
        raise DomainError("map is not defined at t = 0")
    x0, w0 = nw
    raw = w0 * f(x0)
    if not math.isfinite(raw):
        raise EvaluationError(f"integrand is not finite at x={x0!r}")
    abs_raw = abs(raw)
    used = 1
    for sign in (1.0, -1.0):
        s, a, c = _walk(f, node, h, sign * h, sign * h, thresh, _Side(), budget - used)
        raw += s
        abs_raw += a
        used += c
    estimate = h * raw
    history = [estimate]
    diffs = []
    err = math.inf
    converged = False
    for level in range(1, cfg.max_levels + 1):
        h *= 0.5
        odd = 0.0
        for sign in (1.0, -1.0):
            s, a, c = _walk(f, node, h, sign * h, sign * 2.0 * h, thresh, _Side(),
                            budget - used)
            odd += s
            abs_raw += a
            used += c
        raw += odd
        new = h * raw
        diff = abs(new - estimate)
        diffs.append(diff)
        estimate = new
        history.append(new)
        rounding = 8.0 * _EPS * h * abs_raw
        err = max(diff, rounding)
        if level + 1 >= _MIN_LEVELS and err <= cfg.tolerance(new):
            converged = True
            break
        if used >= budget or _stagnant(diffs, rounding):
            break
    return QuadratureResult(estimate, err, used, converged, tuple(history))


def _guarded(f):
    """Float overflow or division by zero inside f reads as a non-finite value."""
    def wrapped(x):
        try:
            return f(x)
        except (OverflowError, ZeroDivisionError):
            return math.nan
    return wrapped


def de_finite(f: Callable[[float], float], a: float, b: float,
              cfg: QuadratureConfig | None = None) -> QuadratureResult:
    """Integrate f over [a, b] with the tanh-sinh rule.

    Integrable endpoint singularities are fine: nodes approach the ends
    double-exponentially but never land on them.
    """
    cfg = cfg or QuadratureConfig()
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise DomainError(f"need finite a < b, got [{a}, {b}]")
    half = 0.5 * (b - a)

    def node(t):
        u = _HALF_PI * math.sinh(t)
        if abs(u) > 350.0:
            return None
        # distance to the nearer endpoint, computed without cancellation
        e = math.exp(-2.0 * abs(u))
        d = (b - a) * e / (1.0 + e)
        if d == 0.0:
            return None
        x = b - d if t > 0 else a + d
        if x <= a or x >= b:
            return None
        ch = math.cosh(u)
        w = half * _HALF_PI * math.cosh(t) / (ch * ch)
        return x, w

    return _run_levels(_guarded(f), node, cfg)


def de_semiinfinite(f: Callable[[float], float],
                    cfg: QuadratureConfig | None = None) -> QuadratureResult:
    """Integrate f over (0, inf) with ``x = exp(pi/2 sinh t)``.

    f must decay at infinity (not merely oscillate); an algebraic
    singularity at 0 is fine.
    """
    cfg = cfg or QuadratureConfig()

    def node(t):
        u = _HALF_PI * math.sinh(t)
        if abs(u) > 700.0:
            return None
        x = math.exp(u)
        if x == 0.0 or math.isinf(x):
            return None
        return x, x * _HALF_PI * math.cosh(t)

    return _run_levels(_guarded(f), node, cfg)


# kind -> (kernel, zero offset d): zeros of the kernel sit at (n + d) pi
# for large n.  J0 ~ cos(u - pi/4), J1 ~ cos(u - 3pi/4).
OSCILLATORY_KINDS = {
    "bessel_j0": (_k.j0, -0.25),
    "bessel_j1": (_k.j1, 0.25),
    "sin": (math.sin, 0.0),
    "cos": (math.cos, 0.5),
}

# past this t, exp(-6 sinh t) < 1e-16 and nodes are on the kernel zeros
_OOURA_T_ASYMPTOTIC = 2.6
_OOURA_T_MIN = -5.0
# right-hand nodes per level before giving up on the tail
_OOURA_RIGHT_MAX = 20_000


def _ooura_node(t: float, m: float):
    """x = M phi(t), dx/dt = M phi'(t) for phi(t) = t / (1 - exp(-6 sinh t))."""
    if t == 0.0:
        return m / 6.0, 0.5 * m
    if t > 20.0:
        return m * t, m
    if t < _OOURA_T_MIN:
        return 0.0, 0.0
    s = 6.0 * math.sinh(t)
    ct = 6.0 * t * math.cosh(t)
    if t > 0.0:
        if s > 700.0:
            return m * t, m
        e = math.exp(-s)
        den = -math.expm1(-s)
        return m * t / den, m * (1.0 / den - ct * e / (den * den))
    # t < 0: rewrite with g = exp(6 sinh t) < 1 to avoid overflow
    g = math.exp(s)
    one_minus = -math.expm1(s)
    phi = -t * g / one_minus
    dphi = -g / one_minus - ct * g / (one_minus * one_minus)
    return m * phi, m * dphi


def _euler_average(partials):
    s = list(partials)
    while len(s) > 1:
        s = [0.5 * (p + q) for p, q in zip(s, s[1:])]
    return s[0]


def _ooura_level(g, kernel, offset, h, cfg, budget):
    m = math.pi / h
    thresh = cfg.abs_tol * _TAIL_FACTOR
    total = 0.0
    abs_total = 0.0
    used = 0

    # left part: nodes accumulate at 0 double-exponentially
    n = -1
    quiet = 0
    while used < budget:
        t = (n + offset) * h
        if t < _OOURA_T_MIN:
            break
        x, w = _ooura_node(t, m)
        if x == 0.0 or w == 0.0:
            break
        term = h * w * g(x) * kernel(x)
        used += 1
        if not math.isfinite(term):
            raise EvaluationError(f"integrand is not finite at x={x!r}")
        total += term
        abs_total += abs(term)
        quiet = quiet + 1 if abs(term) < thresh else 0
        if quiet >= _QUIET_RUN:
            break
        n -= 1

    # right part: walk until the Euler-averaged partial sums settle
    n = 0
    partials = []
    settled = 0
    last_avg = None
    change = math.inf
    peak = 0.0
    stop = used + min(budget - used, _OOURA_RIGHT_MAX)
    while used < stop:
        t = (n + offset) * h
        x, w = _ooura_node(t, m)
        fx = g(x)
        term = h * w * fx * kernel(x)
        used += 1
        if not math.isfinite(term):
            raise EvaluationError(f"integrand is not finite at x={x!r} (g={fx!r})")
        total += term
        abs_total += abs(term)
        peak = max(peak, abs(total))
        partials.append(total)
        n += 1
        if t < _OOURA_T_ASYMPTOTIC or len(partials) <= _EULER_DEPTH:
            continue
        del partials[: len(partials) - _EULER_DEPTH - 1]
        avg = _euler_average(partials)
        if last_avg is not None:
            change = max(abs(avg - last_avg), 4.0 * _EPS * peak)
            if change < max(cfg.tolerance(avg) * _TAIL_FACTOR, 4.0 * _EPS * peak):
                settled += 1
            else:
                settled = 0
        last_avg = avg
        if settled >= 3:
            break
    value = last_avg if last_avg is not None else total
    # an unsettled tail reports its last change, flagged by settled < 3
    return value, abs_total, used, change, settled >= 3


def de_oscillatory(g: Callable[[float], float], kind: str, omega: float = 1.0,
                   cfg: QuadratureConfig | None = None) -> QuadratureResult:
    """Integrate ``g(x) * kernel(omega x)`` over (0, inf) with Ooura's map.

    ``kind`` is one of ``bessel_j0``, ``bessel_j1``, ``sin``, ``cos``.
    """
    cfg = cfg or QuadratureConfig()
    try:
        kernel, offset = OSCILLATORY_KINDS[kind]
    except KeyError:
        raise DomainError(f"unknown oscillatory kernel {kind!r}") from None
    omega = float(omega)
    if not (omega > 0 and math.isfinite(omega)):
        raise DomainError(f"omega must be positive, got {omega}")
    inv = 1.0 / omega
    if omega == 1.0:
        scaled = _guarded(g)
    else:
        def scaled(u):
            return g(u * inv) * inv
        scaled = _guarded(scaled)

    h = cfg.h0
    used = 0
    history = []
    diffs = []
    estimate = None
    err = math.inf
    converged = False
    for level in range(cfg.max_levels + 1):
        value, abs_total, n, trunc, tail_ok = _ooura_level(
            scaled, kernel, offset, h, cfg, cfg.max_nodes - used)
        used += n
        history.append(value)
        if estimate is not None:
            rounding = 8.0 * _EPS * abs_total
            diff = abs(value - estimate)
            err = max(diff, rounding, trunc)
            estimate = value
            if level + 1 >= _MIN_LEVELS and tail_ok and err <= cfg.tolerance(value):
                converged = True
                break
            diffs.append(diff)
            if _stagnant(diffs, rounding):
                break
        estimate = value
        if used >= cfg.max_nodes:
            break
        h *= 0.5
    return QuadratureResult(estimate, err, used, converged, tuple(history))
