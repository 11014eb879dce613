"""Mellin-transform view of the point-source solution.

The Mellin transform of c_a(r) / sigma = int J0(rho r) rho / (rho^a + q) d rho is

    C(s) = q^((2-s)/a - 1) Gamma(1 - (2-s)/a) Gamma((2-s)/a) Gamma(s/2) 2^(s-1)
           / (a Gamma(1 - s/2)),

holomorphic in the strip 2 - a < Re s < 2 + a (s = 2 is removable).  Inverting
along Re s = c gives c_a as a Fox H-function,

    c_a(r) / sigma = lam * H^{2,1}_{1,3}[ q^(1/a) r / 2 ],   lam = q^(2/a) / (2 a q),

with the Gamma-product kernel written out in :func:`h_kernel`.  Closing the
contour to the right picks up the poles s = 2 + a k of Gamma((2-s)/a) and
gives the algebraic large-r series (:func:`residue_terms`).

The prefactor lam is easy to get wrong by a factor 2 or 2q; the alternatives
are kept in ``LAMBDA_VARIANTS`` and a test pins the one that reproduces the
quadrature at a = 2, q = 4.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import ConvergenceError, DomainError, PoleError
from .specfun import gamma

__all__ = [
    "HKernelSpec",
    "GKernelSpec",
    "ContourSpec",
    "LAMBDA_VARIANTS",
    "mellin_kernel_C",
    "hkernel_for_ca",
    "h_kernel",
    "g_kernel",
    "default_contour",
    "admissible_strip",
    "contour_integral",
    "fox_h",
    "meijer_g",
    "residue_terms",
    "hfun_point_solution",
    "kernel_from_spec",
    "reduction_check",
]

_POLE_TOL = 1e-8

LAMBDA_VARIANTS = {
    "derived": lambda a, q: q ** (2.0 / a) / (2.0 * a * q),
    "caption": lambda a, q: q ** (2.0 / a) / (a * q),
    "text": lambda a, q: q ** (2.0 / a) / a,
}


@dataclass(frozen=True)
class GKernelSpec:
    """Meijer G orders and parameters."""

    m: int
    n: int
    p: int
    q_count: int
    upper: tuple = ()
    lower: tuple = ()

    def __post_init__(self):
        if len(self.upper) != self.p or len(self.lower) != self.q_count:
            raise DomainError("parameter lists do not match p, q")
        if not (0 <= self.n <= self.p and 0 <= self.m <= self.q_count):
            raise DomainError("need n <= p and m <= q")


@dataclass(frozen=True)
class HKernelSpec:
    """Fox H orders and parameter pairs (a_j, A_j) / (b_j, B_j)."""

    m: int
    n: int
    p: int
    q_count: int
    upper: tuple
    lower: tuple
    reduced: bool = False
    g_equivalent: GKernelSpec | None = None

    def __post_init__(self):
        if len(self.upper) != self.p or len(self.lower) != self.q_count:
            raise DomainError("parameter lists do not match p, q")
        if not (0 <= self.n <= self.p and 0 <= self.m <= self.q_count):
            raise DomainError("need n <= p and m <= q")
        for _, scale in tuple(self.upper) + tuple(self.lower):
            if not scale > 0:
                raise DomainError("H-function scale parameters must be positive")


@dataclass(frozen=True)
class ContourSpec:
    """Vertical line Re s = c, truncated at |Im s| <= t_max."""

    c: float
    t_max: float = 400.0
    nodes: int = 100_000

    def __post_init__(self):
        if not math.isfinite(self.c):
            raise DomainError("contour abscissa must be finite")
        if not (self.t_max > 0 and self.nodes > 0):
            raise DomainError("t_max and nodes must be positive")


def _check_a(a):
    a = float(a)
    if not 1.0 < a <= 2.0:
        raise DomainError(f"exponent a must lie in (1, 2], got {a}")
    return a


def _near_nonpositive_int(w: complex, scale: float):
    """k if w is within _POLE_TOL (measured in s) of -k, k = 0, 1, ..."""
    k = round(-w.real)
    if k >= 0 and abs(w + k) * scale < _POLE_TOL:
        return k
    return None


def admissible_strip(a: float) -> tuple:
    """Open interval of Re s where C(s) is holomorphic."""
    a = _check_a(a)
    return (2.0 - a, 2.0 + a)


def default_contour(a: float) -> ContourSpec:
    """Re s = 2 - a/2: halfway between the first left pole and s = 2."""
    a = _check_a(a)
    return ContourSpec(c=2.0 - 0.5 * a)


def mellin_kernel_C(s, a: float, q: float = 1.0) -> complex:
    """Mellin transform of c_a / sigma at s (closed form)."""
    a = _check_a(a)
    q = float(q)
    if not q > 0:
        raise DomainError(f"q must be positive, got {q}")
    s = complex(s)
    if a == 2.0:
        # Gamma((2-s)/2) / Gamma(1 - s/2) == 1
        if _near_nonpositive_int(s / 2, 2.0) is not None:
            raise PoleError(f"C(s) has a pole at s = {s}", s)
        return q ** (-s / 2) * gamma(s / 2) ** 2 * 2.0 ** (s - 2)
    u = (2.0 - s) / a
    v = 1.0 - s / 2.0
    if _near_nonpositive_int(s / 2, 2.0) is not None or \
            _near_nonpositive_int(1.0 - u, a) is not None:
        raise PoleError(f"C(s) has a pole at s = {s}", s)
    ku = _near_nonpositive_int(u, a)
    jv = _near_nonpositive_int(v, 2.0)
    if ku is not None:
        if jv is None:
            raise PoleError(f"C(s) has a pole at s = {s}", s)
        # both Gammas infinite: the ratio tends to (-1)^(k-j) j! a / (2 k!)
        ratio = (-1) ** (ku - jv) * math.factorial(jv) * a / (2.0 * math.factorial(ku))
    elif jv is not None:
        return 0j
    else:
        ratio = gamma(u) / gamma(v)
    return q ** (u - 1.0) * gamma(1.0 - u) * ratio * gamma(s / 2) * 2.0 ** (s - 1) / a


def hkernel_for_ca(a: float) -> HKernelSpec:
    """H^{2,1}_{1,3} parameters of the point-source solution."""
    a = _check_a(a)
    shifted = (1.0 - 2.0 / a, 1.0 / a)
    half = (0.0, 0.5)
    reduced = a == 2.0
    g_eq = GKernelSpec(2, 0, 0, 2, (), (0.0, 0.0)) if reduced else None
    return HKernelSpec(2, 1, 1, 3, (shifted,), (half, shifted, half),
                       reduced=reduced, g_equivalent=g_eq)


def h_kernel(spec: HKernelSpec, s) -> complex:
    """prod_{j<=m} G(b_j + B_j s) prod_{j<=n} G(1 - a_j - A_j s)
    / (prod_{j>m} G(1 - b_j - B_j s) prod_{j>n} G(a_j + A_j s))."""
    s = complex(s)
    num = 1.0 + 0j
    den = 1.0 + 0j
    for j, (b, B) in enumerate(spec.lower):
        if j < spec.m:
            num *= gamma(b + B * s)
        else:
            den *= gamma(1.0 - b - B * s)
    for j, (a, A) in enumerate(spec.upper):
        if j < spec.n:
            num *= gamma(1.0 - a - A * s)
        else:
            den *= gamma(a + A * s)
    return num / den


def g_kernel(spec: GKernelSpec, s) -> complex:
    """prod_{j<=m} G(b_j - s) prod_{j<=n} G(1 - a_j + s)
    / (prod_{j>m} G(1 - b_j + s) prod_{j>n} G(a_j - s)).

    Paired with z^s (the usual Meijer convention).
    """
    s = complex(s)
    num = 1.0 + 0j
    den = 1.0 + 0j
    for j, b in enumerate(spec.lower):
        if j < spec.m:
            num *= gamma(b - s)
        else:
            den *= gamma(1.0 - b + s)
    for j, a in enumerate(spec.upper):
        if j < spec.n:
            num *= gamma(1.0 - a + s)
        else:
            den *= gamma(a - s)
    return num / den


def contour_integral(kernel, x: float, contour: ContourSpec, sign: int = -1,
                     tol: float = 1e-14) -> float:
    """(1 / 2 pi i) int_{c - i inf}^{c + i inf} kernel(s) x^(sign s) ds for real x > 0.

    The integrand is conjugate-symmetric, so this is (1/pi) int_0^inf Re(...) dt,
    done by the trapezoid rule with step halving; the line is cut where the
    envelope |kernel| x^(sign c) has fallen by ``tol`` relative to its peak.
    """
    x = float(x)
    if not x > 0:
        raise DomainError(f"argument must be positive, got {x}")
    c = contour.c
    logx = math.log(x)

    def f(t):
        s = complex(c, t)
        return (kernel(s) * cmath.exp(sign * s * logx)).real

    def envelope(t):
        return abs(kernel(complex(c, t))) * math.exp(sign * c * logx)

    # cut-off: march out until the envelope is negligible
    peak = envelope(0.0)
    step = 0.5
    t_end = step
    quiet = 0
    while True:
        env = envelope(t_end)
        peak = max(peak, env)
        quiet = quiet + 1 if env < tol * peak else 0
        if quiet >= 3:
            break
        t_end += step
        if t_end > contour.t_max:
            raise ConvergenceError(
                f"kernel envelope still {env / peak:.3g} of its peak at |Im s| = "
                f"{contour.t_max}; the integrand does not decay on Re s = {c}")

    h = 0.25
    n = int(math.ceil(t_end / h))
    total = 0.5 * f(0.0) + sum(f(k * h) for k in range(1, n + 1))
    estimate = h * total / math.pi
    used = n + 1
    while True:
        h *= 0.5
        n *= 2
        total += sum(f(k * h) for k in range(1, n + 1, 2))
        used += n // 2
        new = h * total / math.pi
        scale = peak * t_end / math.pi
        if abs(new - estimate) <= max(tol * scale, 1e-15 * abs(new)):
            return new
        if used > contour.nodes:
            raise ConvergenceError(
                f"contour trapezoid not converged after {used} nodes "
                f"(last change {abs(new - estimate):.3g})")
        estimate = new


def _regularised(kernel, delta=1e-5):
    """Kernel with removable singularities filled in.

    Where a Gamma factor is evaluated exactly at a pole the value is taken as
    the mean over s +- delta.  A genuine pole shows up as a sign flip across s
    (odd order) or as symmetric means that grow as delta shrinks (even order);
    either re-raises.
    """
    def wrapped(s):
        try:
            return kernel(s)
        except PoleError:
            lo, hi = kernel(s - delta), kernel(s + delta)
            near = 0.5 * (lo + hi)
            far = 0.5 * (kernel(s - 2 * delta) + kernel(s + 2 * delta))
            if abs(hi - lo) > 1e-3 * (abs(hi) + abs(lo)) or abs(near - far) > 1e-3 * abs(near):
                raise
            return near
    return wrapped


def fox_h(spec: HKernelSpec, x: float, contour: ContourSpec) -> float:
    """H-function value at real x > 0 along the given vertical contour."""
    return contour_integral(_regularised(lambda s: h_kernel(spec, s)), x, contour, sign=-1)


def meijer_g(spec: GKernelSpec, x: float, contour: ContourSpec) -> float:
    """Meijer G value at real x > 0 (kernel paired with x^s)."""
    return contour_integral(_regularised(lambda s: g_kernel(spec, s)), x, contour, sign=1)


def residue_terms(a: float, q: float, r: float, count: int) -> list:
    """First ``count`` terms of the large-r residue series of c_a / sigma.

    Term k is minus the residue of C(s) r^(-s) at s = 2 + a k.  Gamma((2-s)/a)
    contributes -a (-1)^k / k!; the other factors are evaluated there, and a
    pole of Gamma(1 - s/2) makes the term vanish.
    """
    a = _check_a(a)
    terms = []
    for k in range(1, count + 1):
        s_k = 2.0 + a * k
        v = 1.0 - 0.5 * s_k
        if _near_nonpositive_int(complex(v), 2.0) is not None:
            terms.append(0.0)
            continue
        rest = (q ** (-k - 1.0) * math.factorial(k) * gamma(0.5 * s_k).real
                * 2.0 ** (s_k - 1.0) / (a * gamma(v).real))
        terms.append(a * (-1) ** k / math.factorial(k) * rest * r ** (-s_k))
    return terms


def hfun_point_solution(a: float, q: float, r: float, strategy: str = "contour",
                        terms: int = 3, contour: ContourSpec | None = None,
                        lambda_variant: str = "derived") -> float:
    """c_a(r) / sigma from the H-function representation.

    ``contour`` integrates the Mellin-Barnes integral on a vertical line inside
    the strip (2 - a, 2 + a); ``residue_series`` sums ``terms`` right-half-plane
    residues, an asymptotic series meant for large r.
    """
    a = _check_a(a)
    q = float(q)
    r = float(r)
    if not (q > 0 and r > 0 and math.isfinite(r)):
        raise DomainError(f"need q > 0 and r > 0, got q={q}, r={r}")
    if strategy == "contour":
        contour = contour or default_contour(a)
        lo, hi = admissible_strip(a)
        if not lo < contour.c < hi:
            raise DomainError(f"contour Re s = {contour.c} leaves the strip ({lo}, {hi})")
        lam = LAMBDA_VARIANTS[lambda_variant](a, q)
        return lam * fox_h(hkernel_for_ca(a), q ** (1.0 / a) * r / 2.0, contour)
    if strategy == "residue_series":
        if terms < 1:
            raise DomainError("need at least one residue term")
        series = residue_terms(a, q, r, terms)
        partial = 0.0
        last = None
        for k, t in enumerate(series, start=1):
            if t == 0.0:
                continue
            if last is not None and abs(t) >= abs(last):
                err = ConvergenceError(
                    f"residue terms stop decreasing at k = {k} for r = {r}; the series "
                    f"is asymptotic and only usable at larger r")
                err.partial_sum = partial
                raise err
            partial += t
            last = t
        return partial
    raise DomainError(f"unknown strategy {strategy!r}")


def kernel_from_spec(spec: HKernelSpec, a: float, q: float, s) -> complex:
    """C(s) rebuilt from the H-function parameters: lam x0^(-s) H(s), x0 = q^(1/a)/2."""
    lam = LAMBDA_VARIANTS["derived"](a, q)
    x0 = q ** (1.0 / a) / 2.0
    return lam * cmath.exp(-complex(s) * math.log(x0)) * h_kernel(spec, s)


def reduction_check(r_values: Sequence[float], contour: ContourSpec | None = None) -> list:
    """(H-route, G-route) pairs at a = 2, q = 1 for the K0 reduction."""
    spec = hkernel_for_ca(2.0)
    g_contour = contour or ContourSpec(c=-0.5)
    out = []
    for r in r_values:
        h_val = hfun_point_solution(2.0, 1.0, r, "contour")
        g_val = 0.5 * meijer_g(spec.g_equivalent, r * r / 4.0, g_contour)
        out.append((h_val, g_val))
    return out
