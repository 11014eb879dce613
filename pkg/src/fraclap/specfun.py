"""Special functions used throughout the package.

Bessel functions J, I, K of orders 0 and 1 for real arguments, complex Gamma,
and McMahon-type estimates of the zeros of J0 and J1.  The numerical kernels
live in ``_ckernels`` (compiled) or ``_pykernels`` (fallback); this module
validates arguments and maps failures onto :mod:`fraclap.errors`.

``bessel_i`` raises :class:`RangeError` for |x| > 700 (``I_OVERFLOW_CUTOFF``)
instead of returning infinity.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from ._backend import kernels as _k
from ._pykernels import I_OVERFLOW_CUTOFF
from .errors import DomainError, PoleError, RangeError

__all__ = [
    "BesselOrder",
    "ZeroEstimate",
    "I_OVERFLOW_CUTOFF",
    "bessel_j",
    "bessel_i",
    "bessel_k",
    "gamma",
    "bessel_j_zero",
]


class BesselOrder(enum.IntEnum):
    """Supported Bessel orders."""

    ZERO = 0
    ONE = 1

    @classmethod
    def coerce(cls, order) -> "BesselOrder":
        try:
            return cls(int(order))
        except (ValueError, TypeError):
            raise DomainError(f"Bessel order must be 0 or 1, got {order!r}") from None


@dataclass(frozen=True)
class ZeroEstimate:
    """Approximate location of the k-th positive zero of J_nu."""

    nu: BesselOrder
    k: int
    value: float
    refined: bool


def _finite(x, name="x") -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x}")
    return x


def bessel_j(order, x: float) -> float:
    """J_nu(x) for nu in {0, 1}; negative x handled by parity."""
    nu = BesselOrder.coerce(order)
    x = _finite(x)
    return _k.j0(x) if nu == 0 else _k.j1(x)


def bessel_i(order, x: float) -> float:
    """I_nu(x) for nu in {0, 1} and |x| <= 700."""
    nu = BesselOrder.coerce(order)
    x = _finite(x)
    if abs(x) > I_OVERFLOW_CUTOFF:
        raise RangeError(f"I_{int(nu)}({x}) overflows (|x| > {I_OVERFLOW_CUTOFF})")
    return _k.i0(x) if nu == 0 else _k.i1(x)


def bessel_k(order, x: float) -> float:
    """K_nu(x) for nu in {0, 1} and x > 0.  Underflows to 0 for x > ~745."""
    nu = BesselOrder.coerce(order)
    x = _finite(x)
    if x <= 0.0:
        raise DomainError(f"K_{int(nu)}(x) requires x > 0, got {x}")
    return _k.k0(x) if nu == 0 else _k.k1(x)


def _pole_of(z: complex):
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        return int(z.real)
    return None


def gamma(z) -> complex:
    """Gamma function of a complex argument.

    Raises :class:`PoleError` at the non-positive integers.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"gamma argument must be finite, got {z}")
    pole = _pole_of(z)
    if pole is not None:
        raise PoleError(f"gamma has a pole at {pole}", pole)
    return _k.cgamma(z)


def bessel_j_zero(order, k: int, refined: bool = True) -> ZeroEstimate:
    """Estimate the k-th positive zero of J_nu.

    ``b = pi (k + nu/2 - 1/4)``; with ``refined`` the first McMahon
    correction ``-(4 nu^2 - 1) / (8 b)`` is added.
    """
    nu = BesselOrder.coerce(order)
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise DomainError(f"zero index must be a positive integer, got {k!r}")
    k = int(k)
    b = math.pi * (k + 0.5 * nu - 0.25)
    value = b - (4 * nu * nu - 1) / (8.0 * b) if refined else b
    return ZeroEstimate(nu=nu, k=k, value=value, refined=bool(refined))
