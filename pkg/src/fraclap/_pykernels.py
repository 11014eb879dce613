"""Pure-Python scalar kernels for Bessel J/I/K (orders 0, 1) and complex Gamma.

These are the fallback implementations; ``_ckernels`` (Cython) mirrors them
one-to-one and is preferred when it has been compiled.  Inputs are assumed
already validated by :mod:`fraclap.specfun`.

Regimes
-------
J0, J1 : ascending series for |x| < 2, Miller backward recurrence for
         |x| <= 25, Hankel amplitude/phase expansion beyond.
I0, I1 : ascending series for |x| <= 30, large-argument expansion beyond.
K0, K1 : ascending series for x <= 2, trapezoid rule on
         exp(-x (cosh t - 1)) cosh(nu t) for x <= 25, expansion beyond.
Gamma  : Lanczos (g = 7, 9 terms) on Re z >= 1/2, reflection elsewhere.
"""

import cmath
import math

EULER_GAMMA = 0.57721566490153286061
_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
_INV_SQRT2 = 1.0 / math.sqrt(2.0)

J_SERIES_MAX = 2.0
J_MILLER_MAX = 25.0
I_SERIES_MAX = 30.0
K_SERIES_MAX = 2.0
K_TRAPEZOID_MAX = 25.0
# exp(x) overflows just above 709.78; keep headroom for the 1/sqrt(2 pi x) factor
I_OVERFLOW_CUTOFF = 700.0

_K_STEP = 1.0 / 16.0


def _asymptotic_pq(nu, x):
    """Hankel P, Q sums for J_nu(x), x >= J_MILLER_MAX."""
    mu = 4.0 * nu * nu
    p = 1.0
    q = 0.0
    term = 1.0
    k = 1
    inv8x = 1.0 / (8.0 * x)
    while k < 200:
        term *= (mu - (2 * k - 1) ** 2) * inv8x / k
        if k % 2 == 1:
            # odd k contributes to Q with sign (-1)^((k-1)/2)
            q += term if (k // 2) % 2 == 0 else -term
        else:
            p += -term if (k // 2) % 2 == 1 else term
        if abs(term) < 1e-17:
            break
        k += 1
    return p, q


def _j_asymptotic(nu, x):
    p, q = _asymptotic_pq(nu, x)
    c = math.cos(x)
    s = math.sin(x)
    if nu == 0:
        cos_chi = (c + s) * _INV_SQRT2
        sin_chi = (s - c) * _INV_SQRT2
    else:
        cos_chi = (s - c) * _INV_SQRT2
        sin_chi = -(s + c) * _INV_SQRT2
    return _SQRT_2_OVER_PI / math.sqrt(x) * (p * cos_chi - q * sin_chi)


def _j_series(nu, x):
    y = -0.25 * x * x
    term = 1.0 if nu == 0 else 0.5 * x
    total = term
    k = 1
    while True:
        term *= y / (k * (k + nu))
        total += term
        if abs(term) <= 1e-17 * abs(total):
            return total
        k += 1


def _j_miller(x):
    """Return (J0(x), J1(x)) by backward recurrence, normalised by
    J0 + 2 (J2 + J4 + ...) = 1."""
    start = 2 * (int(x + 18.0 + 10.0 * x ** (1.0 / 3.0)) // 2)
    two_over_x = 2.0 / x
    jp1 = 0.0
    jk = 1e-30
    norm = 0.0
    j1 = 0.0
    for k in range(start, 0, -1):
        jm1 = k * two_over_x * jk - jp1
        jp1 = jk
        jk = jm1
        # jk now holds J_{k-1}
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2.0 * jk
        if k - 1 == 1:
            j1 = jk
        if abs(jk) > 1e250:
            jk *= 1e-250
            jp1 *= 1e-250
            norm *= 1e-250
            j1 *= 1e-250
    norm += jk
    return jk / norm, j1 / norm


def j0(x):
    ax = abs(x)
    if ax < J_SERIES_MAX:
        return _j_series(0, ax)
    if ax <= J_MILLER_MAX:
        return _j_miller(ax)[0]
    return _j_asymptotic(0, ax)


def j1(x):
    ax = abs(x)
    if ax < J_SERIES_MAX:
        v = _j_series(1, ax)
    elif ax <= J_MILLER_MAX:
        v = _j_miller(ax)[1]
    else:
        v = _j_asymptotic(1, ax)
    return -v if x < 0 else v


def _i_series(nu, x):
    y = 0.25 * x * x
    term = 1.0 if nu == 0 else 0.5 * x
    total = term
    k = 1
    while True:
        term *= y / (k * (k + nu))
        total += term
        if term <= 1e-17 * total:
            return total
        k += 1


def _large_x_sum(nu, x, alternate):
    mu = 4.0 * nu * nu
    total = 1.0
    term = 1.0
    inv8x = 1.0 / (8.0 * x)
    for k in range(1, 200):
        term *= (mu - (2 * k - 1) ** 2) * inv8x / k
        total += -term if (alternate and k % 2 == 1) else term
        if abs(term) < 1e-17:
            break
    return total


def _i_asymptotic(nu, x):
    return math.exp(x) / math.sqrt(2.0 * math.pi * x) * _large_x_sum(nu, x, True)


def i0(x):
    ax = abs(x)
    if ax <= I_SERIES_MAX:
        return _i_series(0, ax)
    return _i_asymptotic(0, ax)


def i1(x):
    ax = abs(x)
    v = _i_series(1, ax) if ax <= I_SERIES_MAX else _i_asymptotic(1, ax)
    return -v if x < 0 else v


def _k0_series(x):
    y = 0.25 * x * x
    term = 1.0
    harmonic = 0.0
    acc = 0.0
    k = 1
    while True:
        term *= y / (k * k)
        harmonic += 1.0 / k
        acc += term * harmonic
        if term * harmonic < 1e-17 * abs(acc):
            break
        k += 1
    return -(math.log(0.5 * x) + EULER_GAMMA) * _i_series(0, x) + acc


def _k1_series(x):
    y = 0.25 * x * x
    # term_k = y^k / (k! (k+1)!); psi(k+1) + psi(k+2)
    term = 1.0
    psi1 = -EULER_GAMMA
    psi2 = 1.0 - EULER_GAMMA
    acc = term * (psi1 + psi2)
    k = 0
    while True:
        k += 1
        term *= y / (k * (k + 1))
        psi1 += 1.0 / k
        psi2 += 1.0 / (k + 1)
        inc = term * (psi1 + psi2)
        acc += inc
        if abs(inc) < 1e-17 * abs(acc):
            break
    return 1.0 / x + math.log(0.5 * x) * _i_series(1, x) - 0.25 * x * acc


def _k_trapezoid(nu, x):
    """e^x K_nu(x) = int_0^inf exp(-2 x sinh^2(t/2)) cosh(nu t) dt."""
    h = _K_STEP
    total = 0.5
    n = 1
    while True:
        t = n * h
        s = math.sinh(0.5 * t)
        v = math.exp(-2.0 * x * s * s)
        if nu:
            v *= math.cosh(t)
        total += v
        if v < 1e-18 * total:
            break
        n += 1
    return h * total


def _k_asymptotic(nu, x):
    return math.sqrt(0.5 * math.pi / x) * math.exp(-x) * _large_x_sum(nu, x, False)


def k0(x):
    if x <= K_SERIES_MAX:
        return _k0_series(x)
    if x <= K_TRAPEZOID_MAX:
        return _k_trapezoid(0, x) * math.exp(-x)
    return _k_asymptotic(0, x)


def k1(x):
    if x <= K_SERIES_MAX:
        return _k1_series(x)
    if x <= K_TRAPEZOID_MAX:
        return _k_trapezoid(1, x) * math.exp(-x)
    return _k_asymptotic(1, x)


_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


def cgamma(z):
    """Complex Gamma; caller guarantees z is not a pole."""
    z = complex(z)
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * cgamma(1.0 - z))
    z -= 1.0
    acc = _LANCZOS[0]
    for i in range(1, 9):
        acc += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return cmath.exp(_LOG_SQRT_2PI + (z + 0.5) * cmath.log(t) - t) * acc
