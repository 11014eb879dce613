# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scalar kernels; same algorithms and regime switches as _pykernels."""

from libc.math cimport sqrt, exp, log, sin, cos, sinh, cosh, fabs, pow, M_PI

cdef extern from "<complex.h>" nogil:
    double complex csin(double complex)
    double complex cexp(double complex)
    double complex clog(double complex)

cdef double EULER_GAMMA = 0.57721566490153286061
cdef double SQRT_2_OVER_PI = 0.79788456080286535588
cdef double INV_SQRT2 = 0.70710678118654752440
cdef double J_SERIES_MAX = 2.0
cdef double J_MILLER_MAX = 25.0
cdef double I_SERIES_MAX = 30.0
cdef double K_SERIES_MAX = 2.0
cdef double K_TRAPEZOID_MAX = 25.0
cdef double K_STEP = 1.0 / 16.0

cdef double LANCZOS[9]
LANCZOS[:] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
]
cdef double LOG_SQRT_2PI = 0.91893853320467274178


cdef void _asymptotic_pq(int nu, double x, double* p, double* q) nogil:
    cdef double mu = 4.0 * nu * nu
    cdef double term = 1.0
    cdef double inv8x = 1.0 / (8.0 * x)
    cdef int k = 1
    p[0] = 1.0
    q[0] = 0.0
    while k < 200:
        term *= (mu - (2 * k - 1) * (2 * k - 1)) * inv8x / k
        if k % 2 == 1:
            if (k // 2) % 2 == 0:
                q[0] += term
            else:
                q[0] -= term
        else:
            if (k // 2) % 2 == 1:
                p[0] -= term
            else:
                p[0] += term
        if fabs(term) < 1e-17:
            break
        k += 1


cdef double _j_asymptotic(int nu, double x) nogil:
    cdef double p, q, c, s, cos_chi, sin_chi
    _asymptotic_pq(nu, x, &p, &q)
    c = cos(x)
    s = sin(x)
    if nu == 0:
        cos_chi = (c + s) * INV_SQRT2
        sin_chi = (s - c) * INV_SQRT2
    else:
        cos_chi = (s - c) * INV_SQRT2
        sin_chi = -(s + c) * INV_SQRT2
    return SQRT_2_OVER_PI / sqrt(x) * (p * cos_chi - q * sin_chi)


cdef double _j_series(int nu, double x) nogil:
    cdef double y = -0.25 * x * x
    cdef double term = 1.0 if nu == 0 else 0.5 * x
    cdef double total = term
    cdef int k = 1
    while True:
        term *= y / (k * (k + nu))
        total += term
        if fabs(term) <= 1e-17 * fabs(total):
            return total
        k += 1


cdef void _j_miller(double x, double* out0, double* out1) nogil:
    cdef int start = 2 * (<int>(x + 18.0 + 10.0 * pow(x, 1.0 / 3.0)) // 2)
    cdef double two_over_x = 2.0 / x
    cdef double jp1 = 0.0, jk = 1e-30, jm1, norm = 0.0, j1 = 0.0
    cdef int k
    for k in range(start, 0, -1):
        jm1 = k * two_over_x * jk - jp1
        jp1 = jk
        jk = jm1
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2.0 * jk
        if k - 1 == 1:
            j1 = jk
        if fabs(jk) > 1e250:
            jk *= 1e-250
            jp1 *= 1e-250
            norm *= 1e-250
            j1 *= 1e-250
    norm += jk
    out0[0] = jk / norm
    out1[0] = j1 / norm


cpdef double j0(double x) nogil:
    cdef double ax = fabs(x), a, b
    if ax < J_SERIES_MAX:
        return _j_series(0, ax)
    if ax <= J_MILLER_MAX:
        _j_miller(ax, &a, &b)
        return a
    return _j_asymptotic(0, ax)


cpdef double j1(double x) nogil:
    cdef double ax = fabs(x), a, v
    if ax < J_SERIES_MAX:
        v = _j_series(1, ax)
    elif ax <= J_MILLER_MAX:
        _j_miller(ax, &a, &v)
    else:
        v = _j_asymptotic(1, ax)
    return -v if x < 0 else v


cdef double _i_series(int nu, double x) nogil:
    cdef double y = 0.25 * x * x
    cdef double term = 1.0 if nu == 0 else 0.5 * x
    cdef double total = term
    cdef int k = 1
    while True:
        term *= y / (k * (k + nu))
        total += term
        if term <= 1e-17 * total:
            return total
        k += 1


cdef double _large_x_sum(int nu, double x, bint alternate) nogil:
    cdef double mu = 4.0 * nu * nu
    cdef double total = 1.0, term = 1.0
    cdef double inv8x = 1.0 / (8.0 * x)
    cdef int k
    for k in range(1, 200):
        term *= (mu - (2 * k - 1) * (2 * k - 1)) * inv8x / k
        if alternate and k % 2 == 1:
            total -= term
        else:
            total += term
        if fabs(term) < 1e-17:
            break
    return total


cpdef double i0(double x) nogil:
    cdef double ax = fabs(x)
    if ax <= I_SERIES_MAX:
        return _i_series(0, ax)
    return exp(ax) / sqrt(2.0 * M_PI * ax) * _large_x_sum(0, ax, True)


cpdef double i1(double x) nogil:
    cdef double ax = fabs(x), v
    if ax <= I_SERIES_MAX:
        v = _i_series(1, ax)
    else:
        v = exp(ax) / sqrt(2.0 * M_PI * ax) * _large_x_sum(1, ax, True)
    return -v if x < 0 else v


cdef double _k0_series(double x) nogil:
    cdef double y = 0.25 * x * x
    cdef double term = 1.0, harmonic = 0.0, acc = 0.0
    cdef int k = 1
    while True:
        term *= y / (k * k)
        harmonic += 1.0 / k
        acc += term * harmonic
        if term * harmonic < 1e-17 * fabs(acc):
            break
        k += 1
    return -(log(0.5 * x) + EULER_GAMMA) * _i_series(0, x) + acc


cdef double _k1_series(double x) nogil:
    cdef double y = 0.25 * x * x
    cdef double term = 1.0
    cdef double psi1 = -EULER_GAMMA, psi2 = 1.0 - EULER_GAMMA
    cdef double acc = psi1 + psi2, inc
    cdef int k = 0
    while True:
        k += 1
        term *= y / (k * (k + 1))
        psi1 += 1.0 / k
        psi2 += 1.0 / (k + 1)
        inc = term * (psi1 + psi2)
        acc += inc
        if fabs(inc) < 1e-17 * fabs(acc):
            break
    return 1.0 / x + log(0.5 * x) * _i_series(1, x) - 0.25 * x * acc


cdef double _k_trapezoid(int nu, double x) nogil:
    cdef double total = 0.5, t, s, v
    cdef int n = 1
    while True:
        t = n * K_STEP
        s = sinh(0.5 * t)
        v = exp(-2.0 * x * s * s)
        if nu:
            v *= cosh(t)
        total += v
        if v < 1e-18 * total:
            break
        n += 1
    return K_STEP * total


cpdef double k0(double x) nogil:
    if x <= K_SERIES_MAX:
        return _k0_series(x)
    if x <= K_TRAPEZOID_MAX:
        return _k_trapezoid(0, x) * exp(-x)
    return sqrt(0.5 * M_PI / x) * exp(-x) * _large_x_sum(0, x, False)


cpdef double k1(double x) nogil:
    if x <= K_SERIES_MAX:
        return _k1_series(x)
    if x <= K_TRAPEZOID_MAX:
        return _k_trapezoid(1, x) * exp(-x)
    return sqrt(0.5 * M_PI / x) * exp(-x) * _large_x_sum(1, x, False)


cdef double complex _cgamma(double complex z) nogil:
    cdef double complex acc, t
    cdef int i
    if z.real < 0.5:
        return M_PI / (csin(M_PI * z) * _cgamma(1.0 - z))
    z = z - 1.0
    acc = LANCZOS[0]
    for i in range(1, 9):
        acc = acc + LANCZOS[i] / (z + i)
    t = z + 7.5
    return cexp(LOG_SQRT_2PI + (z + 0.5) * clog(t) - t) * acc


def cgamma(z):
    return _cgamma(complex(z))
