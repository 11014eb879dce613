import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraclap import specfun
from fraclap.errors import DomainError, PoleError, RangeError

mpmath.mp.dps = 30

GRID = [1e-3, 0.1, 0.5, 1.0, 1.9, 2.0, 2.1, 5.0, 8.0, 12.5, 24.9, 25.0, 25.1, 29.9, 30.1,
        60.0, 150.0]


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


@pytest.mark.parametrize("x", GRID)
def test_j_against_mpmath(x):
    for nu in (0, 1):
        ref = float(mpmath.besselj(nu, x))
        assert abs(specfun.bessel_j(nu, x) - ref) <= 1e-14 * max(1.0, abs(ref)) + 1e-15


@pytest.mark.parametrize("x", GRID)
def test_i_and_k_against_mpmath(x):
    for nu in (0, 1):
        assert rel(specfun.bessel_i(nu, x), float(mpmath.besseli(nu, x))) < 1e-13
        assert rel(specfun.bessel_k(nu, x), float(mpmath.besselk(nu, x))) < 1e-13


def test_parity():
    assert specfun.bessel_j(0, -3.3) == specfun.bessel_j(0, 3.3)
    assert specfun.bessel_j(1, -3.3) == -specfun.bessel_j(1, 3.3)
    assert specfun.bessel_i(1, -2.0) == -specfun.bessel_i(1, 2.0)


def test_values_at_zero():
    assert specfun.bessel_j(0, 0.0) == 1.0
    assert specfun.bessel_j(1, 0.0) == 0.0
    assert specfun.bessel_i(0, 0.0) == 1.0


def test_wronskian_on_log_grid():
    for i in range(50):
        x = 1e-3 * 5e4 ** (i / 49)
        w = x * (specfun.bessel_k(0, x) * specfun.bessel_i(1, x)
                 + specfun.bessel_i(0, x) * specfun.bessel_k(1, x))
        assert abs(w - 1.0) <= 1e-11, x


@pytest.mark.parametrize("x", [0.3, 1.0, 2.0, 7.0, 24.0, 40.0])
def test_derivative_identities(x):
    h = 1e-5

    def d(f):
        return (f(x + h) - f(x - h)) / (2 * h)

    assert abs(d(lambda t: specfun.bessel_j(0, t)) + specfun.bessel_j(1, x)) < 1e-8
    assert rel(d(lambda t: specfun.bessel_i(0, t)), specfun.bessel_i(1, x)) < 1e-8
    assert rel(d(lambda t: specfun.bessel_k(0, t)), -specfun.bessel_k(1, x)) < 1e-8


def test_regime_switch_continuity():
    cases = [(2.0, 0, specfun.bessel_j, mpmath.besselj),
             (25.0, 1, specfun.bessel_j, mpmath.besselj),
             (30.0, 0, specfun.bessel_i, mpmath.besseli),
             (2.0, 0, specfun.bessel_k, mpmath.besselk),
             (25.0, 1, specfun.bessel_k, mpmath.besselk)]
    for edge, nu, fn, ref in cases:
        for x in (edge * (1 - 1e-12), edge, edge * (1 + 1e-12)):
            want = float(ref(nu, x))
            assert abs(fn(nu, x) - want) <= 2e-14 * max(abs(want), 1.0)


def test_i_overflow_and_k_domain():
    assert math.isfinite(specfun.bessel_i(0, 700.0))
    with pytest.raises(RangeError):
        specfun.bessel_i(0, 700.5)
    with pytest.raises(DomainError):
        specfun.bessel_k(0, 0.0)
    with pytest.raises(DomainError):
        specfun.bessel_k(1, -1.0)
    with pytest.raises(DomainError):
        specfun.bessel_j(2, 1.0)
    with pytest.raises(DomainError):
        specfun.bessel_j(0, math.nan)


@pytest.mark.parametrize("z", [0.5, 1.0, 3.7, 10.5, 0.2 + 1j, -2.5 + 0.3j, 1.5 - 20j,
                               -0.5, -3.3, 2 + 100j, 0.5 + 200j])
def test_gamma_against_mpmath(z):
    ref = complex(mpmath.gamma(z))
    assert abs(specfun.gamma(z) - ref) <= 1e-12 * abs(ref)


def test_gamma_reflection_and_recurrence():
    for z in (0.3 + 0.4j, 0.7 - 2j, 0.25):
        lhs = specfun.gamma(z) * specfun.gamma(1 - z)
        assert abs(lhs - math.pi / complex(mpmath.sin(math.pi * z))) < 1e-13 * abs(lhs)
        assert abs(specfun.gamma(z + 1) - z * specfun.gamma(z)) < 1e-13 * abs(specfun.gamma(z + 1))


@pytest.mark.parametrize("n", [0, -1, -7])
def test_gamma_poles(n):
    with pytest.raises(PoleError) as info:
        specfun.gamma(n)
    assert info.value.pole == n


def test_gamma_at_integers_is_factorial():
    for n in range(1, 15):
        assert rel(specfun.gamma(n).real, math.factorial(n - 1)) < 1e-13


def _bisect(f, a, b):
    for _ in range(200):
        m = 0.5 * (a + b)
        if f(a) * f(m) <= 0:
            b = m
        else:
            a = m
    return 0.5 * (a + b)


@pytest.mark.parametrize("nu", [0, 1])
def test_zero_estimates_bracket_true_zeros(nu):
    f = lambda x: specfun.bessel_j(nu, x)  # noqa: E731
    prev_err = None
    for k in range(1, 21):
        est = specfun.bessel_j_zero(nu, k)
        crude = specfun.bessel_j_zero(nu, k, refined=False)
        true = _bisect(f, est.value - 0.5, est.value + 0.5)
        err = abs(est.value - true)
        assert err < abs(crude.value - true) or err < 1e-9
        assert err < 0.01
        if prev_err is not None:
            assert err <= prev_err * 1.0001
        prev_err = err


def test_zeros_interlace():
    for k in range(1, 15):
        z0 = specfun.bessel_j_zero(0, k).value
        z1 = specfun.bessel_j_zero(1, k).value
        z0n = specfun.bessel_j_zero(0, k + 1).value
        assert z0 < z1 < z0n


def test_zero_index_validation():
    for bad in (0, -1, 1.5, True):
        with pytest.raises(DomainError):
            specfun.bessel_j_zero(0, bad)


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=1e-3, max_value=200.0))
def test_k_positive_decreasing(x):
    k0 = specfun.bessel_k(0, x)
    assert k0 > 0 or x > 700
    assert specfun.bessel_k(1, x) >= k0
    assert specfun.bessel_k(0, x * 1.01) <= k0


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=0.0, max_value=100.0))
def test_j_bounded(x):
    assert abs(specfun.bessel_j(0, x)) <= 1.0
    assert abs(specfun.bessel_j(1, x)) <= 0.5820
