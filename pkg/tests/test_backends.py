"""Compiled extension and pure-Python fallback must agree."""

import cmath
import math

import pytest

from nlspectra import _purepy

core = pytest.importorskip("nlspectra._core")


def rel(a, b):
    if b == 0:
        return abs(complex(a) - complex(b))
    return abs((complex(a) - complex(b)) / complex(b))


def test_constants_match():
    assert core.LANCZOS_G == _purepy.LANCZOS_G
    assert tuple(core.LANCZOS_C) == tuple(_purepy.LANCZOS_C)
    assert core.EULER_GAMMA == _purepy.EULER_GAMMA


@pytest.mark.parametrize("x", [-0.4, -0.17, 0.3, 0.5, 1.0, 2.7, 4.5, 7.9, 10.0])
def test_gamma(x):
    assert rel(core.gamma(x), _purepy.gamma(x)) <= 1e-15


@pytest.mark.parametrize("z", [0.0, 0.5, 2.0, 4.0])
@pytest.mark.parametrize("eps", [1e-10, 1e-4, 0.5, -0.3])
def test_log_gamma_ratio(z, eps):
    a = core.log_gamma_ratio(z, eps)
    b = _purepy.log_gamma_ratio(z, eps)
    assert abs(a - b) <= 1e-15 * max(1.0, abs(b))


@pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 1.46, 3.3, 10.0])
def test_digamma(x):
    assert rel(core.digamma(x), _purepy.digamma(x)) <= 1e-14


@pytest.mark.parametrize("two_nu", [-3, -2, -1, 0, 1, 3, 4, 7, 8])
@pytest.mark.parametrize("x", [0.3, 2.0, 6.5, 9.0, 15.0, 27.0, 30.0, 200.0])
def test_bessel(two_nu, x):
    a = core.bessel_j(two_nu, x)
    b = _purepy.bessel_j(two_nu, x)
    env = math.sqrt(2.0 / (math.pi * x))
    assert abs(a - b) <= 1e-13 * max(abs(b), env), (two_nu, x)


@pytest.mark.parametrize("x", [0.0, 1e-9, -0.4, 0.3, 1.2])
@pytest.mark.parametrize("y", [0.2, 1.0, 6.0])
def test_stable_prefactor(x, y):
    z = 1.5
    assert rel(core.stable_prefactor(x, y, z), _purepy.stable_prefactor(x, y, z)) <= 1e-13


@pytest.mark.parametrize("d", [1, 2, 3, 7])
@pytest.mark.parametrize("kd", [0.1, 2.0, 5.99])
def test_maclaurin(d, kd):
    tol = 10 * 2.220446049250313e-16
    a = core.maclaurin_lambda(d, 0.7, kd, 1.0, tol, 4000)
    b = _purepy.maclaurin_lambda(d, 0.7, kd, 1.0, tol, 4000)
    assert a[1] == b[1]
    assert a[2] == b[2] is True
    assert rel(a[0], b[0]) <= 1e-14


@pytest.mark.parametrize("alpha,beta,z", [(1.0, 1.0, 8.0), (0.5, 2.5, 20.0), (1.5, 1.5, 100.0)])
def test_drummond_real(alpha, beta, z):
    tol = 10 * 2.220446049250313e-16
    a = core.drummond_2f0(alpha, beta, z, 0, tol, 500)
    b = _purepy.drummond_2f0(alpha, beta, z, 0, tol, 500)
    assert a[2] == b[2] is True
    assert rel(a[0], b[0]) <= 1e-12


def test_drummond_complex():
    tol = 10 * 2.220446049250313e-16
    z = 10.0 * cmath.exp(0.4j)
    a = core.drummond_2f0(complex(1.0), complex(2.0), z, 0, tol, 500)
    b = _purepy.drummond_2f0(complex(1.0), complex(2.0), z, 0, tol, 500)
    assert a[2] == b[2] is True
    assert rel(a[0], b[0]) <= 1e-12


@pytest.mark.parametrize("order", [0, 1, 2, 7, 40])
def test_drummond_fixed_order(order):
    a = core.drummond_2f0_fixed(1.0, 1.0, 8.0, 0, order)
    b = _purepy.drummond_2f0_fixed(1.0, 1.0, 8.0, 0, order)
    assert rel(a, b) <= 1e-12
    ac = core.drummond_2f0_fixed(complex(1.0), complex(1.0), complex(-3.0, 0.5), 0, order)
    bc = _purepy.drummond_2f0_fixed(complex(1.0), complex(1.0), complex(-3.0, 0.5), 0, order)
    if cmath.isfinite(ac) or cmath.isfinite(bc):
        assert rel(ac, bc) <= 1e-10
