import math

import numpy as np
import pytest

from edp.errors import QuadratureNotConverged
from edp.quadrature import QuadratureSpec, gauss_legendre_fixed, integrate


@pytest.mark.parametrize("method", ["de", "gl"])
def test_gaussian_on_real_line(method):
    res = integrate(lambda x: np.exp(-(x**2)), -math.inf, math.inf, QuadratureSpec(method=method))
    assert res.converged
    assert res.value == pytest.approx(math.sqrt(math.pi), abs=1e-12)
    assert res.level >= 3


@pytest.mark.parametrize("method", ["de", "gl"])
def test_finite_interval_with_endpoint_zeros(method):
    # int_{-pi/2}^{pi/2} cos^10 = 63 pi / 256
    res = integrate(lambda x: np.cos(x) ** 10, -math.pi / 2, math.pi / 2, QuadratureSpec(method=method))
    assert res.value == pytest.approx(63 * math.pi / 256, abs=1e-12)


def test_complex_integrand():
    res = integrate(lambda x: np.exp(-(x**2) + 1j * x), -math.inf, math.inf)
    assert res.value == pytest.approx(math.sqrt(math.pi) * math.exp(-0.25), abs=1e-12)


def test_scale_stretches_truncation():
    f = lambda x: np.exp(-((x / 10) ** 2))  # noqa: E731
    res = integrate(f, -math.inf, math.inf, scale=10.0)
    assert res.value == pytest.approx(10 * math.sqrt(math.pi), abs=1e-10)


def test_nonconvergence_raises_with_last_estimate():
    spec = QuadratureSpec(tol=1e-14, max_level=3)
    with pytest.raises(QuadratureNotConverged) as info:
        integrate(lambda x: np.sign(x - 0.123) + 0j, -1.0, 1.0, spec)
    assert np.isfinite(info.value.error)


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(tol=0)
    with pytest.raises(ValueError):
        QuadratureSpec(max_level=2)
    with pytest.raises(ValueError):
        QuadratureSpec(method="simpson")


def test_fixed_gauss_legendre():
    value, err = gauss_legendre_fixed(lambda x: np.exp(-(x**2)), -math.inf, math.inf)
    assert value == pytest.approx(math.sqrt(math.pi), abs=1e-12)
    assert err < 1e-12
