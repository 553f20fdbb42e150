import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, special

from ddo.errors import DomainError
from ddo.specfun import (JacobiParams, jacobi_derivative, jacobi_eval,
                         jacobi_second_derivative, log_gamma)


def test_degree_zero_is_one():
    for a, b, z in [(0.3, 1.7, -0.2), (-0.5, 4.0, 0.9), (12.0, 0.5, 1.0)]:
        assert jacobi_eval(0, a, b, z) == 1.0


def test_degree_one_at_origin():
    assert jacobi_eval(1, 2, 1, 0.0) == pytest.approx(0.5, abs=1e-15)


def test_endpoint_value():
    assert jacobi_eval(2, 1, 1, 1.0) == pytest.approx(3.0, abs=1e-14)


def test_degree_minus_one_is_zero():
    assert jacobi_eval(-1, 1.3, 2.0, 0.4) == 0.0


def test_rejects_z_outside_interval():
    with pytest.raises(DomainError):
        jacobi_eval(2, 1, 1, 1.5)


def test_vectorized_matches_scalar():
    z = np.linspace(-1, 1, 9)
    vec = jacobi_eval(4, 0.7, 2.5, z)
    assert vec.shape == z.shape
    for zi, vi in zip(z, vec):
        assert jacobi_eval(4, 0.7, 2.5, zi) == pytest.approx(vi, rel=1e-14, abs=1e-14)


@settings(max_examples=200, deadline=None)
@given(n=st.integers(0, 30), a=st.floats(-0.95, 25), b=st.floats(-0.95, 25),
       z=st.floats(-1, 1))
def test_matches_scipy(n, a, b, z):
    ref = special.eval_jacobi(n, a, b, z)
    assert jacobi_eval(n, a, b, z) == pytest.approx(ref, rel=1e-10, abs=1e-10 * max(1.0, abs(ref)))


@pytest.mark.parametrize("n,a,b,z", [(5, 0.25, 3.5, -0.7), (12, 7.3, 0.5, 0.33), (3, -0.9, 19.0, 0.95)])
def test_matches_mpmath(n, a, b, z):
    ref = float(mpmath.jacobi(n, a, b, z))
    assert jacobi_eval(n, a, b, z) == pytest.approx(ref, rel=1e-12)


def test_derivative_examples():
    assert jacobi_derivative(0, 1.2, 0.4, 0.1) == 0.0
    assert jacobi_derivative(1, 2, 1, 0.3) == pytest.approx(2.5, abs=1e-14)


def test_derivative_against_finite_difference():
    h = 1e-5
    z = -0.4
    fd = (jacobi_eval(3, 0.7, 1.5, z + h) - jacobi_eval(3, 0.7, 1.5, z - h)) / (2 * h)
    assert jacobi_derivative(3, 0.7, 1.5, z) == pytest.approx(fd, abs=1e-8)


def test_second_derivative_against_mpmath():
    n, a, b, z = 6, 1.1, 2.4, 0.2
    ref = float(mpmath.diff(lambda t: mpmath.jacobi(n, a, b, t), z, 2))
    assert jacobi_second_derivative(n, a, b, z) == pytest.approx(ref, rel=1e-12)


def test_jacobi_params_dataclass():
    jp = JacobiParams(3, 0.5, 1.5)
    assert jp.orthogonal
    assert jp(0.2) == pytest.approx(jacobi_eval(3, 0.5, 1.5, 0.2))
    assert jp.derivative(0.2) == pytest.approx(jacobi_derivative(3, 0.5, 1.5, 0.2))
    assert not JacobiParams(2, -1.5, 0.0).orthogonal
    with pytest.raises(DomainError):
        JacobiParams(-2, 0.0, 0.0)


def test_log_gamma_examples():
    assert log_gamma(1.0) == 0.0
    assert log_gamma(0.5) == pytest.approx(0.5723649429, abs=1e-10)
    assert log_gamma(0.5) == pytest.approx(float(mpmath.log(mpmath.sqrt(mpmath.pi))), rel=1e-14)
    assert log_gamma(6.0) == pytest.approx(math.log(120), rel=1e-14)
    with pytest.raises(DomainError):
        log_gamma(0.0)
    with pytest.raises(DomainError):
        log_gamma(-1.5)


@pytest.mark.parametrize("a,b", [(0.5, 1.5), (-0.6, 3.0), (4.2, -0.3)])
def test_orthogonality(a, b):
    def w(z, m, n):
        return (1 - z) ** a * (1 + z) ** b * jacobi_eval(m, a, b, z) * jacobi_eval(n, a, b, z)
    for m, n in [(0, 1), (1, 3), (2, 5)]:
        val, _ = integrate.quad(w, -1, 1, args=(m, n), limit=200)
        diag, _ = integrate.quad(w, -1, 1, args=(n, n), limit=200)
        assert abs(val) < 1e-8 * diag
