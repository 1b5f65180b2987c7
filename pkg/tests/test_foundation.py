import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from potentia.errors import DomainError
from potentia.foundation import (CircleQuadrature, as_disk_point, as_punctured_disk_point,
                                 as_upper_point, circle_mean, mean_value_residual,
                                 principal_log)


def test_log_of_one_is_zero():
    assert principal_log(1) == 0


def test_log_of_minus_one_is_on_upper_edge():
    assert principal_log(-1) == complex(0, math.pi)
    assert principal_log(complex(-1.0, -0.0)) == complex(0, math.pi)
    assert principal_log(np.array([complex(-2.0, -0.0)]))[0].imag == math.pi


def test_log_inverts_exp():
    w = principal_log(cmath.exp(-2) * cmath.exp(1j))
    assert abs(w - complex(-2, 1)) < 1e-15


def test_log_rejects_zero_and_nan():
    with pytest.raises(DomainError):
        principal_log(0)
    with pytest.raises(DomainError):
        principal_log(complex(math.nan, 0))


def test_array_and_scalar_agree():
    z = np.array([0.3 + 0.4j, -2 + 0.1j, -5 - 1e-3j, 1e8j])
    expected = np.array([principal_log(complex(v)) for v in z])
    assert np.array_equal(principal_log(z), expected)


@settings(max_examples=200)
@given(st.floats(-8, 8), st.floats(-math.pi, math.pi))
def test_exp_log_roundtrip(log_mod, angle):
    z = 10.0 ** log_mod * cmath.exp(1j * angle)
    assert abs(cmath.exp(principal_log(z)) - z) <= 1e-14 * abs(z) * 4


@settings(max_examples=200)
@given(st.floats(-1e3, 1e3).filter(lambda x: x != 0), st.floats(-1e3, 1e3),
       st.integers(-5, 5))
def test_other_branches_differ_by_multiples_of_two_pi_i(x, y, k):
    z = complex(x, y)
    other = principal_log(z) + 2j * math.pi * k
    renormalised = principal_log(cmath.exp(other))
    shift = (other - renormalised).imag / (2 * math.pi)
    assert abs(shift - round(shift)) < 1e-9
    assert -math.pi < renormalised.imag <= math.pi


def test_validators():
    assert as_disk_point(0.5j) == 0.5j
    for bad in (1, 1j, complex(math.inf, 0), "x"):
        with pytest.raises(DomainError):
            as_disk_point(bad)
    with pytest.raises(DomainError):
        as_punctured_disk_point(0)
    with pytest.raises(DomainError):
        as_upper_point(2.0)
    assert as_upper_point(2.0, closed=True) == 2


def test_circle_mean_constant():
    assert circle_mean(lambda t: np.full_like(t, 3.5)) == pytest.approx(3.5, abs=1e-15)


@pytest.mark.parametrize("n", [16, 17, 64, 1024])
def test_circle_mean_cosine(n):
    assert abs(circle_mean(np.cos, CircleQuadrature(n))) < 1e-14


def test_circle_mean_cos_squared():
    assert abs(circle_mean(lambda t: np.cos(t) ** 2, CircleQuadrature(64)) - 0.5) < 1e-12


def test_circle_mean_scalar_only_function():
    assert abs(circle_mean(lambda t: math.cos(t) ** 2, CircleQuadrature(64)) - 0.5) < 1e-12


@settings(max_examples=50)
@given(st.floats(0, 2 * math.pi))
def test_circle_mean_rotation_invariant(rotation):
    f = lambda t: 1 + np.cos(3 * t) + 0.5 * np.sin(7 * t) ** 2
    a = circle_mean(f, CircleQuadrature(64))
    b = circle_mean(f, CircleQuadrature(64, rotation))
    assert abs(a - b) < 1e-12


def test_quadrature_rejects_few_nodes():
    with pytest.raises(DomainError):
        CircleQuadrature(8)


def test_mean_value_residuals():
    assert mean_value_residual(lambda z: np.real(z), 0.3 + 0.2j, 0.7) < 1e-13
    assert mean_value_residual(lambda z: np.abs(z) ** 2, 0, 0.5) == pytest.approx(0.25, abs=1e-15)
    assert mean_value_residual(lambda z: np.log(np.abs(z - 2)), 0, 1) < 1e-13
