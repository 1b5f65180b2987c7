import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from potentia import greens, products
from potentia.errors import DomainError, SingularityError, TruncationError
from potentia.products import ProductParams


def test_mirror_cosh_squared():
    res = products.mirror_product(ProductParams(math.pi, 1.0, 1.0), 10_000)
    assert abs(res.value - math.cosh(1) ** 2) <= res.error_bound
    assert res.value == pytest.approx(2.3810978, abs=1e-7)


def test_mirror_sinh_ratio():
    res = products.mirror_product(ProductParams(0.0, 2.0, 1.0), 10_000)
    exact = (math.sinh(1.5) / math.sinh(0.5)) ** 2
    assert abs(res.value - exact) <= res.error_bound
    assert exact == pytest.approx(16.69671, abs=1e-5)


def test_mirror_matches_mpmath_product():
    mpmath.mp.dps = 30
    b, r, c = 0.7, 0.4, 1.3
    exact = mpmath.nprod(lambda n: ((b + 2 * mpmath.pi * n) ** 2 + (r + c) ** 2)
                         / ((b + 2 * mpmath.pi * n) ** 2 + (r - c) ** 2), [-mpmath.inf, mpmath.inf])
    res = products.mirror_product(ProductParams(b, r, c), 10_000)
    assert abs(res.value - float(exact)) <= res.error_bound


def test_mirror_singular_case():
    with pytest.raises(SingularityError):
        ProductParams(0.0, 1.0, 1.0)
    with pytest.raises(SingularityError):
        ProductParams(4 * math.pi, 1.0, 1.0)


def test_mirror_reduces_b_modulo_two_pi():
    p1 = products.mirror_product(ProductParams(0.5, 1.0, 0.3), 1000)
    p2 = products.mirror_product(ProductParams(0.5 + 6 * math.pi, 1.0, 0.3), 1000)
    assert p1.value == pytest.approx(p2.value, rel=1e-12)


def test_sinh_values():
    r1 = products.sinh_product(1.0, 100_000)
    assert abs(r1.value - 1.1752012) < 1e-6
    r3 = products.sinh_product(3.0, 100_000)
    assert abs(r3.value - 10.017875) < 1e-4
    assert abs(r3.value - math.sinh(3.0)) <= r3.error_bound


def test_sinh_small_argument():
    res = products.sinh_product(1e-8, 100_000)
    assert abs(res.value / 1e-8 - 1) < 1e-12


def test_cosh_values():
    assert abs(products.cosh_product(1.0, 100_000).value - 1.5430806) < 1e-5
    assert abs(products.cosh_product(1e-8, 100_000).value - 1) < 1e-15
    assert abs(products.cosh_product(2.0, 100_000).value - 3.7621957) < 1e-4


def test_sin_cos_values():
    s, c = products.sin_cos_products(math.pi / 2, 100_000)
    assert abs(s.value - 1) < 1e-5
    s, c = products.sin_cos_products(1.0, 100_000)
    assert abs(c.value - 0.5403023) < 1e-4
    assert abs(s.value - math.sin(1.0)) <= s.error_bound
    assert abs(c.value - math.cos(1.0)) <= c.error_bound


def test_sin_cos_at_zero():
    s, c = products.sin_cos_products(0.0, 10)
    assert s.value == 0.0 and c.value == 1.0


def test_sin_near_zero_flag():
    s, c = products.sin_cos_products(math.pi - 1e-5, 100_000)
    assert s.near_zero and not c.near_zero
    assert abs(s.value - math.sin(math.pi - 1e-5)) <= s.error_bound


def test_sin_cos_needs_enough_factors():
    with pytest.raises(TruncationError):
        products.sin_cos_products(20.0, 3)


def test_bad_truncation_index():
    with pytest.raises(DomainError):
        products.sinh_product(1.0, 0)


@pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
def test_tail_correction_gains_factor_five(r):
    cases = [
        (products.sinh_product(r, 1000), math.sinh(r)),
        (products.cosh_product(r, 1000), math.cosh(r)),
        (products.sin_cos_products(r, 1000)[0], math.sin(r)),
        (products.sin_cos_products(r, 1000)[1], math.cos(r)),
        (products.mirror_product(ProductParams(1.0, r, 0.7), 1000),
         products.mirror_rhs(ProductParams(1.0, r, 0.7))),
    ]
    for res, exact in cases:
        assert abs(res.value - exact) <= abs(res.uncorrected - exact) / 5


@pytest.mark.parametrize("r", [10.0, 50.0])
def test_no_overflow_in_log_space(r):
    for N in (10, 1000, 1_000_000):
        assert math.isfinite(products.sinh_product(r, N).value)
        assert math.isfinite(products.cosh_product(r, N).value)
    assert math.isfinite(products.mirror_product(ProductParams(0.3, r, r / 2), 1_000_000).value)
    s, c = products.sin_cos_products(r, 1_000_000)
    assert math.isfinite(s.value) and math.isfinite(c.value)


@settings(max_examples=25, deadline=None)
@given(st.floats(-3, 3), st.floats(0.1, 2.5), st.floats(0.1, 2.5))
def test_consistency_with_greens_series(b, r, c):
    if abs(r - c) < 1e-3:
        return
    a = math.exp(-r)
    z = math.exp(-c) * complex(math.cos(b), math.sin(b))
    g = greens.greens_disk_series(a, z, 10_000)
    prod = products.mirror_product(ProductParams(b, r, c), 10_000)
    lhs = math.exp(2 * g.value)
    assert abs(lhs - prod.value) <= lhs * math.expm1(2 * g.tail_bound) + prod.error_bound
