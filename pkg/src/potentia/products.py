"""Infinite products that fall out of the disk Green's function series.

Every product is accumulated as a sum of ``log1p`` terms and exponentiated
once. The omitted tail is estimated from the midpoint rule for
``sum_{n>N} 1/n^2`` and the leftover is bounded rigorously in log space.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularityError, TruncationError

EPS = float(np.finfo(float).eps)
PI2 = math.pi ** 2
PI4 = math.pi ** 4

# factors closer than this to zero switch reporting to absolute error
NEAR_ZERO_FACTOR = 1e-3


@dataclass(frozen=True)
class ProductParams:
    b: float
    r: float
    c: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.b, self.r, self.c)):
            raise DomainError("product parameters must be finite")
        if self.r <= 0 or self.c <= 0:
            raise DomainError("r and c must be positive")
        if self.r == self.c and abs(reduce_angle(self.b)) < 1e-15:
            raise SingularityError("b = 0 (mod 2pi) with r = c makes the n = 0 factor singular")


@dataclass(frozen=True)
class ProductResult:
    """A truncated product with its tail correction.

    ``tail_correction`` and ``residual_bound`` live in log space: the log
    of ``value`` is within ``residual_bound`` of the log of the full product.
    """

    value: float
    N: int
    tail_correction: float
    residual_bound: float
    uncorrected: float
    near_zero: bool = False

    @property
    def error_bound(self) -> float:
        """Absolute error bound on ``value``."""
        return abs(self.value) * math.expm1(self.residual_bound)


def reduce_angle(b: float) -> float:
    """Representative of ``b`` mod ``2 pi`` in ``[-pi, pi]``."""
    return b - 2.0 * math.pi * round(b / (2.0 * math.pi))


def _check_N(N) -> int:
    N = int(N)
    if N < 1:
        raise DomainError("N must be a positive integer")
    return N


def _midpoint_error(N: int) -> float:
    # 0 <= 1/(N + 1/2) - sum_{n>N} 1/n^2 <= 1/(12 (N - 1/2)^3)
    return 1.0 / (12.0 * (N - 0.5) ** 3)


def mirror_rhs(params: ProductParams) -> float:
    """Closed form ``|(1 - e^{-r-c+bi}) / (e^{-r} - e^{-c+bi})|^2``."""
    num = 1.0 - cmath.exp(complex(-params.r - params.c, params.b))
    den = math.exp(-params.r) - cmath.exp(complex(-params.c, params.b))
    return abs(num / den) ** 2


def mirror_product(params: ProductParams, N: int) -> ProductResult:
    """``prod_{|n|<=N} ((b+2pi n)^2 + (r+c)^2) / ((b+2pi n)^2 + (r-c)^2)``.

    ``b`` is first reduced into ``[-pi, pi]`` so the window is centred on
    the factor nearest to ``n = 0``; the full product only sees ``b`` mod
    ``2 pi``.
    """
    N = _check_N(N)
    beta = reduce_angle(params.b)
    rc4 = 4.0 * params.r * params.c
    d = params.r - params.c
    n = np.arange(-N, N + 1, dtype=float)
    logs = np.log1p(rc4 / ((beta + 2.0 * math.pi * n) ** 2 + d * d))
    total = float(np.sum(logs))

    correction = 2.0 * params.r * params.c / (PI2 * (N + 0.5))
    s2 = beta * beta + d * d
    quartic = 1.0 / (6.0 * PI4 * (2 * N - 1) ** 3)
    bound = (rc4 * (abs(8.0 * beta * beta - 2.0 * s2)
                    + 2.0 * s2 * s2 / (4.0 * PI2 * (N + 1) ** 2)) * quartic
             + rc4 * rc4 * quartic
             + 2.0 * params.r * params.c / PI2 * _midpoint_error(N)
             + 32.0 * EPS * (total + 1.0))
    return ProductResult(value=math.exp(total + correction), N=N,
                         tail_correction=correction, residual_bound=bound,
                         uncorrected=math.exp(total))


def sinh_product(r: float, N: int) -> ProductResult:
    """``sinh r = r prod_{n>=1} (1 + (r / (pi n))^2)``."""
    N = _check_N(N)
    if not (math.isfinite(r) and r > 0):
        raise DomainError("r must be positive")
    n = np.arange(1, N + 1, dtype=float)
    total = float(np.sum(np.log1p((r / (math.pi * n)) ** 2)))
    correction = r * r / (PI2 * (N + 0.5))
    bound = (r * r / PI2 * _midpoint_error(N)
             + r ** 4 / (6.0 * PI4 * N ** 3)
             + 32.0 * EPS * (total + 1.0))
    return ProductResult(value=r * math.exp(total + correction), N=N,
                         tail_correction=correction, residual_bound=bound,
                         uncorrected=r * math.exp(total))


def cosh_product(r: float, N: int) -> ProductResult:
    """``cosh r = prod_{n>=1} (1 + (r / (pi (n - 1/2)))^2)``."""
    N = _check_N(N)
    if not (math.isfinite(r) and r > 0):
        raise DomainError("r must be positive")
    n = np.arange(1, N + 1, dtype=float) - 0.5
    total = float(np.sum(np.log1p((r / (math.pi * n)) ** 2)))
    correction = r * r / (PI2 * N)
    # midpoint error for sum_{n>N} (n - 1/2)^-2 against 1/N
    mid = 1.0 / (12.0 * N ** 3) + 1.0 / (4.0 * N ** 4)
    bound = (r * r / PI2 * mid
             + r ** 4 / (6.0 * PI4 * (N - 0.5) ** 3)
             + 32.0 * EPS * (total + 1.0))
    return ProductResult(value=math.exp(total + correction), N=N,
                         tail_correction=correction, residual_bound=bound,
                         uncorrected=math.exp(total))


def _signed_log_product(x: np.ndarray):
    """Sign, log-modulus and round-off allowance of ``prod (1 - x_n)``."""
    factors = 1.0 - x
    if np.any(factors == 0):
        return 0.0, -math.inf, 0.0, True
    with np.errstate(divide="ignore"):
        logs = np.where(x < 1.0, np.log1p(-np.minimum(x, 1.0)),
                        np.log(np.abs(x - 1.0)))
    sign = -1.0 if np.count_nonzero(factors < 0) % 2 else 1.0
    roundoff = (32.0 * EPS * (float(np.sum(np.abs(logs))) + 1.0)
                + 4.0 * EPS * float(np.sum(x / np.abs(factors))))
    near_zero = bool(np.min(np.abs(factors)) < NEAR_ZERO_FACTOR)
    return sign, float(np.sum(logs)), roundoff, near_zero


def sin_cos_products(r: float, N: int) -> tuple[ProductResult, ProductResult]:
    """Euler's products ``sin r = r prod (1 - (r/(pi n))^2)`` and
    ``cos r = prod (1 - (r/(pi (n - 1/2)))^2)``.

    Near a zero of either function the result carries ``near_zero=True``;
    use ``error_bound`` (absolute) rather than a relative error there.
    """
    N = _check_N(N)
    if not math.isfinite(r):
        raise DomainError("r must be finite")
    if N < math.ceil(math.sqrt(2.0) * abs(r) / math.pi) + 1:
        raise TruncationError("N too small: omitted factors must satisfy x_n <= 1/2")
    n = np.arange(1, N + 1, dtype=float)
    r2 = r * r

    sign, total, roundoff, near = _signed_log_product(r2 / (math.pi * n) ** 2)
    corr = -r2 / (PI2 * (N + 0.5))
    bound = r2 / PI2 * _midpoint_error(N) + r2 * r2 / (3.0 * PI4 * N ** 3) + roundoff
    if r == 0 or total == -math.inf:
        sin_res = ProductResult(0.0, N, corr, 0.0, 0.0, near_zero=True)
    else:
        sin_res = ProductResult(value=r * sign * math.exp(total + corr), N=N,
                                tail_correction=corr, residual_bound=bound,
                                uncorrected=r * sign * math.exp(total), near_zero=near)

    sign, total, roundoff, near = _signed_log_product(r2 / (math.pi * (n - 0.5)) ** 2)
    corr = -r2 / (PI2 * N)
    bound = (r2 / PI2 * (1.0 / (12.0 * N ** 3) + 1.0 / (4.0 * N ** 4))
             + r2 * r2 / (3.0 * PI4 * (N - 0.5) ** 3) + roundoff)
    if total == -math.inf:
        cos_res = ProductResult(0.0, N, corr, 0.0, 0.0, near_zero=True)
    else:
        cos_res = ProductResult(value=sign * math.exp(total + corr), N=N,
                                tail_correction=corr, residual_bound=bound,
                                uncorrected=sign * math.exp(total), near_zero=near)
    return sin_res, cos_res
