"""Branch-aware complex primitives and equal-weight circle quadrature.

Points of the plane are plain Python ``complex`` values (or numpy complex
arrays for vectorised callers). The ``as_*`` helpers validate and coerce.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError

TWO_PI = 2.0 * math.pi

ComplexPoint = complex

DEFAULT_NODES = 1024
MIN_NODES = 16


def as_point(z) -> complex:
    """Coerce ``z`` to a finite complex number."""
    if np.ndim(z) != 0:
        raise DomainError("expected a single point, got an array")
    try:
        w = complex(z)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"not a complex number: {z!r}") from exc
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise DomainError(f"non-finite point: {w!r}")
    return w


def as_disk_point(z) -> complex:
    w = as_point(z)
    if not abs(w) < 1.0:
        raise DomainError(f"point {w!r} is not in the open unit disk")
    return w


def as_punctured_disk_point(z) -> complex:
    w = as_disk_point(z)
    if w == 0:
        raise DomainError("point 0 is not in the punctured disk")
    return w


def as_upper_point(z, closed: bool = False) -> complex:
    """Validate a point of the upper half-plane (``Im >= 0`` if ``closed``)."""
    w = as_point(z)
    if w.imag < 0 or (w.imag == 0 and not closed):
        raise DomainError(f"point {w!r} is not in the upper half-plane")
    return w


def principal_log(z):
    """Principal logarithm with ``Im`` in ``(-pi, pi]``.

    Accepts a scalar or a numpy array. Unlike ``cmath.log`` the result never
    has imaginary part ``-pi``: a negative real with a signed-zero imaginary
    part still maps onto the upper edge of the cut.
    """
    if np.ndim(z) == 0:
        w = as_point(z)
        if w == 0:
            raise DomainError("log(0) is undefined")
        arg = math.atan2(w.imag, w.real)
        if arg == -math.pi:
            arg = math.pi
        return complex(math.log(abs(w)), arg)
    z = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(z)):
        raise DomainError("non-finite point in log argument")
    if np.any(z == 0):
        raise DomainError("log(0) is undefined")
    arg = np.angle(z)
    arg = np.where(arg == -np.pi, np.pi, arg)
    return np.log(np.abs(z)) + 1j * arg


def exp(w):
    if np.ndim(w) == 0:
        return cmath.exp(w)
    return np.exp(np.asarray(w, dtype=complex))


@dataclass(frozen=True)
class CircleQuadrature:
    """Equally spaced nodes on ``[0, 2pi)`` with equal weights.

    ``rotation`` shifts every node by a fixed angle (reduced mod 2pi).
    """

    node_count: int = DEFAULT_NODES
    rotation: float = 0.0

    def __post_init__(self):
        if int(self.node_count) != self.node_count or self.node_count < MIN_NODES:
            raise DomainError(f"node_count must be an integer >= {MIN_NODES}")
        if not math.isfinite(self.rotation):
            raise DomainError("rotation must be finite")

    @property
    def nodes(self) -> np.ndarray:
        return self.chunk(0, self.node_count)

    def chunk(self, start: int, stop: int) -> np.ndarray:
        """Nodes with indices ``start <= j < stop``."""
        j = np.arange(start, stop, dtype=float)
        theta = (self.rotation % TWO_PI) + TWO_PI * j / self.node_count
        return np.where(theta >= TWO_PI, theta - TWO_PI, theta)


def evaluate_on(f: Callable, points: np.ndarray) -> np.ndarray:
    """Evaluate ``f`` on an array, falling back to a scalar loop.

    Vectorised callables are used as is; scalar-only callables (for example
    ones built on ``math``) are mapped point by point.
    """
    try:
        values = np.asarray(f(points))
        if values.shape == points.shape:
            return values
    except (TypeError, ValueError):
        pass
    return np.array([f(p) for p in points.tolist()])


def circle_mean(f: Callable, q: CircleQuadrature | None = None) -> float:
    """Equal-weight average of ``f(theta)`` over the quadrature nodes."""
    q = q or CircleQuadrature()
    values = evaluate_on(f, q.nodes).astype(float)
    if not np.all(np.isfinite(values)):
        raise DomainError("integrand is not finite at every node")
    return float(np.sum(values) / q.node_count)


def mean_value_residual(h: Callable, center, radius: float,
                        q: CircleQuadrature | None = None) -> float:
    """``|h(center) - mean of h on the circle|``; zero for harmonic ``h``."""
    q = q or CircleQuadrature()
    c = as_point(center)
    if not radius > 0:
        raise DomainError("radius must be positive")
    at_center = float(np.real(evaluate_on(h, np.array([c]))[0]))
    mean = circle_mean(lambda t: np.real(evaluate_on(h, c + radius * np.exp(1j * t))), q)
    return abs(at_center - mean)
