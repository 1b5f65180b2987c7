"""Integral means and Hardy-norm behaviour of conformal maps of the disk.

Whether ``||phi||_{H^p}`` is finite cannot be settled by sampling, so
:func:`dichotomy` reports a verdict from the growth of the integral means
along the radii ``1 - 10^-j``. Near the threshold ``p*`` the means of the
catalogue maps behave like ``(1 - r)^(1 - p/p*)``, so one decade of radius
multiplies them by ``10^(p/p* - 1)``. That factor is at least ``10^0.2``
(about 1.585) once ``p >= 1.2 p*``, and it tends to 1 for ``p < p*``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, MonotonicityError
from .foundation import DEFAULT_NODES, TWO_PI, CircleQuadrature, principal_log

CONVERGE_RATIO = 1.1
DIVERGE_RATIO = 1.5
DEFAULT_DECADES = (3, 4, 5, 6)
NODES_PER_SCALE = 16

_CHUNK = 1 << 20
_LOG_MAX = math.log(np.finfo(float).max)


@dataclass(frozen=True)
class ConformalMapSpec:
    """A conformal map of the unit disk, vectorised over complex arrays."""

    name: str
    evaluate: Callable[[np.ndarray], np.ndarray]
    known_threshold: float
    target_description: str = ""

    def log_abs(self, z: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(np.abs(self.evaluate(z)))


@dataclass(frozen=True)
class HardyEstimate:
    p: float
    r: float
    node_count: int
    integral_mean: float
    norm_estimate: float
    overflow: bool = False


def integral_mean(phi: ConformalMapSpec, p: float, r: float,
                  node_count: int = DEFAULT_NODES,
                  rotation: float = 0.0) -> HardyEstimate:
    """Trapezoidal estimate of ``(1/2pi) int |phi(r e^{it})|^p dt``.

    The sum is accumulated as a running log-sum-exp over node chunks, so
    huge integrands report ``overflow=True`` and an infinite mean instead
    of failing part way.
    """
    if not p > 0:
        raise DomainError("p must be positive")
    if not 0.0 < r < 1.0:
        raise DomainError("r must lie in (0, 1)")
    q = CircleQuadrature(int(node_count), rotation)
    peak = -math.inf
    acc = 0.0
    for start in range(0, q.node_count, _CHUNK):
        theta = q.chunk(start, min(start + _CHUNK, q.node_count))
        logs = p * phi.log_abs(r * np.exp(1j * theta))
        if np.any(np.isnan(logs)):
            raise DomainError(f"map {phi.name!r} failed to evaluate on |z| = {r}")
        top = float(np.max(logs))
        if top == math.inf:
            return HardyEstimate(p, r, q.node_count, math.inf, math.inf, True)
        if top > peak:
            if peak > -math.inf:
                acc *= math.exp(peak - top)
            peak = top
        if peak > -math.inf:
            acc += float(np.sum(np.exp(logs - peak)))
    if acc == 0.0:
        return HardyEstimate(p, r, q.node_count, 0.0, 0.0)
    log_mean = peak + math.log(acc / q.node_count)
    overflow = log_mean > _LOG_MAX
    mean = math.inf if overflow else math.exp(log_mean)
    log_norm = log_mean / p
    norm = math.inf if log_norm > _LOG_MAX else math.exp(log_norm)
    return HardyEstimate(p, r, q.node_count, mean, norm, overflow)


def _power(w: np.ndarray, exponent: float) -> np.ndarray:
    return np.exp(exponent * principal_log(w))


def identity_map() -> ConformalMapSpec:
    return ConformalMapSpec("identity", lambda z: np.asarray(z, dtype=complex),
                            math.inf, "unit disk")


def koebe_map() -> ConformalMapSpec:
    return ConformalMapSpec("koebe", lambda z: z / (1.0 - z) ** 2, 0.5,
                            "plane slit along (-inf, -1/4]")


def wedge_map(alpha: float) -> ConformalMapSpec:
    """Disk onto the wedge ``|arg w| < alpha/2``, sending 0 to 1.

    ``(1+z)/(1-z)`` has positive real part on the disk, so the principal
    power never meets its branch cut.
    """
    if not 0.0 < alpha <= TWO_PI:
        raise DomainError("alpha must lie in (0, 2pi]")
    exponent = alpha / math.pi

    def evaluate(z):
        z = np.asarray(z, dtype=complex)
        return _power((1.0 + z) / (1.0 - z), exponent)

    return ConformalMapSpec(f"wedge({alpha:.6g})", evaluate, math.pi / alpha,
                            f"wedge of opening {alpha:.6g} about the positive axis")


def rotated(phi: ConformalMapSpec, angle: float) -> ConformalMapSpec:
    """``phi(e^{i angle} z)``: same image, same Hardy norm."""
    rot = complex(math.cos(angle), math.sin(angle))
    return ConformalMapSpec(f"{phi.name}@rot({angle:.6g})",
                            lambda z: phi.evaluate(rot * np.asarray(z, dtype=complex)),
                            phi.known_threshold, phi.target_description)


def recentered(phi: ConformalMapSpec, b: complex) -> ConformalMapSpec:
    """``phi`` precomposed with the disk automorphism taking 0 to ``b``."""
    b = complex(b)
    if not abs(b) < 1:
        raise DomainError("b must lie in the unit disk")

    def evaluate(z):
        z = np.asarray(z, dtype=complex)
        return phi.evaluate((z + b) / (1.0 + b.conjugate() * z))

    return ConformalMapSpec(f"{phi.name}@base({b:.6g})", evaluate,
                            phi.known_threshold, phi.target_description)


def catalog() -> list[ConformalMapSpec]:
    return [identity_map(), koebe_map()] + [
        wedge_map(alpha) for alpha in (math.pi / 2, math.pi, 1.5 * math.pi, TWO_PI)]


@dataclass(frozen=True)
class HardyVerdict:
    map_name: str
    p: float
    radii: tuple
    means: tuple
    ratios: tuple
    increment_ratios: tuple
    verdict: str


def ladder_nodes(r: float, nodes_per_scale: float = NODES_PER_SCALE) -> int:
    """Node count resolving features of width ``1 - r`` on the circle."""
    return max(DEFAULT_NODES, int(math.ceil(nodes_per_scale / (1.0 - r))))


def dichotomy(phi: ConformalMapSpec, p: float,
              decades: Sequence[int] = DEFAULT_DECADES,
              nodes_per_scale: float = NODES_PER_SCALE,
              converge_ratio: float = CONVERGE_RATIO,
              diverge_ratio: float = DIVERGE_RATIO) -> HardyVerdict:
    """Converging / diverging / inconclusive verdict for ``H^p`` finiteness.

    ``ratios[j]`` is the mean at ``1 - 10^-(j+1)`` over the mean at
    ``1 - 10^-j``. All ratios ``<= converge_ratio`` give "converging"; all
    ``>= diverge_ratio`` (or an overflow) give "diverging".
    """
    decades = list(decades)
    if len(decades) < 2:
        raise DomainError("need at least two radii on the ladder")
    radii = [1.0 - 10.0 ** (-j) for j in decades]
    estimates = [integral_mean(phi, p, r, ladder_nodes(r, nodes_per_scale)) for r in radii]
    means = [e.integral_mean for e in estimates]
    if any(e.overflow for e in estimates):
        return HardyVerdict(phi.name, p, tuple(radii), tuple(means), (), (), "diverging")
    ratios = [b / a for a, b in zip(means, means[1:])]
    steps = [b - a for a, b in zip(means, means[1:])]
    increment_ratios = [b / a if a != 0 else math.inf for a, b in zip(steps, steps[1:])]
    if max(ratios) <= converge_ratio:
        verdict = "converging"
    elif min(ratios) >= diverge_ratio:
        verdict = "diverging"
    else:
        verdict = "inconclusive"
    return HardyVerdict(phi.name, p, tuple(radii), tuple(means), tuple(ratios),
                        tuple(increment_ratios), verdict)


@dataclass(frozen=True)
class StarDomainSpec:
    """Star-like (``spiral_order = 0``) or spiral-like domain about 0.

    ``rho(theta)`` is the radial extent in direction ``theta`` (vectorised;
    ``inf`` for unbounded rays, 0 for directions not in the domain).
    """

    rho: Callable[[np.ndarray], np.ndarray]
    spiral_order: float = 0.0
    name: str = "star-domain"
    wedge_alpha: float | None = field(default=None, compare=False)

    def __post_init__(self):
        if not abs(self.spiral_order) < math.pi / 2:
            raise DomainError("spiral order must satisfy |sigma| < pi/2")


def angular_offset(theta) -> np.ndarray:
    """Signed angle to the positive axis, in ``[-pi, pi)``."""
    return np.mod(np.asarray(theta, dtype=float) + math.pi, TWO_PI) - math.pi


def wedge_domain(alpha: float) -> StarDomainSpec:
    """The wedge ``|arg z| < alpha/2`` as a radial description."""
    if not 0.0 < alpha <= TWO_PI:
        raise DomainError("alpha must lie in (0, 2pi]")
    half = alpha / 2.0

    def rho(theta):
        return np.where(np.abs(angular_offset(theta)) < half, np.inf, 0.0)

    return StarDomainSpec(rho, 0.0, f"wedge({alpha:.6g})", wedge_alpha=alpha)


def whole_plane() -> StarDomainSpec:
    return StarDomainSpec(lambda theta: np.full(np.shape(theta), np.inf), 0.0, "plane")


def _bisect_edges(domain: StarDomainSpec, r: float, inside_at: np.ndarray,
                  outside_at: np.ndarray, iterations: int = 48) -> np.ndarray:
    """Locate ``rho = r`` crossings between paired inside/outside angles."""
    a, b = inside_at.astype(float), outside_at.astype(float)
    for _ in range(iterations):
        mid = 0.5 * (a + b)
        ok = np.asarray(domain.rho(np.mod(mid, TWO_PI)), dtype=float) > r
        a = np.where(ok, mid, a)
        b = np.where(ok, b, mid)
    return 0.5 * (a + b)


def largest_arc(domain: StarDomainSpec, r: float, grid: int = 3600) -> float:
    """Angular measure of the longest arc of ``{|z| = r}`` inside the domain.

    Runs of inside points are found on a uniform grid with wrap-around, and
    the two ends of each run are then refined by bisection on ``rho``. The
    refinement only moves an end within its grid cell, so runs narrower
    than a cell are never missed or invented beyond what the grid shows.
    """
    if not r > 0:
        raise DomainError("r must be positive")
    if grid < 360:
        raise DomainError("grid must be at least 360")
    h = TWO_PI / grid
    theta = h * np.arange(grid)
    inside = np.asarray(domain.rho(theta), dtype=float) > r
    if inside.all():
        return TWO_PI
    if not inside.any():
        return 0.0
    # start the scan just after an outside point so no run wraps
    shift = int(np.flatnonzero(~inside)[0])
    seq = np.roll(inside, -shift).astype(np.int8)
    edges = np.flatnonzero(np.diff(np.concatenate([[0], seq, [0]])))
    first, last = edges[::2] + shift, edges[1::2] - 1 + shift
    lo = _bisect_edges(domain, r, h * first, h * (first - 1))
    hi = _bisect_edges(domain, r, h * last, h * (last + 1))
    return float(np.max(hi - lo))


def hansen_formula(arc: float, spiral_order: float = 0.0) -> float:
    """``pi / (A_W cos^2 sigma)``; infinite when ``A_W = 0``."""
    if arc <= 0:
        return math.inf
    return math.pi / (arc * math.cos(spiral_order) ** 2)


def hansen_threshold(domain: StarDomainSpec, r_max: float, grid: int = 3600,
                     probes: int = 8) -> float:
    """Exponent below which ``H^p`` is finite, from the largest arc at ``r_max``.

    For a star- or spiral-like domain about 0 the arc measure can only
    shrink as ``r`` grows; probes at ``r_max / 2^k`` that grow instead mean
    the description is not star-like and raise :class:`MonotonicityError`.
    """
    if not r_max > 0:
        raise DomainError("r_max must be positive")
    radii = [r_max / 2.0 ** k for k in range(probes - 1, -1, -1)]
    arcs = [largest_arc(domain, r, grid) for r in radii]
    slack = 2.0 * TWO_PI / grid
    for (r1, a1), (r2, a2) in zip(zip(radii, arcs), zip(radii[1:], arcs[1:])):
        if a2 > a1 + slack:
            raise MonotonicityError(
                f"largest arc grows from {a1:.6g} at r={r1:.6g} to {a2:.6g} at r={r2:.6g}")
    return hansen_formula(arcs[-1], domain.spiral_order)
