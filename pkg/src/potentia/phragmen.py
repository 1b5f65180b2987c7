"""Numerical Phragmen-Lindelof demonstrator.

The Phragmen-Lindelof growth hypothesis can only be probed, never proved, by
sampling, so :func:`pl_verdict` returns one of three conclusions and never
claims more than the samples support.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from .errors import DomainError, InsufficientDataError
from .foundation import TWO_PI, CircleQuadrature, as_point, circle_mean, principal_log
from .hardy import StarDomainSpec, angular_offset, hansen_threshold

BOUNDED = "bounded-by-K"
VIOLATED = "hypothesis-violated"
INCONCLUSIVE = "inconclusive"

DEFAULT_MARGIN = 0.05
# threshold for a generic simply connected proper subdomain of the plane
GENERIC_THRESHOLD = 0.5
DEFAULT_RADII = tuple(np.geomspace(2.0, 2000.0, 16))


@dataclass(frozen=True)
class Wedge:
    """The open wedge ``|arg z| < alpha / 2``."""

    alpha: float

    def __post_init__(self):
        if not 0.0 < self.alpha <= TWO_PI:
            raise DomainError("alpha must lie in (0, 2pi]")

    @property
    def threshold(self) -> float:
        return math.pi / self.alpha

    def contains(self, z) -> bool:
        z = complex(z)
        return z != 0 and abs(math.atan2(z.imag, z.real)) < self.alpha / 2

    def boundary_distance(self, z) -> float:
        z = as_point(z)
        if not self.contains(z):
            return 0.0
        gap = self.alpha / 2 - abs(math.atan2(z.imag, z.real))
        return abs(z) if gap >= math.pi / 2 else abs(z) * math.sin(gap)

    def boundary_points(self, samples: int, radius_cap: float) -> np.ndarray:
        r = np.linspace(0.0, radius_cap, samples)
        edge = np.exp(0.5j * self.alpha)
        return np.concatenate([r * edge, r * edge.conjugate()])

    def interior_points(self, radius: float, samples: int) -> np.ndarray:
        theta = np.linspace(-self.alpha / 2, self.alpha / 2, samples + 2)[1:-1]
        r = np.geomspace(radius * 1e-3, radius, samples)
        return (r[:, None] * np.exp(1j * theta)[None, :]).ravel()


Domain = Union[Wedge, StarDomainSpec, None]


@dataclass(frozen=True)
class AnalyticFunctionSpec:
    """An analytic function on a domain, vectorised over complex arrays.

    ``log_modulus`` (``ln|f|``) avoids overflow for fast-growing functions;
    without it ``ln|f|`` is taken from ``evaluate``.
    """

    name: str
    evaluate: Callable[[np.ndarray], np.ndarray]
    domain: Domain = None
    log_modulus: Callable[[np.ndarray], np.ndarray] | None = None

    def log_abs(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        if self.log_modulus is not None:
            return np.asarray(self.log_modulus(z), dtype=float)
        with np.errstate(divide="ignore", over="ignore"):
            return np.log(np.abs(self.evaluate(z)))


@dataclass(frozen=True)
class GrowthFit:
    """Fit of ``ln ln|f| = p ln|z| + ln C`` along a ray."""

    C: float
    p: float
    residual: float
    bounded: bool = False
    r_max: float = 0.0


@dataclass(frozen=True)
class PLVerdict:
    K: float
    p_fit: float
    p_star: float
    conclusion: str
    interior_max: float
    exceeds_K: bool


def log_plus(x: float) -> float:
    """``max(ln x, 0)``."""
    if not x >= 0:
        raise DomainError("log_plus needs x >= 0")
    return math.log(x) if x > 1 else 0.0


def power(z: np.ndarray, exponent: float) -> np.ndarray:
    """Principal power ``z**exponent`` with ``0**exponent = 0``."""
    z = np.asarray(z, dtype=complex)
    zero = z == 0
    out = np.exp(exponent * principal_log(np.where(zero, 1.0, z)))
    return np.where(zero, 0.0, out)


def exp_power(alpha: float) -> AnalyticFunctionSpec:
    """``exp(z^(pi/alpha))`` on the wedge of opening ``alpha``.

    It has modulus 1 on both edges of the wedge and is unbounded along
    the positive axis.
    """
    q = math.pi / alpha
    return AnalyticFunctionSpec(
        f"exp(z^{q:.6g})",
        lambda z: np.exp(power(z, q)),
        Wedge(alpha),
        lambda z: power(z, q).real,
    )


def exponential(domain: Domain) -> AnalyticFunctionSpec:
    return AnalyticFunctionSpec("exp(z)", np.exp, domain, lambda z: np.asarray(z).real)


def reciprocal_shift(domain: Domain) -> AnalyticFunctionSpec:
    return AnalyticFunctionSpec("1/(1+z)", lambda z: 1.0 / (1.0 + z), domain,
                                lambda z: -np.log(np.abs(1.0 + z)))


def identity_function(domain: Domain) -> AnalyticFunctionSpec:
    return AnalyticFunctionSpec("z", lambda z: np.asarray(z, dtype=complex), domain)


def constant_function(c: complex, domain: Domain) -> AnalyticFunctionSpec:
    return AnalyticFunctionSpec(f"const({c})", lambda z: np.full(np.shape(z), c, dtype=complex),
                                domain)


def catalog_functions() -> list[AnalyticFunctionSpec]:
    quarter = Wedge(math.pi / 2)
    return [
        exp_power(math.pi / 2),
        exp_power(math.pi),
        exp_power(1.5 * math.pi),
        exponential(quarter),
        reciprocal_shift(quarter),
        identity_function(Wedge(math.pi)),
    ]


def default_threshold(domain: Domain, r_max: float = 1e4, grid: int = 65536) -> float:
    """Growth exponent below which the Phragmen-Lindelof bound applies on ``domain``."""
    if isinstance(domain, Wedge):
        return domain.threshold
    if isinstance(domain, StarDomainSpec):
        return hansen_threshold(domain, r_max, grid)
    return GENERIC_THRESHOLD


def _star_boundary(domain: StarDomainSpec, samples: int, radius_cap: float) -> np.ndarray:
    theta = TWO_PI * np.arange(samples) / samples
    rho = np.asarray(domain.rho(theta), dtype=float)
    finite = np.isfinite(rho) & (rho > 0) & (rho <= radius_cap)
    pts = [rho[finite] * np.exp(1j * theta[finite])]
    # rays bounding the arcs where the domain is unbounded
    unbounded = ~np.isfinite(rho)
    edges = np.flatnonzero(unbounded != np.roll(unbounded, 1))
    r = np.linspace(0.0, radius_cap, samples)
    for j in edges:
        inner = j if unbounded[j] else j - 1
        start = rho[(inner - 1) % samples] if unbounded[inner] else rho[inner]
        start = start if np.isfinite(start) else 0.0
        pts.append(r[r >= start] * np.exp(1j * theta[inner]))
    return np.concatenate(pts)


def boundary_samples(domain: Domain, samples: int, radius_cap: float) -> np.ndarray:
    if isinstance(domain, Wedge):
        return domain.boundary_points(samples, radius_cap)
    if isinstance(domain, StarDomainSpec):
        return _star_boundary(domain, samples, radius_cap)
    raise DomainError("boundary sampling needs a Wedge or StarDomainSpec domain")


def boundary_sup(f: AnalyticFunctionSpec, samples: int = 4000,
                 radius_cap: float = 10.0) -> float:
    """Max of ``|f|`` over the boundary truncated at ``radius_cap``."""
    pts = boundary_samples(f.domain, samples, radius_cap)
    logs = f.log_abs(pts)
    bad = np.flatnonzero(np.isnan(logs))
    if bad.size:
        raise DomainError(f"{f.name} failed to evaluate at boundary point {pts[bad[0]]!r}")
    top = float(np.max(logs))
    return math.exp(top) if top < 709.0 else math.inf


def boundary_bound(f: AnalyticFunctionSpec, samples: int = 4000,
                   caps: Sequence[float] = (10.0, 20.0, 40.0),
                   growth_tol: float = 1e-6) -> float:
    """Boundary bound ``K``, or ``inf`` when the sup keeps growing with the cap."""
    sups = [boundary_sup(f, samples, cap) for cap in caps]
    if not math.isfinite(sups[-1]) or sups[-1] > sups[0] * (1.0 + growth_tol) + growth_tol:
        return math.inf
    return sups[-1]


def growth_fit(f: AnalyticFunctionSpec, ray_angle: float = 0.0,
               radii: Sequence[float] = DEFAULT_RADII) -> GrowthFit:
    """Least-squares growth order along the ray ``arg z = ray_angle``.

    Only radii with ``|f| > 1`` enter the fit. If ``|f| <= 1`` all along
    the ray, the result is flagged ``bounded`` with order 0.
    """
    radii = np.asarray(radii, dtype=float)
    logs = f.log_abs(radii * np.exp(1j * ray_angle))
    if np.any(np.isnan(logs)):
        raise DomainError(f"{f.name} failed to evaluate along the ray")
    usable = logs > 0
    if not usable.any():
        return GrowthFit(C=1.0, p=0.0, residual=0.0, bounded=True, r_max=float(radii.max()))
    if usable.sum() < 5:
        raise InsufficientDataError("fewer than 5 radii with |f| > 1")
    x = np.log(radii[usable])
    y = np.log(logs[usable])
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return GrowthFit(C=math.exp(intercept), p=float(slope), residual=resid,
                     r_max=float(radii.max()))


def interior_samples(domain: Domain, radius: float, samples: int = 64) -> np.ndarray:
    if isinstance(domain, Wedge):
        return domain.interior_points(radius, samples)
    if isinstance(domain, StarDomainSpec):
        theta = TWO_PI * np.arange(4 * samples) / (4 * samples)
        reach = np.minimum(np.asarray(domain.rho(theta), dtype=float), radius) * 0.99
        keep = reach > 0
        frac = np.linspace(0.01, 1.0, samples)
        return (frac[:, None] * (reach[keep] * np.exp(1j * theta[keep]))[None, :]).ravel()
    return np.empty(0, dtype=complex)


def pl_verdict(f: AnalyticFunctionSpec, K: float, fit: GrowthFit,
               p_star: float | None = None, margin: float = DEFAULT_MARGIN,
               interior_radius: float | None = None, samples: int = 64,
               tol: float = 1e-9) -> PLVerdict:
    """Three-valued verdict for the Phragmen-Lindelof conclusion ``|f| <= K``.

    * infinite ``K``: inconclusive, since the boundary hypothesis fails;
    * ``p_fit < p_star (1 - margin)``: bounded-by-K;
    * ``p_fit >= p_star (1 + margin)``, or a near-tie in which interior
      samples already exceed ``K``: hypothesis-violated;
    * other near-ties: inconclusive.
    """
    if p_star is None:
        p_star = default_threshold(f.domain)
    radius = interior_radius if interior_radius is not None else max(fit.r_max, 1.0)
    pts = interior_samples(f.domain, radius, samples)
    if pts.size:
        top = float(np.max(f.log_abs(pts)))
        interior_max = math.exp(top) if top < 709.0 else math.inf
    else:
        interior_max = 0.0
    exceeds = math.isfinite(K) and interior_max > K + tol
    if not math.isfinite(K):
        conclusion = INCONCLUSIVE
    elif fit.p < p_star * (1.0 - margin):
        conclusion = BOUNDED
    elif fit.p >= p_star * (1.0 + margin) or exceeds:
        conclusion = VIOLATED
    else:
        conclusion = INCONCLUSIVE
    return PLVerdict(K=K, p_fit=fit.p, p_star=p_star, conclusion=conclusion,
                     interior_max=interior_max, exceeds_K=exceeds)


def subharmonic_residual(f: AnalyticFunctionSpec, center, radius: float,
                         q: CircleQuadrature | None = None) -> float:
    """``u(center) - mean of u on the circle`` for ``u = log+|f|``.

    Sub-mean-value: never meaningfully positive.
    """
    q = q or CircleQuadrature(256)
    c = as_point(center)
    if not radius > 0:
        raise DomainError("radius must be positive")
    if isinstance(f.domain, Wedge) and f.domain.boundary_distance(c) <= radius:
        raise DomainError("circle is not contained in the wedge")

    def u(z):
        return np.maximum(f.log_abs(z), 0.0)

    at_center = float(u(np.array([c]))[0])
    return at_center - circle_mean(lambda t: u(c + radius * np.exp(1j * t)), q)


@dataclass(frozen=True)
class SharpnessReport:
    alpha: float
    boundary_sup: float
    fit: GrowthFit
    verdict: PLVerdict
    axis_radius: float
    axis_log_modulus: float


def sharpness(alpha: float, level: float = 1e6, samples: int = 4000,
              radius_cap: float = 10.0,
              radii: Sequence[float] = DEFAULT_RADII) -> SharpnessReport:
    """Run the ``exp(z^(pi/alpha))`` counterexample on the wedge of opening ``alpha``.

    ``axis_radius`` is where ``|f|`` reaches ``level`` on the positive axis,
    ``(ln level)^(alpha/pi)``.
    """
    f = exp_power(alpha)
    K = boundary_sup(f, samples, radius_cap)
    fit = growth_fit(f, 0.0, radii)
    axis_radius = math.log(level) ** (alpha / math.pi)
    verdict = pl_verdict(f, K, fit, interior_radius=max(axis_radius, fit.r_max))
    axis_log = float(f.log_abs(np.array([axis_radius]))[0])
    return SharpnessReport(alpha, K, fit, verdict, axis_radius, axis_log)
