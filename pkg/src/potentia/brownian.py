"""Monte Carlo occupation times of planar Brownian motion killed on exiting the disk.

The motion has generator ``(1/2) Laplacian``: each Euler step adds an
independent ``N(0, dt)`` to both coordinates. A path is stopped at the first
step whose end point has ``|B| >= 1``. Every path draws from its own
generator seeded by ``(seed, path_index)``, so results do not depend on how
paths are scheduled across threads.
"""

from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, StepCapExceeded
from .foundation import TWO_PI, as_disk_point

MAX_STEPS = 10 ** 8
_FIRST_BLOCK = 4096
_MAX_BLOCK = 1 << 16


@dataclass(frozen=True)
class MCConfig:
    path_count: int
    step_size: float
    seed: int
    start: complex = 0j
    max_steps: int = MAX_STEPS

    def __post_init__(self):
        if int(self.path_count) != self.path_count or self.path_count < 1000:
            raise DomainError("path_count must be an integer >= 1000")
        if not 0.0 < self.step_size <= 1e-3:
            raise DomainError("step_size must lie in (0, 1e-3]")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise DomainError("seed must be a 64-bit unsigned integer")
        object.__setattr__(self, "start", as_disk_point(self.start))


@dataclass(frozen=True)
class OccupationEstimate:
    mean: float
    stderr: float
    path_count: int
    step_size: float


def path_rng(seed: int, path_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), int(path_index)])))


def _as_values(f: Callable, z: np.ndarray) -> np.ndarray:
    return np.broadcast_to(np.asarray(f(z), dtype=float), z.shape)


def _walk(config: MCConfig, path_index: int, fs: Sequence[Callable]):
    """Step count to exit and per-functional sums of ``f`` over visited points."""
    rng = path_rng(config.seed, path_index)
    sd = math.sqrt(config.step_size)
    pos = config.start
    steps = 0
    sums = np.zeros(len(fs))
    block = _FIRST_BLOCK
    while True:
        if steps >= config.max_steps:
            raise StepCapExceeded(
                f"path {path_index} still inside after {steps} steps", path_index)
        m = min(block, config.max_steps - steps)
        inc = rng.standard_normal((m, 2)) * sd
        path = pos + np.cumsum(inc[:, 0] + 1j * inc[:, 1])
        out = np.flatnonzero(path.real ** 2 + path.imag ** 2 >= 1.0)
        n = m if out.size == 0 else int(out[0]) + 1
        if fs:
            # left end points of the n steps taken inside
            visited = np.empty(n, dtype=complex)
            visited[0] = pos
            visited[1:] = path[:n - 1]
            for i, f in enumerate(fs):
                sums[i] += float(np.sum(_as_values(f, visited)))
        steps += n
        if out.size:
            return steps, sums
        pos = complex(path[-1])
        block = min(2 * block, _MAX_BLOCK)


def simulate_exit_path(config: MCConfig, path_index: int,
                       functionals: Sequence[Callable] = ()):
    """One killed path: ``(exit_time, {f: integral of f(B_s) ds up to exit})``.

    Each ``f`` takes a complex array of positions and returns real values.
    """
    steps, sums = _walk(config, path_index, list(functionals))
    dt = config.step_size
    return steps * dt, {f: dt * s for f, s in zip(functionals, sums)}


def worker_count() -> int:
    env = os.environ.get("POTENTIA_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _simulate(config: MCConfig, fs: Sequence[Callable], workers: int | None = None):
    n = config.path_count
    exit_steps = np.zeros(n)
    occupation = np.zeros((n, len(fs)))
    done = np.zeros(n, dtype=bool)
    workers = workers or worker_count()

    def run(chunk):
        for i in chunk:
            exit_steps[i], occupation[i] = _walk(config, i, fs)
            done[i] = True

    chunks = np.array_split(np.arange(n), max(1, workers) * 4)
    try:
        if workers <= 1:
            for chunk in chunks:
                run(chunk)
        else:
            with ThreadPoolExecutor(workers) as pool:
                list(pool.map(run, chunks))
    except StepCapExceeded as exc:
        finished = occupation[done] * config.step_size
        exc.partial = [_summarise(finished[:, j], config) for j in range(len(fs))] \
            if finished.size else []
        raise
    return exit_steps * config.step_size, occupation * config.step_size


def _summarise(values: np.ndarray, config: MCConfig) -> OccupationEstimate:
    n = values.size
    mean = float(np.mean(values))
    stderr = float(np.std(values, ddof=1) / math.sqrt(n)) if n > 1 else math.inf
    return OccupationEstimate(mean, stderr, n, config.step_size)


def occupation_estimates(config: MCConfig, fs: Sequence[Callable],
                         workers: int | None = None) -> list[OccupationEstimate]:
    """Estimates for several functionals computed on the same set of paths."""
    _, occ = _simulate(config, list(fs), workers)
    return [_summarise(occ[:, j], config) for j in range(len(fs))]


def occupation_estimate(config: MCConfig, f: Callable,
                        workers: int | None = None) -> OccupationEstimate:
    """Monte Carlo estimate of ``E_start int_0^T f(B_s) ds``."""
    return occupation_estimates(config, [f], workers)[0]


def exit_time_estimate(config: MCConfig, workers: int | None = None) -> OccupationEstimate:
    times, _ = _simulate(config, [], workers)
    return _summarise(times, config)


def unit(z):
    return np.ones(np.shape(z))


def zero(z):
    return np.zeros(np.shape(z))


def disk_indicator(radius: float) -> Callable:
    def indicator(z):
        z = np.asarray(z)
        return (z.real ** 2 + z.imag ** 2 < radius * radius).astype(float)
    return indicator


def default_test_functions() -> list[Callable]:
    return [
        unit,
        lambda z: np.abs(z) ** 2,
        lambda z: 1.0 + np.real(z),
        lambda z: np.real(z) ** 2,
    ]


def _polar_rule(start: complex, radial: int, angular: int):
    """Nodes and weights for ``int G_D(start, z) f(z) dA(z)``.

    Substitutes ``z = (w + a)/(1 + conj(a) w)`` so the Green's function
    becomes ``ln(1/|w|)``, then ``|w| = s^2`` to smooth the logarithm; Gauss-
    Legendre in ``s``, trapezoid in angle.
    """
    a = complex(start)
    x, wx = np.polynomial.legendre.leggauss(radial)
    s = 0.5 * (x + 1.0)
    ws = 0.5 * wx * (-4.0 * s ** 3 * np.log(s))
    theta = TWO_PI * np.arange(angular) / angular
    w = (s ** 2)[:, None] * np.exp(1j * theta)[None, :]
    jac = ((1.0 - abs(a) ** 2) / np.abs(1.0 + a.conjugate() * w) ** 2) ** 2
    z = (w + a) / (1.0 + a.conjugate() * w)
    weights = ws[:, None] * (TWO_PI / angular) * jac
    return z.ravel(), weights.ravel()


def greens_area_integral(start, f: Callable, radial: int = 96,
                         angular: int = 256) -> float:
    """``int_D ln|(1 - conj(a) z)/(a - z)| f(z) dA(z)`` by deterministic quadrature."""
    z, weights = _polar_rule(as_disk_point(start), radial, angular)
    return float(np.sum(weights * _as_values(f, z)))


@dataclass(frozen=True)
class KappaFit:
    kappa: float
    estimates: tuple
    integrals: tuple


def greens_constant_fit(config: MCConfig, test_functions: Sequence[Callable] | None = None,
                        workers: int | None = None, full_output: bool = False):
    """Least-squares ``kappa`` with ``occupation(f) ~ kappa * int G_D(start, .) f dA``.

    For the ``(1/2) Laplacian`` convention ``kappa`` should come out near
    ``1/pi``. Warns if the test functions are close to linearly dependent.
    """
    fs = list(test_functions) if test_functions is not None else default_test_functions()
    if len(fs) < 3:
        raise DomainError("need at least 3 test functions")
    z, weights = _polar_rule(config.start, 96, 256)
    values = np.array([_as_values(f, z) for f in fs])
    gram = (values * weights) @ values.T
    if np.linalg.cond(gram) > 1e10:
        warnings.warn("test functions are nearly linearly dependent", RuntimeWarning)
    integrals = values @ weights
    estimates = occupation_estimates(config, fs, workers)
    means = np.array([e.mean for e in estimates])
    kappa = float(means @ integrals / (integrals @ integrals))
    if full_output:
        return KappaFit(kappa, tuple(estimates), tuple(float(v) for v in integrals))
    return kappa
