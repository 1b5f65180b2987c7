"""Green's functions of the disk and upper half-plane.

The disk kernel is available in closed form and as the covering-map series
obtained by summing the half-plane kernel over the fibres of
``w -> exp(i w)``.  The series is evaluated in the rotated frame (``a`` real
and positive) after pairing the ``k`` and ``-k`` terms, so each summand is

    ln|1 + (A - B) / (B + 4 pi^2 k^2)|,  A = (log z + log a)^2,
                                         B = (log z - log a)^2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, SingularityError, TruncationError
from .foundation import (
    TWO_PI,
    as_disk_point,
    as_point,
    as_punctured_disk_point,
    as_upper_point,
    principal_log,
)

SINGULAR_TOL = 1e-15
FOUR_PI2 = 4.0 * math.pi ** 2
EPS = float(np.finfo(float).eps)

# columns of k processed per block in the vectorised series kernel
_K_BLOCK = 4096


@dataclass(frozen=True)
class TruncatedSeriesResult:
    """A symmetric partial sum over ``k in [-N, N]`` with a rigorous error bound.

    ``value`` is ``partial_sum + tail_correction``; ``tail_bound`` bounds
    ``|full sum - value|`` (round-off included).
    """

    value: float
    truncation_index: int
    tail_bound: float
    partial_sum: float
    tail_correction: float = 0.0


def greens_disk_closed(a, z) -> float:
    """``ln|(1 - conj(a) z) / (a - z)|`` for distinct points of the disk.

    Evaluated as ``0.5 * log1p((1-|a|^2)(1-|z|^2) / |a-z|^2)``, which stays
    accurate (and positive) right up to the boundary circle.
    """
    a = as_disk_point(a)
    z = as_disk_point(z)
    gap = abs(a - z)
    if gap < SINGULAR_TOL:
        raise SingularityError(f"z coincides with the pole a = {a!r}")
    return 0.5 * math.log1p((1.0 - abs(a) ** 2) * (1.0 - abs(z) ** 2) / gap ** 2)


def greens_halfplane(u, v, closed: bool = False) -> float:
    """``ln|(v - conj(u)) / (v - u)|`` on the upper half-plane.

    With ``closed=True`` the second argument may sit on the real axis, where
    the kernel vanishes.
    """
    u = as_upper_point(u)
    v = as_upper_point(v, closed=closed)
    gap = abs(v - u)
    if gap < SINGULAR_TOL:
        raise SingularityError(f"v coincides with the pole u = {u!r}")
    return 0.5 * math.log1p(4.0 * u.imag * v.imag / gap ** 2)


def _rotated_logs(a: complex, z, branch_shift: int = 0):
    """Rotate so ``a`` is real-positive; return ``(log a, log z')``."""
    rot = a / abs(a)
    log_a = math.log(abs(a))
    log_z = principal_log(np.asarray(z, dtype=complex) * rot.conjugate())
    return log_a, log_z + 2j * math.pi * branch_shift


def _pair_terms(D: np.ndarray, B: np.ndarray, k: np.ndarray) -> np.ndarray:
    """``ln|1 + D/(B + 4 pi^2 k^2)|`` for every (point, k) pair."""
    t = D[:, None] / (B[:, None] + FOUR_PI2 * (k * k)[None, :])
    return 0.5 * np.log1p(2.0 * t.real + (t.real ** 2 + t.imag ** 2))


def _series_sums(D: np.ndarray, B: np.ndarray, N: int):
    """Sum and absolute sum of the paired terms ``k = 1..N`` (fixed order)."""
    total = np.zeros(D.shape, dtype=float)
    total_abs = np.zeros(D.shape, dtype=float)
    for start in range(1, N + 1, _K_BLOCK):
        k = np.arange(start, min(start + _K_BLOCK, N + 1), dtype=float)
        terms = _pair_terms(D, B, k)
        total += np.sum(terms, axis=1)
        total_abs += np.sum(np.abs(terms), axis=1)
    return total, total_abs


def _tail(D: complex, B: complex, N: int, corrected: bool):
    """Tail correction and rigorous bound for ``sum_{k>N} ln|1+t_k|``.

    With ``s = sqrt|B| / 2pi``, ``|t_k| <= u_k = |D| / (4 pi^2 (k^2 - s^2))``.
    Uncorrected: ``|tail| <= sum u_k / (1 - u_max) <= |D| / (4pi^2 (N-s)(1-u_max))``.
    Corrected: the tail is replaced by ``Re(D) / (4 pi^2 (N + 1/2))`` and the
    bound collects the midpoint-rule error of ``sum 1/k^2``, the shift by ``B``
    and the quadratic remainder of the logarithm, each ``O(1/N^3)``.
    """
    s = math.sqrt(abs(B)) / TWO_PI
    if N < math.ceil(s) + 1:
        raise TruncationError(f"N = {N} is below the validity threshold {math.ceil(s) + 1}")
    scale = abs(D) / FOUR_PI2
    u_max = scale / ((N + 1) ** 2 - s * s)
    if u_max > 0.5:
        raise TruncationError(f"N = {N} too small: leading tail term {u_max:.3g} > 1/2")
    gap = N - s
    if not corrected:
        return 0.0, scale / (gap * (1.0 - u_max))
    correction = (D.real / FOUR_PI2) / (N + 0.5)
    bound = (scale / (12.0 * (N - 0.5) ** 3)
             + scale * s * s / (3.0 * gap ** 3)
             + scale * scale / (3.0 * gap ** 3))
    return correction, bound


def _roundoff(k0: float, abs_sum: float, log_a: float, log_z: complex) -> float:
    cond = (abs(log_a) + abs(log_z)) / abs(log_z - log_a)
    return 64.0 * EPS * (1.0 + abs(k0) + abs_sum + cond)


def greens_series_terms(a, z, N: int, branch_shift: int = 0) -> np.ndarray:
    """Individual series terms ``[k=0, pair 1, ..., pair N]`` in the rotated frame.

    Unlike :func:`greens_disk_series` this accepts ``|z| = 1``, where every
    term vanishes.
    """
    a = as_punctured_disk_point(a)
    z = as_point(z)
    if z == 0 or abs(z) > 1.0:
        raise DomainError(f"z = {z!r} must satisfy 0 < |z| <= 1")
    log_a, log_z = _rotated_logs(a, z, branch_shift)
    if abs(log_z - log_a) < SINGULAR_TOL:
        raise SingularityError("z coincides with the pole a")
    k0 = math.log(abs((log_z + log_a) / (log_z - log_a)))
    D = np.array([4.0 * log_z * log_a])
    B = np.array([(log_z - log_a) ** 2])
    pairs = _pair_terms(D, B, np.arange(1, N + 1, dtype=float))[0]
    return np.concatenate([[k0], pairs])


def _series_core(a: complex, zs: np.ndarray, N: int, branch_shift: int = 0):
    log_a, log_z = _rotated_logs(a, zs, branch_shift)
    if np.any(np.abs(log_z - log_a) < SINGULAR_TOL):
        raise SingularityError("k = 0 denominator vanishes")
    D = 4.0 * log_z * log_a
    B = (log_z - log_a) ** 2
    k0 = np.log(np.abs((log_z + log_a) / (log_z - log_a)))
    total, total_abs = _series_sums(D, B, N)
    return log_a, log_z, D, B, k0, total, total_abs


def greens_disk_series(a, z, N: int, corrected: bool = True,
                       branch_shift: int = 0) -> TruncatedSeriesResult:
    """Covering-map series for the disk Green's function truncated at ``|k| <= N``.

    ``branch_shift`` adds ``2 pi i * branch_shift`` to ``log z``; the limit
    does not depend on it. Set ``corrected=False`` for the bare partial sum
    with its ``O(1/N)`` bound.
    """
    a = as_punctured_disk_point(a)
    z = as_punctured_disk_point(z)
    N = int(N)
    if N < 1:
        raise DomainError("N must be a positive integer")
    if abs(z - a) < SINGULAR_TOL:
        raise SingularityError(f"z coincides with the pole a = {a!r}")
    log_a, log_z, D, B, k0, total, total_abs = _series_core(
        a, np.array([z]), N, branch_shift)
    correction, bound = _tail(complex(D[0]), complex(B[0]), N, corrected)
    partial = float(k0[0] + total[0])
    bound += _roundoff(float(k0[0]), float(total_abs[0]), log_a, complex(log_z[0]))
    return TruncatedSeriesResult(
        value=partial + correction,
        truncation_index=N,
        tail_bound=bound,
        partial_sum=partial,
        tail_correction=correction,
    )


def greens_disk_series_values(a, zs, N: int) -> np.ndarray:
    """Tail-corrected series values at many points ``zs`` (vectorised).

    Bit-identical to ``greens_disk_series(a, z, N).value`` point by point.
    """
    a = as_punctured_disk_point(a)
    zs = np.asarray(zs, dtype=complex)
    shape = zs.shape
    zs = zs.ravel()
    if np.any(zs == 0) or np.any(np.abs(zs) >= 1.0):
        raise DomainError("all points must lie in the punctured disk")
    if np.any(np.abs(zs - a) < SINGULAR_TOL):
        raise SingularityError("a point coincides with the pole")
    _, _, D, B, k0, total, _ = _series_core(a, zs, int(N))
    corrections = np.array([_tail(complex(d), complex(b), int(N), True)[0]
                            for d, b in zip(D, B)])
    return ((k0 + total) + corrections).reshape(shape)


@dataclass(frozen=True)
class CoveringMapSpec:
    """A covering map ``f`` with an enumeration of its fibres.

    ``preimage_enumerator(target, k)`` returns the ``k``-th preimage of
    ``target``. ``degree`` is the number of sheets for a finite cover (fibre
    indices ``0..degree-1``); ``None`` means fibres are indexed by all of Z
    and truncated to ``[-N, N]``. ``tail_bound(b, w, N)``, when given, bounds
    the omitted part of the fibre sum.
    """

    forward: Callable[[complex], complex]
    preimage_enumerator: Callable[[complex, int], complex]
    degree: int | None = None
    tail_bound: Callable[[complex, complex, int], float] | None = None


def _exp_tail_bound(b: complex, w: complex, N: int) -> float:
    # half-plane terms are nonnegative and <= 2 Im b Im w / |w_k - b|^2
    w0 = -1j * principal_log(cmath.exp(1j * w))
    d = abs((w0 - b).real) / TWO_PI
    if N <= d:
        raise TruncationError(f"N = {N} must exceed {d:.3g}")
    return b.imag * max(w0.imag, 0.0) / (math.pi ** 2 * (N - d))


def exp_covering() -> CoveringMapSpec:
    """``w -> exp(i w)`` from the upper half-plane onto the punctured disk."""
    return CoveringMapSpec(
        forward=lambda w: cmath.exp(1j * w),
        preimage_enumerator=lambda zeta, k: -1j * principal_log(zeta) + TWO_PI * k,
        tail_bound=_exp_tail_bound,
    )


def identity_covering() -> CoveringMapSpec:
    return CoveringMapSpec(forward=lambda w: w,
                           preimage_enumerator=lambda zeta, k: zeta,
                           degree=1)


def covering_projection(spec: CoveringMapSpec, base_greens: Callable, b, w,
                        N: int) -> TruncatedSeriesResult:
    """Sum ``base_greens(b, w')`` over the fibre of ``spec.forward(w)``."""
    b = as_point(b)
    w = as_point(w)
    N = int(N)
    if N < 1:
        raise DomainError("N must be a positive integer")
    target = spec.forward(w)
    indices = range(-N, N + 1) if spec.degree is None else range(spec.degree)
    terms = []
    for k in indices:
        wk = spec.preimage_enumerator(target, k)
        if abs(wk - b) < SINGULAR_TOL:
            raise SingularityError(f"preimage {k} coincides with b = {b!r}")
        terms.append(base_greens(b, wk))
    value = math.fsum(terms)
    if spec.degree is not None:
        bound = 0.0
    elif spec.tail_bound is not None:
        bound = spec.tail_bound(b, w, N)
    else:
        bound = math.inf
    bound += 16.0 * EPS * math.fsum(abs(t) for t in terms)
    return TruncatedSeriesResult(value=value, truncation_index=N,
                                 tail_bound=bound, partial_sum=value)


def removable_singularity_probe(a, radii: Sequence[float], N: int) -> list[float]:
    """Series values at ``z = r`` for shrinking radii ``r``.

    The values stay bounded and approach ``ln(1/|a|)``, the value of the
    disk Green's function at the puncture.
    """
    a = as_punctured_disk_point(a)
    radii = [float(r) for r in radii]
    if not radii:
        raise DomainError("radii must be non-empty")
    if any(r2 >= r1 for r1, r2 in zip(radii, radii[1:])):
        raise DomainError("radii must be strictly decreasing")
    if not all(0.0 < r < abs(a) / 2 for r in radii):
        raise DomainError("radii must lie in (0, |a|/2)")
    values = [greens_disk_series(a, r, N).value for r in radii]
    if not all(math.isfinite(v) for v in values):
        raise SingularityError("series diverged near the puncture")
    return values
