"""Finite resolvent series f(z) = sum_j a_j / (alpha_j - z).

The series object, its scalar evaluation, the affine part (gamma, beta) of
its reciprocal, the remainder h(z) = 1/f(z) - gamma - beta*z, admissibility
diagnostics against a spectrum descriptor, zero location, and the
Caratheodory-type construction of a series vanishing at a prescribed
interior point of the pole hull.

Infinite series are represented by finite truncations; the summability
value reported by :func:`check_admissible` refers to the truncation and
tail control is the caller's responsibility.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConstructionError,
    DegenerateSeriesError,
    EmptyInputError,
    PoleEvaluationError,
    ZeroOfSeriesError,
)
from .geometry import (
    HullPolygon,
    Spectrum,
    convex_hull,
    hull_separated_from,
)

__all__ = [
    "ResolventSeries",
    "AdmissibilityReport",
    "evaluate",
    "gamma_beta",
    "evaluate_remainder",
    "check_admissible",
    "zeros",
    "caratheodory_zero_series",
]

POLE_SEP_RTOL = 1e-12
THEOREM_MODE_RTOL = 1e-12


@dataclass(frozen=True)
class ResolventSeries:
    """Finite list of (coefficient a_j, pole alpha_j) pairs.

    Poles must be pairwise distinct; zero coefficients are allowed and can
    be removed with :meth:`pruned`.
    """

    terms: tuple[tuple[complex, complex], ...]

    def __post_init__(self):
        if not self.terms:
            raise EmptyInputError("series needs at least one term")
        terms = tuple((complex(a), complex(al)) for a, al in self.terms)
        object.__setattr__(self, "terms", terms)
        tol = POLE_SEP_RTOL * self.scale
        poles = [al for _, al in terms]
        for i in range(len(poles)):
            for j in range(i + 1, len(poles)):
                if abs(poles[i] - poles[j]) <= tol:
                    raise ValueError(
                        f"poles {poles[i]} and {poles[j]} are not distinct")

    @property
    def coefficients(self) -> tuple[complex, ...]:
        return tuple(a for a, _ in self.terms)

    @property
    def poles(self) -> tuple[complex, ...]:
        return tuple(al for _, al in self.terms)

    @property
    def scale(self) -> float:
        return max(1.0, max(abs(al) for _, al in self.terms))

    @property
    def coefficient_sum(self) -> complex:
        return complex(
            math.fsum(a.real for a in self.coefficients),
            math.fsum(a.imag for a in self.coefficients),
        )

    def is_theorem_mode(self, rtol: float = THEOREM_MODE_RTOL) -> bool:
        """Nonnegative real coefficients with positive sum."""
        atol = rtol * max(1.0, max(abs(a) for a in self.coefficients))
        for a in self.coefficients:
            if abs(a.imag) > atol or a.real < -atol:
                return False
        return self.coefficient_sum.real > atol

    def pruned(self, rtol: float = 0.0) -> "ResolventSeries":
        """Drop terms whose coefficient magnitude is <= rtol * max|a|."""
        amax = max(abs(a) for a in self.coefficients)
        kept = tuple(t for t in self.terms if abs(t[0]) > rtol * amax)
        if not kept:
            raise DegenerateSeriesError("all coefficients vanish")
        return ResolventSeries(kept)


def _fsum_complex(values) -> complex:
    vals = list(values)
    return complex(math.fsum(v.real for v in vals),
                   math.fsum(v.imag for v in vals))


def evaluate(series: ResolventSeries, z: complex) -> complex:
    """Value of f at z via compensated summation.

    Raises :class:`PoleEvaluationError` if z sits on a pole.
    """
    z = complex(z)
    tol = POLE_SEP_RTOL * series.scale
    for _, alpha in series.terms:
        if abs(z - alpha) <= tol:
            raise PoleEvaluationError(alpha, z)
    return _fsum_complex(a / (alpha - z) for a, alpha in series.terms)


def gamma_beta(series: ResolventSeries) -> tuple[complex, complex]:
    """Affine part of 1/f at infinity.

    gamma = sum(a_j alpha_j) / (sum a_j)^2 and beta = -1 / sum(a_j).
    """
    s = series.coefficient_sum
    if abs(s) <= POLE_SEP_RTOL * max(abs(a) for a in series.coefficients):
        raise DegenerateSeriesError("coefficient sum vanishes")
    weighted = _fsum_complex(a * al for a, al in series.terms)
    return weighted / (s * s), -1.0 / s


def evaluate_remainder(series: ResolventSeries, z: complex) -> complex:
    """h(z) = 1/f(z) - gamma - beta*z."""
    gamma, beta = gamma_beta(series)
    fz = evaluate(series, z)
    if fz == 0:
        raise ZeroOfSeriesError(f"f vanishes at {z}")
    return 1.0 / fz - gamma - beta * z


@dataclass(frozen=True)
class TermDiagnostic:
    coefficient: complex
    pole: complex
    spectrum_distance: float
    summand: float  # |a_j| / dist(alpha_j, spectrum); inf on the spectrum


@dataclass(frozen=True)
class AdmissibilityReport:
    theorem_mode_ok: bool
    hull: HullPolygon
    separation_ok: bool
    separation_distance: float
    summability_value: float
    per_term: tuple[TermDiagnostic, ...]


def check_admissible(series: ResolventSeries, spectrum: Spectrum,
                     margin: float = 0.0) -> AdmissibilityReport:
    """Diagnostics for the inversion hypotheses; never raises.

    Reports theorem mode, the pole hull, its separation from the spectrum,
    and the summability value sum |a_j| / dist(alpha_j, spectrum).
    """
    hull = convex_hull(series.poles)
    separated, dist = hull_separated_from(hull, spectrum, margin)
    diags = []
    for a, alpha in series.terms:
        d = spectrum.distance_to(alpha)
        if d > 0.0:
            summand = abs(a) / d
        else:
            summand = math.inf if abs(a) > 0.0 else 0.0
        diags.append(TermDiagnostic(a, alpha, d, summand))
    total = math.fsum(t.summand for t in diags) if all(
        math.isfinite(t.summand) for t in diags) else math.inf
    return AdmissibilityReport(
        theorem_mode_ok=series.is_theorem_mode(),
        hull=hull,
        separation_ok=separated,
        separation_distance=dist,
        summability_value=total,
        per_term=tuple(diags),
    )


def numerator_coefficients(series: ResolventSeries) -> np.ndarray:
    """Ascending coefficients of sum_j a_j * prod_{i != j} (alpha_i - z)."""
    m = len(series.terms)
    total = np.zeros(m, dtype=complex)
    for j, (a, _) in enumerate(series.terms):
        prod = np.array([a], dtype=complex)
        for i, (_, alpha) in enumerate(series.terms):
            if i != j:
                prod = np.convolve(prod, np.array([alpha, -1.0], dtype=complex))
        total[: len(prod)] += prod
    return total


def zeros(series: ResolventSeries) -> list[complex]:
    """All roots of f (with multiplicity), i.e. of its numerator polynomial.

    A single-term series has none.
    """
    active = series.pruned()
    if len(active.terms) < 2:
        return []
    num = numerator_coefficients(active)
    # trim negligible leading coefficients before companion-matrix rootfinding
    mag = np.max(np.abs(num))
    if mag == 0.0:
        raise DegenerateSeriesError("numerator of f is identically zero")
    k = len(num)
    while k > 1 and abs(num[k - 1]) <= 1e-14 * mag:
        k -= 1
    num = num[:k]
    if len(num) < 2:
        return []
    roots = np.roots(num[::-1])
    return sorted((complex(r) for r in roots), key=lambda w: (w.real, w.imag))


def _barycentric_pair(lam, a0, a1, tol):
    d = a1 - a0
    L2 = abs(d) ** 2
    if L2 == 0.0:
        return None
    t = ((lam - a0).conjugate() * d).real / L2
    if t < -tol or t > 1.0 + tol:
        return None
    if abs(lam - (a0 + t * d)) > tol * max(1.0, abs(a0), abs(a1)):
        return None
    t = min(1.0, max(0.0, t))
    return (1.0 - t, t)


def _barycentric_triple(lam, a0, a1, a2):
    d1 = a1 - a0
    d2 = a2 - a0
    det = d1.real * d2.imag - d2.real * d1.imag
    if det == 0.0:
        return None
    r = lam - a0
    k1 = (r.real * d2.imag - d2.real * r.imag) / det
    k2 = (d1.real * r.imag - r.real * d1.imag) / det
    return (1.0 - k1 - k2, k1, k2)


def caratheodory_zero_series(poles, target: complex) -> ResolventSeries:
    """Series with nonnegative coefficients vanishing at ``target``.

    ``target`` must lie strictly inside the convex hull of ``poles`` (or on
    a segment between two of them) and must not coincide with a pole.  At
    most three poles are used, with coefficients a_nu = k_nu |alpha_nu -
    target|^2 for barycentric weights k_nu summing to one.
    """
    poles = [complex(p) for p in poles]
    if not poles:
        raise EmptyInputError("no poles given")
    target = complex(target)
    scale = max(1.0, max(abs(p) for p in poles), abs(target))
    tol = POLE_SEP_RTOL * scale
    for p in poles:
        if abs(target - p) <= tol:
            raise ConstructionError(f"target {target} coincides with pole {p}")

    best = None  # (min weight, [(k, pole), ...])
    for i, j, k in itertools.combinations(range(len(poles)), 3):
        bc = _barycentric_triple(target, poles[i], poles[j], poles[k])
        if bc is None:
            continue
        if min(bc) < -tol:
            continue
        cand = (min(bc), [(bc[0], poles[i]), (bc[1], poles[j]),
                          (bc[2], poles[k])])
        if best is None or cand[0] > best[0]:
            best = cand
    if best is None:
        for i, j in itertools.combinations(range(len(poles)), 2):
            bc = _barycentric_pair(target, poles[i], poles[j], tol)
            if bc is None:
                continue
            cand = (min(bc), [(bc[0], poles[i]), (bc[1], poles[j])])
            if best is None or cand[0] > best[0]:
                best = cand
    if best is None:
        raise ConstructionError(
            f"target {target} lies outside the convex hull of the poles")

    terms = tuple((k * abs(p - target) ** 2, p)
                  for k, p in best[1] if k > 1e-14)
    if not terms:
        raise ConstructionError("degenerate barycentric weights")
    return ResolventSeries(terms)
