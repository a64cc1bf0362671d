"""Polynomials, rational functions, partial fractions and inversion plans.

Conventions: polynomial coefficients are stored ascending; partial
fractions use the (pole - z)^k basis throughout, with conversion helpers
for the (z - pole)^k convention.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
import numpy.polynomial.polynomial as npp

from .errors import (
    ConditioningError,
    DegenerateSeriesError,
    HypothesisError,
    MalformedSpecError,
    RepeatedRootError,
    UnsupportedShapeError,
)
from .series import ResolventSeries, gamma_beta, numerator_coefficients

__all__ = [
    "Polynomial",
    "RationalFunction",
    "PoleGroup",
    "PartialFractionForm",
    "InversionPlan",
    "FilterSpec",
    "FilterSeriesReport",
    "poly_roots",
    "series_to_rational",
    "partial_fractions",
    "invert_to_plan",
    "filter_to_series",
]

# A double root computed via the companion matrix is only accurate to
# about sqrt(machine epsilon); cluster wider than that.
DEFAULT_ROOT_TOL = 1e-6


@dataclass(frozen=True)
class Polynomial:
    """Dense univariate polynomial, ascending coefficients.

    The top coefficient is nonzero except for the zero polynomial, which
    is stored as (0,).
    """

    coeffs: tuple[complex, ...]

    def __post_init__(self):
        c = tuple(complex(x) for x in self.coeffs)
        if not c:
            c = (0j,)
        while len(c) > 1 and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (0j,)

    def __call__(self, z):
        return npp.polyval(z, np.asarray(self.coeffs))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(tuple(npp.polyadd(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(tuple(npp.polysub(self.coeffs, other.coeffs)))

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return Polynomial(tuple(npp.polymul(self.coeffs, other.coeffs)))
        return Polynomial(tuple(complex(other) * np.asarray(self.coeffs)))

    __rmul__ = __mul__

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(npp.polyder(np.asarray(self.coeffs))))

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        q, r = npp.polydiv(self.coeffs, other.coeffs)
        return Polynomial(tuple(q)), Polynomial(tuple(r))

    @staticmethod
    def from_roots(roots) -> "Polynomial":
        """Monic prod (z - r)."""
        return Polynomial(tuple(npp.polyfromroots(list(roots))))

    @staticmethod
    def from_descending(roots_first_coeffs) -> "Polynomial":
        return Polynomial(tuple(reversed(tuple(roots_first_coeffs))))


def _root_scale(roots) -> float:
    return max([1.0] + [abs(r) for r in roots])


def poly_roots(p: Polynomial, tol: float = DEFAULT_ROOT_TOL
               ) -> list[tuple[complex, int]]:
    """All roots with multiplicities.

    Companion-matrix eigenvalues (with balancing, via numpy.roots), a few
    Newton polish steps, then clustering at relative tolerance ``tol``.
    """
    if p.is_zero:
        raise ValueError("roots of the zero polynomial are undefined")
    if p.degree < 1:
        return []
    raw = [complex(r) for r in np.roots(np.asarray(p.coeffs)[::-1])]
    dp = p.derivative()
    polished = []
    for z in raw:
        for _ in range(3):
            d = complex(dp(z))
            if abs(d) < 1e-300:
                break
            step = complex(p(z)) / d
            if not (math.isfinite(step.real) and math.isfinite(step.imag)):
                break
            z2 = z - step
            if abs(complex(p(z2))) <= abs(complex(p(z))):
                z = z2
        polished.append(z)

    scale = _root_scale(polished)
    clusters: list[list[complex]] = []
    for z in sorted(polished, key=lambda w: (w.real, w.imag)):
        for c in clusters:
            center = sum(c) / len(c)
            if abs(z - center) <= tol * scale:
                c.append(z)
                break
        else:
            clusters.append([z])
    out = [(sum(c) / len(c), len(c)) for c in clusters]
    out.sort(key=lambda t: (t[0].real, t[0].imag))
    return out


@dataclass(frozen=True)
class RationalFunction:
    """Quotient of two polynomials; no implicit cancellation."""

    num: Polynomial
    den: Polynomial

    def __post_init__(self):
        if self.den.is_zero:
            raise ZeroDivisionError("zero denominator")

    def __call__(self, z):
        return self.num(z) / self.den(z)


@dataclass(frozen=True)
class PoleGroup:
    """Coefficients c_1..c_m of c_k / (pole - z)^k."""

    pole: complex
    coeffs: tuple[complex, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.coeffs)

    def __call__(self, z):
        w = self.pole - z
        return sum(c / w ** (k + 1) for k, c in enumerate(self.coeffs))

    def coeffs_z_minus_pole(self) -> tuple[complex, ...]:
        """Same group in the (z - pole)^k convention."""
        return tuple(c * (-1.0) ** (k + 1) for k, c in enumerate(self.coeffs))


@dataclass(frozen=True)
class PartialFractionForm:
    """gamma + beta*z + sum_{j,k} c_{jk} / (pole_j - z)^k."""

    gamma: complex
    beta: complex
    groups: tuple[PoleGroup, ...]

    def __post_init__(self):
        poles = [g.pole for g in self.groups]
        scale = max([1.0] + [abs(p) for p in poles])
        for i in range(len(poles)):
            for j in range(i + 1, len(poles)):
                if abs(poles[i] - poles[j]) <= 1e-12 * scale:
                    raise ValueError("pole groups are not distinct")

    @property
    def poles(self) -> tuple[complex, ...]:
        return tuple(g.pole for g in self.groups)

    def proper_part(self, z):
        return sum((g(z) for g in self.groups), start=0j)

    def __call__(self, z):
        return self.gamma + self.beta * z + self.proper_part(z)


def series_to_rational(series: ResolventSeries) -> RationalFunction:
    """f as num/den with den = prod (alpha_j - z)."""
    den = np.array([1.0 + 0j])
    for alpha in series.poles:
        den = np.convolve(den, np.array([alpha, -1.0], dtype=complex))
    num = numerator_coefficients(series)
    return RationalFunction(Polynomial(tuple(num)), Polynomial(tuple(den)))


def _fit_sample_points(poles, count=100, radius_factor=2.0):
    """Deterministic off-pole sample points on a circle around the poles."""
    center = sum(poles) / len(poles) if poles else 0j
    scale = max([1.0] + [abs(p - center) for p in poles])
    r = radius_factor * scale + 1.0
    return [center + r * cmath.exp(2j * math.pi * (k + 0.37) / count)
            for k in range(count)]


def partial_fractions(r: RationalFunction, tol: float = DEFAULT_ROOT_TOL
                      ) -> PartialFractionForm:
    """Expand num/den into affine part plus simple-fraction groups.

    The polynomial part must be affine or constant.  Coefficients are
    obtained from one linear solve against the monomial basis; the fit
    residual and condition number are checked.
    """
    q, rem = r.num.divmod(r.den)
    if q.degree > 1:
        raise UnsupportedShapeError(
            f"polynomial part has degree {q.degree} > 1")
    gamma = q.coeffs[0]
    beta = q.coeffs[1] if q.degree >= 1 else 0j

    if r.den.degree == 0:
        return PartialFractionForm(gamma, beta, ())

    roots = poly_roots(r.den, tol)
    M = r.den.degree
    # D(z) = prod (pole_j - z)^{m_j}; den = kappa * D
    D = Polynomial((1.0,))
    for pole, mult in roots:
        for _ in range(mult):
            D = D * Polynomial((pole, -1.0))
    kappa = r.den.coeffs[-1] / D.coeffs[-1]

    columns = []
    for idx, (pole, mult) in enumerate(roots):
        base = Polynomial((1.0,))
        for odx, (other, omult) in enumerate(roots):
            if odx == idx:
                continue
            for _ in range(omult):
                base = base * Polynomial((other, -1.0))
        # base * (pole - z)^{mult - k} for k = 1..mult
        for k in range(1, mult + 1):
            col = base
            for _ in range(mult - k):
                col = col * Polynomial((pole, -1.0))
            padded = np.zeros(M, dtype=complex)
            padded[: col.degree + 1] = col.coeffs
            columns.append(padded)

    rhs = np.zeros(M, dtype=complex)
    rhs[: rem.degree + 1] = np.asarray(rem.coeffs) / kappa
    A = np.column_stack(columns)
    sol, _, _, sv = np.linalg.lstsq(A, rhs, rcond=None)
    cond = sv[0] / sv[-1] if sv[-1] > 0 else math.inf
    residual = np.linalg.norm(A @ sol - rhs) / (1.0 + np.linalg.norm(rhs))
    if not math.isfinite(cond) or residual > 1e-6:
        raise ConditioningError(
            "partial-fraction system is numerically defective",
            residual=float(residual), condition=float(cond))

    groups = []
    pos = 0
    for pole, mult in roots:
        groups.append(PoleGroup(pole, tuple(complex(c)
                                            for c in sol[pos:pos + mult])))
        pos += mult
    form = PartialFractionForm(gamma, beta, tuple(groups))

    # cross-check the expansion against the closed rational form
    pts = _fit_sample_points(list(form.poles), count=24)
    worst = 0.0
    for z in pts:
        dz = complex(r.den(z))
        if abs(dz) < 1e-12:
            continue
        ref = complex(r.num(z)) / dz
        got = complex(form(z))
        worst = max(worst, abs(got - ref) / (1.0 + abs(ref)))
    if worst > 1e-7:
        raise ConditioningError(
            "partial-fraction reconstruction mismatch",
            residual=worst, condition=float(cond))
    return form


@dataclass(frozen=True)
class InversionPlan:
    """Executable left inverse gamma + beta*A + h(A).

    ``remainder`` is strictly proper: its affine part is zero and it holds
    the c_{jk} / (pole_j - z)^k groups of h.
    """

    gamma: complex
    beta: complex
    remainder: PartialFractionForm

    def evaluate_scalar(self, z):
        """1/f at a scalar (or array) argument, via the plan."""
        return self.gamma + self.beta * z + self.remainder.proper_part(z)


def invert_to_plan(series: ResolventSeries, tol: float = DEFAULT_ROOT_TOL
                   ) -> InversionPlan:
    """Build the left-inverse plan for a theorem-mode series.

    gamma and beta come from the closed formulas; the remainder poles are
    the zeros of f.  The identity f(z) * (gamma + beta z + h(z)) = 1 is
    verified at sample points before the plan is returned.
    """
    if not series.is_theorem_mode():
        raise HypothesisError(
            "series must have nonnegative real coefficients with positive sum")
    active = series.pruned()
    gamma, beta = gamma_beta(active)
    rat = series_to_rational(active)
    if rat.num.is_zero:
        raise DegenerateSeriesError("numerator of f is identically zero")
    g = RationalFunction(rat.den, rat.num)
    form = partial_fractions(g, tol)
    remainder = PartialFractionForm(0j, 0j, form.groups)
    plan = InversionPlan(gamma, beta, remainder)

    pts = _fit_sample_points(list(series.poles) + list(remainder.poles),
                             count=50)
    worst = 0.0
    for z in pts:
        fz = complex(rat.num(z)) / complex(rat.den(z))
        worst = max(worst, abs(fz * complex(plan.evaluate_scalar(z)) - 1.0))
    if worst > 1e-8:
        raise ConditioningError(
            "inversion plan fails the identity check", residual=worst)
    return plan


@dataclass(frozen=True)
class FilterSpec:
    """Difference-equation coefficients c_0..c_N (output) and b_1..b_N
    (input) of a recursive filter of true order N >= 1."""

    c: tuple[complex, ...]
    b: tuple[complex, ...]

    def __post_init__(self):
        c = tuple(complex(x) for x in self.c)
        b = tuple(complex(x) for x in self.b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "b", b)
        if len(c) < 2:
            raise MalformedSpecError("filter order must be at least 1")
        if len(b) != len(c) - 1:
            raise MalformedSpecError(
                f"expected {len(c) - 1} input coefficients, got {len(b)}")
        if c[-1] == 0:
            raise MalformedSpecError("top output coefficient c_N must be nonzero")

    @property
    def order(self) -> int:
        return len(self.c) - 1

    def characteristic(self) -> Polynomial:
        """p(z) = sum c_k z^k."""
        return Polynomial(self.c)

    def input_polynomial(self) -> Polynomial:
        """q(z) = sum_{l>=1} b_l z^l."""
        return Polynomial((0j,) + self.b)


@dataclass(frozen=True)
class FilterSeriesReport:
    theorem_mode_ok: bool
    residues: tuple[complex, ...]
    poles: tuple[complex, ...]


def filter_to_series(spec: FilterSpec, tol: float = DEFAULT_ROOT_TOL
                     ) -> tuple[ResolventSeries, FilterSeriesReport]:
    """Residue expansion of the filter transfer function.

    Poles are the roots z_j of the characteristic polynomial p (which must
    be distinct); coefficients are a_j = (q(z)/z)|_{z_j} / p'(z_j).  The
    returned series f satisfies q(z)/p(z) = -z f(z).
    """
    p = spec.characteristic()
    roots = poly_roots(p, tol)
    if any(m > 1 for _, m in roots):
        raise RepeatedRootError(
            "characteristic polynomial has a repeated root")
    qt = Polynomial(spec.b)  # q(z)/z, exact since q has no constant term
    dp = p.derivative()
    terms = []
    for z_j, _ in roots:
        a_j = complex(qt(z_j)) / complex(dp(z_j))
        terms.append((a_j, z_j))
    series = ResolventSeries(tuple(terms))
    report = FilterSeriesReport(
        theorem_mode_ok=series.is_theorem_mode(rtol=1e-9),
        residues=series.coefficients,
        poles=series.poles,
    )
    return series, report
