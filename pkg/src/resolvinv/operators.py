"""Concrete operator backends and the application of series and plans.

Backends expose three capabilities: apply the operator, solve resolvent
systems (alpha*I - A) u = v, and describe the spectrum geometrically.
Factorizations are cached per pole, so repeated solves (iterated resolvent
powers) reuse them.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.linalg
import scipy.signal

from .errors import (
    HypothesisError,
    SeparationError,
    SingularResolventError,
    SingularTransferError,
)
from .geometry import (
    ImaginaryAxis,
    PointSpectrum,
    PositiveHalfLine,
    Spectrum,
    UnitCircle,
    convex_hull,
    hull_separated_from,
)
from .rational import (
    FilterSpec,
    InversionPlan,
    PartialFractionForm,
    filter_to_series,
    invert_to_plan,
)
from .series import ResolventSeries, check_admissible

__all__ = [
    "OperatorHandle",
    "DenseMatrixOperator",
    "MultiplierOperator",
    "GridDerivativeOperator",
    "PeriodicShiftOperator",
    "apply_series",
    "apply_plan",
    "solve_exponential_volterra",
    "forward_exponential_volterra",
    "solve_even_convolution",
    "forward_even_convolution",
    "forward_filter",
    "invert_filter",
]

SPECTRUM_GAP_RTOL = 1e-10


class OperatorHandle:
    """Abstract operator A with resolvent solves and a spectrum description."""

    dim: int

    def apply(self, v: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def resolvent_solve(self, alpha: complex, v: np.ndarray) -> np.ndarray:
        """(alpha*I - A)^{-1} v."""
        raise NotImplementedError

    def spectrum(self) -> Spectrum:
        raise NotImplementedError


class DenseMatrixOperator(OperatorHandle):
    """A as an explicit n x n complex matrix; resolvents by cached LU."""

    def __init__(self, matrix):
        m = np.asarray(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("matrix must be square")
        self.matrix = m
        self.dim = m.shape[0]
        self._lu_cache: dict[complex, tuple] = {}
        self._eigvals: np.ndarray | None = None

    def apply(self, v):
        return self.matrix @ np.asarray(v, dtype=complex)

    def eigenvalues(self) -> np.ndarray:
        if self._eigvals is None:
            self._eigvals = np.linalg.eigvals(self.matrix)
        return self._eigvals

    def spectrum(self) -> PointSpectrum:
        return PointSpectrum(tuple(complex(e) for e in self.eigenvalues()))

    def resolvent_solve(self, alpha, v):
        alpha = complex(alpha)
        lu = self._lu_cache.get(alpha)
        if lu is None:
            shifted = alpha * np.eye(self.dim, dtype=complex) - self.matrix
            lu = scipy.linalg.lu_factor(shifted)
            self._lu_cache[alpha] = lu
        return scipy.linalg.lu_solve(lu, np.asarray(v, dtype=complex))


class MultiplierOperator(OperatorHandle):
    """Diagonal action (A v)_k = s_k v_k by the symbol samples s."""

    def __init__(self, symbol):
        s = np.asarray(symbol, dtype=complex)
        if s.ndim != 1:
            raise ValueError("symbol must be a 1-d sample array")
        self.symbol = s
        self.dim = s.size

    def apply(self, v):
        return self.symbol * np.asarray(v, dtype=complex)

    def spectrum(self) -> PointSpectrum:
        return PointSpectrum(tuple(complex(s) for s in self.symbol))

    def resolvent_solve(self, alpha, v):
        denom = complex(alpha) - self.symbol
        gap = np.min(np.abs(denom))
        scale = max(1.0, float(np.max(np.abs(self.symbol))), abs(alpha))
        if gap <= SPECTRUM_GAP_RTOL * scale:
            raise SingularResolventError(
                f"pole {alpha} touches a symbol sample")
        return np.asarray(v, dtype=complex) / denom


class GridDerivativeOperator(OperatorHandle):
    """d/dt on a uniform grid over [t0, L].

    The resolvent (alpha - d/dt)^{-1} v(t) = int_t^L exp(-alpha (s-t)) v(s) ds
    (upper limit truncated to the grid end) is computed by exact integration
    of the piecewise-linear interpolant, cell by cell; valid for Re alpha > 0.
    """

    def __init__(self, t0: float, L: float, n: int):
        if n < 3:
            raise ValueError("grid needs at least 3 points")
        if not L > t0:
            raise ValueError("grid end must exceed grid start")
        self.t = np.linspace(t0, L, n)
        self.dt = float(self.t[1] - self.t[0])
        self.dim = n

    def apply(self, v):
        v = np.asarray(v, dtype=complex)
        out = np.empty_like(v)
        out[:-1] = (v[1:] - v[:-1]) / self.dt
        out[-1] = (v[-1] - v[-2]) / self.dt
        return out

    def spectrum(self) -> ImaginaryAxis:
        return ImaginaryAxis()

    def resolvent_solve(self, alpha, v):
        alpha = complex(alpha)
        if alpha.real <= 0.0:
            raise SingularResolventError(
                f"resolvent of d/dt needs Re alpha > 0, got {alpha}")
        v = np.asarray(v, dtype=complex)
        d = self.dt
        e = np.exp(-alpha * d)
        i0 = (1.0 - e) / alpha
        i1 = (1.0 - (1.0 + alpha * d) * e) / (alpha * alpha)
        # per-cell integral of the linear interpolant against exp(-alpha tau)
        cells = v[:-1] * i0 + (v[1:] - v[:-1]) * (i1 / d)
        # backward recurrence w_i = e * w_{i+1} + cells_i, w_{n-1} = 0
        rev = cells[::-1]
        acc = scipy.signal.lfilter([1.0], [1.0, -e], rev)
        out = np.zeros_like(v)
        out[:-1] = acc[::-1]
        return out


class PeriodicShiftOperator(OperatorHandle):
    """Cyclic shift x(k) -> x(k+1 mod n); unitary, diagonalized by the DFT."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("signal length must be at least 2")
        self.dim = n
        self.symbol = np.exp(2j * np.pi * np.arange(n) / n)

    def apply(self, v):
        return np.roll(np.asarray(v, dtype=complex), -1)

    def spectrum(self) -> PointSpectrum:
        return PointSpectrum(tuple(complex(s) for s in self.symbol))

    def resolvent_solve(self, alpha, v):
        denom = complex(alpha) - self.symbol
        gap = np.min(np.abs(denom))
        if gap <= SPECTRUM_GAP_RTOL * max(1.0, abs(alpha)):
            raise SingularResolventError(
                f"pole {alpha} touches a root of unity")
        return np.fft.ifft(np.fft.fft(np.asarray(v, dtype=complex)) / denom)


def _check_poles_off_spectrum(poles, A: OperatorHandle):
    spec = A.spectrum()
    scale = max([1.0] + [abs(p) for p in poles])
    for p in poles:
        if spec.distance_to(complex(p)) <= SPECTRUM_GAP_RTOL * scale:
            raise SingularResolventError(
                f"pole {p} lies on or too near the spectrum")


def apply_series(series: ResolventSeries, A: OperatorHandle,
                 v: np.ndarray) -> np.ndarray:
    """f(A) v = sum_j a_j (alpha_j - A)^{-1} v."""
    _check_poles_off_spectrum(series.poles, A)
    v = np.asarray(v, dtype=complex)
    out = np.zeros_like(v)
    for a, alpha in series.terms:
        if a == 0:
            continue
        out = out + a * A.resolvent_solve(alpha, v)
    return out


def _apply_remainder(remainder: PartialFractionForm, A: OperatorHandle,
                     v: np.ndarray) -> np.ndarray:
    out = np.zeros_like(np.asarray(v, dtype=complex))
    for group in remainder.groups:
        w = np.asarray(v, dtype=complex)
        for c in group.coeffs:
            w = A.resolvent_solve(group.pole, w)
            out = out + c * w
    return out


def apply_plan(plan: InversionPlan, A: OperatorHandle,
               v: np.ndarray) -> np.ndarray:
    """(gamma + beta A + h(A)) v with h in partial-fraction form."""
    _check_poles_off_spectrum(plan.remainder.poles, A)
    v = np.asarray(v, dtype=complex)
    return plan.gamma * v + plan.beta * A.apply(v) + _apply_remainder(
        plan.remainder, A, v)


# --- exponential-sum kernel equation on a half line -------------------------


def _require_decaying_kernel(kernel: ResolventSeries):
    if not kernel.is_theorem_mode():
        raise HypothesisError(
            "kernel coefficients must be nonnegative real with positive sum")
    for _, alpha in kernel.terms:
        if alpha.real <= 0.0:
            raise HypothesisError(
                f"kernel exponent {alpha} must have positive real part")


def solve_exponential_volterra(kernel: ResolventSeries, y: np.ndarray,
                               grid: GridDerivativeOperator):
    """Solve int_t^L k(s-t) x(s) ds = y(t) for x on the grid.

    The kernel is k(t) = sum_j a_j exp(-alpha_j t) with a_j > 0 and
    Re alpha_j > 0, so the left-hand side is f(D) x for D = d/dt and the
    solution is x = gamma*y + beta*y' + h(D) y.  The derivative uses
    second-order central differences (one sided at the ends).

    Returns (x, boundary_residual) where the residual is |y(L)|, the size
    of the neglected tail at the truncated upper limit.
    """
    _require_decaying_kernel(kernel)
    y = np.asarray(y, dtype=complex)
    if y.shape != (grid.dim,):
        raise ValueError("data length does not match the grid")
    plan = invert_to_plan(kernel)
    dy = np.gradient(y, grid.dt, edge_order=2)
    x = plan.gamma * y + plan.beta * dy + _apply_remainder(
        plan.remainder, grid, y)
    return x, float(abs(y[-1]))


def forward_exponential_volterra(kernel: ResolventSeries, x: np.ndarray,
                                 grid: GridDerivativeOperator) -> np.ndarray:
    """Forward map y(t) = int_t^L k(s-t) x(s) ds = f(D) x on the grid."""
    _require_decaying_kernel(kernel)
    return apply_series(kernel, grid, np.asarray(x, dtype=complex))


# --- even exponential-sum convolution on a periodic grid --------------------


def _convolution_series(terms) -> ResolventSeries:
    mapped = []
    for b, beta in terms:
        b = complex(b)
        beta = complex(beta)
        if beta.imag >= 0.0:
            raise HypothesisError(
                f"kernel frequency {beta} must have negative imaginary part")
        a = -2j * b * beta
        mapped.append((a, beta * beta))
    series = ResolventSeries(tuple(mapped))
    if not series.is_theorem_mode(rtol=1e-9):
        raise HypothesisError(
            "mapped coefficients -2i b_j beta_j must be real positive")
    # drop the tiny imaginary residue of the mapping
    series = ResolventSeries(tuple((complex(a.real), al)
                                   for a, al in series.terms))
    hull = convex_hull(series.poles)
    ok, _ = hull_separated_from(hull, PositiveHalfLine())
    if not ok:
        raise SeparationError(
            "hull of squared frequencies touches the positive real axis")
    return series


def _frequency_symbol(n: int, period: float) -> np.ndarray:
    return 2.0 * np.pi * np.fft.fftfreq(n, d=period / n)


def solve_even_convolution(terms, y: np.ndarray, period: float) -> np.ndarray:
    """Solve int k1(s-t) x(s) ds = y(t) on a periodic grid.

    The even kernel is k1(t) = sum_j b_j exp(-i beta_j |t|) with
    Im beta_j < 0.  In frequency space the operator is f(xi^2) with the
    mapped series {(-2i b_j beta_j, beta_j^2)}, and the solution applies
    the inverse plan to the multiplier operator with symbol xi^2.
    """
    series = _convolution_series(terms)
    y = np.asarray(y, dtype=complex)
    plan = invert_to_plan(series)
    xi = _frequency_symbol(y.size, period)
    A = MultiplierOperator(xi * xi)
    yhat = np.fft.fft(y)
    xhat = apply_plan(plan, A, yhat)
    return np.fft.ifft(xhat)


def forward_even_convolution(terms, x: np.ndarray,
                             period: float) -> np.ndarray:
    """Forward periodic convolution via the frequency-space multiplier."""
    series = _convolution_series(terms)
    x = np.asarray(x, dtype=complex)
    xi = _frequency_symbol(x.size, period)
    A = MultiplierOperator(xi * xi)
    return np.fft.ifft(apply_series(series, A, np.fft.fft(x)))


# --- recursive filters on periodic signals ----------------------------------


def _unit_roots(n: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(n) / n)


def forward_filter(spec: FilterSpec, x: np.ndarray) -> np.ndarray:
    """Run the difference equation on a length-n periodic signal.

    In frequency space y_hat = (q/p)(omega) * x_hat at each DFT frequency;
    the characteristic polynomial must not vanish at any grid frequency.
    """
    x = np.asarray(x, dtype=complex)
    omega = _unit_roots(x.size)
    p = spec.characteristic()(omega)
    scale = max(1.0, float(np.max(np.abs(spec.c))))
    if np.min(np.abs(p)) <= 1e-10 * scale:
        raise SingularTransferError(
            "characteristic polynomial vanishes at a grid frequency")
    q = spec.input_polynomial()(omega)
    return np.fft.ifft(np.fft.fft(x) * q / p)


def invert_filter(spec: FilterSpec, y: np.ndarray) -> np.ndarray:
    """Recover the input signal of a recursive filter from its output.

    Requires the residue expansion of the transfer function to have
    positive coefficients and the root hull to avoid the unit circle; then
    x = -gamma T^{-1} y - beta y - h(T) T^{-1} y with the shift T realized
    through its DFT symbol.
    """
    series, report = filter_to_series(spec)
    if not report.theorem_mode_ok:
        raise HypothesisError(
            "transfer-function residues are not real positive")
    hull = convex_hull(series.poles)
    ok, _ = hull_separated_from(hull, UnitCircle())
    if not ok:
        raise SeparationError(
            "root hull of the characteristic polynomial meets the unit circle")
    plan = invert_to_plan(series)
    y = np.asarray(y, dtype=complex)
    sym = _unit_roots(y.size)
    what = -np.fft.fft(y) / sym  # -T^{-1} y in frequency space
    xhat = plan.evaluate_scalar(sym) * what
    return np.fft.ifft(xhat)
