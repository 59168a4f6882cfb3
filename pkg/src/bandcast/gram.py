"""Assembly of the normal-equation system over an observation window.

For a basis spec (omega, N) and window (q, s] the system is

    R[k, m] = (omega^2/pi^2) * integral_q^s sinc(m*pi + omega*t)
                                           * sinc(k*pi + omega*t) dt
    r[k]    = (omega/pi)     * integral_q^s sinc(k*pi + omega*t) * x(t) dt

R is symmetric and positive definite in exact arithmetic, but its smallest
eigenvalues approach zero quickly as N grows beyond the window's
time-bandwidth capacity, so quadrature noise can make the computed matrix
numerically indefinite; the solver module deals with that.

Two backends compute R: adaptive quadrature (default) and a closed form in
terms of the sine/cosine integrals Si and Cin, kept behind the same entry
signature and cross-validated in the tests.  The load vector always goes
through piecewise quadrature with panel breaks at the signal's sample
times, where the interpolated integrand has kinks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import sici

from .basis import BasisSpec, sinc
from .errors import ContractError, ConvergenceError, CoverageError
from .quadrature import DEFAULT_TOL, QuadResult, integrate, integrate_piecewise
from .signal_io import Signal

GRAM_METHODS = ("quadrature", "analytic")

_EULER_GAMMA = 0.5772156649015328606


@dataclass(frozen=True)
class Window:
    """Finite observation interval (q, s]."""

    q: float
    s: float

    def __post_init__(self):
        if not (math.isfinite(self.q) and math.isfinite(self.s) and self.q < self.s):
            raise ContractError(f"window needs finite q < s, got ({self.q}, {self.s}]")

    @property
    def length(self) -> float:
        return self.s - self.q


@dataclass(frozen=True)
class GramSystem:
    """Matrix R, load vector and the assembly diagnostics that produced them."""

    r_matrix: np.ndarray
    load: np.ndarray
    spec: BasisSpec
    window: Window
    quad_tol: float
    max_quad_error: float


def _check_entry_args(k: int, m: int, spec: BasisSpec, tol: float) -> None:
    if abs(k) > spec.n or abs(m) > spec.n:
        raise IndexError(f"indices ({k}, {m}) out of range [-{spec.n}, {spec.n}]")
    if not tol > 0:
        raise ContractError(f"tol must be > 0, got {tol}")


def _cin(x: np.ndarray) -> np.ndarray:
    """Cin(x) = gamma + log(x) - Ci(x) for x >= 0, series branch near 0."""
    x = np.asarray(x, dtype=float)
    small = x < 1e-2
    safe = np.where(small, 1.0, x)
    _, ci = sici(safe)
    generic = _EULER_GAMMA + np.log(safe) - ci
    x2 = x * x
    series = x2 / 4.0 - x2 * x2 / 96.0 + x2 * x2 * x2 / 4320.0
    return np.where(small, series, generic)


def _entry_analytic(k: int, m: int, spec: BasisSpec, w: Window) -> float:
    """Closed-form R entry via Si/Cin after reducing the product of sincs."""
    omega = spec.omega
    a = omega * w.q
    b = omega * w.s
    alpha = k * math.pi
    beta = m * math.pi
    if k == m:
        # antiderivative of sin^2(v)/v^2 is -v*sinc(v)^2 + Si(2v)
        va, vb = a + alpha, b + alpha
        si_b = sici(2.0 * vb)[0]
        si_a = sici(2.0 * va)[0]
        j = (-vb * sinc(vb) ** 2 + si_b) - (-va * sinc(va) ** 2 + si_a)
    else:
        delta = alpha - beta
        sign = 1.0 if (k - m) % 2 == 0 else -1.0
        cin_beta = _cin(2.0 * abs(b + beta)) - _cin(2.0 * abs(a + beta))
        cin_alpha = _cin(2.0 * abs(b + alpha)) - _cin(2.0 * abs(a + alpha))
        j = sign / (2.0 * delta) * (cin_beta - cin_alpha)
    return omega / math.pi**2 * float(j)


def _entry_quadrature(k: int, m: int, spec: BasisSpec, w: Window,
                      tol: float) -> QuadResult:
    omega = spec.omega
    scale = (omega / math.pi) ** 2
    kpi = k * math.pi
    mpi = m * math.pi

    def integrand(t):
        return scale * sinc(kpi + omega * t) * sinc(mpi + omega * t)

    return integrate(integrand, w.q, w.s, tol)


def gram_entry(k: int, m: int, spec: BasisSpec, w: Window,
               tol: float = DEFAULT_TOL, method: str = "quadrature") -> float:
    """Single entry R[k, m] by logical indices."""
    _check_entry_args(k, m, spec, tol)
    if method not in GRAM_METHODS:
        raise ContractError(f"unknown gram method {method!r}; expected {GRAM_METHODS}")
    if method == "analytic":
        return _entry_analytic(k, m, spec, w)
    return _entry_quadrature(k, m, spec, w, tol).value


def build_gram(spec: BasisSpec, w: Window, tol: float = DEFAULT_TOL,
               method: str = "quadrature") -> tuple[np.ndarray, float]:
    """Assemble R: lower triangle computed, mirrored for exact symmetry.

    Returns (matrix, max per-entry quadrature error estimate).  A
    convergence failure on any entry aborts assembly naming the indices.
    """
    if method not in GRAM_METHODS:
        raise ContractError(f"unknown gram method {method!r}; expected {GRAM_METHODS}")
    dim = spec.size
    matrix = np.zeros((dim, dim))
    max_err = 0.0
    for i in range(dim):
        for j in range(i + 1):
            k = i - spec.n
            m = j - spec.n
            if method == "analytic":
                value = _entry_analytic(k, m, spec, w)
                err = 1e-14 * (1.0 + abs(value))  # nominal closed-form rounding
            else:
                try:
                    res = _entry_quadrature(k, m, spec, w, tol)
                except ConvergenceError as exc:
                    raise ConvergenceError(
                        f"Gram entry (k={k}, m={m}) did not converge: {exc}",
                        best=exc.best,
                    ) from exc
                value, err = res.value, res.error_estimate
            matrix[i, j] = value
            matrix[j, i] = value
            max_err = max(max_err, err)
    return matrix, max_err


def load_vector(x: Signal, spec: BasisSpec, w: Window,
                tol: float = DEFAULT_TOL) -> tuple[np.ndarray, float]:
    """Inner products of the interpolated signal with each basis function.

    Returns (vector, max per-entry quadrature error estimate).
    """
    if not x.covers(w.q, w.s):
        raise CoverageError(
            f"signal samples [{x.start}, {x.end}] do not cover window "
            f"({w.q}, {w.s}]"
        )
    breaks = window_breakpoints(x, w)
    omega = spec.omega
    scale = omega / math.pi
    vector = np.empty(spec.size)
    max_err = 0.0
    for k in spec.indices():
        kpi = k * math.pi

        def integrand(t, _kpi=kpi):
            return scale * sinc(_kpi + omega * t) * x.eval(t)

        try:
            res = integrate_piecewise(integrand, breaks, tol)
        except ConvergenceError as exc:
            raise ConvergenceError(
                f"load-vector entry k={k} did not converge: {exc}", best=exc.best
            ) from exc
        vector[k + spec.n] = res.value
        max_err = max(max_err, res.error_estimate)
    return vector, max_err


def window_breakpoints(x: Signal, w: Window) -> np.ndarray:
    """Window endpoints plus every sample time strictly inside the window."""
    inner = x.times[(x.times > w.q) & (x.times < w.s)]
    return np.concatenate([[w.q], inner, [w.s]])


def build_system(x: Signal, spec: BasisSpec, w: Window,
                 tol: float = DEFAULT_TOL,
                 method: str = "quadrature") -> GramSystem:
    """Full system for one fit: matrix, load vector and diagnostics."""
    matrix, m_err = build_gram(spec, w, tol, method)
    vector, v_err = load_vector(x, spec, w, tol)
    return GramSystem(
        r_matrix=matrix,
        load=vector,
        spec=spec,
        window=w,
        quad_tol=tol,
        max_quad_error=max(m_err, v_err),
    )
