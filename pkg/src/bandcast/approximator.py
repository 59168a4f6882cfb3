"""End-to-end fitting pipeline and the fitted-approximant object.

``fit`` projects an observed signal onto the truncated sinc family over a
window: assemble the system, solve with the configured diagonal shift,
package the result.  The fitted series is an entire function, so evaluating
it past the window's right edge is the forecast; ``objective`` measures the
squared L2 misfit on the window.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .basis import BasisSpec, check_coefficients, eval_series
from .errors import ContractError, DataError
from .gram import GRAM_METHODS, GramSystem, Window, build_system, window_breakpoints
from .quadrature import DEFAULT_TOL, integrate_piecewise
from .signal_io import Signal
from .solver import DEFAULT_LAMBDA, SolveReport, solve_regularized

APPROXIMANT_FORMAT = "bandcast-approximant"
APPROXIMANT_VERSION = 1


@dataclass(frozen=True)
class FitConfig:
    """Everything a fit needs besides the data: band limit, order,
    diagonal shift and quadrature tolerance."""

    omega: float
    n: int
    lam: float = DEFAULT_LAMBDA
    quad_tol: float = DEFAULT_TOL
    gram_method: str = "quadrature"

    def __post_init__(self):
        BasisSpec(self.omega, self.n)  # validates omega and n
        if not self.lam >= 0:
            raise ContractError(f"lambda must be >= 0, got {self.lam}")
        if not self.quad_tol > 0:
            raise ContractError(f"quad_tol must be > 0, got {self.quad_tol}")
        if self.gram_method not in GRAM_METHODS:
            raise ContractError(
                f"unknown gram method {self.gram_method!r}; expected {GRAM_METHODS}"
            )

    def basis_spec(self) -> BasisSpec:
        return BasisSpec(self.omega, self.n)


@dataclass(frozen=True)
class Approximant:
    """Fitted coefficient vector; evaluable on all of the real line."""

    spec: BasisSpec
    coefficients: np.ndarray
    window: Window
    lam: float
    fit_report: SolveReport

    def __post_init__(self):
        object.__setattr__(
            self, "coefficients", check_coefficients(self.coefficients, self.spec)
        )

    def evaluate(self, t):
        return eval_series(self.coefficients, self.spec, t)


def fit(x: Signal, w: Window, cfg: FitConfig) -> Approximant:
    """Fit the signal on the window; deterministic for fixed inputs."""
    system = build_system(x, cfg.basis_spec(), w, cfg.quad_tol, cfg.gram_method)
    return fit_system(system, cfg.lam)


def fit_system(system: GramSystem, lam: float) -> Approximant:
    """Solve an already-assembled system (lets callers reuse one matrix)."""
    report = solve_regularized(system, lam)
    return Approximant(
        spec=system.spec,
        coefficients=report.coefficients,
        window=system.window,
        lam=lam,
        fit_report=report,
    )


def objective(a: Approximant, x: Signal, quad_tol: float = DEFAULT_TOL) -> float:
    """Squared L2 misfit integral_q^s (xhat(t) - x(t))^2 dt over the window."""
    w = a.window
    if not x.covers(w.q, w.s):
        raise DataError(
            f"signal samples [{x.start}, {x.end}] do not cover window "
            f"({w.q}, {w.s}]"
        )
    breaks = window_breakpoints(x, w)

    def integrand(t):
        diff = a.evaluate(t) - x.eval(t)
        return diff * diff

    return integrate_piecewise(integrand, breaks, quad_tol).value


def extrapolate(a: Approximant, t):
    """Evaluate the fitted series at any time, typically beyond the window.

    The band-limited series has a unique extension past the observed
    window, so this single formula is both the in-window curve and the
    forecast.
    """
    return a.evaluate(t)


def frequency_response(a: Approximant, omega_grid) -> np.ndarray:
    """Fourier-domain values sum_k y_k exp(i*k*w*pi/omega), zero outside
    the band |w| <= omega."""
    grid = np.atleast_1d(np.asarray(omega_grid, dtype=float))
    k = a.spec.indices()
    phase = np.exp(1j * np.multiply.outer(k * math.pi / a.spec.omega, grid))
    values = a.coefficients @ phase
    values = np.where(np.abs(grid) <= a.spec.omega, values, 0.0)
    if np.ndim(omega_grid) == 0:
        return complex(values[0])
    return values


def to_dict(a: Approximant) -> dict:
    return {
        "format": APPROXIMANT_FORMAT,
        "version": APPROXIMANT_VERSION,
        "omega": a.spec.omega,
        "n": a.spec.n,
        "window": {"q": a.window.q, "s": a.window.s},
        "lambda": a.lam,
        "coefficients": [float(c) for c in a.coefficients],
        "report": {
            "residual_e": a.fit_report.residual_e,
            "min_eig": a.fit_report.min_eig,
            "max_eig": a.fit_report.max_eig,
            # condition is infinite whenever min_eig <= 0; keep the JSON strict
            "condition": a.fit_report.condition
            if math.isfinite(a.fit_report.condition)
            else None,
            "method": a.fit_report.method,
        },
    }


def from_dict(doc: dict) -> Approximant:
    if doc.get("format") != APPROXIMANT_FORMAT:
        raise DataError(f"not an approximant document: format={doc.get('format')!r}")
    if doc.get("version") != APPROXIMANT_VERSION:
        raise DataError(f"unsupported approximant version {doc.get('version')!r}")
    spec = BasisSpec(float(doc["omega"]), int(doc["n"]))
    coefficients = np.asarray(doc["coefficients"], dtype=float)
    rep = doc["report"]
    report = SolveReport(
        coefficients=coefficients,
        lam=float(doc["lambda"]),
        residual_e=float(rep["residual_e"]),
        min_eig=float(rep["min_eig"]),
        max_eig=float(rep["max_eig"]),
        condition=float("inf") if rep["condition"] is None else float(rep["condition"]),
        method=str(rep["method"]),
    )
    return Approximant(
        spec=spec,
        coefficients=coefficients,
        window=Window(float(doc["window"]["q"]), float(doc["window"]["s"])),
        lam=float(doc["lambda"]),
        fit_report=report,
    )


def save_json(a: Approximant, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_dict(a), fh, indent=2)
        fh.write("\n")


def load_json(path) -> Approximant:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DataError(f"{path}: expected a JSON object")
    try:
        return from_dict(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError(f"{path}: malformed approximant document: {exc}") from exc
