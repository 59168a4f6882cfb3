"""Truncated sinc basis: node grid, basis evaluation, series synthesis.

The basis consists of the 2N+1 functions sinc(k*pi + omega*t) for
k = -N..N, where sinc(x) = sin(x)/x and sinc(0) = 1.  Each basis function
equals 1 at its own node t[k] = -k*pi/omega and 0 at every other node
(cardinal interpolation), which is what makes the sampling identity
y_k = x(t[k]) * pi/omega work.

Coefficient vectors are plain 1-d float arrays of length 2N+1; the logical
index k in [-N, N] lives at storage position k+N.  All public functions
speak logical indices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, DataError

# Below this threshold sin(x)/x is replaced by its Taylor polynomial
# 1 - x^2/6 + x^4/120; the truncation error there is < 1e-20.
SINC_SERIES_CUTOFF = 1e-4


@dataclass(frozen=True)
class BasisSpec:
    """Band limit omega (rad/time) and truncation order n; dimension 2n+1."""

    omega: float
    n: int

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise ContractError(f"omega must be finite and > 0, got {self.omega}")
        if not (isinstance(self.n, (int, np.integer)) and self.n >= 0):
            raise ContractError(f"n must be a non-negative integer, got {self.n!r}")

    @property
    def size(self) -> int:
        return 2 * self.n + 1

    def indices(self) -> np.ndarray:
        """Logical indices -n..n in storage order."""
        return np.arange(-self.n, self.n + 1)


def sinc(x):
    """sin(x)/x with the removable singularity handled by a series branch.

    Accepts scalars or arrays; continuous to machine precision across x = 0.
    """
    arr = np.asarray(x, dtype=float)
    small = np.abs(arr) < SINC_SERIES_CUTOFF
    safe = np.where(small, 1.0, arr)  # dodge 0/0 in the generic branch
    x2 = arr * arr
    out = np.where(small, 1.0 - x2 / 6.0 + x2 * x2 / 120.0, np.sin(safe) / safe)
    if np.ndim(x) == 0:
        return float(out)
    return out


def _check_index(k: int, spec: BasisSpec) -> None:
    if abs(k) > spec.n:
        raise IndexError(f"basis index {k} out of range [-{spec.n}, {spec.n}]")


def node(k: int, spec: BasisSpec) -> float:
    """Node t[k] = -k*pi/omega where basis function k equals 1."""
    _check_index(k, spec)
    return -k * math.pi / spec.omega


def basis_fn(k: int, spec: BasisSpec, t):
    """Evaluate sinc(k*pi + omega*t) at scalar or array t."""
    _check_index(k, spec)
    return sinc(k * math.pi + spec.omega * np.asarray(t, dtype=float))


def check_coefficients(values, spec: BasisSpec) -> np.ndarray:
    """Validate and return a coefficient vector conforming to spec."""
    c = np.asarray(values, dtype=float)
    if c.shape != (spec.size,):
        raise ContractError(
            f"coefficient vector has shape {c.shape}, expected ({spec.size},)"
        )
    if not np.all(np.isfinite(c)):
        raise ContractError("coefficient vector contains non-finite entries")
    return c


def eval_series(coefficients, spec: BasisSpec, t):
    """Evaluate (omega/pi) * sum_k y_k sinc(k*pi + omega*t).

    Defined for every real t, inside or outside any observation window;
    evaluating beyond the fitted window is the extrapolation/forecast path.
    Scalar t yields a float, array t an array of the same shape.
    """
    c = check_coefficients(coefficients, spec)
    t_arr = np.asarray(t, dtype=float)
    phases = np.multiply.outer(spec.indices() * math.pi, np.ones_like(t_arr))
    args = phases + spec.omega * t_arr
    values = (spec.omega / math.pi) * np.tensordot(c, sinc(args), axes=(0, 0))
    if np.ndim(t) == 0:
        return float(values)
    return values


def sampling_coefficients(spec: BasisSpec, f) -> np.ndarray:
    """Coefficients y_k = f(t[k]) * pi/omega read off the node grid.

    For f already of the form eval_series(c, spec, .) this recovers c exactly
    (up to rounding) by the cardinal-interpolation property.
    """
    out = np.empty(spec.size)
    for k in spec.indices():
        v = float(f(node(int(k), spec)))
        if not math.isfinite(v):
            raise DataError(f"signal value at node t[{k}] is not finite: {v}")
        out[k + spec.n] = v * math.pi / spec.omega
    return out
