"""Causal sliding-window filter: re-fit on the trailing window per step.

Samples arrive in time order; once the buffer spans a full window and the
clock has advanced at least one stride past the previous fit, the filter
fits the trailing window (t - window_length, t], emits the fitted value at
the window edge plus forecasts at the configured horizons, and evicts
samples that can no longer matter (one sample before the window start is
retained so interpolation still covers the left edge).

Each emitted output depends only on samples at or before its emission
time, which makes the filter causal; ``causality_witness`` turns that into
a checkable artifact by hashing the serialized output sequence, so a replay
on any input prefix must reproduce the digest prefix bit-exactly.  The fit
is a fixed linear map of the windowed signal, but the map itself moves with
the window: the filter is linear and deliberately not time invariant.
"""

from __future__ import annotations

import hashlib
import json
from bisect import bisect_left
from dataclasses import dataclass

import numpy as np

from .approximator import Approximant, FitConfig, fit, objective
from .errors import ContractError, DataError
from .gram import Window
from .signal_io import PIECEWISE_LINEAR, INTERPOLATIONS, Signal


@dataclass(frozen=True)
class StreamConfig:
    """Sliding-window geometry plus the per-step fit configuration."""

    window_length: float
    fit: FitConfig
    stride: float | None = None  # None: window_length / 100
    horizons: tuple[float, ...] = ()
    interpolation: str = PIECEWISE_LINEAR

    def __post_init__(self):
        if not self.window_length > 0:
            raise ContractError(f"window_length must be > 0, got {self.window_length}")
        if self.stride is not None and not self.stride > 0:
            raise ContractError(f"stride must be > 0, got {self.stride}")
        if any(h <= 0 for h in self.horizons):
            raise ContractError(f"horizons must be positive, got {self.horizons}")
        object.__setattr__(self, "horizons", tuple(float(h) for h in self.horizons))
        if self.interpolation not in INTERPOLATIONS:
            raise ContractError(
                f"unknown interpolation {self.interpolation!r}; "
                f"expected one of {INTERPOLATIONS}"
            )

    @property
    def effective_stride(self) -> float:
        return self.stride if self.stride is not None else self.window_length / 100.0


@dataclass(frozen=True)
class StreamOutput:
    """One emission: fitted edge value, forecasts and the fitted series."""

    s_now: float
    fitted_value: float
    forecasts: tuple[tuple[float, float], ...]
    residual_window_norm: float
    approximant: Approximant

    def to_json(self) -> str:
        doc = {
            "t": self.s_now,
            "fitted": self.fitted_value,
            "forecasts": [[h, v] for h, v in self.forecasts],
            "residual_norm": self.residual_window_norm,
            "coefficients": [float(c) for c in self.approximant.coefficients],
        }
        return json.dumps(doc, sort_keys=True)


class SlidingFilter:
    """Single-writer stream state; push samples, collect emitted outputs."""

    def __init__(self, config: StreamConfig):
        self.config = config
        self._times: list[float] = []
        self._values: list[float] = []
        self._last_fit_time: float | None = None
        self.outputs: list[StreamOutput] = []

    def push(self, t: float, value: float) -> StreamOutput | None:
        """Buffer one sample; fit and emit when the window and stride allow."""
        t = float(t)
        value = float(value)
        if not (np.isfinite(t) and np.isfinite(value)):
            raise DataError(f"non-finite sample ({t}, {value})")
        if self._times and t <= self._times[-1]:
            raise ContractError(
                f"sample times must be strictly increasing: {t} after {self._times[-1]}"
            )
        self._times.append(t)
        self._values.append(value)

        q = t - self.config.window_length
        self._evict(q)
        if self._times[0] > q or len(self._times) < 2:
            return None  # window not yet covered
        if (self._last_fit_time is not None
                and t - self._last_fit_time < self.config.effective_stride):
            return None

        signal = Signal(
            np.array(self._times), np.array(self._values), self.config.interpolation
        )
        window = Window(q, t)
        approximant = fit(signal, window, self.config.fit)
        residual = float(
            np.sqrt(objective(approximant, signal, self.config.fit.quad_tol))
        )
        forecasts = tuple(
            (h, float(approximant.evaluate(t + h))) for h in self.config.horizons
        )
        output = StreamOutput(
            s_now=t,
            fitted_value=float(approximant.evaluate(t)),
            forecasts=forecasts,
            residual_window_norm=residual,
            approximant=approximant,
        )
        self._last_fit_time = t  # only after a successful fit
        self.outputs.append(output)
        return output

    def _evict(self, window_start: float) -> None:
        # keep one sample at or before the window start so the interpolant
        # still covers the left edge exactly
        idx = bisect_left(self._times, window_start)
        if idx > 0:
            drop = idx - 1
            del self._times[:drop]
            del self._values[:drop]

    def causality_witness(self) -> str:
        """SHA-256 digest over the serialized outputs; "" before any output."""
        if not self.outputs:
            return ""
        payload = "\n".join(o.to_json() for o in self.outputs)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()
