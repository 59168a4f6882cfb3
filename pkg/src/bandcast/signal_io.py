"""Signal ingestion, interpolation conventions and synthetic generators.

A Signal is a strictly increasing sample grid plus an interpolation
convention that turns it into a function on [times[0], times[-1]]:

* ``piecewise_linear`` joins consecutive samples by straight lines; the
  default for generic data.
* ``piecewise_constant_left`` holds each sample's value until the next
  sample time (last observation carried forward), which models jump
  processes such as recorded prices.

All synthetic generators are seeded through numpy's PCG64 generator, so the
corpus is reproducible across runs and platforms.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .basis import BasisSpec, eval_series
from .errors import ContractError, CoverageError, DataError

PIECEWISE_LINEAR = "piecewise_linear"
PIECEWISE_CONSTANT_LEFT = "piecewise_constant_left"
INTERPOLATIONS = (PIECEWISE_LINEAR, PIECEWISE_CONSTANT_LEFT)

SYNTH_KINDS = ("bandlimited", "jump_walk", "sines_beyond_band")

# Reference corpus seed used by the figure-reproduction path.
DEFAULT_CORPUS_SEED = 20120928


@dataclass(frozen=True)
class Signal:
    """Sampled real-valued time series with an interpolation convention."""

    times: np.ndarray
    values: np.ndarray
    interpolation: str = PIECEWISE_LINEAR

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)
        if times.ndim != 1 or values.ndim != 1 or times.shape != values.shape:
            raise DataError("times and values must be 1-d arrays of equal length")
        if times.size < 2:
            raise DataError("a signal needs at least 2 samples")
        if not np.all(np.isfinite(times)):
            raise DataError("sample times contain non-finite entries")
        if not np.all(np.diff(times) > 0):
            raise DataError("sample times must be strictly increasing")
        if not np.all(np.isfinite(values)):
            raise DataError("sample values contain non-finite entries")
        if self.interpolation not in INTERPOLATIONS:
            raise ContractError(
                f"unknown interpolation {self.interpolation!r}; "
                f"expected one of {INTERPOLATIONS}"
            )

    @property
    def start(self) -> float:
        return float(self.times[0])

    @property
    def end(self) -> float:
        return float(self.times[-1])

    def eval(self, t):
        """Interpolated value(s) at scalar or array t inside the sample range."""
        t_arr = np.asarray(t, dtype=float)
        if np.any(t_arr < self.times[0]) or np.any(t_arr > self.times[-1]):
            raise CoverageError(
                f"evaluation time outside sampled range "
                f"[{self.start}, {self.end}]"
            )
        if self.interpolation == PIECEWISE_LINEAR:
            out = np.interp(t_arr, self.times, self.values)
        else:
            idx = np.searchsorted(self.times, t_arr, side="right") - 1
            out = self.values[np.maximum(idx, 0)]
        if np.ndim(t) == 0:
            return float(out)
        return out

    def covers(self, a: float, b: float) -> bool:
        return self.start <= a and b <= self.end


def load_csv(path, interpolation: str = PIECEWISE_LINEAR) -> Signal:
    """Parse a two-column CSV (time,value) into a Signal.

    A single non-numeric header row is allowed and skipped.  Rows must be
    pre-sorted; unsorted or duplicate times are reported with their 1-based
    row number rather than silently re-sorted.
    """
    times: list[float] = []
    values: list[float] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        for row_num, row in enumerate(reader, start=1):
            cells = [c.strip() for c in row if c.strip() != ""]
            if not cells:
                continue
            if len(cells) != 2:
                raise DataError(f"row {row_num}: expected 2 columns, got {len(cells)}")
            try:
                t, v = float(cells[0]), float(cells[1])
            except ValueError:
                if row_num == 1:
                    continue  # header line
                raise DataError(f"row {row_num}: non-numeric cell in {cells!r}") from None
            if not (math.isfinite(t) and math.isfinite(v)):
                raise DataError(f"row {row_num}: non-finite value in {cells!r}")
            if times:
                if t == times[-1]:
                    raise DataError(f"row {row_num}: duplicate time {t!r}")
                if t < times[-1]:
                    raise DataError(f"row {row_num}: times not increasing at {t!r}")
            times.append(t)
            values.append(v)
    if len(times) < 2:
        raise DataError(f"{path}: need at least 2 data rows, got {len(times)}")
    return Signal(np.array(times), np.array(values), interpolation)


def save_csv(signal: Signal, path) -> None:
    """Write a Signal as time,value rows with 17 significant digits."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write("time,value\n")
        for t, v in zip(signal.times, signal.values):
            fh.write(f"{t:.17g},{v:.17g}\n")


def save_curve(times, values, path, header: str = "time,value") -> None:
    """Write an arbitrary sampled curve in the same CSV format."""
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(header + "\n")
        for t, v in zip(times, values):
            fh.write(f"{t:.17g},{v:.17g}\n")


def synth(kind: str, seed: int, **params) -> Signal:
    """Deterministic synthetic signals for tests and figure reproduction.

    Kinds:

    * ``bandlimited``: dense samples of a known coefficient vector, the
      input side of forward-generate/recover checks.  Params: omega, n,
      coefficients (or None to draw standard normals), t0, t1, num.
    * ``jump_walk``: seeded piecewise-constant random path (left-constant
      interpolation).  Params: t0, t1, n_segments, level_scale.
    * ``sines_beyond_band``: sum of sinusoids with frequencies strictly
      above the band limit.  Params: omega, multipliers, t0, t1, num.
    """
    if kind not in SYNTH_KINDS:
        raise ContractError(f"unknown synth kind {kind!r}; expected one of {SYNTH_KINDS}")
    rng = np.random.default_rng(seed)

    if kind == "bandlimited":
        spec = BasisSpec(params["omega"], params["n"])
        coeffs = params.get("coefficients")
        if coeffs is None:
            coeffs = rng.standard_normal(spec.size)
        t0 = float(params.get("t0", -10.0))
        t1 = float(params.get("t1", 10.0))
        num = int(params.get("num", 2001))
        times = np.linspace(t0, t1, num)
        return Signal(times, eval_series(coeffs, spec, times), PIECEWISE_LINEAR)

    if kind == "jump_walk":
        t0 = float(params.get("t0", -10.0))
        t1 = float(params.get("t1", 0.0))
        n_segments = int(params.get("n_segments", 60))
        scale = float(params.get("level_scale", 1.0))
        interior = np.sort(rng.uniform(t0, t1, n_segments - 1))
        times = np.concatenate([[t0], interior, [t1]])
        levels = np.cumsum(rng.standard_normal(times.size)) * scale
        return Signal(times, levels, PIECEWISE_CONSTANT_LEFT)

    # sines_beyond_band
    omega = float(params["omega"])
    multipliers = tuple(params.get("multipliers", (2.0, 3.5)))
    if any(m <= 1.0 for m in multipliers):
        raise ContractError("frequency multipliers must exceed 1 to leave the band")
    t0 = float(params.get("t0", -10.0))
    t1 = float(params.get("t1", 10.0))
    num = int(params.get("num", 4001))
    amplitudes = rng.uniform(0.5, 1.5, len(multipliers))
    phases = rng.uniform(0.0, 2.0 * math.pi, len(multipliers))
    times = np.linspace(t0, t1, num)
    values = np.zeros_like(times)
    for m, amp, ph in zip(multipliers, amplitudes, phases):
        values += amp * np.sin(m * omega * times + ph)
    return Signal(times, values, PIECEWISE_LINEAR)


def corpus_signal(seed: int = DEFAULT_CORPUS_SEED, t0: float = -14.0,
                  t1: float = 6.0) -> Signal:
    """Reference test-corpus path: irregular piecewise-linear walk with jumps.

    Sample spacing is drawn from U(0.02, 0.10); increments are Gaussian with
    standard deviation 0.35*sqrt(dt), and with probability 0.04 a step gains
    an extra jump of magnitude U(0.4, 1.2) and random sign.  Deterministic
    for a fixed seed (PCG64).
    """
    rng = np.random.default_rng(seed)
    times = [float(t0)]
    while times[-1] < t1:
        times.append(times[-1] + rng.uniform(0.02, 0.10))
    times[-1] = float(t1)
    times = np.array(times)
    dt = np.diff(times)
    steps = rng.normal(0.0, 0.35 * np.sqrt(dt))
    jumps = rng.random(dt.size) < 0.04
    steps[jumps] += rng.choice([-1.0, 1.0], jumps.sum()) * rng.uniform(0.4, 1.2, jumps.sum())
    values = np.concatenate([[0.0], np.cumsum(steps)])
    return Signal(times, values, PIECEWISE_LINEAR)
