"""Reference-figure reproduction: four fixed fit configurations on the
shared corpus signal, emitted as CSV curve pairs, coefficient documents and
rendered PNG plots.

The four configurations vary the window, the band limit and the
regularization so the emitted set demonstrates window sensitivity, the
effect of the band limit and ridge shrinkage:

    fig1  window (-12, -2]  omega 4  N 30  shift 0.001
    fig2  window (-10,  0]  omega 4  N 30  shift 0.001
    fig3  window (-10,  0]  omega 2  N 30  shift 0.001
    fig4  window (-10,  0]  omega 4  N 30  shift 0.05

Everything is deterministic for a fixed corpus seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .approximator import Approximant, FitConfig, fit, save_json
from .gram import Window
from .quadrature import DEFAULT_TOL
from .signal_io import DEFAULT_CORPUS_SEED, Signal, corpus_signal, save_curve

CURVE_POINTS = 1000
FORECAST_SPAN = 2.0  # extrapolated stretch drawn past the window edge


@dataclass(frozen=True)
class FigureConfig:
    name: str
    window: Window
    omega: float
    n: int
    lam: float


FIGURE_CONFIGS = (
    FigureConfig("fig1", Window(-12.0, -2.0), 4.0, 30, 0.001),
    FigureConfig("fig2", Window(-10.0, 0.0), 4.0, 30, 0.001),
    FigureConfig("fig3", Window(-10.0, 0.0), 2.0, 30, 0.001),
    FigureConfig("fig4", Window(-10.0, 0.0), 4.0, 30, 0.05),
)


def signal_in_window(signal: Signal, window: Window) -> tuple[np.ndarray, np.ndarray]:
    """Raw samples inside the window plus interpolated boundary values."""
    inside = (signal.times > window.q) & (signal.times < window.s)
    times = np.concatenate([[window.q], signal.times[inside], [window.s]])
    return times, signal.eval(times)


def render_figure(signal: Signal, approximant: Approximant, path,
                  title: str) -> None:
    """Plot the observed path, the fitted curve and a dashed forecast."""
    window = approximant.window
    grid = np.linspace(window.q, window.s, CURVE_POINTS)
    ahead = np.linspace(window.s, window.s + FORECAST_SPAN, 200)
    sig_t, sig_v = signal_in_window(signal, window)

    fig, ax = plt.subplots(figsize=(8.0, 4.5))
    ax.plot(sig_t, sig_v, color="0.35", lw=0.9, label="observed path")
    ax.plot(grid, approximant.evaluate(grid), color="crimson", lw=1.6,
            label="band-limited fit")
    ax.plot(ahead, approximant.evaluate(ahead), color="crimson", lw=1.6,
            ls="--", label="forecast")
    ax.axvline(window.s, color="0.7", lw=0.8)
    ax.set_xlabel("t")
    ax.set_ylabel("x(t)")
    ax.set_title(title)
    ax.legend(loc="best", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def reproduce(out_dir, seed: int = DEFAULT_CORPUS_SEED,
              quad_tol: float = DEFAULT_TOL, render: bool = True) -> list[Path]:
    """Emit all four configurations into out_dir; returns written paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    signal = corpus_signal(seed)
    written: list[Path] = []
    for config in FIGURE_CONFIGS:
        cfg = FitConfig(omega=config.omega, n=config.n, lam=config.lam,
                        quad_tol=quad_tol)
        approximant = fit(signal, config.window, cfg)

        sig_path = out / f"{config.name}_signal.csv"
        sig_t, sig_v = signal_in_window(signal, config.window)
        save_curve(sig_t, sig_v, sig_path)
        written.append(sig_path)

        fit_path = out / f"{config.name}_fitted.csv"
        grid = np.linspace(config.window.q, config.window.s, CURVE_POINTS)
        save_curve(grid, approximant.evaluate(grid), fit_path)
        written.append(fit_path)

        coeff_path = out / f"{config.name}_coeffs.json"
        save_json(approximant, coeff_path)
        written.append(coeff_path)

        if render:
            png_path = out / f"{config.name}.png"
            title = (f"{config.name}: window ({config.window.q:g}, "
                     f"{config.window.s:g}], omega={config.omega:g}, "
                     f"N={config.n}, shift={config.lam:g}")
            render_figure(signal, approximant, png_path, title)
            written.append(png_path)
    return written
