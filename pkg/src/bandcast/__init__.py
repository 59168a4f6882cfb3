"""bandcast: L2-optimal band-limited approximation and forecasting.

Fits the best band-limited function (a finite sinc series with band limit
omega and 2N+1 terms) to a signal observed on a finite window, in the
least-squares sense, and extrapolates the fitted series beyond the window
as a forecast.  A streaming mode re-fits on a sliding window, which acts as
a causal linear filter that is not time invariant.
"""

from .approximator import (
    Approximant,
    FitConfig,
    extrapolate,
    fit,
    fit_system,
    frequency_response,
    load_json,
    objective,
    save_json,
)
from .basis import BasisSpec, basis_fn, eval_series, node, sampling_coefficients, sinc
from .errors import (
    BandcastError,
    ContractError,
    ConvergenceError,
    CoverageError,
    DataError,
    NumericalError,
)
from .gram import GramSystem, Window, build_gram, build_system, gram_entry, load_vector
from .quadrature import QuadResult, integrate, integrate_piecewise
from .signal_io import (
    DEFAULT_CORPUS_SEED,
    Signal,
    corpus_signal,
    load_csv,
    save_csv,
    synth,
)
from .solver import SolveReport, ridge_solve, solve_regularized, spectrum
from .stream import SlidingFilter, StreamConfig, StreamOutput

__version__ = "0.1.0"

__all__ = [
    "Approximant",
    "BandcastError",
    "BasisSpec",
    "ContractError",
    "ConvergenceError",
    "CoverageError",
    "DataError",
    "DEFAULT_CORPUS_SEED",
    "FitConfig",
    "GramSystem",
    "NumericalError",
    "QuadResult",
    "Signal",
    "SlidingFilter",
    "SolveReport",
    "StreamConfig",
    "StreamOutput",
    "Window",
    "basis_fn",
    "build_gram",
    "build_system",
    "corpus_signal",
    "eval_series",
    "extrapolate",
    "fit",
    "fit_system",
    "frequency_response",
    "gram_entry",
    "integrate",
    "integrate_piecewise",
    "load_csv",
    "load_json",
    "load_vector",
    "node",
    "objective",
    "ridge_solve",
    "sampling_coefficients",
    "save_csv",
    "save_json",
    "sinc",
    "solve_regularized",
    "spectrum",
    "synth",
]
