"""Command-line front end.

Subcommands: fit, forecast, stream, spectrum, reproduce-figures.  Every
command is a thin shell over the library: outputs are pure functions of the
flags and input files.  Errors exit with a stable code and a single JSON
line on stderr:

    2  flag/usage error
    3  data error (bad CSV, window not covered, I/O)
    4  numerical error (quadrature non-convergence, solve failure)
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .approximator import (
    FitConfig,
    extrapolate,
    fit,
    load_json,
    objective,
    save_json,
)
from .errors import ContractError, DataError, NumericalError
from .figures import reproduce
from .gram import Window, build_gram
from .quadrature import DEFAULT_TOL
from .signal_io import DEFAULT_CORPUS_SEED, load_csv, save_curve
from .solver import DEFAULT_LAMBDA
from .stream import SlidingFilter, StreamConfig

GRID_POINTS = 1000  # default plot-ready resolution per window


def _fit_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--omega", type=float, required=True,
                        help="band limit (rad/time), > 0")
    parser.add_argument("--n", type=int, required=True,
                        help="truncation order N; basis dimension is 2N+1")
    parser.add_argument("--lambda", dest="lam", type=float, default=DEFAULT_LAMBDA,
                        help="diagonal regularization shift (default 0.001)")
    parser.add_argument("--quad-tol", type=float, default=DEFAULT_TOL,
                        help="quadrature absolute tolerance (default 1e-8)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bandcast",
        description="Optimal band-limited approximation and forecasting "
                    "of sampled signals.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_fit = sub.add_parser("fit", help="fit a signal on a window, emit the curve")
    p_fit.add_argument("--input", required=True, help="input CSV (time,value)")
    p_fit.add_argument("--q", type=float, required=True, help="window start")
    p_fit.add_argument("--s", type=float, required=True, help="window end")
    _fit_flags(p_fit)
    p_fit.add_argument("--out", help="fitted-curve CSV path")
    p_fit.add_argument("--coeffs-out", help="fitted-approximant JSON path")
    p_fit.add_argument("--grid", type=int, default=GRID_POINTS,
                       help="curve grid points (default 1000)")
    p_fit.set_defaults(func=cmd_fit)

    p_fc = sub.add_parser("forecast", help="evaluate a saved fit on a time grid")
    p_fc.add_argument("--coeffs", required=True, help="approximant JSON path")
    p_fc.add_argument("--from", dest="t_from", type=float, required=True)
    p_fc.add_argument("--to", dest="t_to", type=float, required=True)
    p_fc.add_argument("--step", type=float, required=True)
    p_fc.add_argument("--out", required=True, help="output CSV (t,x_hat)")
    p_fc.set_defaults(func=cmd_forecast)

    p_st = sub.add_parser("stream", help="sliding-window filter over stdin")
    p_st.add_argument("--window-length", type=float, required=True)
    p_st.add_argument("--stride", type=float, default=None,
                      help="re-fit interval (default window-length/100)")
    p_st.add_argument("--horizons", default="",
                      help="comma-separated forecast offsets, e.g. 0.5,1.0")
    _fit_flags(p_st)
    p_st.set_defaults(func=cmd_stream)

    p_sp = sub.add_parser("spectrum", help="assemble the system matrix and "
                                           "report its eigenvalue range")
    p_sp.add_argument("--q", type=float, required=True)
    p_sp.add_argument("--s", type=float, required=True)
    p_sp.add_argument("--omega", type=float, required=True)
    p_sp.add_argument("--n", type=int, required=True)
    p_sp.add_argument("--quad-tol", type=float, default=DEFAULT_TOL)
    p_sp.add_argument("--matrix-out", help="dump the matrix as CSV")
    p_sp.add_argument("--eigs-out", help="dump ascending eigenvalues as CSV")
    p_sp.add_argument("--input", help="signal CSV; enables the load-vector dump")
    p_sp.add_argument("--load-out", help="dump the load vector as CSV "
                                         "(requires --input)")
    p_sp.set_defaults(func=cmd_spectrum)

    p_rf = sub.add_parser("reproduce-figures",
                          help="emit the four reference configurations")
    p_rf.add_argument("--out-dir", required=True)
    p_rf.add_argument("--seed", type=int, default=DEFAULT_CORPUS_SEED)
    p_rf.add_argument("--quad-tol", type=float, default=DEFAULT_TOL)
    p_rf.add_argument("--no-render", action="store_true",
                      help="skip PNG rendering, emit data files only")
    p_rf.set_defaults(func=cmd_reproduce)

    return parser


def cmd_fit(args) -> int:
    signal = load_csv(args.input)
    cfg = FitConfig(omega=args.omega, n=args.n, lam=args.lam,
                    quad_tol=args.quad_tol)
    window = Window(args.q, args.s)
    approximant = fit(signal, window, cfg)

    if args.out:
        grid = np.linspace(window.q, window.s, args.grid)
        save_curve(grid, approximant.evaluate(grid), args.out)
    if args.coeffs_out:
        save_json(approximant, args.coeffs_out)

    report = approximant.fit_report
    print(json.dumps({
        "objective": objective(approximant, signal, args.quad_tol),
        "residual_e": report.residual_e,
        "min_eig": report.min_eig,
        "max_eig": report.max_eig,
        "condition": report.condition if np.isfinite(report.condition) else None,
        "method": report.method,
        "lambda": args.lam,
        "omega": args.omega,
        "n": args.n,
    }, sort_keys=True))
    return 0


def cmd_forecast(args) -> int:
    approximant = load_json(args.coeffs)
    if args.step <= 0:
        raise ContractError(f"--step must be > 0, got {args.step}")
    if args.t_to < args.t_from:
        raise ContractError("--to must be >= --from")
    count = int(np.floor((args.t_to - args.t_from) / args.step + 1e-9)) + 1
    grid = args.t_from + args.step * np.arange(count)
    save_curve(grid, extrapolate(approximant, grid), args.out, header="t,x_hat")
    return 0


def _parse_horizons(text: str) -> tuple[float, ...]:
    if not text.strip():
        return ()
    try:
        return tuple(float(h) for h in text.split(","))
    except ValueError:
        raise ContractError(f"--horizons must be comma-separated numbers: {text!r}")


def cmd_stream(args) -> int:
    cfg = StreamConfig(
        window_length=args.window_length,
        fit=FitConfig(omega=args.omega, n=args.n, lam=args.lam,
                      quad_tol=args.quad_tol),
        stride=args.stride,
        horizons=_parse_horizons(args.horizons),
    )
    filt = SlidingFilter(cfg)
    for line_num, line in enumerate(sys.stdin, start=1):
        line = line.strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 2:
            raise DataError(f"stdin line {line_num}: expected 'time,value'")
        try:
            t, value = float(parts[0]), float(parts[1])
        except ValueError:
            raise DataError(f"stdin line {line_num}: non-numeric input {line!r}")
        try:
            output = filt.push(t, value)
        except NumericalError as exc:
            # surface the failure in the output stream; state is preserved
            print(json.dumps({"t": t, "error": type(exc).__name__,
                              "message": str(exc)}, sort_keys=True))
            sys.stdout.flush()
            continue
        if output is not None:
            print(output.to_json())
            sys.stdout.flush()
    return 0


def cmd_spectrum(args) -> int:
    from .basis import BasisSpec
    from .gram import load_vector

    spec = BasisSpec(args.omega, args.n)
    window = Window(args.q, args.s)
    matrix, max_err = build_gram(spec, window, args.quad_tol)
    eigs = np.linalg.eigvalsh(matrix)
    if args.matrix_out:
        np.savetxt(args.matrix_out, matrix, delimiter=",", fmt="%.17g")
    if args.eigs_out:
        save_curve(np.arange(eigs.size), eigs, args.eigs_out,
                   header="index,eigenvalue")
    if args.load_out:
        if not args.input:
            raise ContractError("--load-out requires --input")
        signal = load_csv(args.input)
        vector, vec_err = load_vector(signal, spec, window, args.quad_tol)
        max_err = max(max_err, vec_err)
        save_curve(spec.indices(), vector, args.load_out, header="k,load")
    print(json.dumps({
        "dim": int(eigs.size),
        "min_eig": float(eigs[0]),
        "max_eig": float(eigs[-1]),
        "condition": float(eigs[-1] / eigs[0]) if eigs[0] > 0 else None,
        "max_quad_error": max_err,
        "quad_tol": args.quad_tol,
    }, sort_keys=True))
    return 0


def cmd_reproduce(args) -> int:
    try:
        written = reproduce(args.out_dir, seed=args.seed,
                            quad_tol=args.quad_tol, render=not args.no_render)
    except OSError as exc:
        raise DataError(f"cannot write figures: {exc}") from exc
    for path in written:
        print(path)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ContractError as exc:
        _emit_error(exc)
        return 2
    except DataError as exc:
        _emit_error(exc)
        return 3
    except NumericalError as exc:
        _emit_error(exc)
        return 4
    except OSError as exc:
        _emit_error(exc)
        return 3


def _emit_error(exc: Exception) -> None:
    print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
          file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
