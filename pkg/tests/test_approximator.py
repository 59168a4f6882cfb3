import math

import numpy as np
import pytest

from bandcast import (
    Approximant,
    BasisSpec,
    ContractError,
    DataError,
    FitConfig,
    Signal,
    Window,
    corpus_signal,
    eval_series,
    extrapolate,
    fit,
    frequency_response,
    integrate,
    integrate_piecewise,
    load_json,
    objective,
    save_json,
    solve_regularized,
)
from bandcast.approximator import from_dict, to_dict
from bandcast.gram import build_system, window_breakpoints


def test_fit_config_validation():
    with pytest.raises(ContractError):
        FitConfig(omega=-1.0, n=3)
    with pytest.raises(ContractError):
        FitConfig(omega=2.0, n=3, lam=-0.1)
    with pytest.raises(ContractError):
        FitConfig(omega=2.0, n=3, quad_tol=0.0)
    with pytest.raises(ContractError):
        FitConfig(omega=2.0, n=3, gram_method="fft")


def test_fit_zero_signal():
    times = np.linspace(-6.0, 1.0, 200)
    sig = Signal(times, np.zeros_like(times))
    a = fit(sig, Window(-5.0, 0.0), FitConfig(2.0, 3, lam=0.0))
    assert np.max(np.abs(a.coefficients)) < 1e-12
    assert objective(a, sig) < 1e-12


def test_forward_generate_recover_through_fit():
    spec = BasisSpec(2.0, 3)
    w = Window(-5.0, 5.0)
    rng = np.random.default_rng(7)
    ystar = rng.standard_normal(spec.size)
    times = np.linspace(-5.5, 5.5, 5001)
    sig = Signal(times, eval_series(ystar, spec, times))
    a = fit(sig, w, FitConfig(2.0, 3, lam=0.0))
    rel = np.linalg.norm(a.coefficients - ystar) / np.linalg.norm(ystar)
    assert rel < 1e-4
    energy = integrate_piecewise(
        lambda t: sig.eval(t) ** 2, window_breakpoints(sig, w), 1e-10
    ).value
    assert objective(a, sig) <= 1e-8 * energy


def test_fit_matches_dense_least_squares_oracle(fig2_signal):
    # generic dense-grid least squares as the independent route
    w = Window(-10.0, 10.0)
    cfg = FitConfig(2.0, 4, lam=0.0, quad_tol=1e-8)
    sig = corpus_signal(23, t0=-11.0, t1=11.0)
    a = fit(sig, w, cfg)
    grid = np.linspace(w.q, w.s, 10**4)
    spec = cfg.basis_spec()
    design = np.stack(
        [eval_series(np.eye(spec.size)[i], spec, grid) for i in range(spec.size)],
        axis=1,
    )
    oracle, *_ = np.linalg.lstsq(design, sig.eval(grid), rcond=None)
    assert np.linalg.norm(a.coefficients - oracle) / np.linalg.norm(oracle) < 1e-3


def test_objective_zero_and_energy():
    times = np.linspace(-6.0, 1.0, 400)
    sig0 = Signal(times, np.zeros_like(times))
    spec = BasisSpec(2.0, 2)
    w = Window(-5.0, 0.0)
    report = solve_regularized(build_system(sig0, spec, w, 1e-8), 0.0)
    zero = Approximant(spec, np.zeros(spec.size), w, 0.0, report)
    assert objective(zero, sig0) == pytest.approx(0.0, abs=1e-14)

    # with a zero approximant the objective is the signal energy
    sig = Signal(times, np.sin(times))
    energy = integrate_piecewise(
        lambda t: sig.eval(t) ** 2, window_breakpoints(sig, w), 1e-10
    ).value
    assert objective(zero, sig) == pytest.approx(energy, rel=1e-8)


def test_objective_expansion_identity(fig2_signal):
    # objective = y^T R y - 2 y^T r + integral of x^2 (the quadratic form)
    spec = BasisSpec(2.0, 3)
    w = Window(-5.0, 0.0)
    system = build_system(fig2_signal, spec, w, 1e-10)
    energy = integrate_piecewise(
        lambda t: fig2_signal.eval(t) ** 2, window_breakpoints(fig2_signal, w), 1e-12
    ).value
    report = solve_regularized(system, 0.0)
    rng = np.random.default_rng(8)
    for _ in range(5):
        y = rng.standard_normal(spec.size)
        a = Approximant(spec, y, w, 0.0, report)
        lhs = objective(a, fig2_signal, 1e-10)
        rhs = y @ system.r_matrix @ y - 2.0 * y @ system.load + energy
        assert abs(lhs - rhs) / abs(rhs) < 1e-6


def test_objective_requires_coverage():
    times = np.linspace(-4.0, 0.0, 50)
    sig = Signal(times, np.ones_like(times))
    spec = BasisSpec(2.0, 1)
    w = Window(-5.0, 0.0)
    a = Approximant(spec, np.zeros(3), w, 0.0,
                    solve_regularized(build_system(
                        Signal(np.array([-6.0, 1.0]), np.zeros(2)), spec, w, 1e-8
                    ), 0.0))
    with pytest.raises(DataError):
        objective(a, sig)


def test_extrapolate_is_the_same_series():
    spec = BasisSpec(2.0, 3)
    w = Window(-5.0, 0.0)
    rng = np.random.default_rng(5)
    y = rng.standard_normal(spec.size)
    report = solve_regularized(
        build_system(Signal(np.array([-6.0, 1.0]), np.zeros(2)), spec, w, 1e-8), 0.0
    )
    a = Approximant(spec, y, w, 0.0, report)
    for t in (-3.0, 0.0, 1.5, 7.0):
        assert extrapolate(a, t) == eval_series(y, spec, t)
    zero = Approximant(spec, np.zeros(spec.size), w, 0.0, report)
    assert extrapolate(zero, 100.0) == 0.0


def test_extrapolate_forward_generated_forecast():
    spec = BasisSpec(2.0, 3)
    w = Window(-5.0, 5.0)
    ystar = np.random.default_rng(21).standard_normal(spec.size)
    times = np.linspace(-5.5, 5.5, 5001)
    sig = Signal(times, eval_series(ystar, spec, times))
    a = fit(sig, w, FitConfig(2.0, 3, lam=0.0))
    truth = eval_series(ystar, spec, w.s + 1.0)
    assert extrapolate(a, w.s + 1.0) == pytest.approx(truth, abs=1e-4)


def test_frequency_response():
    spec = BasisSpec(2.0, 2)
    w = Window(-5.0, 0.0)
    report = solve_regularized(
        build_system(Signal(np.array([-6.0, 1.0]), np.zeros(2)), spec, w, 1e-8), 0.0
    )
    y = np.array([0.3, -1.0, 0.5, 0.0, 2.0])
    a = Approximant(spec, y, w, 0.0, report)
    # zero outside the band, including just past the edge
    out = frequency_response(a, [2.0001, -2.5, 100.0])
    assert np.all(out == 0.0)
    zero = Approximant(spec, np.zeros(5), w, 0.0, report)
    assert np.all(frequency_response(zero, np.linspace(-2, 2, 11)) == 0.0)
    # at omega = 0 the response is the plain coefficient sum
    assert frequency_response(a, 0.0) == pytest.approx(np.sum(y))


def test_parseval():
    # time-domain norm over a wide window vs (1/2pi) int |X|^2
    spec = BasisSpec(2.0, 3)
    w = Window(-5.0, 0.0)
    y = np.random.default_rng(1).standard_normal(spec.size)
    report = solve_regularized(
        build_system(Signal(np.array([-6.0, 1.0]), np.zeros(2)), spec, w, 1e-8), 0.0
    )
    a = Approximant(spec, y, w, 0.0, report)
    half = 4000.0
    time_norm = integrate(
        lambda t: eval_series(y, spec, t) ** 2, -half, half, 1e-6
    ).value
    grid = np.linspace(-spec.omega, spec.omega, 20001)
    freq_norm = np.trapezoid(np.abs(frequency_response(a, grid)) ** 2, grid) / (2 * math.pi)
    assert abs(freq_norm - time_norm) / time_norm < 1e-3


def test_fit_linearity(fig2_signal):
    w = Window(-5.0, 5.0)
    cfg = FitConfig(2.0, 4, lam=0.001, quad_tol=1e-10)
    times = np.linspace(-6.0, 6.0, 1500)
    rng = np.random.default_rng(3)
    v1 = np.cumsum(rng.normal(0.0, 0.1, times.size))
    v2 = np.sin(1.3 * times) + 0.2 * rng.standard_normal(times.size)
    alpha, beta = 1.7, -0.6
    a1 = fit(Signal(times, v1), w, cfg)
    a2 = fit(Signal(times, v2), w, cfg)
    a12 = fit(Signal(times, alpha * v1 + beta * v2), w, cfg)
    combo = alpha * a1.coefficients + beta * a2.coefficients
    assert np.linalg.norm(a12.coefficients - combo) / np.linalg.norm(combo) < 1e-8


def test_not_time_invariant():
    # shifting signal and window together does NOT shift the fit, because
    # the node grid stays anchored; exhibit a concrete counterexample
    tau = 0.3
    sig = corpus_signal(4, t0=-8.0, t1=8.0)
    cfg = FitConfig(2.0, 8, lam=0.001)
    a = fit(sig, Window(-5.0, 2.0), cfg)
    shifted = Signal(sig.times + tau, sig.values)
    a_shifted = fit(shifted, Window(-5.0 + tau, 2.0 + tau), cfg)
    grid = np.linspace(-4.5, 1.5, 800)
    diff = np.max(np.abs(a_shifted.evaluate(grid + tau) - a.evaluate(grid)))
    assert diff > 1e-3


def test_fit_idempotent_on_own_output():
    sig = corpus_signal(11, t0=-6.0, t1=1.0)
    w = Window(-5.0, 0.0)
    cfg = FitConfig(2.0, 3, lam=0.0, quad_tol=1e-10)
    first = fit(sig, w, cfg)
    times = np.linspace(-5.5, 0.5, 4001)
    refit_input = Signal(times, first.evaluate(times))
    second = fit(refit_input, w, cfg)
    rel = np.linalg.norm(second.coefficients - first.coefficients)
    rel /= np.linalg.norm(first.coefficients)
    assert rel < 1e-4


def test_json_round_trip(tmp_path, fig2_signal):
    a = fit(fig2_signal, Window(-5.0, 0.0), FitConfig(2.0, 4))
    path = tmp_path / "approx.json"
    save_json(a, path)
    back = load_json(path)
    assert back.spec == a.spec
    assert back.window == a.window
    assert back.lam == a.lam
    assert np.array_equal(back.coefficients, a.coefficients)
    assert back.fit_report.residual_e == a.fit_report.residual_e
    assert back.fit_report.method == a.fit_report.method


def test_json_rejects_malformed(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{\"format\": \"something-else\"}")
    with pytest.raises(DataError):
        load_json(p)
    p.write_text("not json")
    with pytest.raises(DataError):
        load_json(p)
    with pytest.raises(DataError):
        from_dict({"format": "bandcast-approximant", "version": 99})


def test_dict_round_trip(fig2_signal):
    a = fit(fig2_signal, Window(-4.0, 0.0), FitConfig(2.0, 2))
    doc = to_dict(a)
    assert doc["version"] == 1
    back = from_dict(doc)
    assert np.array_equal(back.coefficients, a.coefficients)
