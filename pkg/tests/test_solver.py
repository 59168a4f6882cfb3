import math

import numpy as np
import pytest

from bandcast import (
    Approximant,
    BasisSpec,
    ContractError,
    FitConfig,
    GramSystem,
    Signal,
    Window,
    eval_series,
    fit,
    objective,
    ridge_solve,
    solve_regularized,
    spectrum,
)
from bandcast.gram import build_system
from bandcast.solver import METHOD_CHOLESKY, METHOD_EIGEN_FALLBACK


def make_system(matrix, load, omega=2.0):
    n = (matrix.shape[0] - 1) // 2
    return GramSystem(
        r_matrix=np.asarray(matrix, dtype=float),
        load=np.asarray(load, dtype=float),
        spec=BasisSpec(omega, n),
        window=Window(-1.0, 0.0),
        quad_tol=1e-8,
        max_quad_error=0.0,
    )


def test_diagonal_system():
    # R = (omega/pi) I is the wide-window limit; solution is (pi/omega) r
    omega = 4.0
    load = np.array([1.0, -2.0, 0.5])
    system = make_system((omega / math.pi) * np.eye(3), load, omega)
    report = solve_regularized(system, 0.0)
    assert np.allclose(report.coefficients, (math.pi / omega) * load, rtol=1e-13)
    assert report.method == METHOD_CHOLESKY


def test_zero_load():
    system = make_system(np.eye(3), np.zeros(3))
    for lam in (0.0, 0.5):
        report = solve_regularized(system, lam)
        assert np.all(report.coefficients == 0.0)
        assert report.residual_e == 0.0


def test_lambda_validation():
    system = make_system(np.eye(3), np.zeros(3))
    with pytest.raises(ContractError):
        solve_regularized(system, -1e-3)
    with pytest.raises(ContractError):
        ridge_solve(system, -1.0)


def test_forward_generate_recover():
    # signal synthesized from known coefficients is recovered at lambda=0
    spec = BasisSpec(2.0, 3)
    w = Window(-5.0, 5.0)
    rng = np.random.default_rng(42)
    ystar = rng.standard_normal(spec.size)
    times = np.linspace(-5.5, 5.5, 5001)
    sig = Signal(times, eval_series(ystar, spec, times))
    system = build_system(sig, spec, w, 1e-8)
    report = solve_regularized(system, 0.0)
    rel = np.linalg.norm(report.coefficients - ystar) / np.linalg.norm(ystar)
    assert rel < 1e-4
    assert report.method == METHOD_CHOLESKY


def test_residual_identity_well_conditioned():
    sig_times = np.linspace(-6.0, 1.0, 1200)
    sig = Signal(sig_times, np.sin(1.5 * sig_times))
    system = build_system(sig, BasisSpec(2.0, 3), Window(-5.0, 0.0), 1e-10)
    report = solve_regularized(system, 0.0)
    assert report.residual_e <= 1e-8 * np.linalg.norm(system.load)


def test_regularization_improves_conditioning(fig2_system):
    base = solve_regularized(fig2_system, 0.0)
    for lam in (1e-6, 1e-3, 0.05):
        shifted = solve_regularized(fig2_system, lam)
        assert shifted.condition < base.condition or not math.isfinite(base.condition)
        assert shifted.min_eig > base.min_eig


def test_fallback_flagged_on_indefinite_matrix():
    # an explicitly indefinite matrix cannot be Cholesky-factorized
    matrix = np.diag([1.0, 1e-9, -1e-9])
    system = make_system(matrix, np.array([1.0, 1.0, 1.0]))
    report = solve_regularized(system, 0.0)
    assert report.method == METHOD_EIGEN_FALLBACK
    assert report.min_eig < 0


def test_ridge_matches_squared_shift():
    rng = np.random.default_rng(1)
    base = rng.standard_normal((5, 5))
    matrix = base @ base.T + 0.1 * np.eye(5)
    load = rng.standard_normal(5)
    system = make_system(matrix, load)
    eps = 0.3
    ridge = ridge_solve(system, eps)
    direct = solve_regularized(system, eps * eps)
    assert np.array_equal(ridge.coefficients, direct.coefficients)
    assert ridge.lam == eps * eps
    # eps = 0 falls back to the unregularized solve
    assert np.array_equal(
        ridge_solve(system, 0.0).coefficients,
        solve_regularized(system, 0.0).coefficients,
    )


def test_ridge_large_eps_shrinks_to_zero(fig2_system):
    small = np.linalg.norm(ridge_solve(fig2_system, 1e3).coefficients)
    base = np.linalg.norm(ridge_solve(fig2_system, 0.0).coefficients)
    assert small <= 1e-4 * base


def test_ridge_norm_monotone_in_eps(fig2_system):
    # the Figure-4 configuration: coefficient norm shrinks as eps grows
    norms = [
        np.linalg.norm(ridge_solve(fig2_system, eps).coefficients)
        for eps in (0.0, 0.01, 0.05, 0.1)
    ]
    assert all(a >= b for a, b in zip(norms, norms[1:]))


def test_spectrum_identity_and_2x2():
    system = make_system(np.eye(5), np.zeros(5))
    assert np.allclose(spectrum(system), np.ones(5))
    two = GramSystem(
        r_matrix=np.array([[2.0, 1.0], [1.0, 2.0]]),
        load=np.zeros(2),
        spec=BasisSpec(2.0, 0),
        window=Window(-1.0, 0.0),
        quad_tol=1e-8,
        max_quad_error=0.0,
    )
    assert np.allclose(spectrum(two), [1.0, 3.0])


def test_spectrum_near_zero_at_n30(fig2_system):
    eigs = spectrum(fig2_system)
    assert eigs.size == 61
    assert np.all(np.diff(eigs) >= 0)
    assert eigs[0] < 1e-8 * eigs[-1]


def test_perturbation_optimality(fig2_signal):
    # the lambda=0 solution minimizes the objective among nearby vectors
    spec = BasisSpec(2.0, 3)
    w = Window(-5.0, 0.0)
    system = build_system(fig2_signal, spec, w, 1e-10)
    report = solve_regularized(system, 0.0)
    best = Approximant(spec, report.coefficients, w, 0.0, report)
    base = objective(best, fig2_signal, 1e-10)
    rng = np.random.default_rng(17)
    for _ in range(100):
        delta = rng.standard_normal(spec.size)
        delta *= 0.01 / np.linalg.norm(delta)
        perturbed = Approximant(spec, report.coefficients + delta, w, 0.0, report)
        assert objective(perturbed, fig2_signal, 1e-10) >= base
