"""Single-interval Tikhonov baseline: solver, alpha selection, evaluation."""

import math

import numpy as np
import pytest

from fexdiff import AlphaBracketError, TikhonovConfig, TikhonovFit, alpha_num_floor, select_alpha, tikhonov_fit
from fexdiff.benchmark import add_noise
from fexdiff.functions import TEST_FUNCTIONS
from fexdiff.tikhonov import _design, tikhonov_derivative, tikhonov_values


@pytest.fixture(scope="module")
def cfg2():
    return TikhonovConfig()


def test_mode_count_derivation(cfg2):
    assert cfg2.n2(1153) == 288
    assert cfg2.n2(73) == 18
    assert cfg2.n2(3) == 0


def test_huge_alpha_crushes_coefficients(cfg2):
    y = np.cos(np.linspace(-1, 1, 73))
    fit = tikhonov_fit(y, 1.0, cfg2, (-1.0, 1.0), alpha=1e12)
    assert np.linalg.norm(fit.coef) <= 1e-8 * np.linalg.norm(y)
    assert fit.residual <= np.linalg.norm(y) * (1 + 1e-12)


def test_zero_data_zero_fit(cfg2):
    fit = tikhonov_fit(np.zeros(73), 1.0, cfg2, (-1.0, 1.0), alpha=1e-3)
    assert np.linalg.norm(fit.coef) == 0.0
    assert fit.residual == 0.0


def test_discrepancy_selection_hits_target(cfg2, grid):
    y = add_noise(TEST_FUNCTIONS["f1"].func(grid), 1e-2, 1)
    delta = 1e-2 * math.sqrt(grid.size / 3.0)
    fit = tikhonov_fit(y, delta, cfg2, (-1.0, 1.0))
    target = cfg2.C * delta
    assert abs(fit.residual - target) <= 1e-2 * target
    assert cfg2.alpha_lo < fit.alpha < cfg2.alpha_hi


def test_selection_is_deterministic(cfg2, grid):
    y = add_noise(TEST_FUNCTIONS["f1"].func(grid), 1e-3, 5)
    delta = 1e-3 * math.sqrt(grid.size / 3.0)
    a1 = select_alpha(y, delta, cfg2)
    a2 = select_alpha(y, delta, cfg2)
    assert a1 == a2


def test_boundary_target_returns_bracket_edge(cfg2, grid):
    y = add_noise(TEST_FUNCTIONS["f1"].func(grid), 1e-3, 2)
    res_lo = tikhonov_fit(y, 1.0, cfg2, (-1.0, 1.0), alpha=cfg2.alpha_lo).residual
    alpha = select_alpha(y, res_lo / cfg2.C, cfg2)
    assert alpha == cfg2.alpha_lo


def test_residual_monotone_above_numerical_floor(cfg2, grid):
    y = add_noise(TEST_FUNCTIONS["f1"].func(grid), 1e-3, 3)
    floor = alpha_num_floor(cfg2, grid.size)
    alphas = np.geomspace(floor, 1e3, 12)
    residuals = [tikhonov_fit(y, 1.0, cfg2, (-1.0, 1.0), alpha=a).residual for a in alphas]
    diffs = np.diff(residuals)
    assert np.all(diffs >= -1e-9 * max(residuals))


def test_penalty_norm_decreases_with_alpha(cfg2):
    # small system keeps the squared penalty weights representable
    M2 = 73
    x = np.linspace(-1, 1, M2)
    y = np.exp(x) + add_noise(np.zeros(M2), 1e-3, 4)
    design = _design(cfg2.T2, cfg2.gamma2, M2)
    norms = []
    for a in np.geomspace(1e-9, 1e2, 10):
        fit = tikhonov_fit(y, 1.0, cfg2, (-1.0, 1.0), alpha=a)
        norms.append(np.linalg.norm(design.rweights * fit.coef))
    assert np.all(np.diff(norms) <= 1e-9 * max(norms))


def test_fixed_alpha_solves_normal_equations(cfg2):
    # stationarity of ||Av-y||^2 + alpha ||Rv||^2 at the returned coefficients
    M2 = 73
    x = np.linspace(-1, 1, M2)
    y = np.exp(x) + add_noise(np.zeros(M2), 1e-3, 2)
    design = _design(cfg2.T2, cfg2.gamma2, M2)
    R2 = design.rweights**2
    for alpha in (1e-6, 1e-3, 1.0):
        fit = tikhonov_fit(y, 1.0, cfg2, (-1.0, 1.0), alpha=alpha)
        grad = 2.0 * (design.A.conj().T @ (design.A @ fit.coef - y)) \
            + 2.0 * alpha * R2 * fit.coef
        scale = np.linalg.norm(design.A.conj().T @ y)
        assert np.linalg.norm(grad) <= 1e-3 * scale

        def objective(c):
            r = design.A @ c - y
            return float(np.vdot(r, r).real + alpha * np.sum(R2 * np.abs(c) ** 2))

        j0 = objective(fit.coef)
        rng = np.random.default_rng(0)
        for _ in range(10):
            e = rng.standard_normal(fit.coef.size) + 1j * rng.standard_normal(fit.coef.size)
            e /= np.linalg.norm(e)
            for t in (1e-7, 1e-5, 1e-3):
                assert objective(fit.coef + t * e) >= j0 - 1e-12 * max(j0, 1.0)


def test_single_tone_evaluation_and_derivative(cfg2):
    M2 = 73
    n2 = cfg2.n2(M2)
    x = np.linspace(-1, 1, M2)
    coef = np.zeros(2 * n2 + 1, dtype=complex)
    coef[n2 + 3] = 1.0 - 0.5j
    fit = TikhonovFit(coef=coef, alpha=1.0, residual=0.0)
    # mode l spans l/T2 periods over [a, b]: frequency l*pi/2 on x here
    w = 3 * math.pi / 2.0
    u = x + 1.0
    vals = tikhonov_values(fit, cfg2, M2)
    dvals = tikhonov_derivative(fit, cfg2, (-1.0, 1.0), M2)
    expect_v = ((1.0 - 0.5j) * np.exp(1j * w * u)).real
    expect_d = ((1.0 - 0.5j) * 1j * w * np.exp(1j * w * u)).real
    assert np.abs(vals - expect_v).max() <= 1e-12
    assert np.abs(dvals - expect_d).max() <= 1e-12


def test_bracket_error_reports_both_sides(cfg2, grid):
    y = add_noise(TEST_FUNCTIONS["f1"].func(grid), 1e-8, 1)
    # target far below the attainable residual floor
    with pytest.raises(AlphaBracketError) as info:
        select_alpha(y, 1e-8 * math.sqrt(grid.size / 3.0), cfg2)
    exc = info.value
    assert exc.res_lo > exc.target
    assert exc.res_hi > exc.res_lo
    # target above the fully regularized residual
    delta_big = 1e3 * math.sqrt(grid.size / 3.0)
    with pytest.raises(AlphaBracketError) as info:
        select_alpha(y, delta_big, cfg2)
    assert info.value.res_hi < info.value.target


def test_alpha_num_floor_value(cfg2):
    floor = alpha_num_floor(cfg2, 1153)
    assert floor == pytest.approx(1.3710232875695253e-11, rel=1e-6)
    assert floor >= cfg2.alpha_lo
    assert alpha_num_floor(cfg2, 73) >= cfg2.alpha_lo


def test_derivative_rejects_wrong_coefficient_length(cfg2):
    fit = TikhonovFit(coef=np.zeros(5, dtype=complex), alpha=1.0, residual=0.0)
    with pytest.raises(ValueError, match="does not match"):
        tikhonov_derivative(fit, cfg2, (-1.0, 1.0), 73)


def test_rejects_bad_alpha_and_interval(cfg2):
    y = np.ones(73)
    for alpha in (0.0, -1.0, math.inf, math.nan):
        with pytest.raises(ValueError):
            tikhonov_fit(y, 1.0, cfg2, (-1.0, 1.0), alpha=alpha)
    with pytest.raises(ValueError):
        tikhonov_fit(y, 1.0, cfg2, (1.0, -1.0), alpha=1.0)
