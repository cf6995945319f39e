"""Global derivative assembly from accepted leaves."""

import numpy as np
import pytest

from fexdiff import differentiate, trig_upsample
from fexdiff.partition import PartitionLeaf, PartitionResult
from fexdiff.reconstruct import reconstruct_derivative, reconstruct_derivative_order
from fexdiff.tsvd import LocalFit

from conftest import conj_symmetric_coef


def make_leaf(ops, c, a, b, depth, nn):
    fit = LocalFit(coef=c, ry=(ops.G @ c).real, k_used=c.size, residual=0.0)
    return PartitionLeaf(a=a, b=b, depth=depth, fit=fit, nn=nn,
                         residual=0.0, threshold=1.0)


def leaf_oracle(ops, c, a, b, nn, m):
    """Upsampled per-mode derivative of the leaf expansion, chain-ruled to x."""
    factor = (nn - 1) // (m - 1)
    full = trig_upsample(np.real(ops.dTG @ c), factor)
    return full[:nn] / (b - a)


def test_single_leaf_matches_modewise_derivative(cfg, ops):
    rng = np.random.default_rng(21)
    c = conj_symmetric_coef(rng, cfg.m)
    part = PartitionResult(leaves=(make_leaf(ops, c, -1.0, 1.0, 0, cfg.M),))
    dv = reconstruct_derivative(part, ops, cfg, -1.0, 1.0)
    oracle = leaf_oracle(ops, c, -1.0, 1.0, cfg.M, cfg.m)
    assert dv.shape == (cfg.M,)
    assert np.linalg.norm(dv - oracle) <= 1e-10 * np.linalg.norm(oracle)


def test_two_leaves_concatenate_with_shared_endpoint(cfg, ops):
    rng = np.random.default_rng(22)
    nn = (cfg.M - 1) // 2 + 1
    c1 = conj_symmetric_coef(rng, cfg.m)
    c2 = conj_symmetric_coef(rng, cfg.m)
    part = PartitionResult(leaves=(
        make_leaf(ops, c1, -1.0, 0.0, 1, nn),
        make_leaf(ops, c2, 0.0, 1.0, 1, nn),
    ))
    dv = reconstruct_derivative(part, ops, cfg, -1.0, 1.0)
    o1 = leaf_oracle(ops, c1, -1.0, 0.0, nn, cfg.m)
    o2 = leaf_oracle(ops, c2, 0.0, 1.0, nn, cfg.m)
    oracle = np.concatenate([o1[:-1], o2])
    assert dv.shape == (cfg.M,)
    assert np.linalg.norm(dv - oracle) <= 1e-10 * np.linalg.norm(oracle)


def test_order_one_equals_first_derivative_path(cfg, ops):
    rng = np.random.default_rng(23)
    c = conj_symmetric_coef(rng, cfg.m)
    part = PartitionResult(leaves=(make_leaf(ops, c, -1.0, 1.0, 0, cfg.M),))
    d1 = reconstruct_derivative(part, ops, cfg, -1.0, 1.0)
    d1b = reconstruct_derivative_order(part, ops, cfg, -1.0, 1.0, order=1)
    assert np.array_equal(d1, d1b)


def test_tone_derivatives_through_pipeline(cfg, ops, grid):
    # cos(pi x) sits inside the local mode range, so clean data stays accurate
    y = np.cos(np.pi * grid)
    res = differentiate(y, -1.0, 1.0, 0.0, cfg=cfg, ops=ops)
    assert np.abs(res.dvalues + np.pi * np.sin(np.pi * grid)).max() <= 1e-7
    assert len(res.leaves) <= 2
    res2 = differentiate(y, -1.0, 1.0, 0.0, cfg=cfg, ops=ops, order=2)
    assert np.abs(res2.dvalues + np.pi**2 * np.cos(np.pi * grid)).max() <= 1e-5


def test_polynomial_higher_orders(cfg, ops, grid):
    res2 = differentiate(grid**2, -1.0, 1.0, 0.0, cfg=cfg, ops=ops, order=2)
    assert np.abs(res2.dvalues - 2.0).max() <= 1e-6
    res3 = differentiate(grid**3, -1.0, 1.0, 0.0, cfg=cfg, ops=ops, order=3)
    assert np.abs(res3.dvalues - 6.0).max() <= 1e-4


def test_interval_scaling_chain_rule(cfg, ops):
    # identical samples on a half-width interval double every derivative value
    rng = np.random.default_rng(24)
    c = conj_symmetric_coef(rng, cfg.m)
    leaf_wide = make_leaf(ops, c, -1.0, 1.0, 0, cfg.M)
    leaf_half = make_leaf(ops, c, 0.0, 1.0, 0, cfg.M)
    d_wide = reconstruct_derivative(PartitionResult(leaves=(leaf_wide,)), ops, cfg, -1.0, 1.0)
    d_half = reconstruct_derivative(PartitionResult(leaves=(leaf_half,)), ops, cfg, 0.0, 1.0)
    assert np.allclose(d_half, 2.0 * d_wide, rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("order", [0, -1, 5, 2.5])
def test_rejects_bad_order(cfg, ops, grid, order):
    with pytest.raises(ValueError):
        differentiate(grid**2, -1.0, 1.0, 0.0, cfg=cfg, ops=ops, order=order)
