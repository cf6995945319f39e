"""Recursive bisection: acceptance rule, downsampling, and leaf geometry."""

import math

import numpy as np
import pytest

from fexdiff import accept_test, downsample, noise_floor, recursive_fit
from fexdiff.benchmark import add_noise
from fexdiff.functions import TEST_FUNCTIONS


def test_downsample_takes_uniform_stride():
    y = np.arange(1153.0)
    d = downsample(y, 19)
    assert np.array_equal(d, np.arange(0.0, 1153.0, 64.0))
    assert np.array_equal(downsample(np.arange(19.0), 19), np.arange(19.0))


def test_downsample_rejects_incompatible_length():
    with pytest.raises(ValueError, match="multiple"):
        downsample(np.arange(20.0), 19)


def test_accept_threshold_value():
    # rho * sqrt(nn/3) * delta1 at the default benchmark scale
    threshold = 2.0 * math.sqrt(1153 / 3.0) * 1e-2
    assert abs(threshold - 0.39208842540086963) < 1e-15
    assert accept_test(0.392, 1153, 1e-2, 2.0, 19)
    assert not accept_test(0.3922, 1153, 1e-2, 2.0, 19)


def test_accept_unconditional_at_window_size():
    assert accept_test(1e9, 19, 1e-2, 2.0, 19)
    assert not accept_test(1e9, 20, 0.0, 2.0, 19)


def test_noise_floor_formula():
    assert noise_floor(np.ones(4)) == pytest.approx(1e-11)
    y = np.full(9, 3.0)
    assert noise_floor(y) == pytest.approx(1e-11 * np.linalg.norm(y) / 3.0)
    assert noise_floor(np.zeros(5)) == 0.0


def test_smooth_signal_accepted_in_one_leaf(cfg, ops, grid):
    tf = TEST_FUNCTIONS["f2"]
    y = add_noise(tf.func(grid), 1e-2, 1)
    part = recursive_fit(-1.0, 1.0, y, 1e-2, cfg, ops)
    assert part.n_leaves == 1
    leaf = part.leaves[0]
    assert (leaf.a, leaf.b, leaf.depth, leaf.nn) == (-1.0, 1.0, 0, cfg.M)
    assert leaf.residual <= leaf.threshold


def test_oscillatory_signal_splits(cfg, ops, grid):
    tf = TEST_FUNCTIONS["f5"]
    y = add_noise(tf.func(grid), 1e-3, 1)
    part = recursive_fit(-1.0, 1.0, y, 1e-3, cfg, ops)
    assert part.n_leaves > 1
    assert part.max_depth <= cfg.r


def test_leaves_tile_the_interval(cfg, ops, grid):
    tf = TEST_FUNCTIONS["f5"]
    y = add_noise(tf.func(grid), 1e-3, 1)
    part = recursive_fit(-1.0, 1.0, y, 1e-3, cfg, ops)
    leaves = part.leaves
    assert leaves[0].a == -1.0
    assert leaves[-1].b == 1.0
    for left, right in zip(leaves, leaves[1:]):
        assert left.b == right.a
    assert sum(leaf.nn - 1 for leaf in leaves) == cfg.M - 1
    for leaf in leaves:
        assert leaf.nn == (cfg.M - 1) // 2**leaf.depth + 1
        # each leaf is accepted either by residual or by bottoming out
        assert leaf.residual <= leaf.threshold or leaf.nn <= cfg.m


def test_refinement_grows_with_tighter_noise_budget(cfg, ops, grid):
    y = TEST_FUNCTIONS["f5"].func(grid)
    counts = [recursive_fit(-1.0, 1.0, y, d1, cfg, ops).n_leaves
              for d1 in (1e-2, 1e-3, 1e-4)]
    assert counts == [18, 20, 22]


def test_rejects_bad_inputs(cfg, ops):
    with pytest.raises(ValueError):
        recursive_fit(1.0, -1.0, np.zeros(cfg.M), 1e-2, cfg, ops)
    with pytest.raises(ValueError):
        recursive_fit(-1.0, 1.0, np.zeros(cfg.M), -1e-2, cfg, ops)
