"""Shared fixtures: the default configuration and its precomputed operators."""

import numpy as np
import pytest

from fexdiff import build_config, build_operators


@pytest.fixture(scope="session")
def cfg():
    return build_config()


@pytest.fixture(scope="session")
def ops(cfg):
    return build_operators(cfg)


@pytest.fixture(scope="session")
def grid(cfg):
    return np.linspace(-1.0, 1.0, cfg.M)


def conj_symmetric_coef(rng, m):
    """Random coefficient vector whose synthesized node data is real."""
    c = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    c = c + np.conj(c[::-1])
    c[m // 2] = c[m // 2].real
    return c
