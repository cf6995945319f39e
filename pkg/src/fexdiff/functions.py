"""Benchmark test functions with closed-form derivatives."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import erf


@dataclass(frozen=True)
class TestFunction:
    """A benchmark case: identifier, function, exact derivative, frequency class.

    freq_class is one of "low", "interior_high", "boundary_high" describing
    where (if anywhere) the function oscillates rapidly on [-1, 1].
    """

    fid: str
    func: Callable[[np.ndarray], np.ndarray]
    deriv: Callable[[np.ndarray], np.ndarray]
    freq_class: str


def _f3(x):
    return np.cos(100.0 / (1.0 + 25.0 * x**2))


def _df3(x):
    inner = 1.0 + 25.0 * x**2
    return np.sin(100.0 / inner) * 100.0 * 50.0 * x / inner**2


TEST_FUNCTIONS: dict[str, TestFunction] = {
    "f1": TestFunction("f1", np.exp, np.exp, "low"),
    "f2": TestFunction(
        "f2",
        lambda x: x**3 - 3.0 * x**2 + 0.5 * x,
        lambda x: 3.0 * x**2 - 6.0 * x + 0.5,
        "low",
    ),
    "f3": TestFunction("f3", _f3, _df3, "interior_high"),
    "f4": TestFunction(
        "f4",
        lambda x: erf(x),
        lambda x: (2.0 / math.sqrt(math.pi)) * np.exp(-(x**2)),
        "interior_high",
    ),
    "f5": TestFunction(
        "f5",
        lambda x: np.cos(100.0 * x**2),
        lambda x: -200.0 * x * np.sin(100.0 * x**2),
        "boundary_high",
    ),
    "f6": TestFunction(
        "f6",
        lambda x: 1.0 / (1.1 - x**2),
        lambda x: 2.0 * x / (1.1 - x**2) ** 2,
        "boundary_high",
    ),
}


def get_function(fid: str) -> TestFunction:
    """Look up a test function by id, raising ValueError with the known ids."""
    try:
        return TEST_FUNCTIONS[fid]
    except KeyError:
        known = ", ".join(sorted(TEST_FUNCTIONS))
        raise ValueError(f"unknown test function {fid!r}; known ids: {known}") from None
