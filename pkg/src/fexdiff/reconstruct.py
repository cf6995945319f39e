"""Assembly of global derivative and function values from partition fits.

Each leaf's coefficient vector is differentiated per mode in window
coordinates, scaled by the leaf's chain-rule factor, evaluated on the
periodic grid, and trigonometrically upsampled back to the leaf's native
resolution.  Leaves contribute their first nn-1 samples so that interior
joints take the left leaf's value; the final leaf also contributes the
global right endpoint.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import SpectralConfig
from .operators import PrecomputedOperators, derivative_factors, trig_upsample
from .partition import PartitionLeaf, PartitionResult


@dataclass(frozen=True)
class DerivativeResult:
    """Derivative (and optionally denoised function) values on the global grid.

    Attributes
    ----------
    x : ndarray, shape (M,)
        Global closed grid over [a, b].
    dvalues : ndarray, shape (M,)
        Reconstructed derivative values.
    fvalues : ndarray or None
        Denoised function values when requested.
    leaves : tuple of PartitionLeaf
        Partition diagnostics carried through from the fit.
    """

    x: np.ndarray
    dvalues: np.ndarray
    fvalues: np.ndarray | None
    leaves: tuple[PartitionLeaf, ...]


def _leaf_values(
    leaf: PartitionLeaf,
    ops: PrecomputedOperators,
    cfg: SpectralConfig,
    order: int,
) -> np.ndarray:
    """Evaluate a leaf's fit (or its order-th derivative) at native resolution."""
    if order == 0:
        full = np.asarray(ops.TG @ leaf.fit.coef).real
    elif order == 1:
        scale = 1.0 / (leaf.b - leaf.a)
        full = np.asarray(ops.dTG @ leaf.fit.coef).real * scale
    else:
        scale = (1.0 / (leaf.b - leaf.a)) ** order
        dfac = derivative_factors(cfg, order)
        full = np.asarray(ops.TG @ (dfac * leaf.fit.coef)).real * scale
    r_ds = (leaf.nn - 1) // (cfg.m - 1)
    return trig_upsample(full, r_ds)


def _assemble(
    part: PartitionResult,
    ops: PrecomputedOperators,
    cfg: SpectralConfig,
    a: float,
    b: float,
    order: int,
) -> np.ndarray:
    if not part.leaves:
        raise ValueError("partition has no leaves")
    pieces = []
    for leaf in part.leaves:
        interp = _leaf_values(leaf, ops, cfg, order)
        pieces.append(interp[: leaf.nn - 1])
    pieces.append(interp[leaf.nn - 1 : leaf.nn])
    return np.concatenate(pieces)


def global_grid(cfg: SpectralConfig, a: float, b: float) -> np.ndarray:
    """Closed uniform grid of M points over [a, b]."""
    return np.linspace(a, b, cfg.M)


def reconstruct_derivative(
    part: PartitionResult,
    ops: PrecomputedOperators,
    cfg: SpectralConfig,
    a: float,
    b: float,
) -> np.ndarray:
    """First-derivative values on the global grid, length M."""
    return reconstruct_derivative_order(part, ops, cfg, a, b, order=1)


def reconstruct_function(
    part: PartitionResult,
    ops: PrecomputedOperators,
    cfg: SpectralConfig,
    a: float,
    b: float,
) -> np.ndarray:
    """Denoised function values on the global grid, length M."""
    return _assemble(part, ops, cfg, a, b, order=0)


def reconstruct_derivative_order(
    part: PartitionResult,
    ops: PrecomputedOperators,
    cfg: SpectralConfig,
    a: float,
    b: float,
    order: int = 1,
    max_order: int = 4,
) -> np.ndarray:
    """Order-th derivative values on the global grid, length M.

    Parameters
    ----------
    order : int
        Derivative order, 1 <= order <= max_order.
    max_order : int
        Configurable cap; accuracy degrades with each order because every
        mode is amplified by another factor |l|*2*pi/window_ratio.
    """
    if not isinstance(order, (int, np.integer)) or isinstance(order, bool) or order < 1:
        raise ValueError(f"order must be a positive integer, got {order!r}")
    if order > max_order:
        raise ValueError(f"order {order} exceeds the supported cap {max_order}")
    return _assemble(part, ops, cfg, a, b, order=order)
