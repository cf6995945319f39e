"""High-level entry points tying partitioning, fitting, and reconstruction together."""

from __future__ import annotations

import math

import numpy as np

from .config import SpectralConfig, build_config, valid_sample_counts
from .operators import PrecomputedOperators, build_operators
from .partition import noise_floor, recursive_fit
from .reconstruct import (
    DerivativeResult,
    global_grid,
    reconstruct_derivative_order,
    reconstruct_function,
)
from .tikhonov import TikhonovConfig, tikhonov_derivative, tikhonov_fit, tikhonov_values


def check_sample_count(count: int, cfg: SpectralConfig) -> None:
    """Raise ValueError naming the nearest admissible counts when count != M."""
    if count == cfg.M:
        return
    candidates = valid_sample_counts(cfg.n, cfg.gamma, r_max=max(cfg.r + 4, 10))
    below = [c for c in candidates if c <= count]
    above = [c for c in candidates if c >= count]
    nearest = sorted({max(below, default=min(candidates)), min(above, default=max(candidates))})
    raise ValueError(
        f"got {count} samples but the configuration (n={cfg.n}, gamma={cfg.gamma}, "
        f"r={cfg.r}) requires exactly {cfg.M}; resample to a valid count such as "
        f"{' or '.join(str(c) for c in nearest)} (valid counts are 2**r*(m-1)+1)"
    )


def differentiate(
    samples: np.ndarray,
    a: float,
    b: float,
    delta1: float,
    cfg: SpectralConfig | None = None,
    ops: PrecomputedOperators | None = None,
    order: int = 1,
    with_function: bool = False,
    delta_floor: float | None = None,
) -> DerivativeResult:
    """Differentiate noisy uniform samples by adaptive multi-interval fitting.

    Parameters
    ----------
    samples : array_like, shape (M,)
        Values on the closed uniform grid over [a, b]; M must match cfg.
    a, b : float
        Interval endpoints, a < b.
    delta1 : float
        Per-sample noise bound (0 allowed; a small floor keeps the
        noiseless recursion from chasing roundoff).
    cfg, ops : optional
        Reuse a configuration and its precomputed operators; defaults are
        built on the fly.
    order : int
        Derivative order (1 by default).
    with_function : bool
        Also return denoised function values.
    delta_floor : float, optional
        Override the default noiseless floor 1e-11 * ||samples|| / sqrt(M).

    Returns
    -------
    DerivativeResult
    """
    if cfg is None:
        cfg = build_config()
    if ops is None:
        ops = build_operators(cfg)
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 1:
        raise ValueError(f"samples must be 1-D, got shape {samples.shape}")
    check_sample_count(samples.size, cfg)
    if not math.isfinite(delta1) or delta1 < 0:
        raise ValueError(f"delta1 must be a finite nonnegative float, got {delta1!r}")

    floor = noise_floor(samples) if delta_floor is None else float(delta_floor)
    effective = max(delta1, floor)

    part = recursive_fit(a, b, samples, effective, cfg, ops)
    dvalues = reconstruct_derivative_order(part, ops, cfg, a, b, order=order)
    fvalues = reconstruct_function(part, ops, cfg, a, b) if with_function else None
    return DerivativeResult(
        x=global_grid(cfg, a, b), dvalues=dvalues, fvalues=fvalues, leaves=part.leaves
    )


def differentiate_baseline(
    samples: np.ndarray,
    a: float,
    b: float,
    delta1: float,
    cfg2: TikhonovConfig | None = None,
    with_function: bool = False,
) -> DerivativeResult:
    """Differentiate by the single-interval Tikhonov baseline.

    delta1 must be strictly positive: the discrepancy principle needs a
    noise level to aim for.
    """
    if cfg2 is None:
        cfg2 = TikhonovConfig()
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 1:
        raise ValueError(f"samples must be 1-D, got shape {samples.shape}")
    if not math.isfinite(delta1) or delta1 <= 0:
        raise ValueError(f"the baseline requires delta1 > 0, got {delta1!r}")
    delta = delta1 * math.sqrt(samples.size / 3.0)
    fit = tikhonov_fit(samples, delta, cfg2, (a, b))
    dvalues = tikhonov_derivative(fit, cfg2, (a, b), samples.size)
    fvalues = tikhonov_values(fit, cfg2, samples.size) if with_function else None
    x = np.linspace(a, b, samples.size)
    return DerivativeResult(x=x, dvalues=dvalues, fvalues=fvalues, leaves=())
