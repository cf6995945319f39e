"""Adaptive dyadic partitioning of a sampled interval into fitted windows.

Each segment is downsampled to the m window nodes, fitted by the truncated
SVD, and the fit is re-evaluated at full resolution through trigonometric
upsampling; segments whose full-resolution residual exceeds the noise
threshold are bisected at their middle sample, which both children share.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import SpectralConfig
from .operators import PrecomputedOperators, trig_upsample
from .tsvd import LocalFit, local_fourier_fit


@dataclass(frozen=True)
class SignalRecord:
    """A uniformly sampled signal on the closed interval [a, b].

    samples[i] is the value at x_i = a + i*(b-a)/(len(samples)-1); delta1
    bounds the absolute per-sample noise.
    """

    a: float
    b: float
    samples: np.ndarray
    delta1: float


@dataclass(frozen=True)
class PartitionLeaf:
    """One accepted segment with its window fit and acceptance diagnostics.

    residual is the full-resolution residual over the segment's nn samples;
    threshold is the acceptance level rho * sqrt(nn/3) * delta1 it was
    compared against.
    """

    a: float
    b: float
    depth: int
    fit: LocalFit
    nn: int
    residual: float
    threshold: float


@dataclass(frozen=True)
class PartitionResult:
    """Ordered leaves covering [a, b] left to right."""

    leaves: tuple[PartitionLeaf, ...]

    @property
    def n_leaves(self) -> int:
        return len(self.leaves)

    @property
    def max_depth(self) -> int:
        return max(leaf.depth for leaf in self.leaves)


def downsample(y: np.ndarray, m: int) -> np.ndarray:
    """Take every ((len(y)-1)/(m-1))-th sample, keeping both endpoints.

    Raises
    ------
    ValueError
        If len(y)-1 is not an integer multiple of m-1.
    """
    y = np.asarray(y)
    if y.ndim != 1 or y.size < 2:
        raise ValueError(f"y must be 1-D with at least 2 samples, got shape {y.shape}")
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    stride, rem = divmod(y.size - 1, m - 1)
    if rem != 0 or stride < 1:
        raise ValueError(
            f"sample count {y.size} does not downsample to {m} nodes: "
            f"len(y)-1 must be a positive multiple of m-1 = {m - 1}"
        )
    return y[::stride].copy()


def accept_test(eps_res: float, nn: int, delta1: float, rho: float, m: int) -> bool:
    """Full-resolution acceptance rule: residual within rho*sqrt(nn/3)*delta1,
    or the segment already at window size."""
    return eps_res <= rho * math.sqrt(nn / 3.0) * delta1 or nn <= m


def noise_floor(samples: np.ndarray, scale: float = 1e-11) -> float:
    """Default lower bound on delta1 for noiseless data: scale * RMS(samples).

    The scale leaves enough headroom over the quantized ladder of achievable
    fit residuals that exactly representable data is accepted in one segment.
    """
    samples = np.asarray(samples, dtype=float)
    return scale * float(np.linalg.norm(samples)) / math.sqrt(samples.size)


def recursive_fit(
    a: float,
    b: float,
    y: np.ndarray,
    delta1: float,
    cfg: SpectralConfig,
    ops: PrecomputedOperators,
    depth: int = 0,
) -> PartitionResult:
    """Partition [a, b] by dyadic bisection until every segment's fit passes.

    Parameters
    ----------
    a, b : float
        Segment endpoints, a < b.
    y : array_like
        Samples on the closed uniform grid of the segment; len(y)-1 must be
        a power-of-two multiple of m-1.
    delta1 : float
        Per-sample noise bound (apply any noiseless floor before calling).
    cfg, ops : SpectralConfig, PrecomputedOperators
        Shared discretization and operators; every leaf is fitted with the
        same operator object.
    depth : int
        Depth of this segment in the bisection tree (0 at the root).

    Returns
    -------
    PartitionResult
        Leaves ordered left to right, tiling [a, b] exactly.
    """
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise ValueError(f"need a < b, got a={a!r}, b={b!r}")
    if not math.isfinite(delta1) or delta1 < 0:
        raise ValueError(f"delta1 must be a finite nonnegative float, got {delta1!r}")
    y = np.asarray(y, dtype=float)
    if y.ndim != 1:
        raise ValueError(f"y must be 1-D, got shape {y.shape}")

    leaves: list[PartitionLeaf] = []
    _fit_segment(a, b, y, delta1, cfg, ops, depth, leaves)
    return PartitionResult(leaves=tuple(leaves))


def _fit_segment(a, b, y, delta1, cfg, ops, depth, leaves) -> None:
    nn = y.size
    y_red = downsample(y, cfg.m)
    r_ds = (nn - 1) // (cfg.m - 1)

    delta_loc = delta1 * math.sqrt(cfg.m / 3.0)
    fit = local_fourier_fit(y_red, delta_loc, ops)

    full = np.asarray(ops.TG @ fit.coef).real
    refined = trig_upsample(full, r_ds)
    eps_res = float(np.linalg.norm(y - refined[:nn]))
    threshold = cfg.rho * math.sqrt(nn / 3.0) * delta1

    if accept_test(eps_res, nn, delta1, cfg.rho, cfg.m):
        leaves.append(PartitionLeaf(
            a=a, b=b, depth=depth, fit=fit, nn=nn,
            residual=eps_res, threshold=threshold,
        ))
        return

    mid = (nn - 1) // 2
    xm = 0.5 * (a + b)
    _fit_segment(a, xm, y[: mid + 1], delta1, cfg, ops, depth + 1, leaves)
    _fit_segment(xm, b, y[mid:], delta1, cfg, ops, depth + 1, leaves)
