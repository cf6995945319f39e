"""Precomputed frame matrices for the local fits and their differentiation.

The expansion basis over one period [0, 2*pi) consists of the constant
1/sqrt(2) plus complex exponentials exp(1j*l*t) for l = -n..n, each column
divided by the exponential weight exp(|l|).  The local fitting matrix G is
the first m rows of the full periodic evaluation matrix TG.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import SpectralConfig


@dataclass(frozen=True)
class PrecomputedOperators:
    """Immutable bundle of evaluation matrices and the SVD of G.

    Attributes
    ----------
    t_nodes : ndarray, shape (L,)
        Periodic grid nodes i * 2*pi/L.
    modes : ndarray, shape (2n+1,)
        Mode indices -n..n in column order.
    weights : ndarray, shape (2n+1,)
        Column weights exp(|l|).
    G : ndarray, shape (m, 2n+1)
        Weighted local evaluation matrix (first m rows of TG).
    TG : ndarray, shape (L, 2n+1)
        Weighted evaluation matrix on the full periodic grid.
    dG, dTG : ndarray
        Same matrices with columns scaled by the per-mode derivative factor
        1j * l * 2*pi/window_ratio.
    U, S, V : ndarray
        Thin SVD of G, with V holding right singular vectors as columns.
    """

    t_nodes: np.ndarray
    modes: np.ndarray
    weights: np.ndarray
    G: np.ndarray
    TG: np.ndarray
    dG: np.ndarray
    dTG: np.ndarray
    U: np.ndarray
    S: np.ndarray
    V: np.ndarray


def _freeze(*arrays: np.ndarray) -> None:
    for arr in arrays:
        arr.setflags(write=False)


def derivative_factors(cfg: SpectralConfig, order: int = 1) -> np.ndarray:
    """Per-mode window-coordinate derivative factors (1j*l*2*pi/window_ratio)**order."""
    modes = np.arange(-cfg.n, cfg.n + 1)
    base = 1j * modes * (2.0 * math.pi / cfg.window_ratio)
    return base**order


def build_operators(cfg: SpectralConfig) -> PrecomputedOperators:
    """Evaluate the weighted basis on the periodic grid and factor G.

    Parameters
    ----------
    cfg : SpectralConfig
        Discretization parameters.

    Returns
    -------
    PrecomputedOperators

    Raises
    ------
    RuntimeError
        If the SVD of G fails to converge.
    """
    modes = np.arange(-cfg.n, cfg.n + 1)
    t = np.arange(cfg.L) * cfg.node_spacing
    phi = np.exp(1j * np.outer(t, modes))
    phi[:, cfg.n] = 1.0 / math.sqrt(2.0)
    weights = np.exp(np.abs(modes)).astype(float)

    TG = phi / weights
    G = TG[: cfg.m].copy()
    dfac = derivative_factors(cfg)
    dTG = TG * dfac
    dG = G * dfac

    try:
        U, S, Vh = np.linalg.svd(G, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"SVD of the {G.shape} local fitting matrix failed: {exc}") from exc
    V = Vh.conj().T.copy()

    t = t.copy()
    modes_f = modes.copy()
    _freeze(t, modes_f, weights, G, TG, dG, dTG, U, S, V)
    return PrecomputedOperators(
        t_nodes=t, modes=modes_f, weights=weights,
        G=G, TG=TG, dG=dG, dTG=dTG, U=U, S=S, V=V,
    )


def trig_upsample(values: np.ndarray, factor: int) -> np.ndarray:
    """Trigonometric interpolation of one period onto a factor-times finer grid.

    Zero-pads the FFT spectrum, splitting the Nyquist bin for even input
    lengths, so that the output subsampled by ``factor`` reproduces the input
    exactly and the mean is preserved.

    Parameters
    ----------
    values : array_like, shape (N,)
        Real samples of one full period.
    factor : int
        Upsampling factor, at least 1.  factor=1 returns a copy.

    Returns
    -------
    ndarray, shape (N * factor,)
    """
    if not isinstance(factor, (int, np.integer)) or isinstance(factor, bool):
        raise ValueError(f"factor must be a positive integer, got {factor!r}")
    if factor < 1:
        raise ValueError(f"factor must be a positive integer, got {factor!r}")
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or values.size == 0:
        raise ValueError(f"values must be a nonempty 1-D array, got shape {values.shape}")
    if factor == 1:
        return values.copy()
    N = values.size
    spectrum = np.fft.rfft(values)
    if N % 2 == 0:
        spectrum[-1] *= 0.5
    return np.fft.irfft(spectrum, n=N * factor) * factor


_CACHE_KEYS = ("n", "gamma", "T", "r", "rho", "m", "L", "M")


def save_operators(path, cfg: SpectralConfig, ops: PrecomputedOperators) -> None:
    """Serialize operators with their config to a regenerable .npz cache file."""
    meta = {key: getattr(cfg, key) for key in _CACHE_KEYS}
    np.savez(
        path,
        config=np.array([float(meta[key]) for key in _CACHE_KEYS]),
        t_nodes=ops.t_nodes, modes=ops.modes, weights=ops.weights,
        G=ops.G, TG=ops.TG, dG=ops.dG, dTG=ops.dTG,
        U=ops.U, S=ops.S, V=ops.V,
    )


def load_operators(path, cfg: SpectralConfig) -> PrecomputedOperators:
    """Load a cache written by save_operators, validating it against cfg.

    Raises
    ------
    ValueError
        If the cached configuration does not match ``cfg``.
    OSError
        If the file cannot be read.
    """
    with np.load(path) as data:
        stored = data["config"]
        expected = np.array([float(getattr(cfg, key)) for key in _CACHE_KEYS])
        if stored.shape != expected.shape or not np.array_equal(stored, expected):
            raise ValueError("operator cache does not match the requested configuration")
        arrays = {name: data[name].copy() for name in (
            "t_nodes", "modes", "weights", "G", "TG", "dG", "dTG", "U", "S", "V")}
    _freeze(*arrays.values())
    return PrecomputedOperators(**arrays)
