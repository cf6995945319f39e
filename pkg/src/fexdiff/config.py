"""Discretization parameters for windowed Fourier-extension differentiation.

The pipeline samples a function on a closed uniform grid of M points, fits
short Fourier-extension expansions on dyadic subintervals using m-point
downsampled windows, and evaluates everything on a periodic grid of L nodes
covering one full period of the extension frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class SpectralConfig:
    """Frozen discretization parameters shared by every pipeline stage.

    Attributes
    ----------
    n : int
        Maximum Fourier mode index; expansions use 2n+1 modes.
    gamma : float
        Oversampling factor for the local window (samples per mode).
    T : float
        Requested extension ratio: the fitting window occupies 1/T of the
        full period of the frame.
    r : int
        Maximum dyadic bisection depth; the global grid refines the local
        window by a factor 2**r.
    rho : float
        Safety factor applied to the full-resolution acceptance threshold.
    m : int
        Local window size, ceil(gamma * (2n+1)).
    L : int
        Number of periodic grid nodes over one full period.
    M : int
        Global closed-grid sample count, 2**r * (m-1) + 1.
    """

    n: int
    gamma: float
    T: float
    r: int
    rho: float
    m: int
    L: int
    M: int

    @property
    def node_spacing(self) -> float:
        """Periodic grid spacing 2*pi/L."""
        return 2.0 * math.pi / self.L

    @property
    def window_ratio(self) -> float:
        """Realized extension ratio L/(m-1).

        Equal to T whenever T*(m-1) is an integer.  The window spanned by the
        m local nodes is exactly [0, 2*pi/window_ratio], with the last node on
        the window's right edge; the derivative scaling relies on this.
        """
        return self.L / (self.m - 1)


def build_config(
    n: int = 9,
    gamma: float = 1.0,
    T: float = 6.0,
    r: int = 6,
    rho: float = 2.0,
) -> SpectralConfig:
    """Validate parameters and derive the grid sizes m, L, M.

    Parameters
    ----------
    n : int
        Maximum mode index, at least 1.
    gamma : float
        Window oversampling factor, at least 1.
    T : float
        Extension ratio, strictly greater than 1.
    r : int
        Maximum bisection depth, nonnegative.
    rho : float
        Acceptance safety factor, strictly greater than 1.

    Returns
    -------
    SpectralConfig

    Raises
    ------
    ValueError
        If any parameter is outside its admissible range.
    """
    if not isinstance(n, (int,)) or isinstance(n, bool) or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")
    if not isinstance(r, (int,)) or isinstance(r, bool) or r < 0:
        raise ValueError(f"r must be an integer >= 0, got {r!r}")
    gamma = float(gamma)
    T = float(T)
    rho = float(rho)
    if not math.isfinite(gamma) or gamma < 1.0:
        raise ValueError(f"gamma must be >= 1, got {gamma!r}")
    if not math.isfinite(T) or T <= 1.0:
        raise ValueError(f"T must be > 1, got {T!r}")
    if not math.isfinite(rho) or rho <= 1.0:
        raise ValueError(f"rho must be > 1, got {rho!r}")

    m = math.ceil(gamma * (2 * n + 1))
    # The m local nodes span m-1 cells of the periodic grid, so L is sized
    # from m-1: the last local node then lands exactly on the window edge,
    # which keeps the per-mode derivative factor an exact chain rule.
    L = math.ceil(T * (m - 1))
    M = 2**r * (m - 1) + 1
    return SpectralConfig(n=n, gamma=gamma, T=T, r=r, rho=rho, m=m, L=L, M=M)


def valid_sample_counts(n: int = 9, gamma: float = 1.0, r_max: int = 10) -> list[int]:
    """Admissible global sample counts 2**r * (m-1) + 1 for r = 0..r_max."""
    m = math.ceil(gamma * (2 * n + 1))
    return [2**r * (m - 1) + 1 for r in range(r_max + 1)]
