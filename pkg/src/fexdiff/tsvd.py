"""Truncated-SVD local fitting with a discrepancy-principle stopping rule.

Singular terms of the weighted local matrix G are accumulated one at a time,
largest singular value first, until the fit residual at the m window nodes
drops to the local noise level or the terms are exhausted.  Directions whose
singular value sits at rounding level relative to the largest, or whose data
projection sits at rounding level relative to ``||y||``, carry nothing
recoverable and are passed over.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operators import PrecomputedOperators

_SIGMA_RTOL = float(np.finfo(float).eps)
_PROJ_RTOL = 10.0 * float(np.finfo(float).eps)


@dataclass(frozen=True)
class LocalFit:
    """Result of one windowed fit.

    Attributes
    ----------
    coef : ndarray, shape (2n+1,)
        Accumulated weighted-variable coefficients (complex).
    ry : ndarray, shape (m,)
        Real part of the fitted values at the m window nodes.
    k_used : int
        Number of singular terms accumulated.
    residual : float
        Final fit residual ||G @ coef - y||_2 at the window nodes.
    """

    coef: np.ndarray
    ry: np.ndarray
    k_used: int
    residual: float


def _check_window(y: np.ndarray, ops: PrecomputedOperators) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    m = ops.G.shape[0]
    if y.ndim != 1 or y.size != m:
        raise ValueError(f"expected {m} window samples, got shape {y.shape}")
    return y


def local_fourier_fit(y: np.ndarray, delta_loc: float, ops: PrecomputedOperators) -> LocalFit:
    """Fit the window samples by greedy singular-term accumulation.

    Parameters
    ----------
    y : array_like, shape (m,)
        Real samples at the window nodes.
    delta_loc : float
        Local noise level; accumulation stops once the residual is <= this.
    ops : PrecomputedOperators
        Operators whose G/U/S/V drive the fit.

    Returns
    -------
    LocalFit
    """
    y = _check_window(y, ops)
    if not np.isfinite(delta_loc) or delta_loc < 0:
        raise ValueError(f"delta_loc must be a finite nonnegative float, got {delta_loc!r}")

    kmax = ops.S.size
    sigma_floor = _SIGMA_RTOL * float(ops.S[0]) if kmax else 0.0
    proj_floor = _PROJ_RTOL * float(np.linalg.norm(y))
    coef = np.zeros(ops.G.shape[1], dtype=complex)
    fitted = np.zeros(y.size, dtype=complex)
    eps = float(np.linalg.norm(y))
    k = 0
    while eps > delta_loc and k < kmax:
        sigma = ops.S[k]
        if sigma <= sigma_floor:
            break
        proj = np.vdot(ops.U[:, k], y)
        # A rounding-level projection is an exact zero in disguise; dividing
        # it by a small singular value would pollute the fit off the nodes.
        if abs(proj) > proj_floor:
            term = ops.V[:, k] * (proj / sigma)
            coef += term
            fitted += ops.G @ term
            eps = float(np.linalg.norm(fitted - y))
        k += 1

    coef.setflags(write=False)
    ry = np.ascontiguousarray(fitted.real)
    ry.setflags(write=False)
    return LocalFit(coef=coef, ry=ry, k_used=k, residual=eps)


def discrepancy_bracket_check(
    y: np.ndarray, delta_loc: float, fit: LocalFit, ops: PrecomputedOperators
) -> bool:
    """Verify that a fit's truncation index brackets the noise level.

    Recomputes the residual sequence independently and confirms that
    residual(k_used) <= delta_loc < residual(k_used - 1); a fit that used
    every available term or stopped at the numerical rank is accepted as
    best effort, and a fit that never ran requires the raw data norm to
    already sit at or below delta_loc.
    """
    y = _check_window(y, ops)
    kmax = ops.S.size
    if fit.k_used < 0 or fit.k_used > kmax:
        raise ValueError(f"k_used must be in [0, {kmax}], got {fit.k_used}")
    if fit.k_used == kmax:
        return True
    sigma_floor = _SIGMA_RTOL * float(ops.S[0]) if kmax else 0.0
    if ops.S[fit.k_used] <= sigma_floor:
        return True

    proj_floor = _PROJ_RTOL * float(np.linalg.norm(y))
    residuals = [float(np.linalg.norm(y))]
    fitted = np.zeros(y.size, dtype=complex)
    for k in range(fit.k_used):
        proj = np.vdot(ops.U[:, k], y)
        if abs(proj) > proj_floor:
            fitted += ops.G @ (ops.V[:, k] * (proj / ops.S[k]))
        residuals.append(float(np.linalg.norm(fitted - y)))

    if fit.k_used == 0:
        return residuals[0] <= delta_loc
    return residuals[fit.k_used] <= delta_loc < residuals[fit.k_used - 1]
