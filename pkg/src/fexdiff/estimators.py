"""Scikit-learn style estimator facade over the differentiation pipelines.

Both estimators treat a 2-D input as a stack of row signals sampled on the
same closed uniform grid: fit() validates the grid length and prepares the
shared operators, transform() maps each row to its derivative values.
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from . import api
from ._validation import as_signal_matrix, check_fitted
from .config import build_config
from .operators import build_operators
from .tikhonov import TikhonovConfig, tikhonov_derivative, tikhonov_fit


class AdaptiveSpectralDifferentiator(BaseEstimator, TransformerMixin):
    """Differentiate noisy uniform samples by adaptive multi-interval fitting.

    Parameters
    ----------
    n, gamma, T, r, rho : discretization parameters, see build_config.
    delta1 : float
        Per-sample noise bound shared by all rows.
    interval : (float, float)
        Sampling interval [a, b].
    order : int
        Derivative order returned by transform.
    delta_floor : float or None
        Noise floor override for noiseless data.

    Attributes
    ----------
    config_ : SpectralConfig
    operators_ : PrecomputedOperators
    n_features_in_ : int
    partitions_ : list of tuple of PartitionLeaf
        Per-row partition diagnostics from the last transform.
    """

    def __init__(
        self,
        n: int = 9,
        gamma: float = 1.0,
        T: float = 6.0,
        r: int = 6,
        rho: float = 2.0,
        delta1: float = 0.0,
        interval: tuple[float, float] = (-1.0, 1.0),
        order: int = 1,
        delta_floor: float | None = None,
    ):
        self.n = n
        self.gamma = gamma
        self.T = T
        self.r = r
        self.rho = rho
        self.delta1 = delta1
        self.interval = interval
        self.order = order
        self.delta_floor = delta_floor

    def fit(self, X, y=None):
        """Validate the grid and precompute the fitting operators."""
        X = as_signal_matrix(X)
        cfg = build_config(n=self.n, gamma=self.gamma, T=self.T, r=self.r, rho=self.rho)
        api.check_sample_count(X.shape[1], cfg)
        a, b = self.interval
        if not a < b:
            raise ValueError(f"interval must satisfy a < b, got {self.interval!r}")
        if not math.isfinite(self.delta1) or self.delta1 < 0:
            raise ValueError(f"delta1 must be finite and >= 0, got {self.delta1!r}")
        self.config_ = cfg
        self.operators_ = build_operators(cfg)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X) -> np.ndarray:
        """Return derivative values row by row, shape (n_signals, M)."""
        check_fitted(self, ("config_", "operators_"))
        X = as_signal_matrix(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} features, but the estimator was fitted with "
                f"{self.n_features_in_}"
            )
        a, b = self.interval
        out = np.empty_like(X)
        partitions = []
        for i, row in enumerate(X):
            result = api.differentiate(
                row, a, b, self.delta1,
                cfg=self.config_, ops=self.operators_,
                order=self.order, delta_floor=self.delta_floor,
            )
            out[i] = result.dvalues
            partitions.append(result.leaves)
        self.partitions_ = partitions
        return out


class TikhonovSpectralDifferentiator(BaseEstimator, TransformerMixin):
    """Differentiate by the single-interval Tikhonov baseline.

    Parameters mirror TikhonovConfig plus the shared noise bound delta1
    (strictly positive) and the sampling interval.

    Attributes
    ----------
    cfg2_ : TikhonovConfig
    n_features_in_ : int
    alphas_ : list of float
        Regularization strengths selected for each row of the last transform.
    """

    def __init__(
        self,
        delta1: float = 1e-3,
        T2: float = 2.0,
        gamma2: float = 2.0,
        C: float = 1.1,
        alpha_lo: float = 1e-16,
        alpha_hi: float = 1e4,
        interval: tuple[float, float] = (-1.0, 1.0),
    ):
        self.delta1 = delta1
        self.T2 = T2
        self.gamma2 = gamma2
        self.C = C
        self.alpha_lo = alpha_lo
        self.alpha_hi = alpha_hi
        self.interval = interval

    def fit(self, X, y=None):
        """Validate inputs and freeze the baseline configuration."""
        X = as_signal_matrix(X)
        if not math.isfinite(self.delta1) or self.delta1 <= 0:
            raise ValueError(f"delta1 must be finite and > 0, got {self.delta1!r}")
        a, b = self.interval
        if not a < b:
            raise ValueError(f"interval must satisfy a < b, got {self.interval!r}")
        self.cfg2_ = TikhonovConfig(
            T2=self.T2, gamma2=self.gamma2, C=self.C,
            alpha_lo=self.alpha_lo, alpha_hi=self.alpha_hi,
        )
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X) -> np.ndarray:
        """Return derivative values row by row, shape (n_signals, M)."""
        check_fitted(self, ("cfg2_",))
        X = as_signal_matrix(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} features, but the estimator was fitted with "
                f"{self.n_features_in_}"
            )
        a, b = self.interval
        delta = self.delta1 * math.sqrt(X.shape[1] / 3.0)
        out = np.empty_like(X)
        alphas = []
        for i, row in enumerate(X):
            fit = tikhonov_fit(row, delta, self.cfg2_, (a, b))
            out[i] = tikhonov_derivative(fit, self.cfg2_, (a, b), row.size)
            alphas.append(fit.alpha)
        self.alphas_ = alphas
        return out
