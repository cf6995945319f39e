"""Input validation helpers shared by the estimators and the CLI."""

from __future__ import annotations

import numpy as np
from sklearn.exceptions import NotFittedError


def as_signal_matrix(X) -> np.ndarray:
    """Coerce X to a 2-D float array of row signals (1-D becomes one row)."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[np.newaxis, :]
    if X.ndim != 2 or X.shape[1] < 2:
        raise ValueError(
            f"expected a signal vector or a 2-D array of row signals, got shape {X.shape}"
        )
    if not np.all(np.isfinite(X)):
        raise ValueError("input contains NaN or infinity")
    return X


def check_fitted(estimator, attributes: tuple[str, ...]) -> None:
    """Raise NotFittedError unless every attribute is present on the estimator."""
    missing = [attr for attr in attributes if not hasattr(estimator, attr)]
    if missing:
        raise NotFittedError(
            f"{type(estimator).__name__} is not fitted yet; call fit before transform"
        )
