"""Adaptive multi-interval Fourier-extension differentiation of noisy samples.

The package recovers derivatives from uniformly sampled, noise-contaminated
data by splitting the interval into dyadic pieces sized to the local
frequency content, fitting a short weighted Fourier-extension expansion on
each piece with a discrepancy-stopped truncated SVD, and differentiating the
fits analytically.  A single-interval Tikhonov baseline and a benchmark
harness are included for comparison studies.
"""

from .api import check_sample_count, differentiate, differentiate_baseline
from .benchmark import (
    BenchRecord,
    add_noise,
    emit_plotdata,
    relative_error,
    run_benchmark,
)
from .config import SpectralConfig, build_config, valid_sample_counts
from .estimators import AdaptiveSpectralDifferentiator, TikhonovSpectralDifferentiator
from .functions import TEST_FUNCTIONS, TestFunction, get_function
from .operators import (
    PrecomputedOperators,
    build_operators,
    load_operators,
    save_operators,
    trig_upsample,
)
from .partition import (
    PartitionLeaf,
    PartitionResult,
    SignalRecord,
    accept_test,
    downsample,
    noise_floor,
    recursive_fit,
)
from .reconstruct import (
    DerivativeResult,
    reconstruct_derivative,
    reconstruct_derivative_order,
    reconstruct_function,
)
from .tikhonov import (
    AlphaBracketError,
    TikhonovConfig,
    TikhonovFit,
    alpha_num_floor,
    select_alpha,
    tikhonov_derivative,
    tikhonov_fit,
)
from .tsvd import LocalFit, discrepancy_bracket_check, local_fourier_fit

__version__ = "0.1.0"

__all__ = [
    "AdaptiveSpectralDifferentiator",
    "AlphaBracketError",
    "BenchRecord",
    "DerivativeResult",
    "LocalFit",
    "PartitionLeaf",
    "PartitionResult",
    "PrecomputedOperators",
    "SignalRecord",
    "SpectralConfig",
    "TEST_FUNCTIONS",
    "TestFunction",
    "TikhonovConfig",
    "TikhonovFit",
    "TikhonovSpectralDifferentiator",
    "accept_test",
    "add_noise",
    "alpha_num_floor",
    "build_config",
    "build_operators",
    "check_sample_count",
    "differentiate",
    "differentiate_baseline",
    "discrepancy_bracket_check",
    "downsample",
    "emit_plotdata",
    "get_function",
    "load_operators",
    "local_fourier_fit",
    "noise_floor",
    "reconstruct_derivative",
    "reconstruct_derivative_order",
    "reconstruct_function",
    "recursive_fit",
    "relative_error",
    "run_benchmark",
    "save_operators",
    "select_alpha",
    "tikhonov_derivative",
    "tikhonov_fit",
    "trig_upsample",
    "valid_sample_counts",
]
