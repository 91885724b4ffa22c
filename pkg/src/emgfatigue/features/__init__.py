from .ids import (
    CANONICAL_FEATURES,
    GROUPED_FEATURES,
    AUXILIARY_FEATURES,
    TABLE_INCREASING,
    TABLE_DECREASING,
    FeatureDomain,
    TableGroup,
    feature_index,
    feature_domain,
    table_group,
)
from .config import EngineConfig
from .cache import SpectralCache, build_spectral_cache, fft_call_count, reset_fft_counter
from .timedomain import compute_time_features
from .spectral import compute_frequency_features, compute_tf_features
from .wavelet import compute_wavelet_features
from .nonlinear import compute_nonlinear_features
from .engine import FeatureMatrix, FeatureVector, extract_features
from .bench import BenchmarkReport, benchmark_engine

__all__ = [
    "CANONICAL_FEATURES",
    "GROUPED_FEATURES",
    "AUXILIARY_FEATURES",
    "TABLE_INCREASING",
    "TABLE_DECREASING",
    "FeatureDomain",
    "TableGroup",
    "feature_index",
    "feature_domain",
    "table_group",
    "EngineConfig",
    "SpectralCache",
    "build_spectral_cache",
    "fft_call_count",
    "reset_fft_counter",
    "compute_time_features",
    "compute_frequency_features",
    "compute_tf_features",
    "compute_wavelet_features",
    "compute_nonlinear_features",
    "FeatureMatrix",
    "FeatureVector",
    "extract_features",
    "BenchmarkReport",
    "benchmark_engine",
]
