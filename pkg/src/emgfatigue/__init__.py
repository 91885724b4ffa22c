"""sEMG muscle-fatigue analysis toolkit.

Parallel sliding-window feature extraction (34 canonical descriptors plus two
auxiliaries), trend-significance grouping, digital preprocessing, a synthetic
fatigue-signal generator, and a CLI pipeline producing model-ready sequence
datasets.
"""
from .errors import (
    ConfigError,
    DataError,
    EmgFatigueError,
    FilterDesignError,
    UsageError,
)
from .signals import (
    FatigueLabel,
    FatigueState,
    FilterChain,
    FilterSpec,
    SignalRecord,
    WindowPlan,
    WindowView,
    apply_filters,
    design_filters,
    rpe_to_state,
    segment_windows,
)
from .features import (
    AUXILIARY_FEATURES,
    CANONICAL_FEATURES,
    GROUPED_FEATURES,
    TABLE_DECREASING,
    TABLE_INCREASING,
    EngineConfig,
    FeatureMatrix,
    FeatureVector,
    SpectralCache,
    benchmark_engine,
    build_spectral_cache,
    extract_features,
)
from .synth import LabelPolicy, SynthSpec, generate
from .trends import (
    FeatureGroups,
    GroupingMode,
    TrendClass,
    TrendReport,
    fit_trend,
    group_features,
    pearson_correlation,
)

__version__ = "0.1.0"

__all__ = [
    "AUXILIARY_FEATURES",
    "CANONICAL_FEATURES",
    "ConfigError",
    "DataError",
    "EmgFatigueError",
    "EngineConfig",
    "FatigueLabel",
    "FatigueState",
    "FeatureGroups",
    "FeatureMatrix",
    "FeatureVector",
    "FilterChain",
    "FilterDesignError",
    "FilterSpec",
    "GROUPED_FEATURES",
    "GroupingMode",
    "LabelPolicy",
    "SignalRecord",
    "SpectralCache",
    "SynthSpec",
    "TABLE_DECREASING",
    "TABLE_INCREASING",
    "TrendClass",
    "TrendReport",
    "UsageError",
    "WindowPlan",
    "WindowView",
    "apply_filters",
    "benchmark_engine",
    "build_spectral_cache",
    "design_filters",
    "extract_features",
    "fit_trend",
    "generate",
    "group_features",
    "pearson_correlation",
    "rpe_to_state",
    "segment_windows",
]
