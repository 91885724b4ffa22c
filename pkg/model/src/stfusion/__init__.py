"""Dual-branch static-temporal transformer for windowed sEMG fatigue features."""
from .config import ConfigError, ModelConfig
from .data import DataError, SequenceDataset, Standardizer, load_sequences
from .model import (
    FatigueClassifier,
    ForwardTrace,
    count_parameters,
)
from .rollout import attention_rollout, rollout_matrix
from .tokenizer import FeatureTokenizer
from .train import (
    TrainResult,
    evaluate,
    load_checkpoint,
    macro_metrics,
    save_checkpoint,
    train,
    write_metrics_csv,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DataError",
    "FatigueClassifier",
    "FeatureTokenizer",
    "ForwardTrace",
    "ModelConfig",
    "SequenceDataset",
    "Standardizer",
    "TrainResult",
    "attention_rollout",
    "count_parameters",
    "evaluate",
    "load_checkpoint",
    "load_sequences",
    "macro_metrics",
    "rollout_matrix",
    "save_checkpoint",
    "train",
    "write_metrics_csv",
]
