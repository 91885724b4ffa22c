"""Model and training configuration."""
from __future__ import annotations

from dataclasses import dataclass


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ModelConfig:
    d_inc: int
    d_dec: int
    embed_dim: int = 256          # D
    seq_len: int = 5              # T
    n_heads: int = 4
    ffn_ratio: int = 4
    n_layers: int = 2             # per encoder stack
    n_classes: int = 3

    lambda_static: float = 1.0
    lambda_temporal: float = 1.0

    use_temporal: bool = True
    use_static: bool = True
    use_cross_attention: bool = True
    use_residual_mlp: bool = True
    use_multiscale_loss: bool = True

    lr: float = 1e-4
    batch_size: int = 32
    max_epochs: int = 1000
    patience: int = 50
    val_fraction: float = 0.2
    seed: int = 0

    def __post_init__(self) -> None:
        if self.embed_dim % self.n_heads != 0:
            raise ConfigError(
                f"embed_dim {self.embed_dim} not divisible by n_heads {self.n_heads}")
        if self.d_inc < 1 or self.d_dec < 1:
            raise ConfigError("feature group widths must be >= 1")
        if self.seq_len < 1:
            raise ConfigError("seq_len must be >= 1")
        if self.lambda_static < 0 or self.lambda_temporal < 0:
            raise ConfigError("loss weights must be >= 0")
        if not (self.use_temporal or self.use_static):
            raise ConfigError("at least one of the static/temporal branches "
                              "must be enabled")
        if self.n_layers < 1:
            raise ConfigError("n_layers must be >= 1")
