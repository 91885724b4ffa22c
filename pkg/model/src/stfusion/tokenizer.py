"""Feature tokenizer: one affine embedding per scalar feature plus a CLS token.

Token i+1 of the output is ``x[i] * weight[i] + bias[i]``; position 0 is a
learnable CLS summary token. No positional encoding is added downstream in the
static branch: token order carries no meaning, and the encoder is
permutation-equivariant over feature tokens.
"""
from __future__ import annotations

import torch
from torch import nn


class FeatureTokenizer(nn.Module):
    def __init__(self, n_features: int, dim: int) -> None:
        super().__init__()
        self.n_features = n_features
        self.dim = dim
        self.weight = nn.Parameter(torch.empty(n_features, dim))
        self.bias = nn.Parameter(torch.zeros(n_features, dim))
        self.cls = nn.Parameter(torch.empty(dim))
        nn.init.normal_(self.weight, std=0.02)
        nn.init.normal_(self.cls, std=0.02)

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        if x.shape[-1] != self.n_features:
            raise ValueError(
                f"expected {self.n_features} features, got {x.shape[-1]}")
        tokens = x.unsqueeze(-1) * self.weight + self.bias   # B, d, D
        cls = self.cls.expand(x.shape[0], 1, self.dim)
        return torch.cat([cls, tokens], dim=1)               # B, d+1, D
