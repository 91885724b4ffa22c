"""Attention rollout over the temporal encoders.

Per layer: average the heads, add the identity (residual path), and
row-normalize; multiply the per-layer matrices in depth order. The reported
window weights are the mean over query rows of the rollout product (the
temporal branch mean-pools every output position), averaged over the two
group encoders. Weights are nonnegative and sum to 1 per sequence.
"""
from __future__ import annotations

import torch

from .model import ForwardTrace


def rollout_matrix(attentions: list[torch.Tensor]) -> torch.Tensor:
    """(B, T, T) rollout product from per-layer (B, H, T, T) attention maps."""
    if not attentions:
        raise ValueError("no attention tensors to roll out")
    result = None
    for layer_attn in attentions:
        a = layer_attn.mean(dim=1)                      # average heads
        eye = torch.eye(a.shape[-1], dtype=a.dtype, device=a.device)
        a = a + eye
        a = a / a.sum(dim=-1, keepdim=True)
        result = a if result is None else torch.bmm(a, result)
    return result


def attention_rollout(trace: ForwardTrace) -> torch.Tensor:
    """Per-sequence window weights (B, T), summing to 1."""
    if not trace.attn_temporal_inc or not trace.attn_temporal_dec:
        raise ValueError("trace has no temporal attention tensors; "
                         "run the temporal branch first")
    weights_inc = rollout_matrix(trace.attn_temporal_inc).mean(dim=1)
    weights_dec = rollout_matrix(trace.attn_temporal_dec).mean(dim=1)
    return 0.5 * (weights_inc + weights_dec)
