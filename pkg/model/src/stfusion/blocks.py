"""Transformer building blocks: multi-head attention exposing per-head weights,
Pre-LN encoder/cross blocks, and sinusoidal positional encoding.

Dropout is disabled throughout (small-batch stability).
"""
from __future__ import annotations

import math

import torch
from torch import nn


class MultiHeadAttention(nn.Module):
    """Standard scaled dot-product attention; returns (output, weights) with
    weights of shape (B, heads, len_q, len_kv), rows summing to 1."""

    def __init__(self, dim: int, n_heads: int) -> None:
        super().__init__()
        self.dim = dim
        self.n_heads = n_heads
        self.head_dim = dim // n_heads
        self.q_proj = nn.Linear(dim, dim)
        self.k_proj = nn.Linear(dim, dim)
        self.v_proj = nn.Linear(dim, dim)
        self.out_proj = nn.Linear(dim, dim)

    def forward(self, query: torch.Tensor,
                key_value: torch.Tensor) -> tuple[torch.Tensor, torch.Tensor]:
        b, lq, _ = query.shape
        lk = key_value.shape[1]
        q = self.q_proj(query).view(b, lq, self.n_heads, self.head_dim)
        k = self.k_proj(key_value).view(b, lk, self.n_heads, self.head_dim)
        v = self.v_proj(key_value).view(b, lk, self.n_heads, self.head_dim)
        q = q.transpose(1, 2)  # B, H, Lq, hd
        k = k.transpose(1, 2)
        v = v.transpose(1, 2)
        scores = torch.matmul(q, k.transpose(-2, -1)) / math.sqrt(self.head_dim)
        weights = torch.softmax(scores, dim=-1)
        out = torch.matmul(weights, v)
        out = out.transpose(1, 2).reshape(b, lq, self.dim)
        return self.out_proj(out), weights


class FeedForward(nn.Module):
    def __init__(self, dim: int, ratio: int) -> None:
        super().__init__()
        self.fc1 = nn.Linear(dim, ratio * dim)
        self.fc2 = nn.Linear(ratio * dim, dim)
        self.act = nn.GELU()

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return self.fc2(self.act(self.fc1(x)))


class EncoderBlock(nn.Module):
    """Pre-LN self-attention block: x + MHA(LN(x)), then x + FFN(LN(x))."""

    def __init__(self, dim: int, n_heads: int, ffn_ratio: int) -> None:
        super().__init__()
        self.ln_attn = nn.LayerNorm(dim)
        self.attn = MultiHeadAttention(dim, n_heads)
        self.ln_ffn = nn.LayerNorm(dim)
        self.ffn = FeedForward(dim, ffn_ratio)

    def forward(self, x: torch.Tensor) -> tuple[torch.Tensor, torch.Tensor]:
        h = self.ln_attn(x)
        attn_out, weights = self.attn(h, h)
        x = x + attn_out
        x = x + self.ffn(self.ln_ffn(x))
        return x, weights


class CrossBlock(nn.Module):
    """Pre-LN cross-attention block: q + MHA(LN(q), LN(kv)), then FFN."""

    def __init__(self, dim: int, n_heads: int, ffn_ratio: int) -> None:
        super().__init__()
        self.ln_q = nn.LayerNorm(dim)
        self.ln_kv = nn.LayerNorm(dim)
        self.attn = MultiHeadAttention(dim, n_heads)
        self.ln_ffn = nn.LayerNorm(dim)
        self.ffn = FeedForward(dim, ffn_ratio)

    def forward(self, query: torch.Tensor,
                key_value: torch.Tensor) -> tuple[torch.Tensor, torch.Tensor]:
        attn_out, weights = self.attn(self.ln_q(query), self.ln_kv(key_value))
        x = query + attn_out
        x = x + self.ffn(self.ln_ffn(x))
        return x, weights


class EncoderStack(nn.Module):
    """n_layers Pre-LN blocks followed by a final LayerNorm; collects the
    per-layer attention tensors."""

    def __init__(self, dim: int, n_heads: int, ffn_ratio: int,
                 n_layers: int) -> None:
        super().__init__()
        self.blocks = nn.ModuleList(
            EncoderBlock(dim, n_heads, ffn_ratio) for _ in range(n_layers))
        self.final_ln = nn.LayerNorm(dim)

    def forward(self, x: torch.Tensor) -> tuple[torch.Tensor, list[torch.Tensor]]:
        attentions = []
        for block in self.blocks:
            x, weights = block(x)
            attentions.append(weights)
        return self.final_ln(x), attentions


def sinusoidal_encoding(length: int, dim: int,
                        dtype: torch.dtype = torch.float32) -> torch.Tensor:
    """Fixed (length, dim) sine/cosine table; dim must be even."""
    if dim % 2:
        raise ValueError("positional encoding dim must be even")
    position = torch.arange(length, dtype=torch.float64).unsqueeze(1)
    div = torch.exp(torch.arange(0, dim, 2, dtype=torch.float64)
                    * (-math.log(10000.0) / dim))
    table = torch.zeros(length, dim, dtype=torch.float64)
    table[:, 0::2] = torch.sin(position * div)
    table[:, 1::2] = torch.cos(position * div)
    return table.to(dtype)


class ProjectionMLP(nn.Module):
    """Two-layer projection d_in -> d_out -> d_out with GELU."""

    def __init__(self, d_in: int, d_out: int) -> None:
        super().__init__()
        self.fc1 = nn.Linear(d_in, d_out)
        self.fc2 = nn.Linear(d_out, d_out)
        self.act = nn.GELU()

    def forward(self, x: torch.Tensor) -> torch.Tensor:
        return self.fc2(self.act(self.fc1(x)))
