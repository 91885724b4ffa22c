"""Dual-branch static-temporal classifier.

Static branch: the increasing- and decreasing-group feature vectors of the
current window are tokenized (one token per scalar + CLS) and encoded by two
independent Pre-LN stacks; each stack's output is projected D -> 2D and the
CLS embeddings are concatenated to f_seq (B, 4D). A residual path projects the
raw vectors through per-group MLPs to 2D each, concatenates, and maps 4D -> 4D
to f_mlp; the branch output is f_static = f_seq + f_mlp.

Temporal branch: the T-window group sequences are projected per timestep to D,
given sinusoidal positions, and encoded by two independent Pre-LN stacks.
Bidirectional cross-feature attention (inc queries attend to dec keys/values
and vice versa) yields two more streams; the four streams are concatenated per
timestep (4D) and mean-pooled over T to f_temp (B, 4D).

Fusion: both branch outputs are projected 4D -> 2D, concatenated (f_comb,
4D), passed through a head MLP to f_joint (2D), and linearly classified into 3
fatigue states; auxiliary linear heads on the projected branch embeddings give
y_s and y_t for multi-scale supervision:

    L = CE(y, Y) + lambda_s * CE(y_s, Y) + lambda_t * CE(y_t, Y)

Ablation toggles drop the corresponding modules entirely (each strictly
reduces the parameter count); with one branch disabled the head adapts to the
surviving 2D embedding.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import torch
from torch import nn
from torch.nn import functional as F

from .blocks import CrossBlock, EncoderStack, ProjectionMLP, sinusoidal_encoding
from .config import ConfigError, ModelConfig
from .tokenizer import FeatureTokenizer


@dataclass
class ForwardTrace:
    """Intermediate activations and attention maps from one forward pass."""

    h_inc: torch.Tensor | None = None          # B, T, D temporal embeddings
    h_dec: torch.Tensor | None = None
    o_transf_inc: torch.Tensor | None = None   # B, T, D
    o_transf_dec: torch.Tensor | None = None
    o_cross_inc: torch.Tensor | None = None    # B, T, D
    o_cross_dec: torch.Tensor | None = None
    f_temp: torch.Tensor | None = None         # B, 4D
    f_cls_inc: torch.Tensor | None = None      # B, 2D
    f_cls_dec: torch.Tensor | None = None
    f_seq: torch.Tensor | None = None          # B, 4D
    f_mlp: torch.Tensor | None = None          # B, 4D
    f_static: torch.Tensor | None = None       # B, 4D
    f_static_proj: torch.Tensor | None = None  # B, 2D
    f_temp_proj: torch.Tensor | None = None    # B, 2D
    f_comb: torch.Tensor | None = None         # B, 4D or B, 2D under ablation
    f_joint: torch.Tensor | None = None        # B, 2D
    logits: torch.Tensor | None = None         # B, 3
    logits_static: torch.Tensor | None = None
    logits_temporal: torch.Tensor | None = None
    attn_static_inc: list = field(default_factory=list)    # per layer
    attn_static_dec: list = field(default_factory=list)
    attn_temporal_inc: list = field(default_factory=list)  # per layer
    attn_temporal_dec: list = field(default_factory=list)
    attn_cross_inc: list = field(default_factory=list)     # inc queries -> dec
    attn_cross_dec: list = field(default_factory=list)     # dec queries -> inc


class StaticStack(nn.Module):
    """Tokenizer + encoder + tokenwise projection D -> 2D; returns the CLS
    embedding and the per-layer attention maps."""

    def __init__(self, n_features: int, cfg: ModelConfig) -> None:
        super().__init__()
        d = cfg.embed_dim
        self.tokenizer = FeatureTokenizer(n_features, d)
        self.encoder = EncoderStack(d, cfg.n_heads, cfg.ffn_ratio, cfg.n_layers)
        self.widen = nn.Linear(d, 2 * d)

    def forward(self, x: torch.Tensor):
        tokens = self.tokenizer(x)
        encoded, attentions = self.encoder(tokens)
        widened = self.widen(encoded)          # B, d+1, 2D
        return widened[:, 0, :], attentions


class StaticBranch(nn.Module):
    def __init__(self, cfg: ModelConfig) -> None:
        super().__init__()
        d = cfg.embed_dim
        self.stack_inc = StaticStack(cfg.d_inc, cfg)
        self.stack_dec = StaticStack(cfg.d_dec, cfg)
        self.use_residual = cfg.use_residual_mlp
        if self.use_residual:
            self.res_inc = ProjectionMLP(cfg.d_inc, 2 * d)
            self.res_dec = ProjectionMLP(cfg.d_dec, 2 * d)
            self.res_fuse = nn.Linear(4 * d, 4 * d)

    def forward(self, x_inc: torch.Tensor, x_dec: torch.Tensor,
                trace: ForwardTrace) -> torch.Tensor:
        f_cls_inc, attn_inc = self.stack_inc(x_inc)
        f_cls_dec, attn_dec = self.stack_dec(x_dec)
        f_seq = torch.cat([f_cls_inc, f_cls_dec], dim=-1)
        trace.f_cls_inc = f_cls_inc
        trace.f_cls_dec = f_cls_dec
        trace.f_seq = f_seq
        trace.attn_static_inc = attn_inc
        trace.attn_static_dec = attn_dec
        if self.use_residual:
            f_mlp = self.res_fuse(torch.cat(
                [self.res_inc(x_inc), self.res_dec(x_dec)], dim=-1))
            trace.f_mlp = f_mlp
            f_static = f_seq + f_mlp
        else:
            f_static = f_seq
        trace.f_static = f_static
        return f_static


class TemporalBranch(nn.Module):
    def __init__(self, cfg: ModelConfig) -> None:
        super().__init__()
        d = cfg.embed_dim
        self.proj_inc = ProjectionMLP(cfg.d_inc, d)
        self.proj_dec = ProjectionMLP(cfg.d_dec, d)
        self.enc_inc = EncoderStack(d, cfg.n_heads, cfg.ffn_ratio, cfg.n_layers)
        self.enc_dec = EncoderStack(d, cfg.n_heads, cfg.ffn_ratio, cfg.n_layers)
        self.use_cross = cfg.use_cross_attention
        if self.use_cross:
            self.cross_inc = CrossBlock(d, cfg.n_heads, cfg.ffn_ratio)
            self.cross_dec = CrossBlock(d, cfg.n_heads, cfg.ffn_ratio)
        self.register_buffer("pos_table",
                             sinusoidal_encoding(cfg.seq_len, d),
                             persistent=False)
        self.seq_len = cfg.seq_len

    def forward(self, seq_inc: torch.Tensor, seq_dec: torch.Tensor,
                trace: ForwardTrace) -> torch.Tensor:
        if seq_inc.shape[1] != self.seq_len:
            raise ValueError(
                f"expected sequences of length {self.seq_len}, "
                f"got {seq_inc.shape[1]}")
        pos = self.pos_table.to(seq_inc.dtype)
        h_inc = self.proj_inc(seq_inc) + pos
        h_dec = self.proj_dec(seq_dec) + pos
        trace.h_inc = h_inc
        trace.h_dec = h_dec

        o_inc, attn_inc = self.enc_inc(h_inc)
        o_dec, attn_dec = self.enc_dec(h_dec)
        trace.o_transf_inc = o_inc
        trace.o_transf_dec = o_dec
        trace.attn_temporal_inc = attn_inc
        trace.attn_temporal_dec = attn_dec

        if self.use_cross:
            o_cross_inc, w_ci = self.cross_inc(o_inc, o_dec)
            o_cross_dec, w_cd = self.cross_dec(o_dec, o_inc)
            trace.attn_cross_inc = [w_ci]
            trace.attn_cross_dec = [w_cd]
        else:
            o_cross_inc, o_cross_dec = o_inc, o_dec
        trace.o_cross_inc = o_cross_inc
        trace.o_cross_dec = o_cross_dec

        stacked = torch.cat([o_inc, o_dec, o_cross_inc, o_cross_dec], dim=-1)
        f_temp = stacked.mean(dim=1)           # pool over T
        trace.f_temp = f_temp
        return f_temp


class FusionHead(nn.Module):
    def __init__(self, cfg: ModelConfig) -> None:
        super().__init__()
        d = cfg.embed_dim
        self.cfg = cfg
        if cfg.use_static:
            self.proj_static = nn.Sequential(nn.Linear(4 * d, 2 * d), nn.GELU())
        if cfg.use_temporal:
            self.proj_temporal = nn.Sequential(nn.Linear(4 * d, 2 * d), nn.GELU())
        comb_width = 4 * d if (cfg.use_static and cfg.use_temporal) else 2 * d
        self.head = nn.Sequential(nn.Linear(comb_width, 2 * d), nn.GELU())
        self.classifier = nn.Linear(2 * d, cfg.n_classes)
        if cfg.use_multiscale_loss:
            if cfg.use_static:
                self.aux_static = nn.Linear(2 * d, cfg.n_classes)
            if cfg.use_temporal:
                self.aux_temporal = nn.Linear(2 * d, cfg.n_classes)

    def forward(self, f_static: torch.Tensor | None,
                f_temp: torch.Tensor | None, trace: ForwardTrace):
        parts = []
        if f_static is not None:
            fs = self.proj_static(f_static)
            trace.f_static_proj = fs
            parts.append(fs)
            if self.cfg.use_multiscale_loss:
                trace.logits_static = self.aux_static(fs)
        if f_temp is not None:
            ft = self.proj_temporal(f_temp)
            trace.f_temp_proj = ft
            parts.append(ft)
            if self.cfg.use_multiscale_loss:
                trace.logits_temporal = self.aux_temporal(ft)
        f_comb = torch.cat(parts, dim=-1) if len(parts) > 1 else parts[0]
        trace.f_comb = f_comb
        f_joint = self.head(f_comb)
        trace.f_joint = f_joint
        logits = self.classifier(f_joint)
        trace.logits = logits
        return logits


class FatigueClassifier(nn.Module):
    """Full dual-branch model; forward returns (logits, trace)."""

    def __init__(self, cfg: ModelConfig) -> None:
        super().__init__()
        if not (cfg.use_static or cfg.use_temporal):
            raise ConfigError("both branches disabled")
        self.cfg = cfg
        if cfg.use_static:
            self.static_branch = StaticBranch(cfg)
        if cfg.use_temporal:
            self.temporal_branch = TemporalBranch(cfg)
        self.fusion = FusionHead(cfg)

    def forward(self, seq_inc: torch.Tensor,
                seq_dec: torch.Tensor) -> tuple[torch.Tensor, ForwardTrace]:
        """seq_*: (B, T, d_*); the static branch reads the final timestep."""
        trace = ForwardTrace()
        f_static = None
        f_temp = None
        if self.cfg.use_static:
            f_static = self.static_branch(seq_inc[:, -1, :], seq_dec[:, -1, :],
                                          trace)
        if self.cfg.use_temporal:
            f_temp = self.temporal_branch(seq_inc, seq_dec, trace)
        logits = self.fusion(f_static, f_temp, trace)
        return logits, trace

    def loss(self, trace: ForwardTrace, labels: torch.Tensor) -> torch.Tensor:
        if labels.min() < 0 or labels.max() >= self.cfg.n_classes:
            raise ValueError("labels must lie in [0, n_classes)")
        total = F.cross_entropy(trace.logits, labels)
        if trace.logits_static is not None:
            total = total + self.cfg.lambda_static * F.cross_entropy(
                trace.logits_static, labels)
        if trace.logits_temporal is not None:
            total = total + self.cfg.lambda_temporal * F.cross_entropy(
                trace.logits_temporal, labels)
        return total


def count_parameters(model: nn.Module) -> int:
    return sum(p.numel() for p in model.parameters())
