"""Sequence-dataset loading.

Reads the upstream pipeline's sequence CSV: header
``seq_index,window_offset,inc_<name>...,dec_<name>...,label`` with one row per
window of each T-window sequence; the label is the integer fatigue class of
the final window. Group widths come from the header prefixes.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch


class DataError(ValueError):
    pass


@dataclass
class SequenceDataset:
    seq_inc: torch.Tensor      # N, T, d_inc
    seq_dec: torch.Tensor      # N, T, d_dec
    labels: torch.Tensor       # N
    inc_names: list[str]
    dec_names: list[str]

    def __len__(self) -> int:
        return self.seq_inc.shape[0]

    @property
    def seq_len(self) -> int:
        return self.seq_inc.shape[1]

    @property
    def d_inc(self) -> int:
        return self.seq_inc.shape[2]

    @property
    def d_dec(self) -> int:
        return self.seq_dec.shape[2]


def load_sequences(path: str | Path) -> SequenceDataset:
    path = Path(path)
    with path.open("r", encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        if header[:2] != ["seq_index", "window_offset"] or header[-1] != "label":
            raise DataError(f"{path}: not a sequence dataset (bad header)")
        inc_cols = [i for i, h in enumerate(header) if h.startswith("inc_")]
        dec_cols = [i for i, h in enumerate(header) if h.startswith("dec_")]
        if not inc_cols or not dec_cols:
            raise DataError(f"{path}: header has no inc_/dec_ feature columns")
        inc_names = [header[i][4:] for i in inc_cols]
        dec_names = [header[i][4:] for i in dec_cols]

        rows: dict[int, list[tuple[int, list[float], list[float], int]]] = {}
        for lineno, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != len(header):
                raise DataError(
                    f"{path}: line {lineno}: expected {len(header)} fields, "
                    f"got {len(parts)}")
            try:
                seq_idx = int(parts[0])
                offset = int(parts[1])
                inc = [float(parts[i]) for i in inc_cols]
                dec = [float(parts[i]) for i in dec_cols]
                label = int(parts[-1])
            except ValueError as exc:
                raise DataError(f"{path}: line {lineno}: {exc}") from None
            rows.setdefault(seq_idx, []).append((offset, inc, dec, label))

    if not rows:
        raise DataError(f"{path}: empty dataset")

    seq_lens = {len(v) for v in rows.values()}
    if len(seq_lens) != 1:
        raise DataError(f"{path}: inconsistent sequence lengths {seq_lens}")
    t = seq_lens.pop()

    n = len(rows)
    seq_inc = np.empty((n, t, len(inc_cols)), dtype=np.float32)
    seq_dec = np.empty((n, t, len(dec_cols)), dtype=np.float32)
    labels = np.empty(n, dtype=np.int64)
    for out_i, seq_idx in enumerate(sorted(rows)):
        entries = sorted(rows[seq_idx], key=lambda e: e[0])
        offsets = [e[0] for e in entries]
        if offsets != list(range(t)):
            raise DataError(
                f"{path}: sequence {seq_idx} has offsets {offsets}")
        for offset, inc, dec, label in entries:
            seq_inc[out_i, offset] = inc
            seq_dec[out_i, offset] = dec
        labels[out_i] = entries[-1][3]

    return SequenceDataset(
        seq_inc=torch.from_numpy(seq_inc),
        seq_dec=torch.from_numpy(seq_dec),
        labels=torch.from_numpy(labels),
        inc_names=inc_names,
        dec_names=dec_names,
    )


@dataclass
class Standardizer:
    """Per-feature z-scoring fit on the training split."""

    inc_mean: torch.Tensor
    inc_std: torch.Tensor
    dec_mean: torch.Tensor
    dec_std: torch.Tensor

    @classmethod
    def fit(cls, seq_inc: torch.Tensor, seq_dec: torch.Tensor) -> "Standardizer":
        def stats(x):
            flat = x.reshape(-1, x.shape[-1])
            mean = flat.mean(dim=0)
            std = flat.std(dim=0)
            std = torch.where(std > 0, std, torch.ones_like(std))
            return mean, std

        inc_mean, inc_std = stats(seq_inc)
        dec_mean, dec_std = stats(seq_dec)
        return cls(inc_mean, inc_std, dec_mean, dec_std)

    def apply(self, seq_inc: torch.Tensor,
              seq_dec: torch.Tensor) -> tuple[torch.Tensor, torch.Tensor]:
        return ((seq_inc - self.inc_mean) / self.inc_std,
                (seq_dec - self.dec_mean) / self.dec_std)

    def state_dict(self) -> dict:
        return {"inc_mean": self.inc_mean, "inc_std": self.inc_std,
                "dec_mean": self.dec_mean, "dec_std": self.dec_std}

    @classmethod
    def from_state_dict(cls, state: dict) -> "Standardizer":
        return cls(state["inc_mean"], state["inc_std"],
                   state["dec_mean"], state["dec_std"])
