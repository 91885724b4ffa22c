"""Interpretability exports: rollout weights and averaged attention maps."""
from __future__ import annotations

from pathlib import Path

import torch

from .data import SequenceDataset, Standardizer
from .model import FatigueClassifier
from .rollout import attention_rollout


@torch.no_grad()
def write_rollout_csv(model: FatigueClassifier, standardizer: Standardizer,
                      dataset: SequenceDataset, path: str | Path,
                      batch_size: int = 256) -> None:
    """Per-sequence temporal attention-rollout weights: seq_index,w1..wT."""
    model.eval()
    inc, dec = standardizer.apply(dataset.seq_inc, dataset.seq_dec)
    t = dataset.seq_len
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("seq_index," + ",".join(f"w{i + 1}" for i in range(t)) + "\n")
        for start in range(0, len(dataset), batch_size):
            _, trace = model(inc[start:start + batch_size],
                             dec[start:start + batch_size])
            weights = attention_rollout(trace)
            for row_i in range(weights.shape[0]):
                row = ",".join(f"{w:.10g}" for w in weights[row_i].tolist())
                fh.write(f"{start + row_i},{row}\n")


def _write_matrix(fh, name: str, matrix: torch.Tensor) -> None:
    fh.write(f"# {name} ({matrix.shape[0]}x{matrix.shape[1]})\n")
    for row in matrix.tolist():
        fh.write(",".join(f"{v:.10g}" for v in row) + "\n")


@torch.no_grad()
def write_attention_maps(model: FatigueClassifier, standardizer: Standardizer,
                         dataset: SequenceDataset, out_dir: str | Path,
                         batch_size: int = 256) -> list[Path]:
    """Dataset-averaged attention matrices (heads and layers averaged):

    static_self_inc.csv / static_self_dec.csv   token x token maps
    temporal_cross_inc.csv / temporal_cross_dec.csv   T x T cross maps
    """
    model.eval()
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    inc, dec = standardizer.apply(dataset.seq_inc, dataset.seq_dec)

    sums: dict[str, torch.Tensor] = {}
    count = 0

    def accumulate(name: str, attn_layers: list[torch.Tensor], weight: int):
        if not attn_layers:
            return
        stacked = torch.stack([a.mean(dim=1) for a in attn_layers])  # L,B,Q,K
        mean = stacked.mean(dim=0).sum(dim=0)                        # Q,K
        sums[name] = sums.get(name, 0) + mean

    for start in range(0, len(dataset), batch_size):
        batch_inc = inc[start:start + batch_size]
        _, trace = model(batch_inc, dec[start:start + batch_size])
        n = batch_inc.shape[0]
        accumulate("static_self_inc", trace.attn_static_inc, n)
        accumulate("static_self_dec", trace.attn_static_dec, n)
        accumulate("temporal_cross_inc", trace.attn_cross_inc, n)
        accumulate("temporal_cross_dec", trace.attn_cross_dec, n)
        count += n

    written = []
    for name, total in sums.items():
        path = out_dir / f"{name}.csv"
        with path.open("w", encoding="utf-8", newline="\n") as fh:
            _write_matrix(fh, name, total / count)
        written.append(path)
    return written
