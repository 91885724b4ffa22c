"""Training loop: Adam, early stopping on validation loss, per-epoch
precision/recall/F1, deterministic under a fixed seed, checkpointing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import torch

from .config import ModelConfig
from .data import SequenceDataset, Standardizer
from .model import FatigueClassifier, count_parameters

CHECKPOINT_FORMAT = "stfusion_ckpt_v1"


@dataclass
class EpochMetrics:
    epoch: int
    train_loss: float
    val_loss: float
    precision: float
    recall: float
    f1: float


@dataclass
class TrainResult:
    model: FatigueClassifier
    standardizer: Standardizer
    history: list[EpochMetrics] = field(default_factory=list)
    best_epoch: int = 0
    n_parameters: int = 0

    @property
    def best(self) -> EpochMetrics:
        return self.history[self.best_epoch]


def macro_metrics(pred: torch.Tensor, true: torch.Tensor,
                  n_classes: int) -> tuple[float, float, float]:
    """Macro-averaged precision, recall, F1 (absent classes contribute 0)."""
    precisions, recalls, f1s = [], [], []
    for c in range(n_classes):
        tp = int(((pred == c) & (true == c)).sum())
        fp = int(((pred == c) & (true != c)).sum())
        fn = int(((pred != c) & (true == c)).sum())
        p = tp / (tp + fp) if tp + fp else 0.0
        r = tp / (tp + fn) if tp + fn else 0.0
        f = 2 * p * r / (p + r) if p + r else 0.0
        precisions.append(p)
        recalls.append(r)
        f1s.append(f)
    return (float(np.mean(precisions)), float(np.mean(recalls)),
            float(np.mean(f1s)))


def train(dataset: SequenceDataset, cfg: ModelConfig,
          max_epochs: int | None = None) -> TrainResult:
    if len(dataset) == 0:
        raise ValueError("empty dataset")
    n_epochs = max_epochs if max_epochs is not None else cfg.max_epochs

    torch.manual_seed(cfg.seed)
    rng = np.random.default_rng(cfg.seed)

    n = len(dataset)
    order = rng.permutation(n)
    n_val = max(1, int(round(cfg.val_fraction * n)))
    val_idx = torch.from_numpy(order[:n_val].copy())
    train_idx = torch.from_numpy(order[n_val:].copy())
    if len(train_idx) == 0:
        raise ValueError("dataset too small to split")

    standardizer = Standardizer.fit(dataset.seq_inc[train_idx],
                                    dataset.seq_dec[train_idx])
    inc_all, dec_all = standardizer.apply(dataset.seq_inc, dataset.seq_dec)
    labels = dataset.labels

    model = FatigueClassifier(cfg)
    optimizer = torch.optim.Adam(model.parameters(), lr=cfg.lr)
    result = TrainResult(model=model, standardizer=standardizer,
                         n_parameters=count_parameters(model))

    best_val = float("inf")
    best_state = None
    stale = 0
    for epoch in range(n_epochs):
        model.train()
        perm = rng.permutation(len(train_idx))
        total_loss = 0.0
        n_batches = 0
        for start in range(0, len(perm), cfg.batch_size):
            batch = train_idx[perm[start:start + cfg.batch_size]]
            optimizer.zero_grad()
            logits, trace = model(inc_all[batch], dec_all[batch])
            loss = model.loss(trace, labels[batch])
            loss.backward()
            optimizer.step()
            total_loss += float(loss.detach())
            n_batches += 1

        model.eval()
        with torch.no_grad():
            logits, trace = model(inc_all[val_idx], dec_all[val_idx])
            val_loss = float(model.loss(trace, labels[val_idx]))
            pred = logits.argmax(dim=-1)
        precision, recall, f1 = macro_metrics(pred, labels[val_idx],
                                              cfg.n_classes)
        result.history.append(EpochMetrics(
            epoch=epoch, train_loss=total_loss / max(1, n_batches),
            val_loss=val_loss, precision=precision, recall=recall, f1=f1))

        if val_loss < best_val - 1e-12:
            best_val = val_loss
            best_state = {k: v.detach().clone()
                          for k, v in model.state_dict().items()}
            result.best_epoch = epoch
            stale = 0
        else:
            stale += 1
            if stale > cfg.patience:
                break

    if best_state is not None:
        model.load_state_dict(best_state)
    return result


@torch.no_grad()
def evaluate(model: FatigueClassifier, standardizer: Standardizer,
             dataset: SequenceDataset) -> tuple[float, torch.Tensor]:
    model.eval()
    inc, dec = standardizer.apply(dataset.seq_inc, dataset.seq_dec)
    logits, _ = model(inc, dec)
    pred = logits.argmax(dim=-1)
    accuracy = float((pred == dataset.labels).float().mean())
    return accuracy, pred


def save_checkpoint(result: TrainResult, cfg: ModelConfig,
                    path: str | Path) -> None:
    payload = {
        "format": CHECKPOINT_FORMAT,
        "config": cfg.__dict__,
        "state_dict": result.model.state_dict(),
        "standardizer": result.standardizer.state_dict(),
        "n_parameters": result.n_parameters,
        "best_epoch": result.best_epoch,
    }
    torch.save(payload, path)


def load_checkpoint(path: str | Path) -> tuple[FatigueClassifier, Standardizer, dict]:
    payload = torch.load(path, weights_only=False)
    if payload.get("format") != CHECKPOINT_FORMAT:
        raise ValueError(f"{path}: unknown checkpoint format")
    cfg = ModelConfig(**payload["config"])
    model = FatigueClassifier(cfg)
    model.load_state_dict(payload["state_dict"])
    standardizer = Standardizer.from_state_dict(payload["standardizer"])
    return model, standardizer, payload


def write_metrics_csv(history: list[EpochMetrics], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("epoch,loss,precision,recall,f1\n")
        for m in history:
            fh.write(f"{m.epoch},{m.val_loss:.10g},{m.precision:.10g},"
                     f"{m.recall:.10g},{m.f1:.10g}\n")
