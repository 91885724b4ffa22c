"""Train the classifier on a sequence dataset and export artifacts.

    stfusion train --data sequences.csv --out-dir run/ [--dim 256] ...

Writes metrics.csv, rollout.csv, attention maps, and checkpoint.pt into the
output directory.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ModelConfig
from .data import load_sequences
from .export import write_attention_maps, write_rollout_csv
from .train import save_checkpoint, train, write_metrics_csv


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stfusion")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train on an exported sequence dataset")
    p.add_argument("--data", required=True, help="sequence CSV")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--dim", type=int, default=256, help="embedding dimension")
    p.add_argument("--heads", type=int, default=4)
    p.add_argument("--layers", type=int, default=2)
    p.add_argument("--lr", type=float, default=1e-4)
    p.add_argument("--batch-size", type=int, default=32)
    p.add_argument("--epochs", type=int, default=1000)
    p.add_argument("--patience", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-temporal", action="store_true")
    p.add_argument("--no-static", action="store_true")
    p.add_argument("--no-cross-attention", action="store_true")
    p.add_argument("--no-residual-mlp", action="store_true")
    p.add_argument("--no-multiscale-loss", action="store_true")
    return parser


def cmd_train(args: argparse.Namespace) -> int:
    dataset = load_sequences(args.data)
    cfg = ModelConfig(
        d_inc=dataset.d_inc,
        d_dec=dataset.d_dec,
        embed_dim=args.dim,
        seq_len=dataset.seq_len,
        n_heads=args.heads,
        n_layers=args.layers,
        lr=args.lr,
        batch_size=args.batch_size,
        max_epochs=args.epochs,
        patience=args.patience,
        seed=args.seed,
        use_temporal=not args.no_temporal,
        use_static=not args.no_static,
        use_cross_attention=not args.no_cross_attention,
        use_residual_mlp=not args.no_residual_mlp,
        use_multiscale_loss=not args.no_multiscale_loss,
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    result = train(dataset, cfg)
    print(f"parameters: {result.n_parameters}")
    best = result.best
    print(f"best epoch {best.epoch}: val_loss={best.val_loss:.4f} "
          f"precision={best.precision:.4f} recall={best.recall:.4f} "
          f"f1={best.f1:.4f}")

    write_metrics_csv(result.history, out_dir / "metrics.csv")
    save_checkpoint(result, cfg, out_dir / "checkpoint.pt")
    if cfg.use_temporal:
        write_rollout_csv(result.model, result.standardizer, dataset,
                          out_dir / "rollout.csv")
    write_attention_maps(result.model, result.standardizer, dataset,
                         out_dir / "attention")
    print(f"wrote artifacts to {out_dir}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "train":
        return cmd_train(args)
    return 2


if __name__ == "__main__":
    sys.exit(main())
