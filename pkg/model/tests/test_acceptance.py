"""Acceptance suite for the model package (run with ``pytest -v -s``).

Criteria
--------
1. Shape suite: every forward-trace dimension holds for D in {8, 16, 256} and
   T in {1, 3, 5, 7}, any batch >= 1; runs in seconds.
2. Gradient check: autograd gradients of the full three-term loss match
   central finite differences for every parameter (D=8, T=3, B=2, float64),
   within 1e-4 relative (plus a 1e-7 absolute floor for structurally-zero
   gradients such as key-projection biases, which softmax ignores).
3. Toy training: >= 95% held-out accuracy within 200 epochs at D=32 on a
   separable synthetic 3-class dataset, in well under 5 minutes.
4. Parameter accounting: the full model at D=256, T=5, d=(15,16) is within
   10% of the 11,155,721 reference; every ablation toggle strictly reduces
   the count.
5. Rollout validity: attention-rollout weights are nonnegative and sum to
   1 +- 1e-6 for every exported sequence.
"""
import time

import numpy as np
import pytest
import torch

from conftest import make_toy_dataset
from stfusion import (
    FatigueClassifier,
    ModelConfig,
    count_parameters,
    evaluate,
    train,
)
from stfusion.export import write_rollout_csv

torch.set_num_threads(1)

PARAM_REFERENCE = 11_155_721


def report(name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[{status}] {name}{suffix}")


def test_criterion_1_shape_suite():
    start = time.perf_counter()
    checked = 0
    for dim in (8, 16, 256):
        for t in (1, 3, 5, 7):
            for batch in (1, 3):
                cfg = ModelConfig(d_inc=3, d_dec=4, embed_dim=dim, seq_len=t)
                torch.manual_seed(0)
                model = FatigueClassifier(cfg)
                logits, trace = model(torch.randn(batch, t, 3),
                                      torch.randn(batch, t, 4))
                assert logits.shape == (batch, 3)
                assert trace.h_inc.shape == (batch, t, dim)
                assert trace.h_dec.shape == (batch, t, dim)
                assert trace.o_transf_inc.shape == (batch, t, dim)
                assert trace.o_transf_dec.shape == (batch, t, dim)
                assert trace.o_cross_inc.shape == (batch, t, dim)
                assert trace.o_cross_dec.shape == (batch, t, dim)
                assert trace.f_temp.shape == (batch, 4 * dim)
                assert trace.f_cls_inc.shape == (batch, 2 * dim)
                assert trace.f_cls_dec.shape == (batch, 2 * dim)
                assert trace.f_seq.shape == (batch, 4 * dim)
                assert trace.f_mlp.shape == (batch, 4 * dim)
                assert trace.f_static.shape == (batch, 4 * dim)
                assert trace.f_static_proj.shape == (batch, 2 * dim)
                assert trace.f_temp_proj.shape == (batch, 2 * dim)
                assert trace.f_comb.shape == (batch, 4 * dim)
                assert trace.f_joint.shape == (batch, 2 * dim)
                assert trace.logits_static.shape == (batch, 3)
                assert trace.logits_temporal.shape == (batch, 3)
                for attn in (trace.attn_temporal_inc + trace.attn_temporal_dec
                             + trace.attn_cross_inc + trace.attn_cross_dec):
                    sums = attn.sum(dim=-1)
                    assert torch.allclose(sums, torch.ones_like(sums),
                                          atol=1e-6)
                checked += 1
    elapsed = time.perf_counter() - start
    report("criterion 1: forward-trace shape suite", True,
           f"{checked} (D, T, B) combos in {elapsed:.1f}s")


def test_criterion_2_gradient_check():
    torch.manual_seed(0)
    cfg = ModelConfig(d_inc=3, d_dec=4, embed_dim=8, seq_len=3)
    model = FatigueClassifier(cfg).double()
    x_inc = torch.randn(2, 3, 3, dtype=torch.float64)
    x_dec = torch.randn(2, 3, 4, dtype=torch.float64)
    labels = torch.tensor([0, 2])

    def loss_value() -> torch.Tensor:
        _, trace = model(x_inc, x_dec)
        return model.loss(trace, labels)

    model.zero_grad()
    loss_value().backward()
    analytic = {name: p.grad.clone() for name, p in model.named_parameters()}

    eps = 1e-6
    rtol, atol = 1e-4, 1e-7
    worst_rel = 0.0
    n_checked = 0
    start = time.perf_counter()
    with torch.no_grad():
        for name, p in model.named_parameters():
            flat = p.view(-1)
            grad = analytic[name].view(-1)
            for i in range(flat.numel()):
                orig = flat[i].item()
                flat[i] = orig + eps
                lp = float(loss_value())
                flat[i] = orig - eps
                lm = float(loss_value())
                flat[i] = orig
                fd = (lp - lm) / (2 * eps)
                g = float(grad[i])
                diff = abs(fd - g)
                scale = max(abs(fd), abs(g))
                assert diff <= atol + rtol * scale, (
                    f"{name}[{i}]: analytic={g!r} fd={fd!r}")
                if scale > 1e-4:
                    worst_rel = max(worst_rel, diff / scale)
                n_checked += 1
    elapsed = time.perf_counter() - start
    report("criterion 2: gradients vs central finite differences", True,
           f"{n_checked} parameters, worst rel err {worst_rel:.2e}, "
           f"{elapsed:.0f}s")


def test_criterion_3_toy_training():
    start = time.perf_counter()
    train_set = make_toy_dataset(n_per_class=150, seed=10)
    heldout = make_toy_dataset(n_per_class=60, seed=11)
    cfg = ModelConfig(d_inc=train_set.d_inc, d_dec=train_set.d_dec,
                      embed_dim=32, seq_len=train_set.seq_len, seed=1)
    result = train(train_set, cfg, max_epochs=60)
    accuracy, _ = evaluate(result.model, result.standardizer, heldout)
    elapsed = time.perf_counter() - start
    epochs = len(result.history)
    ok = accuracy >= 0.95 and epochs <= 200 and elapsed < 300
    report("criterion 3: toy training >= 95% held-out accuracy", ok,
           f"{accuracy * 100:.1f}% after {epochs} epochs, {elapsed:.0f}s")
    assert accuracy >= 0.95
    assert epochs <= 200
    assert elapsed < 300


def test_criterion_4_parameter_accounting():
    cfg = ModelConfig(d_inc=15, d_dec=16, embed_dim=256, seq_len=5)
    full = count_parameters(FatigueClassifier(cfg))
    rel = abs(full - PARAM_REFERENCE) / PARAM_REFERENCE
    ok = rel <= 0.10
    toggles_ok = True
    details = [f"full={full} ({rel * 100:+.1f}% vs {PARAM_REFERENCE})"]
    for toggle in ("use_temporal", "use_static", "use_cross_attention",
                   "use_residual_mlp", "use_multiscale_loss"):
        reduced_cfg = ModelConfig(d_inc=15, d_dec=16, embed_dim=256,
                                  seq_len=5, **{toggle: False})
        reduced = count_parameters(FatigueClassifier(reduced_cfg))
        toggles_ok = toggles_ok and reduced < full
        details.append(f"{toggle}: {reduced}")
    report("criterion 4: parameter accounting and ablation monotonicity",
           ok and toggles_ok, details[0])
    assert ok, details
    assert toggles_ok, details


def test_criterion_5_rollout_validity(tmp_path):
    dataset = make_toy_dataset(n_per_class=50, seed=21)
    cfg = ModelConfig(d_inc=dataset.d_inc, d_dec=dataset.d_dec, embed_dim=16,
                      seq_len=dataset.seq_len, seed=4)
    result = train(dataset, cfg, max_epochs=2)
    path = tmp_path / "rollout.csv"
    write_rollout_csv(result.model, result.standardizer, dataset, path)
    lines = path.read_text().strip().splitlines()
    assert len(lines) == 1 + len(dataset)
    worst_dev = 0.0
    for line in lines[1:]:
        weights = np.array([float(v) for v in line.split(",")[1:]])
        assert np.all(weights >= 0)
        worst_dev = max(worst_dev, abs(weights.sum() - 1.0))
        assert abs(weights.sum() - 1.0) <= 1e-6
    report("criterion 5: rollout weights nonnegative, sum to 1", True,
           f"{len(lines) - 1} sequences, worst |sum-1| {worst_dev:.1e}")
