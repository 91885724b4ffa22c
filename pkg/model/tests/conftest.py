import numpy as np
import pytest
import torch

from stfusion.data import SequenceDataset

torch.set_num_threads(1)


def make_toy_dataset(n_per_class=150, d_inc=6, d_dec=5, t=5, seed=0,
                     class_sep=2.0, noise=0.3, means_seed=1234):
    """Separable 3-class sequence dataset: class-dependent feature means with
    small temporal jitter. ``means_seed`` fixes the class geometry so separate
    seeds draw fresh samples from the same distribution."""
    means_rng = np.random.default_rng(means_seed)
    means_inc = means_rng.normal(0, class_sep, (3, d_inc))
    means_dec = means_rng.normal(0, class_sep, (3, d_dec))
    rng = np.random.default_rng(seed)
    seq_inc, seq_dec, labels = [], [], []
    for c in range(3):
        for _ in range(n_per_class):
            base_i = means_inc[c] + rng.normal(0, noise, d_inc)
            base_d = means_dec[c] + rng.normal(0, noise, d_dec)
            seq_inc.append(base_i + rng.normal(0, 0.1, (t, d_inc)))
            seq_dec.append(base_d + rng.normal(0, 0.1, (t, d_dec)))
            labels.append(c)
    order = rng.permutation(len(labels))
    return SequenceDataset(
        seq_inc=torch.tensor(np.array(seq_inc)[order], dtype=torch.float32),
        seq_dec=torch.tensor(np.array(seq_dec)[order], dtype=torch.float32),
        labels=torch.tensor(np.array(labels)[order]),
        inc_names=[f"fi{k}" for k in range(d_inc)],
        dec_names=[f"fd{k}" for k in range(d_dec)],
    )


def write_sequence_csv(dataset: SequenceDataset, path) -> None:
    """Emit the upstream pipeline's sequence CSV format."""
    t = dataset.seq_len
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        header = (["seq_index", "window_offset"]
                  + [f"inc_{n}" for n in dataset.inc_names]
                  + [f"dec_{n}" for n in dataset.dec_names] + ["label"])
        fh.write(",".join(header) + "\n")
        for s in range(len(dataset)):
            for offset in range(t):
                fields = [str(s), str(offset)]
                fields += [f"{v:.10g}" for v in dataset.seq_inc[s, offset].tolist()]
                fields += [f"{v:.10g}" for v in dataset.seq_dec[s, offset].tolist()]
                fields.append(str(int(dataset.labels[s])))
                fh.write(",".join(fields) + "\n")


@pytest.fixture(scope="session")
def toy_dataset():
    return make_toy_dataset()
