"""Throughput benchmark for the extraction engine.

Before timing anything the benchmark verifies that every requested thread
count produces a bit-identical feature matrix; mismatched outputs abort the
run. Timings are wall-clock over the full extraction, repeated and reported
as windows/second with speedup relative to the single-thread baseline.
"""
from __future__ import annotations

import dataclasses
import hashlib
import platform
import time
from dataclasses import dataclass, field

from ..errors import UsageError
from ..signals import SignalRecord, WindowPlan
from .config import EngineConfig
from .engine import FeatureMatrix, extract_features


@dataclass
class ThreadResult:
    threads: int
    windows_per_sec: float
    speedup: float
    times_s: list[float]
    unstable: bool


@dataclass
class BenchmarkReport:
    n_windows: int
    results: list[ThreadResult] = field(default_factory=list)
    checksum: str = ""
    machine: dict[str, str] = field(default_factory=dict)

    def as_key_values(self) -> list[tuple[str, str]]:
        pairs: list[tuple[str, str]] = [
            ("n_windows", str(self.n_windows)),
            ("checksum", self.checksum),
        ]
        pairs.extend((f"machine_{k}", v) for k, v in self.machine.items())
        for r in self.results:
            prefix = f"threads_{r.threads}"
            pairs.append((f"{prefix}_windows_per_sec", f"{r.windows_per_sec:.3f}"))
            pairs.append((f"{prefix}_speedup", f"{r.speedup:.4f}"))
            pairs.append((f"{prefix}_unstable", str(r.unstable).lower()))
        return pairs


def matrix_checksum(matrix: FeatureMatrix) -> str:
    digest = hashlib.sha256()
    digest.update(matrix.values.tobytes())
    digest.update(matrix.quality.tobytes())
    return digest.hexdigest()


def benchmark_engine(record: SignalRecord, plan: WindowPlan, cfg: EngineConfig,
                     thread_counts: list[int], repeats: int = 3,
                     min_windows: int = 10_000) -> BenchmarkReport:
    """Time extraction across thread counts after a determinism gate."""
    n_windows = plan.count_windows(record.n_samples, record.sampling_rate)
    total_items = n_windows * record.n_channels
    if total_items < min_windows:
        raise UsageError(
            f"benchmark workload has {total_items} windows; need >= {min_windows}"
        )
    if 1 not in thread_counts:
        thread_counts = [1] + list(thread_counts)

    reference: FeatureMatrix | None = None
    for threads in thread_counts:
        run_cfg = dataclasses.replace(cfg, thread_count=threads)
        matrix = extract_features(record, plan, run_cfg)
        if reference is None:
            reference = matrix
        elif not reference.equals(matrix):
            raise UsageError(
                f"outputs differ between thread_count=1 and thread_count={threads}; "
                "refusing to time a nondeterministic configuration"
            )

    report = BenchmarkReport(
        n_windows=total_items,
        checksum=matrix_checksum(reference),
        machine={
            "platform": platform.platform(),
            "processor": platform.processor() or platform.machine(),
            "cpu_count": str(_cpu_count()),
        },
    )

    base_rate = None
    for threads in thread_counts:
        run_cfg = dataclasses.replace(cfg, thread_count=threads)
        times = []
        for _ in range(repeats):
            start = time.perf_counter()
            extract_features(record, plan, run_cfg)
            times.append(time.perf_counter() - start)
        best = min(times)
        rate = total_items / best
        if base_rate is None:
            base_rate = rate
        spread = (max(times) - min(times)) / (sum(times) / len(times))
        report.results.append(ThreadResult(
            threads=threads,
            windows_per_sec=rate,
            speedup=rate / base_rate,
            times_s=times,
            unstable=spread > 0.20,
        ))
    return report


def _cpu_count() -> int:
    import os

    return os.cpu_count() or 1
