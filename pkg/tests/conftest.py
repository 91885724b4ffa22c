import numpy as np
import pytest

from emgfatigue import EngineConfig, SignalRecord

ORACLE_WINDOW_LEN = 256
ORACLE_FS = 2000.0
N_ORACLE_WINDOWS = 100


def make_oracle_windows() -> list[np.ndarray]:
    """100 deterministic windows with varied character: white noise at several
    scales, band-limited noise, tones plus noise, and slow drifts."""
    windows = []
    t = np.arange(ORACLE_WINDOW_LEN) / ORACLE_FS
    for seed in range(N_ORACLE_WINDOWS):
        rng = np.random.default_rng(1000 + seed)
        kind = seed % 4
        if kind == 0:
            x = rng.standard_normal(ORACLE_WINDOW_LEN) * (0.1 + seed * 0.05)
        elif kind == 1:
            freq = 40.0 + 3.5 * seed
            x = np.sin(2 * np.pi * freq * t) + 0.3 * rng.standard_normal(
                ORACLE_WINDOW_LEN)
        elif kind == 2:
            base = rng.standard_normal(ORACLE_WINDOW_LEN)
            x = np.convolve(base, np.ones(5) / 5, mode="same")
        else:
            x = (np.linspace(-1, 1, ORACLE_WINDOW_LEN) * (seed % 7 + 1)
                 + rng.standard_normal(ORACLE_WINDOW_LEN))
        windows.append(np.asarray(x, dtype=np.float64))
    return windows


@pytest.fixture(scope="session")
def oracle_windows() -> list[np.ndarray]:
    return make_oracle_windows()


@pytest.fixture(scope="session")
def engine_config() -> EngineConfig:
    return EngineConfig()


@pytest.fixture()
def two_channel_record() -> SignalRecord:
    rng = np.random.default_rng(42)
    return SignalRecord(rng.standard_normal((2, 6000)), sampling_rate=2000.0)
