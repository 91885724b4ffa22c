"""Canonical feature identifiers, ordering, domains, and trend-table grouping.

The canonical order below is normative for every array, CSV column layout
(``featmap_v1``), and quality bitmask in this package: 9 time-domain, 9
frequency-domain, 3 time-frequency, 5 wavelet, 8 nonlinear descriptors (34
grouped features), followed by the 2 auxiliary descriptors PKF and DFA which
are excluded from trend grouping.
"""
from __future__ import annotations

from enum import Enum


class FeatureDomain(Enum):
    TIME = "time"
    FREQUENCY = "frequency"
    TIME_FREQUENCY = "time_frequency"
    WAVELET = "wavelet"
    NONLINEAR = "nonlinear"
    AUXILIARY = "auxiliary"


class TableGroup(Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    AUXILIARY = "auxiliary"


_TIME = ("AEMG", "iEMG", "RMS", "MAV", "MCV", "DASDV", "ZC", "SSC", "WA")
_FREQ = ("SMR", "FSM2", "TP", "MPF", "MF", "MDF", "IMPF", "IMF", "BSE")
_TF = ("ERHL", "IMNF", "IMFB")
_WAVELET = ("WIRM1551", "WIRM1522", "WIRE51", "WIRW51", "WEE")
_NONLINEAR = ("DET", "ACC", "AE", "SE", "LZC", "FD", "BE", "WENT")
_AUX = ("PKF", "DFA")

GROUPED_FEATURES: tuple[str, ...] = _TIME + _FREQ + _TF + _WAVELET + _NONLINEAR
AUXILIARY_FEATURES: tuple[str, ...] = _AUX
CANONICAL_FEATURES: tuple[str, ...] = GROUPED_FEATURES + AUXILIARY_FEATURES

N_FEATURES = len(CANONICAL_FEATURES)

TABLE_INCREASING: frozenset[str] = frozenset(
    ("AEMG", "iEMG", "RMS", "MAV", "MCV", "DASDV",
     "SMR", "FSM2", "TP",
     "ERHL", "IMNF", "IMFB",
     "WIRM1551", "WIRM1522", "WIRE51", "WIRW51", "WEE",
     "DET", "ACC")
)
TABLE_DECREASING: frozenset[str] = frozenset(
    ("ZC", "SSC", "WA",
     "MPF", "MF", "MDF", "IMPF", "IMF", "BSE",
     "AE", "SE", "LZC", "FD", "BE", "WENT")
)

_INDEX = {name: i for i, name in enumerate(CANONICAL_FEATURES)}

_DOMAIN: dict[str, FeatureDomain] = {}
for _name in _TIME:
    _DOMAIN[_name] = FeatureDomain.TIME
for _name in _FREQ:
    _DOMAIN[_name] = FeatureDomain.FREQUENCY
for _name in _TF:
    _DOMAIN[_name] = FeatureDomain.TIME_FREQUENCY
for _name in _WAVELET:
    _DOMAIN[_name] = FeatureDomain.WAVELET
for _name in _NONLINEAR:
    _DOMAIN[_name] = FeatureDomain.NONLINEAR
for _name in _AUX:
    _DOMAIN[_name] = FeatureDomain.AUXILIARY


def feature_index(name: str) -> int:
    """Position of a feature in the canonical order (also its bitmask bit)."""
    return _INDEX[name]


def feature_domain(name: str) -> FeatureDomain:
    return _DOMAIN[name]


def table_group(name: str) -> TableGroup:
    if name in TABLE_INCREASING:
        return TableGroup.INCREASING
    if name in TABLE_DECREASING:
        return TableGroup.DECREASING
    return TableGroup.AUXILIARY
