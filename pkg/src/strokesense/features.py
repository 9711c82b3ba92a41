"""Windowed time-domain feature engineering.

Each window yields 180 features: 12 channels (three sensor axes plus the
resultant magnitude, per sensor) x 15 statistics.  All moments use the
population (1/n) convention; ratio statistics whose denominator collapses
are defined as 0.
"""

from dataclasses import dataclass, fields as dataclass_fields

import numpy as np

from .errors import TooShort
from .windows import MotionWindow

DEN_EPS = 1e-12

STAT_NAMES = [
    "mean",
    "variance",
    "max",
    "min",
    "peak_valley",
    "mean_square",
    "rms",
    "corr",
    "crest",
    "pulse",
    "margin",
    "kurtosis_factor",
    "waveform",
    "skewness",
    "kurtosis",
]

CHANNEL_NAMES = [
    "acc_x",
    "acc_y",
    "acc_z",
    "acc_mag",
    "gyro_x",
    "gyro_y",
    "gyro_z",
    "gyro_mag",
    "angle_x",
    "angle_y",
    "angle_z",
    "angle_mag",
]

#: Column names of the 180-feature layout, "<channel>_<stat>".
FEATURE_NAMES = [f"{ch}_{st}" for ch in CHANNEL_NAMES for st in STAT_NAMES]

N_FEATURES = len(FEATURE_NAMES)


@dataclass(frozen=True)
class ChannelStats:
    """The 15 per-channel statistics, in layout order."""

    mean: float
    variance: float
    max: float
    min: float
    peak_valley: float
    mean_square: float
    rms: float
    corr: float
    crest: float
    pulse: float
    margin: float
    kurtosis_factor: float
    waveform: float
    skewness: float
    kurtosis: float

    def as_array(self) -> np.ndarray:
        return np.array([getattr(self, f.name) for f in dataclass_fields(self)])


def _guarded(num: float, den: float) -> float:
    return 0.0 if abs(den) < DEN_EPS else num / den


def channel_stats(x, pair) -> ChannelStats:
    """Compute the 15 statistics of one channel.

    ``pair`` is the partner channel for the correlation coefficient.
    Dimensionless ratios (crest, pulse, margin, waveform) put the
    peak-valley span or RMS over mean-absolute-value denominators.
    """
    x = np.asarray(x, dtype=float)
    pair = np.asarray(pair, dtype=float)
    n = len(x)
    if n < 2 or len(pair) != n:
        raise TooShort("need at least 2 samples and an equal-length pair channel")

    mean = float(x.mean())
    centered = x - mean
    variance = float(np.mean(centered**2))
    x_max, x_min = float(x.max()), float(x.min())
    pv = x_max - x_min
    mean_square = float(np.mean(x**2))
    rms = float(np.sqrt(mean_square))
    mean_abs = float(np.mean(np.abs(x)))

    pair_mean = pair.mean()
    cov = float(np.mean((x - mean) * (pair - pair_mean)))
    sig_x = float(np.sqrt(variance))
    sig_p = float(np.sqrt(np.mean((pair - pair_mean) ** 2)))
    corr = _guarded(cov, sig_x * sig_p)

    crest = _guarded(pv, rms)
    pulse = _guarded(pv, mean_abs)
    margin = _guarded(pv, float(np.mean(np.sqrt(np.abs(x)))) ** 2)
    kurtosis_factor = _guarded(float(np.mean(x**4)), rms)
    waveform = _guarded(rms, mean_abs)
    skewness = _guarded(float(np.mean(centered**3)), variance**1.5)
    kurt_raw = _guarded(float(np.mean(centered**4)), variance**2)
    kurtosis = kurt_raw - 3.0 if kurt_raw != 0.0 else 0.0

    return ChannelStats(
        mean=mean,
        variance=variance,
        max=x_max,
        min=x_min,
        peak_valley=pv,
        mean_square=mean_square,
        rms=rms,
        corr=corr,
        crest=crest,
        pulse=pulse,
        margin=margin,
        kurtosis_factor=kurtosis_factor,
        waveform=waveform,
        skewness=skewness,
        kurtosis=kurtosis,
    )


def _twelve_channels(window: MotionWindow) -> np.ndarray:
    """(width, 12) array in layout order, magnitudes appended per sensor."""
    cols = []
    for block in (window.acc, window.gyro, window.angle):
        cols.append(block)
        cols.append(np.linalg.norm(block, axis=1)[:, None])
    return np.hstack(cols)


#: Correlation partner index per channel: cyclic x->y->z->x within a
#: sensor; magnitudes pair with the next sensor's magnitude (acc->gyro->
#: angle->acc).
CORR_PARTNER = [1, 2, 0, 7, 5, 6, 4, 11, 9, 10, 8, 3]


def window_features(window: MotionWindow) -> np.ndarray:
    """The 180-feature vector of a window, in :data:`FEATURE_NAMES` order."""
    chans = _twelve_channels(window)
    out = np.empty(N_FEATURES)
    for ci in range(len(CHANNEL_NAMES)):
        stats = channel_stats(chans[:, ci], chans[:, CORR_PARTNER[ci]])
        out[ci * len(STAT_NAMES) : (ci + 1) * len(STAT_NAMES)] = stats.as_array()
    return out


def feature_matrix(windows) -> np.ndarray:
    """Stack window features row-wise into an (m, 180) matrix."""
    return np.array([window_features(w) for w in windows])
