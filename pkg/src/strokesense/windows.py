"""Sliding-window segmentation and the stroke activation gate."""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import SingleClass, TooShort
from .io import SensorSeries
from .labels import StrokeLabel
from .svm import DEFAULT_MAX_PASSES, DEFAULT_TOL, smo_solve

DEFAULT_WIDTH = 200
DEFAULT_OVERLAP = 0.5

ACTIVATION_FEATURE_NAMES = [
    "acc_mag_mean",
    "acc_mag_var",
    "acc_mag_pv",
    "gyro_mag_mean",
    "gyro_mag_var",
    "gyro_mag_pv",
]


@dataclass
class MotionWindow:
    """A fixed-length contiguous segment of a series."""

    start_index: int
    channels: np.ndarray  # (width, 9)
    sample_period: float = 0.01
    label: Optional[StrokeLabel] = None

    def __post_init__(self):
        self.channels = np.asarray(self.channels, dtype=float)
        if self.channels.ndim != 2 or self.channels.shape[1] != 9:
            raise ValueError(f"expected (width, 9) channels, got {self.channels.shape}")

    @property
    def width(self) -> int:
        return self.channels.shape[0]

    @property
    def acc(self) -> np.ndarray:
        return self.channels[:, 0:3]

    @property
    def gyro(self) -> np.ndarray:
        return self.channels[:, 3:6]

    @property
    def angle(self) -> np.ndarray:
        return self.channels[:, 6:9]


def slide_windows(
    series: SensorSeries,
    width: int = DEFAULT_WIDTH,
    overlap: float = DEFAULT_OVERLAP,
) -> List[MotionWindow]:
    """Cut the series into fixed windows; the trailing partial window is
    dropped.  stride = width * (1 - overlap)."""
    if not 0 <= overlap < 1:
        raise ValueError(f"overlap must lie in [0, 1), got {overlap}")
    n = len(series)
    if n < width:
        raise TooShort(f"series of {n} samples is shorter than window width {width}")
    stride = int(round(width * (1 - overlap)))
    if stride < 1:
        raise ValueError("stride collapsed to zero; lower the overlap")
    return [
        MotionWindow(
            start_index=start,
            channels=series.channels[start : start + width],
            sample_period=series.sample_period,
        )
        for start in range(0, n - width + 1, stride)
    ]


def activation_features(window: MotionWindow) -> np.ndarray:
    """Six activation markers: mean, variance and peak-valley of the
    resultant acceleration and resultant angular-rate magnitudes."""
    out = np.empty(6)
    for k, block in enumerate((window.acc, window.gyro)):
        mag = np.linalg.norm(block, axis=1)
        out[3 * k : 3 * k + 3] = (mag.mean(), mag.var(), mag.max() - mag.min())
    return out


@dataclass
class LinearSvmModel:
    """Linear soft-margin activation gate: active iff w.x + b > 0."""

    w: np.ndarray
    b: float
    c: float
    feature_names: Tuple[str, ...] = tuple(ACTIVATION_FEATURE_NAMES)

    def decision(self, features: np.ndarray) -> float:
        return float(np.dot(self.w, features) + self.b)

    def to_dict(self) -> dict:
        return {
            "w": self.w.tolist(),
            "b": self.b,
            "c": self.c,
            "feature_names": list(self.feature_names),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LinearSvmModel":
        return cls(
            w=np.array(d["w"], dtype=float),
            b=float(d["b"]),
            c=float(d["c"]),
            feature_names=tuple(d["feature_names"]),
        )


def train_activation(
    labeled: Sequence[Tuple[MotionWindow, bool]],
    c: float = 1.0,
    tol: float = DEFAULT_TOL,
    max_passes: int = DEFAULT_MAX_PASSES,
) -> LinearSvmModel:
    """Fit the linear activation SVM from (window, active?) pairs.

    Features are standardized internally; the returned w/b act on raw
    activation features.
    """
    X = np.array([activation_features(w) for w, _ in labeled])
    y = np.array([1.0 if active else -1.0 for _, active in labeled])
    if len(set(y)) < 2:
        raise SingleClass("need both active and inactive windows")
    mu = X.mean(axis=0)
    sd = X.std(axis=0)
    sd[sd < 1e-12] = 1.0
    Z = (X - mu) / sd
    K = Z @ Z.T
    alphas, b = smo_solve(K, y, c, tol=tol, max_passes=max_passes)
    wz = (alphas * y) @ Z
    # fold the standardization back into raw-feature space
    w = wz / sd
    b_raw = b - float(np.dot(wz, mu / sd))
    return LinearSvmModel(w=w, b=b_raw, c=c)


def is_active(window: MotionWindow, model: LinearSvmModel) -> bool:
    """Gate decision; an exactly-zero decision value counts as inactive."""
    return model.decision(activation_features(window)) > 0
