"""Hierarchical skill scoring.

Five evaluation levels (strength, force direction, velocity, velocity
direction, posture), three per-axis indicators each.  Level weights come
from a pairwise comparison matrix; per-indicator scores use a logistic map
for monotone ("maximal") indicators and an exponential-decay interval map
for band-limited ones.
"""

import json
import warnings
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .errors import (
    BadWeights,
    DegenerateRange,
    MixedLabels,
    NotReciprocal,
    TooFew,
)
from .labels import StrokeLabel
from .windows import MotionWindow

N_LEVELS = 5
N_INDICATORS = 15
LEVEL_NAMES = ["strength", "force_direction", "velocity", "velocity_direction", "posture"]
LEVEL_KINDS = ["maximal", "interval", "maximal", "interval", "interval"]

#: Saaty random consistency index by matrix order.
RANDOM_INDEX = {1: 0.0, 2: 0.0, 3: 0.58, 4: 0.90, 5: 1.12, 6: 1.24, 7: 1.32, 8: 1.41}

#: Reference five-level pairwise comparison matrix.
REFERENCE_AHP_MATRIX = np.array(
    [
        [1.0, 1 / 3, 1.0, 1 / 5, 1 / 7],
        [3.0, 1.0, 3.0, 3.0, 1 / 5],
        [1.0, 1 / 3, 1.0, 1 / 3, 1 / 7],
        [5.0, 1 / 3, 3.0, 1.0, 1 / 3],
        [7.0, 5.0, 7.0, 3.0, 1.0],
    ]
)

#: Rounded level weights matching the reference comparison matrix.
REFERENCE_LEVEL_WEIGHTS = np.array([0.056, 0.206, 0.059, 0.172, 0.508])


# --- level weights --------------------------------------------------------

def _check_reciprocal(a: np.ndarray) -> float:
    """Validate a positive reciprocal matrix up to a uniform positive
    scale; returns that scale (diagonal value)."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotReciprocal("matrix must be square")
    if not (a > 0).all():
        raise NotReciprocal("matrix entries must be positive")
    diag = np.diag(a)
    c = float(diag[0])
    if not np.allclose(diag, c, rtol=1e-9, atol=0):
        raise NotReciprocal("diagonal entries must be equal")
    if not np.allclose(a * a.T, c * c, rtol=1e-9, atol=0):
        raise NotReciprocal("a_ij * a_ji must equal the squared diagonal")
    return c


@dataclass(frozen=True)
class AhpMatrix:
    """Validated positive reciprocal pairwise comparison matrix."""

    a: np.ndarray

    def __post_init__(self):
        _check_reciprocal(self.a)
        object.__setattr__(self, "a", np.asarray(self.a, dtype=float))


def _principal_eigenvalue(a: np.ndarray, residual: float = 1e-10) -> float:
    """Power iteration for the dominant eigenvalue of a positive matrix."""
    v = np.full(a.shape[0], 1.0 / a.shape[0])
    lam = 0.0
    for _ in range(10_000):
        av = a @ v
        lam = float(av @ v / (v @ v))
        v_new = av / np.linalg.norm(av)
        if np.linalg.norm(a @ v_new - lam * v_new) < residual * max(1.0, abs(lam)):
            return float((a @ v_new) @ v_new / (v_new @ v_new))
        v = v_new
    return lam


def consistency(a) -> tuple:
    """(lambda_max, CI, CR) of a comparison matrix."""
    a = np.asarray(getattr(a, "a", a), dtype=float)
    scale = _check_reciprocal(a)
    n = a.shape[0]
    lam = _principal_eigenvalue(a / scale)
    ci = (lam - n) / (n - 1) if n > 1 else 0.0
    ri = RANDOM_INDEX.get(n, RANDOM_INDEX[max(RANDOM_INDEX)])
    cr = ci / ri if ri > 0 else 0.0
    return lam, ci, cr


def ahp_weights(a) -> np.ndarray:
    """Level weights from a comparison matrix: normalize each column to
    sum 1, then average the rows (sum-normalized priority vector).

    Warns when the consistency ratio exceeds 0.1.  Invariant under uniform
    positive scaling of the matrix.
    """
    a = np.asarray(getattr(a, "a", a), dtype=float)
    _check_reciprocal(a)
    weights = (a / a.sum(axis=0)).mean(axis=1)
    weights = weights / weights.sum()
    _, _, cr = consistency(a)
    if cr > 0.1:
        warnings.warn(f"comparison matrix consistency ratio {cr:.3f} exceeds 0.1")
    return weights


# --- per-window indicator values ------------------------------------------

def derive_velocity(window: MotionWindow) -> np.ndarray:
    """Per-axis velocity (width, 3): trapezoidal integration of mean-
    removed acceleration, v(0) = 0.

    Subtracting the window-mean acceleration strips gravity and sensor
    bias and bounds integration drift over a single stroke window.
    """
    acc = window.acc - window.acc.mean(axis=0)
    return cumulative_trapezoid(acc, dx=window.sample_period, axis=0, initial=0.0)


def _direction_angles(vec: np.ndarray) -> np.ndarray:
    """Per-axis direction angles of a 3-vector, degrees; a vanishing
    vector maps to the neutral 90 degrees."""
    norm = np.linalg.norm(vec)
    if norm < 1e-12:
        return np.full(3, 90.0)
    return np.degrees(np.arccos(np.clip(vec / norm, -1.0, 1.0)))


def indicator_values(window: MotionWindow) -> np.ndarray:
    """The 15 per-window indicator values, five levels x three axes:
    mean |acc| per axis; acc-direction angles; mean |v| per axis;
    velocity-direction angles; window-mean Euler angles."""
    v = derive_velocity(window)
    return np.concatenate(
        [
            np.abs(window.acc).mean(axis=0),
            _direction_angles(window.acc.mean(axis=0)),
            np.abs(v).mean(axis=0),
            _direction_angles(v.mean(axis=0)),
            window.angle.mean(axis=0),
        ]
    )


# --- reference profiles ---------------------------------------------------

@dataclass
class IndicatorSpec:
    """Reference statistics and loss coefficients of one indicator."""

    kind: str  # "maximal" | "interval"
    center: float
    up: float
    down: float
    lo: float
    hi: float
    k1: float
    k2: float

    def __post_init__(self):
        if self.kind not in ("maximal", "interval"):
            raise ValueError(f"unknown indicator kind {self.kind!r}")
        if self.k1 <= 0 or self.k2 <= 0:
            raise ValueError("loss coefficients must be positive")
        if self.lo > self.hi:
            raise ValueError("interval bounds out of order")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "center": self.center,
            "up": self.up,
            "down": self.down,
            "lo": self.lo,
            "hi": self.hi,
            "k1": self.k1,
            "k2": self.k2,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "IndicatorSpec":
        return cls(**d)


@dataclass
class StandardProfile:
    """Per-stroke reference statistics for all 15 indicators."""

    stroke: StrokeLabel
    indicators: List[IndicatorSpec]

    def __post_init__(self):
        if len(self.indicators) != N_INDICATORS:
            raise ValueError(f"need exactly {N_INDICATORS} indicator specs")

    def to_dict(self) -> dict:
        return {
            "stroke": self.stroke.name,
            "indicators": [s.to_dict() for s in self.indicators],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "StandardProfile":
        return cls(
            stroke=StrokeLabel.from_name(d["stroke"]),
            indicators=[IndicatorSpec.from_dict(s) for s in d["indicators"]],
        )

    @classmethod
    def from_json(cls, text: str) -> "StandardProfile":
        return cls.from_dict(json.loads(text))


def build_profile(reference_windows: Sequence[MotionWindow]) -> StandardProfile:
    """Pool per-window indicator values over a reference set.

    center = mean, up/down = max/min (epsilon-widened when collapsed),
    interval bounds = 5th/95th percentiles, loss coefficients = pooled
    std (floored).
    """
    if len(reference_windows) < 2:
        raise TooFew("need at least 2 reference windows")
    labels = {w.label for w in reference_windows}
    if len(labels) != 1:
        raise MixedLabels(f"reference windows carry labels {labels}")
    stroke = labels.pop()
    if stroke is None:
        raise MixedLabels("reference windows must be labeled")

    V = np.array([indicator_values(w) for w in reference_windows])
    specs = []
    for i in range(N_INDICATORS):
        col = V[:, i]
        center = float(col.mean())
        up, down = float(col.max()), float(col.min())
        eps = 1e-6 * max(1.0, abs(center))
        if up - down < eps:
            up, down = center + eps, center - eps
        lo, hi = float(np.percentile(col, 5)), float(np.percentile(col, 95))
        k = max(float(col.std()), eps)
        specs.append(
            IndicatorSpec(
                kind=LEVEL_KINDS[i // 3],
                center=center,
                up=up,
                down=down,
                lo=lo,
                hi=hi,
                k1=k,
                k2=k,
            )
        )
    return StandardProfile(stroke=stroke, indicators=specs)


# --- indicator and level scores -------------------------------------------

def score_maximal(value: float, spec: IndicatorSpec) -> float:
    """Logistic score, strictly increasing in value, 0.5 at the reference
    center, range scaled by the reference spread."""
    span = spec.up - spec.down
    if span <= 0:
        raise DegenerateRange("up - down collapsed to zero")
    return 1.0 - 1.0 / (1.0 + np.exp((value - spec.center) / span))


def score_interval(value: float, spec: IndicatorSpec, literal_interval: bool = False) -> float:
    """1 inside [lo, hi]; exponential decay with distance outside.

    The default continuous form scores exp(-d/k); ``literal_interval``
    switches to the alternative 1 - exp(-d/k) branches (discontinuous at
    the boundary).
    """
    if spec.lo <= value <= spec.hi:
        return 1.0
    if value < spec.lo:
        d_over_k = (spec.lo - value) / spec.k1
    else:
        d_over_k = (value - spec.hi) / spec.k2
    decay = float(np.exp(-d_over_k))
    return 1.0 - decay if literal_interval else decay


def level_scores(
    window: MotionWindow,
    profile: StandardProfile,
    literal_interval: bool = False,
) -> np.ndarray:
    """Five level scores: each level averages its three axis indicators
    with equal weight."""
    if window.label is not None and window.label != profile.stroke:
        raise MixedLabels(
            f"window labeled {window.label.name}, profile is {profile.stroke.name}"
        )
    values = indicator_values(window)
    q = np.empty(N_LEVELS)
    for level in range(N_LEVELS):
        scores = []
        for axis in range(3):
            i = 3 * level + axis
            spec = profile.indicators[i]
            if spec.kind == "maximal":
                scores.append(score_maximal(values[i], spec))
            else:
                scores.append(score_interval(values[i], spec, literal_interval))
        q[level] = np.mean(scores)
    return q


def total_score(q: Sequence[float], k: Sequence[float]) -> float:
    """Weighted sum of the five level scores.

    Weights must be non-negative and sum to 1 within 0.01 (loose enough to
    accept the rounded reference weights, which sum to 1.001).
    """
    q = np.asarray(q, dtype=float)
    k = np.asarray(k, dtype=float)
    if q.shape != (N_LEVELS,) or k.shape != (N_LEVELS,):
        raise BadWeights(f"need {N_LEVELS} scores and {N_LEVELS} weights")
    if (k < 0).any() or abs(k.sum() - 1.0) > 0.01:
        raise BadWeights(f"weights must be non-negative and sum to 1, got {k}")
    if ((q < 0) | (q > 1)).any():
        raise ValueError("level scores must lie in [0, 1]")
    return float(q @ k)


@dataclass
class ScoreReport:
    """Per-window scoring result."""

    stroke: StrokeLabel
    q: np.ndarray
    total: float
    weights: np.ndarray

    def to_dict(self) -> dict:
        return {
            "stroke": self.stroke.name,
            "q": self.q.tolist(),
            "total": self.total,
            "weights": self.weights.tolist(),
        }


def score_window(
    window: MotionWindow,
    profile: StandardProfile,
    weights: Optional[np.ndarray] = None,
    literal_interval: bool = False,
) -> ScoreReport:
    """Score one window against a reference profile."""
    if weights is None:
        weights = ahp_weights(REFERENCE_AHP_MATRIX)
    q = level_scores(window, profile, literal_interval=literal_interval)
    return ScoreReport(
        stroke=profile.stroke,
        q=q,
        total=total_score(q, weights),
        weights=np.asarray(weights, dtype=float),
    )
