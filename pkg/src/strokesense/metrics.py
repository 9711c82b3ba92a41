"""Confusion matrix, per-class precision/recall and the alpha-weighted F
measure (alpha trades recall against precision; 0.5 recovers classical F1).
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .errors import BadLabel, LengthMismatch

N_CLASSES = 6
DEFAULT_ALPHA = 0.7


@dataclass(frozen=True)
class FMeasureConfig:
    alpha: float = DEFAULT_ALPHA

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")


@dataclass
class ConfusionMatrix:
    """counts[true][predicted], six stroke classes."""

    counts: np.ndarray

    def __post_init__(self):
        self.counts = np.asarray(self.counts, dtype=int)
        if self.counts.shape != (N_CLASSES, N_CLASSES) or (self.counts < 0).any():
            raise ValueError("counts must be a non-negative 6x6 matrix")

    @property
    def accuracy(self) -> float:
        total = self.counts.sum()
        return float(np.trace(self.counts) / total) if total else 0.0


def confusion(true_labels: Sequence[int], predicted_labels: Sequence[int]) -> ConfusionMatrix:
    true_labels = np.asarray(true_labels, dtype=int)
    predicted_labels = np.asarray(predicted_labels, dtype=int)
    if true_labels.shape != predicted_labels.shape:
        raise LengthMismatch("label sequences differ in length")
    for arr in (true_labels, predicted_labels):
        if arr.size and (((arr < 0) | (arr >= N_CLASSES)).any()):
            raise BadLabel("label outside 0-5")
    counts = np.zeros((N_CLASSES, N_CLASSES), dtype=int)
    np.add.at(counts, (true_labels, predicted_labels), 1)
    return ConfusionMatrix(counts)


def _tp_fp_fn(m: ConfusionMatrix, cls: int) -> Tuple[int, int, int]:
    tp = int(m.counts[cls, cls])
    fp = int(m.counts[:, cls].sum()) - tp
    fn = int(m.counts[cls, :].sum()) - tp
    return tp, fp, fn


def precision_recall(m: ConfusionMatrix, cls: int) -> Tuple[float, float]:
    """Per-class precision and recall; empty column/row yields 0."""
    if not 0 <= cls < N_CLASSES:
        raise BadLabel(f"class {cls} outside 0-5")
    tp, fp, fn = _tp_fp_fn(m, cls)
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    return precision, recall


def f_measure(m: ConfusionMatrix, cls: int, alpha: float = DEFAULT_ALPHA) -> float:
    """2TP / (2TP + 2*alpha*FN + 2*(1-alpha)*FP); empty denominator -> 0."""
    FMeasureConfig(alpha)  # validate
    if not 0 <= cls < N_CLASSES:
        raise BadLabel(f"class {cls} outside 0-5")
    tp, fp, fn = _tp_fp_fn(m, cls)
    den = 2 * tp + 2 * alpha * fn + 2 * (1 - alpha) * fp
    return 2 * tp / den if den else 0.0


def macro_scores(m: ConfusionMatrix, alpha: float = DEFAULT_ALPHA) -> dict:
    """Unweighted per-class averages of precision, recall and F."""
    ps, rs, fs = [], [], []
    for cls in range(N_CLASSES):
        p, r = precision_recall(m, cls)
        ps.append(p)
        rs.append(r)
        fs.append(f_measure(m, cls, alpha))
    return {
        "precision": float(np.mean(ps)),
        "recall": float(np.mean(rs)),
        "f_measure": float(np.mean(fs)),
    }


def classification_report(m: ConfusionMatrix, alpha: float = DEFAULT_ALPHA) -> dict:
    """Full JSON-ready report: matrix, per-class P/R/F, macro averages."""
    per_class = []
    for cls in range(N_CLASSES):
        p, r = precision_recall(m, cls)
        per_class.append(
            {
                "class": cls,
                "precision": p,
                "recall": r,
                "f_measure": f_measure(m, cls, alpha),
            }
        )
    return {
        "alpha": alpha,
        "accuracy": m.accuracy,
        "matrix": m.counts.tolist(),
        "per_class": per_class,
        "macro": macro_scores(m, alpha),
    }


def heatmap_csv(m: ConfusionMatrix) -> str:
    """Dump the matrix as CSV rows (true class per row) for plotting."""
    lines = ["true\\pred," + ",".join(str(c) for c in range(N_CLASSES))]
    for t in range(N_CLASSES):
        lines.append(f"{t}," + ",".join(str(int(v)) for v in m.counts[t]))
    return "\n".join(lines) + "\n"
