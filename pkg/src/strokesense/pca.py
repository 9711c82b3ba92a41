"""Linear dimensionality reduction with cumulative-contribution retention.

Features are standardized (zero mean, unit variance) by default before the
covariance eigendecomposition, since the engineered statistics mix units;
pass ``standardize=False`` for plain centering.
"""

import json
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import DegenerateInput, DimensionMismatch, NonFinite

DEFAULT_RETENTION = 0.95


@dataclass
class PcaModel:
    """Fitted reduction: centering/scaling vectors, retained components and
    the full eigenvalue spectrum (descending)."""

    mean: np.ndarray
    scale: Optional[np.ndarray]
    components: np.ndarray  # (k, p), orthonormal rows
    eigenvalues: np.ndarray  # all p eigenvalues, descending
    k: int
    retention: float

    @property
    def n_features(self) -> int:
        return self.mean.shape[0]

    def to_dict(self) -> dict:
        return {
            "mean": self.mean.tolist(),
            "scale": None if self.scale is None else self.scale.tolist(),
            "components": self.components.tolist(),
            "eigenvalues": self.eigenvalues.tolist(),
            "k": self.k,
            "retention": self.retention,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "PcaModel":
        return cls(
            mean=np.array(d["mean"], dtype=float),
            scale=None if d["scale"] is None else np.array(d["scale"], dtype=float),
            components=np.array(d["components"], dtype=float),
            eigenvalues=np.array(d["eigenvalues"], dtype=float),
            k=int(d["k"]),
            retention=float(d["retention"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "PcaModel":
        return cls.from_dict(json.loads(text))


def fit_pca(
    X: np.ndarray,
    retention: float = DEFAULT_RETENTION,
    standardize: bool = True,
) -> PcaModel:
    """Fit the reduction on an (m, p) feature matrix.

    The retained count k is the smallest i whose cumulative contribution
    rate reaches ``retention``.  Component signs are fixed by making each
    row's largest-magnitude entry positive.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] < 2:
        raise DegenerateInput("need at least 2 rows to fit")
    if not np.isfinite(X).all():
        raise NonFinite("feature matrix contains non-finite entries")
    if not 0 < retention <= 1:
        raise ValueError(f"retention must lie in (0, 1], got {retention}")

    mean = X.mean(axis=0)
    scale = None
    Xc = X - mean
    if standardize:
        scale = X.std(axis=0)
        scale[scale < 1e-12] = 1.0
        Xc = Xc / scale

    cov = Xc.T @ Xc / (X.shape[0] - 1)
    eigvals, eigvecs = np.linalg.eigh(cov)
    order = np.argsort(eigvals)[::-1]
    eigvals = eigvals[order]
    eigvecs = eigvecs[:, order]

    # deterministic sign: largest-magnitude entry of each component positive
    for j in range(eigvecs.shape[1]):
        pivot = np.argmax(np.abs(eigvecs[:, j]))
        if eigvecs[pivot, j] < 0:
            eigvecs[:, j] = -eigvecs[:, j]

    total = eigvals.sum()
    if total <= 0:
        k = 1
    else:
        cumulative = np.cumsum(eigvals) / total
        k = int(np.searchsorted(cumulative, retention - 1e-12) + 1)
        k = min(k, len(eigvals))
    return PcaModel(
        mean=mean,
        scale=scale,
        components=eigvecs[:, :k].T.copy(),
        eigenvalues=eigvals,
        k=k,
        retention=retention,
    )


def transform(model: PcaModel, f: np.ndarray) -> np.ndarray:
    """Project a feature vector (or matrix) onto the retained components."""
    f = np.asarray(f, dtype=float)
    if f.shape[-1] != model.n_features:
        raise DimensionMismatch(
            f"expected {model.n_features} features, got {f.shape[-1]}"
        )
    centered = f - model.mean
    if model.scale is not None:
        centered = centered / model.scale
    return centered @ model.components.T


def contribution_rates(model: PcaModel) -> Tuple[np.ndarray, np.ndarray]:
    """Per-component and cumulative contribution rates over the full
    spectrum; the cumulative list ends at 1."""
    total = model.eigenvalues.sum()
    if total <= 0:
        p = len(model.eigenvalues)
        c = np.full(p, 1.0 / p)
    else:
        c = model.eigenvalues / total
    return c, np.cumsum(c)
