"""Exploratory analysis: per-feature ANOVA F-scores and PCA.

Both are analysis tools only.  PCA on the mixed binary/continuous
encoding is useful for plotting but deliberately kept out of the model
pipeline.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset


@dataclass(frozen=True)
class FeatureScoreTable:
    """(column name, F-value) rows sorted by descending F."""

    rows: tuple

    def __post_init__(self):
        values = [f for _, f in self.rows]
        if any(f < 0 for f in values):
            raise ValueError("F-values must be non-negative")
        if values != sorted(values, reverse=True):
            raise ValueError("rows must be sorted descending")

    def names(self) -> list[str]:
        return [name for name, _ in self.rows]

    def to_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["column", "f_value"])
            for name, f in self.rows:
                writer.writerow([name, repr(float(f))])


def anova_f_scores(X: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Per-column one-way ANOVA F against a binary grouping.

    F = [sum_g n_g (mean_g - grand)^2 / (K-1)] / [sum_g SS_g / (N-K)]
    with K = 2.  Constant columns score 0.  Columns constant within
    each group but differing between groups score +infinity, keeping
    the ordering total without NaNs.  The degenerate cases are decided
    by exact value ranges, not by the floating-point division.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y)
    if X.ndim != 2:
        raise ValueError("X must be 2-d")
    if X.shape[0] != y.shape[0]:
        raise ValueError("X and y lengths differ")
    if X.shape[0] < 3:
        raise ValueError("need at least 3 samples")
    mask1 = y == 1
    X0, X1 = X[~mask1], X[mask1]
    n0, n1 = X0.shape[0], X1.shape[0]
    if n0 == 0 or n1 == 0:
        raise ValueError("both classes must be present")

    m0 = X0.mean(axis=0)
    m1 = X1.mean(axis=0)
    grand = X.mean(axis=0)
    between = n0 * (m0 - grand) ** 2 + n1 * (m1 - grand) ** 2
    within = ((X0 - m0) ** 2).sum(axis=0) + ((X1 - m1) ** 2).sum(axis=0)

    const_all = np.ptp(X, axis=0) == 0
    const_within = (np.ptp(X0, axis=0) == 0) & (np.ptp(X1, axis=0) == 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        f = between / (within / (n0 + n1 - 2))
    f[const_within & ~const_all] = math.inf
    f[const_all] = 0.0
    return f


def anova_f(ds: Dataset) -> FeatureScoreTable:
    """Score every schema column against the success label."""
    f = anova_f_scores(ds.X, ds.success)
    rows = sorted(zip(ds.schema.columns, f.tolist()), key=lambda r: -r[1])
    return FeatureScoreTable(rows=tuple(rows))


class ZeroVarianceError(ValueError):
    """All-constant data has no principal directions."""


@dataclass(frozen=True)
class PCAModel:
    mean: np.ndarray
    components: np.ndarray  # rows are orthonormal directions
    ratios: np.ndarray      # descending, sums to 1

    @property
    def rank(self) -> int:
        return self.components.shape[0]


def pca_fit(X: np.ndarray) -> PCAModel:
    """Principal directions of the centered data via SVD.

    Ratios are eigenvalues of the covariance over their sum, which the
    singular values give directly as S^2 / sum(S^2).
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] < 2:
        raise ValueError("need a 2-d matrix with at least 2 rows")
    mean = X.mean(axis=0)
    centered = X - mean
    _, s, vt = np.linalg.svd(centered, full_matrices=False)
    total = float((s ** 2).sum())
    if total == 0.0:
        raise ZeroVarianceError("data has zero variance in every column")
    return PCAModel(mean=mean, components=vt, ratios=(s ** 2) / total)


def pca_project(model: PCAModel, X: np.ndarray, k: int) -> np.ndarray:
    """Coordinates of X in the first k principal directions."""
    if not 1 <= k <= model.rank:
        raise ValueError(f"k must be in 1..{model.rank}, got {k}")
    X = np.asarray(X, dtype=float)
    return (X - model.mean) @ model.components[:k].T


def pca_reconstruct(model: PCAModel, Z: np.ndarray) -> np.ndarray:
    """Map k-dimensional projections back to the original space."""
    Z = np.asarray(Z, dtype=float)
    k = Z.shape[1]
    if not 1 <= k <= model.rank:
        raise ValueError(f"projection width must be in 1..{model.rank}, got {k}")
    return Z @ model.components[:k] + model.mean
