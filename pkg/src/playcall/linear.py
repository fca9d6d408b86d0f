"""Nearest centroid, two-class LDA, and least-squares linear regression."""

from __future__ import annotations

import math

import numpy as np


class SingularCovarianceError(ValueError):
    """Pooled covariance is not invertible at the requested shrinkage."""


def _validate_binary(y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if not np.all(np.isin(y, (0.0, 1.0))):
        raise ValueError("target must be 0/1")
    mask1 = y == 1.0
    if not mask1.any() or mask1.all():
        raise ValueError("both classes must be present")
    return ~mask1, mask1


def _as_matrix(X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ValueError("X must be a non-empty 2-d matrix")
    return X


class CentroidModel:
    """Per-class mean vectors; predicts the class of the nearer centroid."""

    def __init__(self, centroids):
        self.centroids = np.asarray(centroids, dtype=float)
        if self.centroids.shape[0] != 2:
            raise ValueError("exactly two centroids required")
        if not np.all(np.isfinite(self.centroids)):
            raise ValueError("centroids must be finite")

    @property
    def width(self) -> int:
        return self.centroids.shape[1]

    def _check(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[None, :]
        if X.shape[1] != self.width:
            raise ValueError(f"input width {X.shape[1]} != model width {self.width}")
        return X

    def decision_values(self, X) -> np.ndarray:
        """Squared-distance margin d0^2 - d1^2; positive means class 1."""
        X = self._check(X)
        d0 = ((X - self.centroids[0]) ** 2).sum(axis=1)
        d1 = ((X - self.centroids[1]) ** 2).sum(axis=1)
        return d0 - d1

    def predict(self, X) -> np.ndarray:
        # equidistant queries fall to the failure class
        return (self.decision_values(X) > 0.0).astype(float)

    def to_dict(self) -> dict:
        return {"centroids": self.centroids.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "CentroidModel":
        return cls(d["centroids"])


def fit_nearest_centroid(X, y) -> CentroidModel:
    X = _as_matrix(X)
    y = np.asarray(y, dtype=float)
    m0, m1 = _validate_binary(y)
    return CentroidModel(np.vstack([X[m0].mean(axis=0), X[m1].mean(axis=0)]))


class LDAModel:
    """Two-class linear discriminant: decision value is w.x + b."""

    def __init__(self, w, b, means, priors, shrinkage, solver):
        self.w = np.asarray(w, dtype=float)
        self.b = float(b)
        self.means = np.asarray(means, dtype=float)
        self.priors = np.asarray(priors, dtype=float)
        self.shrinkage = float(shrinkage)
        self.solver = solver
        if abs(self.priors.sum() - 1.0) > 1e-12:
            raise ValueError("priors must sum to 1")

    @property
    def width(self) -> int:
        return self.w.shape[0]

    def _check(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[None, :]
        if X.shape[1] != self.width:
            raise ValueError(f"input width {X.shape[1]} != model width {self.width}")
        return X

    def decision_values(self, X) -> np.ndarray:
        return self._check(X) @ self.w + self.b

    def predict(self, X) -> np.ndarray:
        return (self.decision_values(X) > 0.0).astype(float)

    def to_dict(self) -> dict:
        return {
            "w": self.w.tolist(),
            "b": self.b,
            "means": self.means.tolist(),
            "priors": self.priors.tolist(),
            "shrinkage": self.shrinkage,
            "solver": self.solver,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LDAModel":
        return cls(w=d["w"], b=d["b"], means=d["means"], priors=d["priors"],
                   shrinkage=d["shrinkage"], solver=d["solver"])


def fit_lda(X, y, solver: str = "svd", shrinkage: float = 0.0,
            priors: str = "empirical") -> LDAModel:
    """Fisher discriminant from the pooled within-class covariance.

    S = (SS_0 + SS_1) / (n - 2), shrunk to (1-l)S + l (trace(S)/d) I.
    The eigen solver inverts the shrunk covariance directly and raises
    SingularCovarianceError when that fails at shrinkage 0.  The svd
    solver factorizes the centered data, drops near-zero singular
    values, and ignores the shrinkage parameter entirely.
    """
    X = _as_matrix(X)
    y = np.asarray(y, dtype=float)
    if solver not in ("svd", "eigen"):
        raise ValueError(f"solver must be svd or eigen, got {solver!r}")
    if not 0.0 <= shrinkage <= 1.0:
        raise ValueError(f"shrinkage must be in [0, 1], got {shrinkage}")
    m0, m1 = _validate_binary(y)
    n = X.shape[0]
    if n < 3:
        raise ValueError("LDA needs at least 3 samples")
    d = X.shape[1]
    mu0, mu1 = X[m0].mean(axis=0), X[m1].mean(axis=0)
    delta = mu1 - mu0
    centered = np.vstack([X[m0] - mu0, X[m1] - mu1])

    if priors == "empirical":
        pi = np.array([m0.sum() / n, m1.sum() / n])
    elif priors == "equal":
        pi = np.array([0.5, 0.5])
    else:
        pi = np.asarray(priors, dtype=float)
        if pi.shape != (2,) or abs(pi.sum() - 1.0) > 1e-9 or np.any(pi <= 0):
            raise ValueError("priors must be two positive values summing to 1")

    if solver == "eigen":
        cov = centered.T @ centered / (n - 2)
        if shrinkage > 0.0:
            cov = (1.0 - shrinkage) * cov \
                + shrinkage * (np.trace(cov) / d) * np.eye(d)
        try:
            # cholesky rejects indefinite matrices, solve catches the
            # exactly-singular ones that squeak past it
            np.linalg.cholesky(cov)
            w = np.linalg.solve(cov, delta)
        except np.linalg.LinAlgError:
            raise SingularCovarianceError(
                "pooled covariance is singular; refit with shrinkage > 0"
            ) from None
    else:
        # rows of A = centered / sqrt(n-2) give S = A^T A
        a = centered / math.sqrt(n - 2)
        _, s, vt = np.linalg.svd(a, full_matrices=False)
        keep = s > (s[0] * 1e-11 if s.size and s[0] > 0 else np.inf)
        if not keep.any():
            raise SingularCovarianceError(
                "within-class data has no variance; discriminant undefined"
            )
        proj = vt[keep] @ delta
        w = vt[keep].T @ (proj / s[keep] ** 2)

    b = -w @ ((mu0 + mu1) / 2.0) + math.log(pi[1] / pi[0])
    return LDAModel(w=w, b=b, means=np.vstack([mu0, mu1]), priors=pi,
                    shrinkage=shrinkage, solver=solver)


class LinearModel:
    """Ordinary least squares: weights plus intercept."""

    def __init__(self, weights, intercept):
        self.weights = np.asarray(weights, dtype=float)
        self.intercept = float(intercept)
        if not (np.all(np.isfinite(self.weights))
                and math.isfinite(self.intercept)):
            raise ValueError("coefficients must be finite")

    @property
    def width(self) -> int:
        return self.weights.shape[0]

    def _check(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[None, :]
        if X.shape[1] != self.width:
            raise ValueError(f"input width {X.shape[1]} != model width {self.width}")
        return X

    def decision_values(self, X) -> np.ndarray:
        return self._check(X) @ self.weights + self.intercept

    predict = decision_values

    def to_dict(self) -> dict:
        return {"weights": self.weights.tolist(), "intercept": self.intercept}

    @classmethod
    def from_dict(cls, d: dict) -> "LinearModel":
        return cls(weights=d["weights"], intercept=d["intercept"])


def fit_linear_regression(X, y) -> LinearModel:
    """Least squares via SVD; rank-deficient designs take minimum norm."""
    X = _as_matrix(X)
    y = np.asarray(y, dtype=float)
    if X.shape[0] != y.shape[0]:
        raise ValueError("X and y lengths differ")
    design = np.hstack([X, np.ones((X.shape[0], 1))])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    return LinearModel(weights=coef[:-1], intercept=coef[-1])


def linear_predict(model, x):
    """Decision for a linear-family model: class for LDA, value otherwise."""
    if isinstance(model, LDAModel):
        return model.predict(x)
    if isinstance(model, (LinearModel, CentroidModel)):
        return model.predict(x)
    raise TypeError(f"not a linear-family model: {type(model).__name__}")
