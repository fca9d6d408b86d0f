"""Metrics, k-fold cross-validation, and kernel grid search."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .dataset import Dataset, kfold
from .kernel import GridSpec

TARGET_TASKS = {"success": "classification", "yards": "regression",
                "progress": "regression"}

DEFAULT_SUBSAMPLE_CAP = 20_000


class ClassificationReport:
    """Confusion counts; every rate recomputes from them on access."""

    def __init__(self, tp: int, fp: int, tn: int, fn: int):
        for name, count in (("tp", tp), ("fp", fp), ("tn", tn), ("fn", fn)):
            if count != int(count) or count < 0:
                raise ValueError(f"{name} must be a non-negative integer")
        self.tp = int(tp)
        self.fp = int(fp)
        self.tn = int(tn)
        self.fn = int(fn)
        if self.n == 0:
            raise ValueError("confusion counts must cover at least one case")

    @property
    def n(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    @property
    def accuracy(self) -> float:
        return (self.tp + self.tn) / self.n

    @property
    def precision(self) -> float:
        denom = self.tp + self.fp
        return self.tp / denom if denom else 0.0

    @property
    def recall(self) -> float:
        denom = self.tp + self.fn
        return self.tp / denom if denom else 0.0

    @property
    def f1(self) -> float:
        p, r = self.precision, self.recall
        return 2.0 * p * r / (p + r) if p + r else 0.0

    def to_dict(self) -> dict:
        return {
            "tp": self.tp, "fp": self.fp, "tn": self.tn, "fn": self.fn,
            "accuracy": self.accuracy, "precision": self.precision,
            "recall": self.recall, "f1": self.f1,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "ClassificationReport":
        return cls(tp=payload["tp"], fp=payload["fp"],
                   tn=payload["tn"], fn=payload["fn"])

    def __repr__(self) -> str:
        return (f"ClassificationReport(tp={self.tp}, fp={self.fp}, "
                f"tn={self.tn}, fn={self.fn})")


class RegressionReport:
    """Mean absolute and root mean squared error over n cases."""

    def __init__(self, mae: float, rmse: float, n: int):
        self.mae = float(mae)
        self.rmse = float(rmse)
        self.n = int(n)
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not (math.isfinite(self.mae) and math.isfinite(self.rmse)):
            raise ValueError("errors must be finite")
        if self.mae < 0 or self.rmse < self.mae:
            raise ValueError("rmse >= mae >= 0 must hold")

    def to_dict(self) -> dict:
        return {"mae": self.mae, "rmse": self.rmse, "n": self.n}

    @classmethod
    def from_dict(cls, payload: dict) -> "RegressionReport":
        return cls(mae=payload["mae"], rmse=payload["rmse"], n=payload["n"])

    def __repr__(self) -> str:
        return f"RegressionReport(mae={self.mae}, rmse={self.rmse}, n={self.n})"


def _binary(name: str, values) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-d")
    if not np.all(np.isin(arr, (0.0, 1.0))):
        raise ValueError(f"{name} must contain only 0/1")
    return arr


def classification_report(y_true, y_pred) -> ClassificationReport:
    t = _binary("y_true", y_true)
    p = _binary("y_pred", y_pred)
    if t.shape != p.shape or t.size == 0:
        raise ValueError("y_true and y_pred must be non-empty and equal length")
    return ClassificationReport(
        tp=int(np.sum((t == 1.0) & (p == 1.0))),
        fp=int(np.sum((t == 0.0) & (p == 1.0))),
        tn=int(np.sum((t == 0.0) & (p == 0.0))),
        fn=int(np.sum((t == 1.0) & (p == 0.0))),
    )


def regression_report(y_true, y_pred) -> RegressionReport:
    t = np.asarray(y_true, dtype=float)
    p = np.asarray(y_pred, dtype=float)
    if t.shape != p.shape or t.ndim != 1 or t.size == 0:
        raise ValueError("y_true and y_pred must be non-empty and equal length")
    if not (np.all(np.isfinite(t)) and np.all(np.isfinite(p))):
        raise ValueError("values must be finite")
    err = p - t
    mae = float(np.mean(np.abs(err)))
    rmse = float(np.sqrt(np.mean(err * err)))
    # sqrt rounding must not be allowed to break the Jensen bound
    return RegressionReport(mae=mae, rmse=max(rmse, mae), n=t.size)


@dataclass(frozen=True)
class CrossValidationResult:
    task: str
    folds: tuple
    means: dict = field(compare=False)

    def __post_init__(self) -> None:
        if self.task not in ("classification", "regression"):
            raise ValueError("task must be classification or regression")
        if not self.folds:
            raise ValueError("at least one fold report required")


def _fold_means(task: str, folds) -> dict:
    if task == "classification":
        names = ("accuracy", "precision", "recall", "f1")
    else:
        names = ("mae", "rmse")
    return {
        name: float(np.mean([getattr(f, name) for f in folds])) for name in names
    }


def cross_validate(recipe, ds: Dataset, target: str, k: int = 5,
                   seed: int = 0) -> CrossValidationResult:
    """Train the recipe on each fold complement and score the held-out fold.

    recipe is any callable mapping a training Dataset to a fitted object
    with a predict(X) method.
    """
    if target not in TARGET_TASKS:
        raise ValueError(f"unknown target: {target!r}")
    task = TARGET_TASKS[target]
    reports = []
    for index, (train_idx, test_idx) in enumerate(kfold(ds.n, k, seed)):
        try:
            model = recipe(ds.subset(train_idx))
        except Exception as err:
            raise type(err)(f"fold {index}: {err}") from err
        test = ds.subset(test_idx)
        preds = np.asarray(model.predict(test.X), dtype=float)
        y_true = test.target(target)
        if task == "classification":
            reports.append(classification_report(y_true, preds))
        else:
            reports.append(regression_report(y_true, preds))
    folds = tuple(reports)
    return CrossValidationResult(task=task, folds=folds,
                                 means=_fold_means(task, folds))


@dataclass(frozen=True)
class GridCell:
    c: float
    gamma: float
    fold_scores: tuple | None
    mean_score: float | None
    error: str | None


@dataclass(frozen=True)
class GridSearchResult:
    task: str
    cells: tuple
    best: GridCell | None
    subsample_cap: int
    n_used: int

    def to_csv(self, path) -> None:
        """Grid laid out with one row per gamma and one column per C."""
        gammas = []
        c_values = []
        for cell in self.cells:
            if cell.gamma not in gammas:
                gammas.append(cell.gamma)
            if cell.c not in c_values:
                c_values.append(cell.c)
        by_key = {(cell.gamma, cell.c): cell for cell in self.cells}
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["gamma"] + [repr(float(c)) for c in c_values])
            for gamma in gammas:
                row = [repr(float(gamma))]
                for c in c_values:
                    cell = by_key[(gamma, c)]
                    row.append("" if cell.mean_score is None
                               else repr(float(cell.mean_score)))
                writer.writerow(row)


def _cell_scores(task: str, folds) -> tuple:
    if task == "classification":
        return tuple(f.accuracy for f in folds)
    return tuple(-f.mae for f in folds)


def grid_search(make_recipe, grid: GridSpec, ds: Dataset, target: str,
                k: int | None = None, seed: int = 0,
                subsample_cap: int = DEFAULT_SUBSAMPLE_CAP) -> GridSearchResult:
    """Full cartesian (gamma, C) sweep scored by cross-validation.

    make_recipe(c, gamma) must return a recipe as taken by cross_validate.
    Cells whose fit fails are recorded and skipped; selection maximizes the
    mean fold score (accuracy, or negative MAE for regression) with ties
    going to the earliest cell in grid order.
    """
    if target not in TARGET_TASKS:
        raise ValueError(f"unknown target: {target!r}")
    if subsample_cap < 1:
        raise ValueError("subsample_cap must be positive")
    task = TARGET_TASKS[target]
    if k is None:
        k = grid.folds
    used = ds
    if ds.n > subsample_cap:
        rng = np.random.default_rng(seed)
        keep = rng.choice(ds.n, size=subsample_cap, replace=False)
        used = ds.subset(np.sort(keep))
    cells = []
    best = None
    for gamma in grid.gamma_values:
        for c in grid.c_values:
            try:
                result = cross_validate(make_recipe(c, gamma), used, target,
                                        k=k, seed=seed)
            except Exception as err:
                cells.append(GridCell(c=c, gamma=gamma, fold_scores=None,
                                      mean_score=None, error=str(err)))
                continue
            scores = _cell_scores(task, result.folds)
            cell = GridCell(c=c, gamma=gamma, fold_scores=scores,
                            mean_score=float(np.mean(scores)), error=None)
            cells.append(cell)
            if best is None or cell.mean_score > best.mean_score:
                best = cell
    return GridSearchResult(task=task, cells=tuple(cells), best=best,
                            subsample_cap=subsample_cap, n_used=used.n)


def comparison_csv(entries, path) -> None:
    """Per-method metric table; entries are (name, report) pairs."""
    entries = list(entries)
    if not entries:
        raise ValueError("at least one entry required")
    kinds = {type(report) for _, report in entries}
    if len(kinds) != 1:
        raise ValueError("entries must share one report type")
    classification = isinstance(entries[0][1], ClassificationReport)
    header = (["method", "accuracy", "precision", "recall", "f1"]
              if classification else ["method", "mae", "rmse"])
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for name, report in entries:
            if classification:
                row = [report.accuracy, report.precision,
                       report.recall, report.f1]
            else:
                row = [report.mae, report.rmse]
            writer.writerow([name] + [repr(float(v)) for v in row])
