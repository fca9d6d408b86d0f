"""CART-style decision trees, grown greedily with exact sorted sweeps.

Classification trees split on weighted Gini impurity, regression trees
on weighted squared error.  Candidate thresholds are midpoints between
consecutive distinct sorted values.  Ties in impurity decrease resolve
to the lowest column index, then the smallest threshold, so a fit is
deterministic across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TreeParams:
    max_depth: int | None = None
    min_samples_leaf: int = 1
    class_weighting: str = "none"

    def __post_init__(self):
        if self.max_depth is not None and self.max_depth < 1:
            raise ValueError("max_depth must be >= 1 when finite")
        if self.min_samples_leaf < 1:
            raise ValueError("min_samples_leaf must be >= 1")
        if self.class_weighting not in ("none", "balanced"):
            raise ValueError(f"bad class_weighting: {self.class_weighting!r}")


@dataclass(frozen=True)
class Leaf:
    value: float   # predicted class (0/1) or regression mean
    score: float   # weighted success share (classification) or the mean
    n: int


@dataclass(frozen=True)
class TreeNode:
    column: int
    threshold: float
    left: "TreeNode | Leaf"
    right: "TreeNode | Leaf"


def best_split(X_col, y, weights, criterion: str, min_samples_leaf: int = 1):
    """Best threshold for one column: (threshold, impurity_decrease) or None.

    The sweep works on cumulative sums over the sorted column, so every
    candidate boundary is scored in one vectorized pass.  Returns None
    when the column is constant, no boundary honors min_samples_leaf,
    or no candidate decreases impurity.
    """
    if criterion not in ("gini", "mse"):
        raise ValueError(f"bad criterion: {criterion!r}")
    col = np.asarray(X_col, dtype=float)
    y = np.asarray(y, dtype=float)
    w = np.asarray(weights, dtype=float)
    n = col.shape[0]
    if not (n == y.shape[0] == w.shape[0]):
        raise ValueError("column, targets and weights must have equal length")
    if n < 2 or np.ptp(y) == 0:
        return None

    order = np.argsort(col, kind="stable")
    cs, ys, ws = col[order], y[order], w[order]
    idx = np.flatnonzero(cs[1:] != cs[:-1])
    if idx.size:
        idx = idx[(idx + 1 >= min_samples_leaf)
                  & (n - idx - 1 >= min_samples_leaf)]
    if idx.size == 0:
        return None

    cw = np.cumsum(ws)
    W = cw[-1]
    wl = cw[idx]
    wr = W - wl
    if criterion == "gini":
        cw1 = np.cumsum(ws * (ys == 1))
        w1l = cw1[idx]
        w1r = cw1[-1] - w1l
        w0l, w0r = wl - w1l, wr - w1r
        gini_l = 1.0 - (w1l / wl) ** 2 - (w0l / wl) ** 2
        gini_r = 1.0 - (w1r / wr) ** 2 - (w0r / wr) ** 2
        parent = 1.0 - (cw1[-1] / W) ** 2 - ((W - cw1[-1]) / W) ** 2
        decrease = parent - (wl * gini_l + wr * gini_r) / W
    else:
        # center the target first, SSE is shift-invariant and the
        # cumulative squares cancel far less
        ysc = ys - np.sum(ws * ys) / W
        cwy = np.cumsum(ws * ysc)
        cwy2 = np.cumsum(ws * ysc ** 2)
        sse_l = cwy2[idx] - cwy[idx] ** 2 / wl
        sse_r = (cwy2[-1] - cwy2[idx]) - (cwy[-1] - cwy[idx]) ** 2 / wr
        sse_p = cwy2[-1] - cwy[-1] ** 2 / W
        decrease = (sse_p - sse_l - sse_r) / W

    best = int(np.argmax(decrease))
    if decrease[best] <= 0.0:
        return None
    i = idx[best]
    threshold = (cs[i] + cs[i + 1]) / 2.0
    return float(threshold), float(decrease[best])


class TreeModel:
    """Fitted tree; immutable after construction."""

    def __init__(self, root, width: int, kind: str, params: TreeParams):
        if kind not in ("classification", "regression"):
            raise ValueError(f"bad tree kind: {kind!r}")
        if root is None:
            raise ValueError("tree has no root")
        self.root = root
        self.width = width
        self.kind = kind
        self.params = params

    def _leaf_for(self, x: np.ndarray) -> Leaf:
        node = self.root
        while isinstance(node, TreeNode):
            node = node.left if x[node.column] <= node.threshold else node.right
        return node

    def _check_width(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        single = X.ndim == 1
        if single:
            X = X[None, :]
        if X.shape[1] != self.width:
            raise ValueError(f"input width {X.shape[1]} != model width {self.width}")
        return X

    def predict(self, X) -> np.ndarray:
        X = self._check_width(X)
        return np.array([self._leaf_for(row).value for row in X])

    def decision_values(self, X) -> np.ndarray:
        """Leaf scores: success share for classification, mean for regression."""
        X = self._check_width(X)
        return np.array([self._leaf_for(row).score for row in X])

    def depth(self) -> int:
        def walk(node):
            if isinstance(node, Leaf):
                return 0
            return 1 + max(walk(node.left), walk(node.right))
        return walk(self.root)

    def leaf_count(self) -> int:
        def walk(node):
            if isinstance(node, Leaf):
                return 1
            return walk(node.left) + walk(node.right)
        return walk(self.root)

    def to_text(self, feature_names=None) -> str:
        def name(c):
            return feature_names[c] if feature_names else f"x[{c}]"

        def walk(node, indent):
            pad = "  " * indent
            if isinstance(node, Leaf):
                return (f"{pad}predict {node.value:g} "
                        f"(score={node.score:.4f}, n={node.n})")
            return "\n".join([
                f"{pad}if {name(node.column)} <= {node.threshold:g}:",
                walk(node.left, indent + 1),
                f"{pad}else:",
                walk(node.right, indent + 1),
            ])

        return walk(self.root, 0)

    def to_dict(self) -> dict:
        def walk(node):
            if isinstance(node, Leaf):
                return {"value": node.value, "score": node.score, "n": node.n}
            return {
                "column": node.column,
                "threshold": node.threshold,
                "left": walk(node.left),
                "right": walk(node.right),
            }

        return {
            "kind": self.kind,
            "width": self.width,
            "params": {
                "max_depth": self.params.max_depth,
                "min_samples_leaf": self.params.min_samples_leaf,
                "class_weighting": self.params.class_weighting,
            },
            "root": walk(self.root),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TreeModel":
        def walk(node):
            if "column" in node:
                return TreeNode(
                    column=int(node["column"]),
                    threshold=float(node["threshold"]),
                    left=walk(node["left"]),
                    right=walk(node["right"]),
                )
            return Leaf(value=float(node["value"]), score=float(node["score"]),
                        n=int(node["n"]))

        return cls(
            root=walk(d["root"]),
            width=int(d["width"]),
            kind=d["kind"],
            params=TreeParams(**d["params"]),
        )


def _make_leaf(y, w, kind: str) -> Leaf:
    if kind == "classification":
        mass1 = float(np.sum(w[y == 1]))
        mass0 = float(np.sum(w[y == 0]))
        # exact tie predicts failure
        value = 1.0 if mass1 > mass0 else 0.0
        score = mass1 / (mass0 + mass1)
    else:
        value = float(np.sum(w * y) / np.sum(w))
        score = value
    return Leaf(value=value, score=score, n=int(y.shape[0]))


def _grow(X, y, w, depth, params: TreeParams, criterion: str, kind: str):
    n = y.shape[0]
    limit = params.max_depth
    if (n < 2 or np.ptp(y) == 0
            or (limit is not None and depth >= limit)
            or n < 2 * params.min_samples_leaf):
        return _make_leaf(y, w, kind)
    best = None
    for c in range(X.shape[1]):
        found = best_split(X[:, c], y, w, criterion, params.min_samples_leaf)
        if found is None:
            continue
        threshold, decrease = found
        if best is None or decrease > best[2]:
            best = (c, threshold, decrease)
    if best is None:
        return _make_leaf(y, w, kind)
    column, threshold, _ = best
    mask = X[:, column] <= threshold
    return TreeNode(
        column=column,
        threshold=threshold,
        left=_grow(X[mask], y[mask], w[mask], depth + 1, params, criterion, kind),
        right=_grow(X[~mask], y[~mask], w[~mask], depth + 1, params, criterion,
                    kind),
    )


def fit_classification_tree(X, y, params: TreeParams = TreeParams()) -> TreeModel:
    """Greedy weighted-Gini tree over a binary target.

    Balanced weighting gives every sample weight n / (2 * n_class), so
    each class carries half the total mass regardless of imbalance.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ValueError("X must be a non-empty 2-d matrix")
    if X.shape[0] != y.shape[0]:
        raise ValueError("X and y lengths differ")
    if not np.all(np.isin(y, (0.0, 1.0))):
        raise ValueError("classification target must be 0/1")
    n1 = int(np.sum(y == 1))
    n0 = y.shape[0] - n1
    if n0 == 0 or n1 == 0:
        raise ValueError("both classes must be present")
    if params.class_weighting == "balanced":
        n = y.shape[0]
        w = np.where(y == 1, n / (2.0 * n1), n / (2.0 * n0))
    else:
        w = np.ones(y.shape[0])
    root = _grow(X, y, w, 0, params, "gini", "classification")
    return TreeModel(root, X.shape[1], "classification", params)


def fit_regression_tree(X, y, params: TreeParams = TreeParams()) -> TreeModel:
    """Greedy SSE-minimizing tree over a real target."""
    if params.class_weighting != "none":
        raise ValueError("class weighting applies to classification only")
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ValueError("X must be a non-empty 2-d matrix")
    if X.shape[0] != y.shape[0]:
        raise ValueError("X and y lengths differ")
    w = np.ones(y.shape[0])
    root = _grow(X, y, w, 0, params, "mse", "regression")
    return TreeModel(root, X.shape[1], "regression", params)


def tree_predict(model: TreeModel, x) -> np.ndarray:
    """Module-level alias for TreeModel.predict."""
    return model.predict(x)
