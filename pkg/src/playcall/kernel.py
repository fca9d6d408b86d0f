"""Kernel machines: C-SVC and epsilon-SVR trained with an SMO solver.

Both fits reduce to one box-constrained quadratic program

    minimize 1/2 b'Qb + p'b   subject to  0 <= b_k <= C,  yhat'b = 0

solved by repeated maximal-violating-pair updates.  The classifier uses the
plain dual (b = alpha, yhat = class sign); the regressor uses the doubled
system b = (alpha; alpha*) with yhat = (+1...; -1...) and a tiled kernel.
"""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass

import numpy as np

KERNEL_KINDS = ("linear", "rbf")

# grid defaults: exponent ranges at step 2
DEFAULT_C_EXPONENTS = tuple(range(-5, 18, 2))
DEFAULT_GAMMA_EXPONENTS = tuple(range(-17, 4, 2))

_ETA_FLOOR = 1e-12


@dataclass(frozen=True)
class KernelSpec:
    """Kernel choice: plain dot product or Gaussian rbf with rate gamma."""

    kind: str
    gamma: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in KERNEL_KINDS:
            raise ValueError(f"kind must be one of {KERNEL_KINDS}, got {self.kind!r}")
        if self.kind == "rbf":
            if self.gamma is None or not self.gamma > 0:
                raise ValueError("rbf kernel requires gamma > 0")
        elif self.gamma is not None:
            raise ValueError("linear kernel takes no gamma")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "gamma": self.gamma}

    @classmethod
    def from_dict(cls, payload: dict) -> "KernelSpec":
        return cls(kind=payload["kind"], gamma=payload["gamma"])


@dataclass(frozen=True)
class GridSpec:
    """Hyperparameter grid for kernel-machine search."""

    c_values: tuple = tuple(2.0**k for k in DEFAULT_C_EXPONENTS)
    gamma_values: tuple = tuple(2.0**k for k in DEFAULT_GAMMA_EXPONENTS)
    folds: int = 10

    def __post_init__(self) -> None:
        if len(self.c_values) == 0 or len(self.gamma_values) == 0:
            raise ValueError("grids must be non-empty")
        if any(not c > 0 for c in self.c_values):
            raise ValueError("C values must be positive")
        if any(not g > 0 for g in self.gamma_values):
            raise ValueError("gamma values must be positive")
        if self.folds < 2:
            raise ValueError("folds must be at least 2")


def _as_matrix(X) -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ValueError("X must be a non-empty 2-d matrix")
    return X


def kernel_eval(spec: KernelSpec, x, z) -> float:
    """Evaluate k(x, z) for a single pair of equal-width vectors."""
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    if x.shape != z.shape or x.ndim != 1:
        raise ValueError("x and z must be 1-d vectors of equal width")
    if spec.kind == "linear":
        return float(x @ z)
    diff = x - z
    return float(np.exp(-spec.gamma * (diff @ diff)))


def kernel_matrix(spec: KernelSpec, A, B) -> np.ndarray:
    """Pairwise kernel values, shape (len(A), len(B))."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.ndim == 1:
        A = A[None, :]
    if B.ndim == 1:
        B = B[None, :]
    if A.shape[1] != B.shape[1]:
        raise ValueError(f"width mismatch: {A.shape[1]} != {B.shape[1]}")
    prod = A @ B.T
    if spec.kind == "linear":
        return prod
    sq = (A * A).sum(axis=1)[:, None] + (B * B).sum(axis=1)[None, :] - 2.0 * prod
    # rounding can push tiny squared distances below zero
    np.clip(sq, 0.0, None, out=sq)
    return np.exp(-spec.gamma * sq)


def _column_source(X: np.ndarray, spec: KernelSpec, max_cached: int = 256):
    """Kernel columns on demand with a small LRU; full matrices do not fit."""
    cache: OrderedDict[int, np.ndarray] = OrderedDict()

    def col(i: int) -> np.ndarray:
        hit = cache.get(i)
        if hit is not None:
            cache.move_to_end(i)
            return hit
        out = kernel_matrix(spec, X, X[i])[:, 0]
        cache[i] = out
        if len(cache) > max_cached:
            cache.popitem(last=False)
        return out

    return col


def _kernel_diag(X: np.ndarray, spec: KernelSpec) -> np.ndarray:
    if spec.kind == "rbf":
        return np.ones(X.shape[0])
    return np.einsum("ij,ij->i", X, X)


def _smo(col, diag, ysign, p, C, tol, max_iter):
    """Maximal-violating-pair SMO on the generic box QP.

    col(k) must return the effective kernel column for index k, diag its
    diagonal.  Returns (beta, bias, gradient, meta).
    """
    n = ysign.size
    beta = np.zeros(n)
    g = p.copy()
    pos = ysign > 0
    iterations = 0
    monotone = True
    objective = 0.0
    while True:
        v = -ysign * g
        up = np.where(pos, beta < C, beta > 0.0)
        low = np.where(pos, beta > 0.0, beta < C)
        vi = np.where(up, v, -np.inf)
        vj = np.where(low, v, np.inf)
        i = int(np.argmax(vi))
        j = int(np.argmin(vj))
        m = vi[i]
        big_m = vj[j]
        gap = m - big_m
        if not np.isfinite(gap) or gap <= tol:
            converged = True
            break
        if iterations >= max_iter:
            converged = False
            break
        ki = col(i)
        kj = col(j)
        eta = diag[i] + diag[j] - 2.0 * ki[j]
        t = gap / max(eta, _ETA_FLOOR)
        room_i = (C - beta[i]) if pos[i] else beta[i]
        room_j = beta[j] if pos[j] else (C - beta[j])
        t = min(t, room_i, room_j)
        delta = -t * gap + 0.5 * eta * t * t
        if delta > 1e-12 * max(1.0, abs(objective)):
            monotone = False
        objective += delta
        # land exactly on a bound when the box is what stops the step
        if t == room_i:
            beta[i] = C if pos[i] else 0.0
        else:
            beta[i] += ysign[i] * t
        if t == room_j:
            beta[j] = 0.0 if pos[j] else C
        else:
            beta[j] -= ysign[j] * t
        g += t * ysign * (ki - kj)
        iterations += 1
    if np.isneginf(m) and np.isposinf(big_m):
        bias = 0.0
    elif np.isneginf(m):
        bias = float(big_m)
    elif np.isposinf(big_m):
        bias = float(m)
    else:
        bias = float(0.5 * (m + big_m))
    meta = {
        "iterations": iterations,
        "converged": bool(converged),
        "objective_monotone": bool(monotone),
        "dual_objective": float(-objective),
    }
    return beta, bias, g, meta


class KernelModel:
    """Sparse kernel expansion f(x) = sum_i coef_i k(sv_i, x) + b."""

    def __init__(self, kind, spec, support_vectors, coefs, b, C, epsilon, width, meta):
        if kind not in ("svc", "svr"):
            raise ValueError(f"kind must be svc or svr, got {kind!r}")
        self.kind = kind
        self.spec = spec
        self.support_vectors = np.asarray(support_vectors, dtype=float).reshape(-1, width)
        self.coefs = np.asarray(coefs, dtype=float)
        self.b = float(b)
        self.C = float(C)
        self.epsilon = None if epsilon is None else float(epsilon)
        self.width = int(width)
        self.meta = dict(meta)
        if self.coefs.shape != (self.support_vectors.shape[0],):
            raise ValueError("one coefficient per support vector required")
        if not self.C > 0:
            raise ValueError("C must be positive")
        if np.any(np.abs(self.coefs) > self.C * (1 + 1e-9)):
            raise ValueError("coefficients must lie inside the box")
        if kind == "svr" and (self.epsilon is None or not self.epsilon > 0):
            raise ValueError("svr model requires epsilon > 0")
        if kind == "svc" and self.epsilon is not None:
            raise ValueError("svc model takes no epsilon")

    @property
    def n_support(self) -> int:
        return self.support_vectors.shape[0]

    def _check(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[None, :]
        if X.shape[1] != self.width:
            raise ValueError(f"input width {X.shape[1]} != model width {self.width}")
        return X

    def decision_values(self, X) -> np.ndarray:
        X = self._check(X)
        if self.n_support == 0:
            return np.full(X.shape[0], self.b)
        return kernel_matrix(self.spec, X, self.support_vectors) @ self.coefs + self.b

    def predict(self, X) -> np.ndarray:
        f = self.decision_values(X)
        if self.kind == "svr":
            return f
        # zero margin falls to the failure class
        return np.where(f > 0.0, 1.0, 0.0)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "spec": self.spec.to_dict(),
            "support_vectors": self.support_vectors.tolist(),
            "coefs": self.coefs.tolist(),
            "b": self.b,
            "C": self.C,
            "epsilon": self.epsilon,
            "width": self.width,
            "meta": dict(self.meta),
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "KernelModel":
        return cls(
            kind=payload["kind"],
            spec=KernelSpec.from_dict(payload["spec"]),
            support_vectors=payload["support_vectors"],
            coefs=payload["coefs"],
            b=payload["b"],
            C=payload["C"],
            epsilon=payload["epsilon"],
            width=payload["width"],
            meta=payload["meta"],
        )


def _svc_kkt_violation(y_pm, g, beta, b, C) -> float:
    # recover margins from the final gradient: y_i f_i = g_i + 1 + y_i b
    margin = g + 1.0 + y_pm * b
    at_zero = beta == 0.0
    at_c = beta == C
    interior = ~at_zero & ~at_c
    viol = np.zeros_like(margin)
    viol[at_zero] = np.maximum(0.0, 1.0 - margin[at_zero])
    viol[interior] = np.abs(margin[interior] - 1.0)
    viol[at_c] = np.maximum(0.0, margin[at_c] - 1.0)
    return float(viol.max()) if viol.size else 0.0


def _svr_kkt_violation(y, g, beta, b, C, epsilon) -> float:
    n = y.size
    resid = y - (g[:n] - epsilon + y + b)
    pieces = []
    for part, r in ((beta[:n], resid), (beta[n:], -resid)):
        at_zero = part == 0.0
        at_c = part == C
        interior = ~at_zero & ~at_c
        viol = np.zeros_like(r)
        viol[at_zero] = np.maximum(0.0, r[at_zero] - epsilon)
        viol[interior] = np.abs(r[interior] - epsilon)
        viol[at_c] = np.maximum(0.0, epsilon - r[at_c])
        pieces.append(viol)
    stacked = np.concatenate(pieces)
    return float(stacked.max()) if stacked.size else 0.0


def _finish(kind, X, coef_full, b, C, epsilon, spec, meta) -> KernelModel:
    keep = coef_full != 0.0
    return KernelModel(
        kind=kind,
        spec=spec,
        support_vectors=X[keep],
        coefs=coef_full[keep],
        b=b,
        C=C,
        epsilon=epsilon,
        width=X.shape[1],
        meta=meta,
    )


def fit_svc_smo(X, y, C=1.0, spec=KernelSpec("linear"), tol=1e-3,
                max_iter=1_000_000) -> KernelModel:
    """Train a two-class C-SVC; y may be 0/1 or -1/+1."""
    X = _as_matrix(X)
    y = np.asarray(y, dtype=float)
    if y.shape != (X.shape[0],):
        raise ValueError("X and y lengths differ")
    if not C > 0:
        raise ValueError("C must be positive")
    if not tol > 0:
        raise ValueError("tol must be positive")
    if not np.all(np.isin(y, (0.0, 1.0, -1.0))):
        raise ValueError("labels must be 0/1 or -1/+1")
    y_pm = np.where(y > 0, 1.0, -1.0)
    if np.all(y_pm == 1.0) or np.all(y_pm == -1.0):
        raise ValueError("both classes must be present")
    col = _column_source(X, spec)
    diag = _kernel_diag(X, spec)
    p = np.full(X.shape[0], -1.0)
    beta, b, g, meta = _smo(col, diag, y_pm, p, C, tol, max_iter)
    meta["kkt_max_violation"] = _svc_kkt_violation(y_pm, g, beta, b, C)
    meta["n_train"] = X.shape[0]
    return _finish("svc", X, beta * y_pm, b, C, None, spec, meta)


def fit_svr_smo(X, y, C=1.0, epsilon=0.1, spec=KernelSpec("linear"), tol=1e-3,
                max_iter=1_000_000) -> KernelModel:
    """Train an epsilon-insensitive SVR on a real-valued target."""
    X = _as_matrix(X)
    y = np.asarray(y, dtype=float)
    if y.shape != (X.shape[0],):
        raise ValueError("X and y lengths differ")
    if not np.all(np.isfinite(y)):
        raise ValueError("target must be finite")
    if not C > 0:
        raise ValueError("C must be positive")
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if not tol > 0:
        raise ValueError("tol must be positive")
    n = X.shape[0]
    base = _column_source(X, spec)

    def col(k: int) -> np.ndarray:
        return np.tile(base(k % n), 2)

    diag = np.tile(_kernel_diag(X, spec), 2)
    ysign = np.concatenate([np.ones(n), -np.ones(n)])
    p = np.concatenate([epsilon - y, epsilon + y])
    beta, b, g, meta = _smo(col, diag, ysign, p, C, tol, max_iter)
    meta["kkt_max_violation"] = _svr_kkt_violation(y, g, beta, b, C, epsilon)
    meta["n_train"] = n
    return _finish("svr", X, beta[:n] - beta[n:], b, C, epsilon, spec, meta)


def svm_predict(model: KernelModel, X) -> np.ndarray:
    """Class labels for svc models, point estimates for svr models."""
    if not isinstance(model, KernelModel):
        raise TypeError(f"expected KernelModel, got {type(model).__name__}")
    return model.predict(X)
