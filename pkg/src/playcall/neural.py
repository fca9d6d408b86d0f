"""Feed-forward MLP with backprop training and a finite-difference audit."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ACTIVATIONS = ("sigmoid", "tanh", "linear")
OUTPUT_HEADS = ("linear", "sigmoid")
LOSSES = ("squared_error", "cross_entropy")


class TrainingDivergedError(RuntimeError):
    """Training loss stopped being finite."""


@dataclass(frozen=True)
class MLPConfig:
    """Architecture plus trainer settings for one network."""

    hidden_layers: int = 1
    hidden_units: int = 10
    activation: str = "tanh"
    output: str = "linear"
    loss: str = "squared_error"
    max_epochs: int = 100
    learning_rate: float = 0.01
    momentum: float = 0.9
    batch_size: int = 32
    seed: int = 0

    def __post_init__(self) -> None:
        if self.hidden_layers < 1:
            raise ValueError("hidden_layers must be at least 1")
        if self.hidden_units < 1:
            raise ValueError("hidden_units must be at least 1")
        if self.activation not in ACTIVATIONS:
            raise ValueError(f"activation must be one of {ACTIVATIONS}")
        if self.output not in OUTPUT_HEADS:
            raise ValueError(f"output must be one of {OUTPUT_HEADS}")
        if self.loss not in LOSSES:
            raise ValueError(f"loss must be one of {LOSSES}")
        if self.loss == "cross_entropy" and self.output != "sigmoid":
            raise ValueError("cross_entropy loss requires the sigmoid output head")
        if self.max_epochs < 1:
            raise ValueError("max_epochs must be at least 1")
        if not self.learning_rate > 0:
            raise ValueError("learning_rate must be positive")
        if not 0.0 <= self.momentum < 1.0:
            raise ValueError("momentum must lie in [0, 1)")
        if self.batch_size < 1:
            raise ValueError("batch_size must be at least 1")


def _sigmoid(Z: np.ndarray) -> np.ndarray:
    out = np.empty_like(Z)
    pos = Z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-Z[pos]))
    ez = np.exp(Z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _activate(kind: str, Z: np.ndarray) -> np.ndarray:
    if kind == "tanh":
        return np.tanh(Z)
    if kind == "sigmoid":
        return _sigmoid(Z)
    return Z


def _activation_grad(kind: str, A: np.ndarray) -> np.ndarray:
    if kind == "tanh":
        return 1.0 - A * A
    if kind == "sigmoid":
        return A * (1.0 - A)
    return np.ones_like(A)


class MLPModel:
    """Weight matrices shaped (fan_out, fan_in), one bias vector per layer."""

    def __init__(self, weights, biases, activation, output):
        if activation not in ACTIVATIONS:
            raise ValueError(f"activation must be one of {ACTIVATIONS}")
        if output not in OUTPUT_HEADS:
            raise ValueError(f"output must be one of {OUTPUT_HEADS}")
        self.weights = [np.asarray(w, dtype=float) for w in weights]
        self.biases = [np.asarray(b, dtype=float) for b in biases]
        self.activation = activation
        self.output = output
        if len(self.weights) == 0 or len(self.weights) != len(self.biases):
            raise ValueError("one bias vector per weight matrix required")
        fan_in = self.weights[0].shape[1]
        for w, b in zip(self.weights, self.biases):
            if w.ndim != 2 or b.ndim != 1 or w.shape[0] != b.shape[0]:
                raise ValueError("layer shapes do not chain")
            if w.shape[1] != fan_in:
                raise ValueError("layer shapes do not chain")
            fan_in = w.shape[0]
        if self.weights[-1].shape[0] != 1:
            raise ValueError("output layer must have exactly one unit")

    @property
    def width(self) -> int:
        return self.weights[0].shape[1]

    @property
    def n_layers(self) -> int:
        return len(self.weights)

    def _check(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim == 1:
            X = X[None, :]
        if X.shape[1] != self.width:
            raise ValueError(f"input width {X.shape[1]} != model width {self.width}")
        return X

    def copy(self) -> "MLPModel":
        return MLPModel(
            [w.copy() for w in self.weights],
            [b.copy() for b in self.biases],
            self.activation,
            self.output,
        )

    def decision_values(self, X) -> np.ndarray:
        X = self._check(X)
        return _forward_batch(self, X)[-1][:, 0]

    def predict(self, X) -> np.ndarray:
        out = self.decision_values(X)
        if self.output == "sigmoid":
            # 0.5 falls to the failure class
            return np.where(out > 0.5, 1.0, 0.0)
        return out

    def to_dict(self) -> dict:
        return {
            "weights": [w.tolist() for w in self.weights],
            "biases": [b.tolist() for b in self.biases],
            "activation": self.activation,
            "output": self.output,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "MLPModel":
        return cls(
            weights=payload["weights"],
            biases=payload["biases"],
            activation=payload["activation"],
            output=payload["output"],
        )


def init_mlp(config: MLPConfig, input_width: int) -> MLPModel:
    """Uniform(-r, r) weights with r = sqrt(6/(fan_in+fan_out)); zero biases."""
    if input_width < 1:
        raise ValueError("input_width must be at least 1")
    sizes = [input_width] + [config.hidden_units] * config.hidden_layers + [1]
    rng = np.random.default_rng(config.seed)
    weights = []
    biases = []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        r = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-r, r, size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out))
    return MLPModel(weights, biases, config.activation, config.output)


def _forward_batch(model: MLPModel, X: np.ndarray) -> list[np.ndarray]:
    """All layer activations, inputs first and the output head last."""
    acts = [X]
    a = X
    last = model.n_layers - 1
    # diverging weights overflow here; the epoch loss check reports it
    with np.errstate(over="ignore", invalid="ignore"):
        for idx, (w, b) in enumerate(zip(model.weights, model.biases)):
            z = a @ w.T + b
            a = _activate(model.output if idx == last else model.activation, z)
            acts.append(a)
    return acts


def forward(model: MLPModel, x) -> float | np.ndarray:
    """Network output; a single vector collapses to a plain float."""
    arr = np.asarray(x, dtype=float)
    out = model.decision_values(arr)
    if arr.ndim == 1:
        return float(out[0])
    return out


def _loss_value(loss: str, out: np.ndarray, y: np.ndarray) -> float:
    if loss == "squared_error":
        return float(np.mean((out - y) ** 2))
    p = np.clip(out, 1e-12, 1.0 - 1e-12)
    return float(np.mean(-(y * np.log(p) + (1.0 - y) * np.log(1.0 - p))))


def backprop_grad(model: MLPModel, X, y, loss: str = "squared_error"):
    """Analytic gradients of the mean batch loss for every weight and bias."""
    if loss not in LOSSES:
        raise ValueError(f"loss must be one of {LOSSES}")
    if loss == "cross_entropy" and model.output != "sigmoid":
        raise ValueError("cross_entropy loss requires the sigmoid output head")
    X = model._check(X)
    y = np.asarray(y, dtype=float).reshape(-1, 1)
    if y.shape[0] != X.shape[0]:
        raise ValueError("X and y lengths differ")
    acts = _forward_batch(model, X)
    out = acts[-1]
    n = X.shape[0]
    if loss == "cross_entropy":
        dz = (out - y) / n
    else:
        dout = 2.0 * (out - y) / n
        dz = dout * _activation_grad(model.output, out)
    d_weights = [None] * model.n_layers
    d_biases = [None] * model.n_layers
    for layer in range(model.n_layers - 1, -1, -1):
        d_weights[layer] = dz.T @ acts[layer]
        d_biases[layer] = dz.sum(axis=0)
        if layer > 0:
            da = dz @ model.weights[layer]
            dz = da * _activation_grad(model.activation, acts[layer])
    return d_weights, d_biases


def _flatten(d_weights, d_biases) -> np.ndarray:
    parts = [g.ravel() for g in d_weights] + [g.ravel() for g in d_biases]
    return np.concatenate(parts)


def grad_check(model: MLPModel, X, y, loss: str = "squared_error",
               h: float = 1e-5) -> float:
    """Norm-relative gap between backprop and central finite differences."""
    X = model._check(X)
    y = np.asarray(y, dtype=float).reshape(-1)
    analytic = _flatten(*backprop_grad(model, X, y, loss))
    params = model.weights + model.biases
    numeric = np.empty_like(analytic)
    pos = 0
    for arr in params:
        flat = arr.ravel()
        for k in range(flat.size):
            keep = flat[k]
            flat[k] = keep + h
            hi = _loss_value(loss, model.decision_values(X), y)
            flat[k] = keep - h
            lo = _loss_value(loss, model.decision_values(X), y)
            flat[k] = keep
            numeric[pos] = (hi - lo) / (2.0 * h)
            pos += 1
    gap = np.linalg.norm(analytic - numeric)
    scale = np.linalg.norm(analytic) + np.linalg.norm(numeric)
    if scale == 0.0:
        return 0.0
    return float(gap / scale)


def train_sgd(model: MLPModel, X, y, config: MLPConfig):
    """Epoch-shuffled minibatch SGD with momentum.

    Does not touch the input model; returns (trained model, per-epoch mean
    loss over the full training set).  Raises TrainingDivergedError as soon
    as the epoch loss stops being finite.
    """
    X = model._check(X)
    y = np.asarray(y, dtype=float).reshape(-1)
    if y.shape[0] != X.shape[0]:
        raise ValueError("X and y lengths differ")
    if X.shape[0] == 0:
        raise ValueError("training set must be non-empty")
    out = model.copy()
    rng = np.random.default_rng(config.seed)
    vel_w = [np.zeros_like(w) for w in out.weights]
    vel_b = [np.zeros_like(b) for b in out.biases]
    n = X.shape[0]
    losses: list[float] = []
    for epoch in range(config.max_epochs):
        order = rng.permutation(n)
        for start in range(0, n, config.batch_size):
            take = order[start:start + config.batch_size]
            d_weights, d_biases = backprop_grad(out, X[take], y[take], config.loss)
            for layer in range(out.n_layers):
                vel_w[layer] = config.momentum * vel_w[layer] \
                    - config.learning_rate * d_weights[layer]
                vel_b[layer] = config.momentum * vel_b[layer] \
                    - config.learning_rate * d_biases[layer]
                out.weights[layer] += vel_w[layer]
                out.biases[layer] += vel_b[layer]
        epoch_loss = _loss_value(config.loss, out.decision_values(X), y)
        if not np.isfinite(epoch_loss):
            raise TrainingDivergedError(
                f"loss is not finite at epoch {epoch + 1}; lower the learning rate"
            )
        losses.append(epoch_loss)
    return out, losses
