"""Versioned, self-describing model files.

A bundle packs a trained model together with the encoding schema (and the
optional feature scaler) it was trained against, so a saved file can score
raw play features without any out-of-band configuration.
"""

import json
import os
import tempfile
from dataclasses import dataclass, field

import numpy as np

from .encode import EncodingSchema, MinMaxScaler, encode_many
from .evaluate import TARGET_TASKS
from .kernel import KernelModel
from .linear import CentroidModel, LDAModel, LinearModel
from .neural import MLPModel
from .trees import TreeModel

FORMAT_NAME = "playcall-model"
FORMAT_VERSION = 1

MODEL_KINDS = {
    "tree": TreeModel,
    "centroid": CentroidModel,
    "lda": LDAModel,
    "linreg": LinearModel,
    "svm": KernelModel,
    "svr": KernelModel,
    "mlp": MLPModel,
}

CLASSIFIER_KINDS = frozenset({"tree", "centroid", "lda", "svm", "mlp"})
REGRESSOR_KINDS = frozenset({"tree", "linreg", "svr", "mlp"})


class BundleError(ValueError):
    """A model file or bundle that cannot be used.

    ``reason`` is a stable machine-readable code: one of "corrupt_file",
    "version_mismatch", "width_mismatch", "unknown_kind", "invalid_bundle".
    """

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


def _model_width(model) -> int:
    width = getattr(model, "width", None)
    if width is None:
        raise BundleError("invalid_bundle", "model exposes no input width")
    return int(width)


@dataclass(frozen=True)
class ModelBundle:
    """A trained model plus everything needed to apply it to raw features."""

    kind: str
    target: str
    model: object
    schema: EncodingSchema
    scaler: MinMaxScaler | None = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise BundleError("unknown_kind", f"unknown model kind {self.kind!r}")
        if self.target not in TARGET_TASKS:
            raise BundleError(
                "invalid_bundle", f"unknown target {self.target!r}"
            )
        expected = MODEL_KINDS[self.kind]
        if not isinstance(self.model, expected):
            raise BundleError(
                "invalid_bundle",
                f"kind {self.kind!r} expects {expected.__name__}, "
                f"got {type(self.model).__name__}",
            )
        task = TARGET_TASKS[self.target]
        allowed = CLASSIFIER_KINDS if task == "classification" else REGRESSOR_KINDS
        if self.kind not in allowed:
            raise BundleError(
                "invalid_bundle",
                f"kind {self.kind!r} cannot serve a {task} target",
            )
        # model-internal mode must agree with the bundle's task
        if self.kind == "tree" and self.model.kind != task:
            raise BundleError(
                "invalid_bundle",
                f"{self.model.kind} tree cannot serve a {task} target",
            )
        if self.kind == "svm" and self.model.kind != "svc":
            raise BundleError("invalid_bundle", "svm bundle needs an svc model")
        if self.kind == "svr" and self.model.kind != "svr":
            raise BundleError("invalid_bundle", "svr bundle needs an svr model")
        if (
            self.kind == "mlp"
            and task == "classification"
            and self.model.output != "sigmoid"
        ):
            raise BundleError(
                "invalid_bundle",
                "classification mlp bundle needs a sigmoid output head",
            )
        width = _model_width(self.model)
        if width != self.schema.width:
            raise BundleError(
                "width_mismatch",
                f"schema width {self.schema.width} != model width {width}",
            )
        if self.scaler is not None:
            if self.scaler.mins is None:
                raise BundleError("invalid_bundle", "scaler is not fitted")
            if self.scaler.mins.size != self.schema.width:
                raise BundleError(
                    "width_mismatch",
                    f"scaler width {self.scaler.mins.size} != "
                    f"schema width {self.schema.width}",
                )

    @property
    def task(self) -> str:
        return TARGET_TASKS[self.target]

    def encode(self, features_list) -> np.ndarray:
        """Encode raw features and apply the bundle's scaler if it has one."""
        X = encode_many(features_list, self.schema)
        if self.scaler is not None:
            X = self.scaler.transform(X)
        return X

    def scores(self, features_list) -> np.ndarray:
        """Model score per play: decision values for classifiers,
        predictions for regressors."""
        X = self.encode(features_list)
        if self.task == "classification":
            return np.asarray(self.model.decision_values(X), dtype=float)
        return np.asarray(self.model.predict(X), dtype=float)

    def describe(self) -> dict:
        """Summary used by the /models endpoint and the CLI."""
        return {
            "kind": self.kind,
            "target": self.target,
            "task": self.task,
            "width": self.schema.width,
            "scaled": self.scaler is not None,
            "metadata": dict(self.metadata),
        }

    def to_dict(self) -> dict:
        return {
            "format": FORMAT_NAME,
            "version": FORMAT_VERSION,
            "kind": self.kind,
            "target": self.target,
            "schema": self.schema.to_dict(),
            "scaler": None if self.scaler is None else self.scaler.to_dict(),
            "model": self.model.to_dict(),
            "metadata": dict(self.metadata),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ModelBundle":
        try:
            fmt = d["format"]
            version = d["version"]
        except (TypeError, KeyError) as err:
            raise BundleError(
                "corrupt_file", f"missing bundle field: {err}"
            ) from err
        if fmt != FORMAT_NAME:
            raise BundleError("corrupt_file", f"not a model file: format {fmt!r}")
        if version != FORMAT_VERSION:
            raise BundleError(
                "version_mismatch",
                f"model file version {version!r}, expected {FORMAT_VERSION}",
            )
        try:
            kind = d["kind"]
            target = d["target"]
            schema = EncodingSchema.from_dict(d["schema"])
            scaler_dict = d["scaler"]
            model_dict = d["model"]
            metadata = d["metadata"]
        except (TypeError, KeyError, ValueError) as err:
            raise BundleError(
                "corrupt_file", f"bad bundle contents: {err}"
            ) from err
        if kind not in MODEL_KINDS:
            raise BundleError("unknown_kind", f"unknown model kind {kind!r}")
        try:
            model = MODEL_KINDS[kind].from_dict(model_dict)
            scaler = (
                None if scaler_dict is None
                else MinMaxScaler.from_dict(scaler_dict)
            )
        except (TypeError, KeyError, ValueError) as err:
            raise BundleError(
                "corrupt_file", f"bad model payload: {err}"
            ) from err
        if not isinstance(metadata, dict):
            raise BundleError("corrupt_file", "metadata must be an object")
        return cls(
            kind=kind,
            target=target,
            model=model,
            schema=schema,
            scaler=scaler,
            metadata=metadata,
        )


def save_model(bundle: ModelBundle, path: str) -> None:
    """Write a bundle to ``path`` as JSON.

    The file is written atomically so a concurrent reader never sees a
    partial bundle.
    """
    if not isinstance(bundle, ModelBundle):
        raise TypeError(f"expected ModelBundle, got {type(bundle).__name__}")
    payload = json.dumps(bundle.to_dict(), sort_keys=True)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(payload)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_model(path: str) -> ModelBundle:
    """Read a bundle written by save_model."""
    try:
        with open(path) as fh:
            raw = fh.read()
    except OSError as err:
        raise BundleError("corrupt_file", f"cannot read {path}: {err}") from err
    try:
        d = json.loads(raw)
    except json.JSONDecodeError as err:
        raise BundleError(
            "corrupt_file", f"{path} is not valid JSON: {err}"
        ) from err
    return ModelBundle.from_dict(d)
