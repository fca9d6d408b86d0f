"""Corpus ingestion and labeled-dataset assembly.

The canonical corpus interchange is a UTF-8 line-delimited file, one
JSON object per line with the fields of RawPlayRecord.  Ingest parses,
labels and encodes every relevant record, tallies rejections by reason,
and reports malformed lines with their line numbers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .encode import EncodingSchema, build_schema, encode_many
from .labels import compute_labels
from .playparse import ParseError, RawPlayRecord, classify_record, parse_play

# franchise codes for the 2009-2014 seasons
NFL_TEAMS = (
    "ARI", "ATL", "BAL", "BUF", "CAR", "CHI", "CIN", "CLE",
    "DAL", "DEN", "DET", "GB", "HOU", "IND", "JAC", "KC",
    "MIA", "MIN", "NE", "NO", "NYG", "NYJ", "OAK", "PHI",
    "PIT", "SD", "SEA", "SF", "STL", "TB", "TEN", "WAS",
)

_RECORD_KEYS = (
    "game_id", "team", "opponent", "quarter", "clock_seconds",
    "yardline", "down", "togo", "description",
)


class IngestError(ValueError):
    """Malformed corpus line in strict mode, or unusable corpus file."""


@dataclass
class Dataset:
    """Encoded design matrix plus the three label arrays."""

    X: np.ndarray
    success: np.ndarray
    yards: np.ndarray
    progress: np.ndarray
    schema: EncodingSchema
    provenance: str = ""

    def __post_init__(self):
        n = self.X.shape[0]
        if self.X.ndim != 2 or self.X.shape[1] != self.schema.width:
            raise ValueError("X width does not match schema")
        for name in ("success", "yards", "progress"):
            if getattr(self, name).shape != (n,):
                raise ValueError(f"{name} length != n")

    @property
    def n(self) -> int:
        return self.X.shape[0]

    def class_counts(self) -> tuple[int, int]:
        """(failures, successes) by the success label."""
        pos = int(np.sum(self.success == 1))
        return self.n - pos, pos

    def target(self, name: str) -> np.ndarray:
        if name not in ("success", "yards", "progress"):
            raise ValueError(f"unknown target: {name!r}")
        return getattr(self, name)

    def subset(self, idx: np.ndarray) -> "Dataset":
        idx = np.asarray(idx)
        return Dataset(
            X=self.X[idx],
            success=self.success[idx],
            yards=self.yards[idx],
            progress=self.progress[idx],
            schema=self.schema,
            provenance=self.provenance,
        )


@dataclass
class IngestReport:
    records_read: int = 0
    records_kept: int = 0
    rejections: dict = field(default_factory=dict)
    malformed_lines: list = field(default_factory=list)

    @property
    def records_rejected(self) -> int:
        return sum(self.rejections.values())

    def success_ratio(self, dataset: "Dataset | None" = None) -> float:
        if dataset is None or dataset.n == 0:
            return 0.0
        return float(np.mean(dataset.success))

    def to_dict(self, dataset: "Dataset | None" = None) -> dict:
        return {
            "records_read": self.records_read,
            "records_kept": self.records_kept,
            "records_rejected": self.records_rejected,
            "rejections": {k: self.rejections[k] for k in sorted(self.rejections)},
            "success_ratio": self.success_ratio(dataset),
        }

    def text_summary(self, dataset: "Dataset | None" = None) -> str:
        lines = [
            f"records read:     {self.records_read}",
            f"records kept:     {self.records_kept}",
            f"records rejected: {self.records_rejected}",
        ]
        for reason in sorted(self.rejections):
            lines.append(f"  {reason}: {self.rejections[reason]}")
        if dataset is not None and dataset.n:
            n0, n1 = dataset.class_counts()
            ratio = self.success_ratio(dataset)
            lines.append(f"class balance:    {n0} failure / {n1} success "
                         f"(success ratio {ratio:.3f})")
        return "\n".join(lines)


def record_from_json(obj: dict) -> RawPlayRecord:
    """Build a RawPlayRecord from one parsed corpus line."""
    missing = [k for k in _RECORD_KEYS if k not in obj]
    if missing:
        raise ValueError(f"missing keys: {', '.join(missing)}")
    return RawPlayRecord(**{k: obj[k] for k in _RECORD_KEYS})


def iter_records(path):
    """Yield (line_number, record_or_None, error_or_None) per corpus line."""
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = record_from_json(json.loads(line))
            except (ValueError, TypeError) as exc:
                yield lineno, None, str(exc)
                continue
            yield lineno, record, None


def ingest(
    path,
    teams=NFL_TEAMS,
    strict: bool = False,
    keep_interceptions: bool = True,
) -> tuple[Dataset, IngestReport]:
    """Read a corpus file into an encoded, labeled Dataset plus a report.

    Malformed lines (bad JSON, missing keys, out-of-range fields, team
    codes outside the schema) are tallied under "malformed" and listed
    with line numbers; strict mode aborts on the first one instead.
    """
    schema = build_schema(teams)
    team_set = set(schema.teams)
    report = IngestReport()
    features_list, success, yards, progress = [], [], [], []

    def malformed(lineno, message):
        if strict:
            raise IngestError(f"line {lineno}: {message}")
        report.rejections["malformed"] = report.rejections.get("malformed", 0) + 1
        report.malformed_lines.append((lineno, message))

    for lineno, record, error in iter_records(path):
        report.records_read += 1
        if record is None:
            malformed(lineno, error)
            continue
        if record.team not in team_set or record.opponent not in team_set:
            malformed(lineno, f"team code outside schema: "
                              f"{record.team}/{record.opponent}")
            continue
        rejection = classify_record(record, keep_interceptions=keep_interceptions)
        if rejection is not None:
            report.rejections[rejection.reason] = (
                report.rejections.get(rejection.reason, 0) + 1
            )
            continue
        try:
            features, outcome = parse_play(record)
        except ParseError:
            report.rejections["unparseable"] = (
                report.rejections.get("unparseable", 0) + 1
            )
            continue
        labels = compute_labels(features, outcome)
        features_list.append(features)
        success.append(labels.success)
        yards.append(labels.yards)
        progress.append(labels.progress)
        report.records_kept += 1

    X = (np.zeros((0, schema.width)) if not features_list
         else encode_many(features_list, schema))
    dataset = Dataset(
        X=X,
        success=np.asarray(success, dtype=int),
        yards=np.asarray(yards, dtype=float),
        progress=np.asarray(progress, dtype=float),
        schema=schema,
        provenance=str(path),
    )
    assert report.records_kept + report.records_rejected == report.records_read
    return dataset, report


def split(ds: Dataset, test_fraction: float, seed: int) -> tuple[Dataset, Dataset]:
    """Disjoint, exhaustive, seed-reproducible train/test partition."""
    if not 0.0 < test_fraction < 1.0:
        raise ValueError(f"test_fraction must be in (0, 1), got {test_fraction}")
    n_test = round(ds.n * test_fraction)
    if n_test == 0 or n_test == ds.n:
        raise ValueError(
            f"n={ds.n} is too small for test_fraction={test_fraction}"
        )
    rng = np.random.default_rng(seed)
    perm = rng.permutation(ds.n)
    return ds.subset(np.sort(perm[n_test:])), ds.subset(np.sort(perm[:n_test]))


def undersample(ds: Dataset, seed: int) -> Dataset:
    """Equalize class counts by downsampling the majority without replacement."""
    neg = np.flatnonzero(ds.success == 0)
    pos = np.flatnonzero(ds.success == 1)
    if len(neg) == 0 or len(pos) == 0:
        raise ValueError("undersample needs both classes present")
    rng = np.random.default_rng(seed)
    m = min(len(neg), len(pos))
    keep = np.concatenate([
        rng.choice(neg, size=m, replace=False),
        rng.choice(pos, size=m, replace=False),
    ])
    return ds.subset(np.sort(keep))


def kfold(n: int, k: int, seed: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """k disjoint, exhaustive folds with sizes differing by at most one."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if k > n:
        raise ValueError(f"k={k} exceeds n={n}")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    base, extra = divmod(n, k)
    folds = []
    start = 0
    for i in range(k):
        size = base + (1 if i < extra else 0)
        valid = perm[start : start + size]
        train = np.concatenate([perm[:start], perm[start + size :]])
        folds.append((np.sort(train), np.sort(valid)))
        start += size
    return folds
