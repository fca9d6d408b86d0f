"""One-hot encoding of play features into fixed-width numeric vectors.

Column layout (versioned, order is load-bearing for persisted models):
team=X block, opponent=X block, side=left/middle/right, passlen=short/deep,
then the continuous features half, time, position, down, togo, and the
binary flags shotgun, pass, qbrun.  With 32 teams the width is
2*32 + 3 + 2 + 5 + 3 = 77.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .playparse import PlayFeatures

SCHEMA_VERSION = 1

_TAIL_COLUMNS = (
    "side=left",
    "side=middle",
    "side=right",
    "passlen=short",
    "passlen=deep",
    "half",
    "time",
    "position",
    "down",
    "togo",
    "shotgun",
    "pass",
    "qbrun",
)


class EncodingError(ValueError):
    """Feature value that the schema cannot represent."""


@dataclass(frozen=True)
class EncodingSchema:
    """Fixed, versioned column layout for a given team roster."""

    teams: tuple[str, ...]
    columns: tuple[str, ...] = field(init=False)
    version: int = field(init=False, default=SCHEMA_VERSION)

    def __post_init__(self):
        if not self.teams:
            raise EncodingError("team list is empty")
        if len(set(self.teams)) != len(self.teams):
            raise EncodingError("duplicate team codes")
        if list(self.teams) != sorted(self.teams):
            raise EncodingError("team list must be sorted")
        cols = tuple(
            [f"team={t}" for t in self.teams]
            + [f"opponent={t}" for t in self.teams]
            + list(_TAIL_COLUMNS)
        )
        object.__setattr__(self, "columns", cols)

    @property
    def width(self) -> int:
        return len(self.columns)

    def column_index(self, name: str) -> int:
        try:
            return self.columns.index(name)
        except ValueError:
            raise EncodingError(f"no such column: {name!r}") from None

    def to_dict(self) -> dict:
        return {"version": self.version, "teams": list(self.teams)}

    @classmethod
    def from_dict(cls, d: dict) -> "EncodingSchema":
        if d.get("version") != SCHEMA_VERSION:
            raise EncodingError(f"unsupported schema version: {d.get('version')!r}")
        return cls(teams=tuple(d["teams"]))


def build_schema(teams) -> EncodingSchema:
    """Build the encoding schema for a team roster (sorted internally)."""
    return EncodingSchema(teams=tuple(sorted(teams)))


def encode(features: PlayFeatures, schema: EncodingSchema) -> np.ndarray:
    """Encode one play into a float vector of schema width."""
    return encode_many([features], schema)[0]


def encode_many(features_list, schema: EncodingSchema) -> np.ndarray:
    """Encode plays into an (n, width) float matrix."""
    n_teams = len(schema.teams)
    team_pos = {t: i for i, t in enumerate(schema.teams)}
    out = np.zeros((len(features_list), schema.width), dtype=float)
    base = 2 * n_teams
    for row, f in enumerate(features_list):
        if f.team not in team_pos:
            raise EncodingError(f"unknown team code: {f.team!r}")
        if f.opponent not in team_pos:
            raise EncodingError(f"unknown team code: {f.opponent!r}")
        out[row, team_pos[f.team]] = 1.0
        out[row, n_teams + team_pos[f.opponent]] = 1.0
        if f.side != "none":
            out[row, base + ("left", "middle", "right").index(f.side)] = 1.0
        if f.passlen != "none":
            out[row, base + 3 + ("short", "deep").index(f.passlen)] = 1.0
        out[row, base + 5] = f.half
        out[row, base + 6] = f.time
        out[row, base + 7] = f.position
        out[row, base + 8] = f.down
        out[row, base + 9] = f.togo
        out[row, base + 10] = f.shotgun
        out[row, base + 11] = f.is_pass
        out[row, base + 12] = f.qbrun
    return out


def decode(vector: np.ndarray, schema: EncodingSchema) -> PlayFeatures:
    """Invert encode; used to audit the round-trip property."""
    v = np.asarray(vector, dtype=float)
    if v.shape != (schema.width,):
        raise EncodingError(f"vector width {v.shape} != schema width {schema.width}")
    n_teams = len(schema.teams)
    base = 2 * n_teams

    def one_hot_name(block: np.ndarray, names, allow_none: bool):
        hits = np.flatnonzero(block == 1.0)
        if len(hits) == 0 and allow_none:
            return "none"
        if len(hits) != 1:
            raise EncodingError("categorical block is not one-hot")
        return names[hits[0]]

    team = one_hot_name(v[:n_teams], schema.teams, allow_none=False)
    opponent = one_hot_name(v[n_teams:base], schema.teams, allow_none=False)
    side = one_hot_name(v[base : base + 3], ("left", "middle", "right"), True)
    passlen = one_hot_name(v[base + 3 : base + 5], ("short", "deep"), True)
    return PlayFeatures(
        team=team,
        opponent=opponent,
        half=int(v[base + 5]),
        time=float(v[base + 6]),
        position=int(v[base + 7]),
        down=int(v[base + 8]),
        togo=int(v[base + 9]),
        shotgun=int(v[base + 10]),
        is_pass=int(v[base + 11]),
        side=side,
        passlen=passlen,
        qbrun=int(v[base + 12]),
    )


class MinMaxScaler:
    """Optional per-column min-max scaling to [0, 1].

    Constant columns map to 0.  Fitted bounds serialize with the model
    so prediction-time scaling matches training exactly.
    """

    def __init__(self, mins=None, maxs=None):
        self.mins = None if mins is None else np.asarray(mins, dtype=float)
        self.maxs = None if maxs is None else np.asarray(maxs, dtype=float)

    def fit(self, X: np.ndarray) -> "MinMaxScaler":
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[0] == 0:
            raise EncodingError("scaler needs a non-empty 2-d matrix")
        self.mins = X.min(axis=0)
        self.maxs = X.max(axis=0)
        return self

    def transform(self, X: np.ndarray) -> np.ndarray:
        if self.mins is None:
            raise EncodingError("scaler is not fitted")
        X = np.asarray(X, dtype=float)
        single = X.ndim == 1
        if single:
            X = X[None, :]
        span = self.maxs - self.mins
        safe = np.where(span == 0.0, 1.0, span)
        out = (X - self.mins) / safe
        out[:, span == 0.0] = 0.0
        return out[0] if single else out

    def to_dict(self) -> dict:
        return {"mins": list(map(float, self.mins)), "maxs": list(map(float, self.maxs))}

    @classmethod
    def from_dict(cls, d: dict) -> "MinMaxScaler":
        return cls(mins=d["mins"], maxs=d["maxs"])
