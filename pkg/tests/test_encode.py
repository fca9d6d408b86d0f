import numpy as np
import pytest

from playcall.dataset import NFL_TEAMS
from playcall.encode import (
    EncodingError,
    EncodingSchema,
    MinMaxScaler,
    build_schema,
    decode,
    encode,
    encode_many,
)
from playcall.playparse import PlayFeatures

SIDES_BY_CODE = {0: "left", 1: "middle", 2: "right", 3: "none"}


def random_features(rng, teams=NFL_TEAMS):
    ti, oi = rng.choice(len(teams), size=2, replace=False)
    is_pass = int(rng.integers(0, 2))
    qbrun = 0 if is_pass else int(rng.integers(0, 2))
    side = SIDES_BY_CODE[int(rng.integers(0, 4))]
    return PlayFeatures(
        team=teams[ti], opponent=teams[oi],
        half=int(rng.integers(1, 3)),
        time=float(rng.integers(0, 1801)),
        position=int(rng.integers(1, 100)),
        down=int(rng.integers(1, 5)),
        togo=int(rng.integers(1, 31)),
        shotgun=int(rng.integers(0, 2)),
        is_pass=is_pass,
        side=side,
        passlen=("short", "deep")[int(rng.integers(0, 2))] if is_pass else "none",
        qbrun=qbrun,
    )


class TestSchema:
    def test_full_roster_width(self):
        assert build_schema(NFL_TEAMS).width == 77

    def test_two_team_width(self):
        assert build_schema(["NE", "MIA"]).width == 17

    def test_empty_roster_rejected(self):
        with pytest.raises(EncodingError):
            build_schema([])

    def test_duplicates_rejected(self):
        with pytest.raises(EncodingError):
            build_schema(["NE", "NE"])

    def test_build_sorts_teams(self):
        schema = build_schema(["NE", "ARI", "MIA"])
        assert schema.teams == ("ARI", "MIA", "NE")

    def test_column_naming_and_order(self):
        schema = build_schema(NFL_TEAMS)
        assert schema.columns[0] == "team=ARI"
        assert schema.columns[32] == "opponent=ARI"
        assert schema.columns[64:69] == (
            "side=left", "side=middle", "side=right",
            "passlen=short", "passlen=deep",
        )
        assert schema.columns[69:74] == ("half", "time", "position", "down", "togo")
        assert schema.columns[74:] == ("shotgun", "pass", "qbrun")
        assert "team=NE" in schema.columns

    def test_dict_round_trip(self):
        schema = build_schema(NFL_TEAMS)
        assert EncodingSchema.from_dict(schema.to_dict()) == schema

    def test_version_checked_on_load(self):
        d = build_schema(NFL_TEAMS).to_dict()
        d["version"] = 99
        with pytest.raises(EncodingError):
            EncodingSchema.from_dict(d)

    def test_column_index(self):
        schema = build_schema(NFL_TEAMS)
        assert schema.columns[schema.column_index("togo")] == "togo"
        with pytest.raises(EncodingError):
            schema.column_index("nope")


class TestEncode:
    def test_worked_row(self):
        schema = build_schema(NFL_TEAMS)
        f = PlayFeatures(team="ATL", opponent="CAR", half=2, time=1496.0,
                         position=24, down=2, togo=10, shotgun=0, is_pass=1,
                         side="left", passlen="short", qbrun=0)
        v = encode(f, schema)
        col = schema.column_index
        assert v[col("team=ATL")] == 1.0
        assert v[col("opponent=CAR")] == 1.0
        assert v[col("side=left")] == 1.0
        assert v[col("passlen=short")] == 1.0
        assert v[col("pass")] == 1.0
        assert v[col("half")] == 2.0
        assert v[col("time")] == 1496.0
        assert v[col("position")] == 24.0
        assert v[col("down")] == 2.0
        assert v[col("togo")] == 10.0
        # every other categorical column stays zero
        cat = [i for i, c in enumerate(schema.columns)
               if "=" in c and v[i] != 0.0]
        assert len(cat) == 4

    def test_unknown_team(self):
        schema = build_schema(["MIA", "NE"])
        f = PlayFeatures(team="ATL", opponent="MIA", half=1, time=1.0,
                         position=50, down=1, togo=10, shotgun=0, is_pass=0,
                         side="none", passlen="none", qbrun=0)
        with pytest.raises(EncodingError):
            encode(f, schema)

    def test_one_hot_invariants(self):
        schema = build_schema(NFL_TEAMS)
        rng = np.random.default_rng(3)
        feats = [random_features(rng) for _ in range(2000)]
        X = encode_many(feats, schema)
        n_teams = len(schema.teams)
        team_block = X[:, :n_teams]
        opp_block = X[:, n_teams:2 * n_teams]
        side_block = X[:, 2 * n_teams:2 * n_teams + 3]
        plen_block = X[:, 2 * n_teams + 3:2 * n_teams + 5]
        assert np.all(team_block.sum(axis=1) == 1)
        assert np.all(opp_block.sum(axis=1) == 1)
        assert np.all(side_block.sum(axis=1) <= 1)
        assert np.all(plen_block.sum(axis=1) <= 1)
        # passlen block filled exactly on pass plays
        pass_col = X[:, schema.column_index("pass")]
        assert np.array_equal(plen_block.sum(axis=1), pass_col)

    def test_decode_round_trip(self):
        schema = build_schema(NFL_TEAMS)
        rng = np.random.default_rng(5)
        for _ in range(300):
            f = random_features(rng)
            assert decode(encode(f, schema), schema) == f

    def test_decode_rejects_bad_block(self):
        schema = build_schema(NFL_TEAMS)
        v = np.zeros(schema.width)
        with pytest.raises(EncodingError):
            decode(v, schema)
        with pytest.raises(EncodingError):
            decode(np.zeros(5), schema)

    def test_injective_on_categoricals(self):
        schema = build_schema(NFL_TEAMS)
        rng = np.random.default_rng(9)
        seen = {}
        for _ in range(500):
            f = random_features(rng)
            key = encode(f, schema).tobytes()
            if key in seen:
                assert seen[key] == f
            seen[key] = f


class TestMinMaxScaler:
    def test_scales_to_unit_interval(self):
        X = np.array([[0.0, 10.0], [5.0, 20.0], [10.0, 30.0]])
        scaler = MinMaxScaler().fit(X)
        out = scaler.transform(X)
        assert np.allclose(out.min(axis=0), 0.0)
        assert np.allclose(out.max(axis=0), 1.0)

    def test_constant_column_maps_to_zero(self):
        X = np.array([[3.0, 1.0], [3.0, 2.0]])
        out = MinMaxScaler().fit(X).transform(X)
        assert np.all(out[:, 0] == 0.0)

    def test_single_vector(self):
        X = np.array([[0.0, 0.0], [4.0, 8.0]])
        scaler = MinMaxScaler().fit(X)
        assert np.allclose(scaler.transform(np.array([2.0, 2.0])), [0.5, 0.25])

    def test_unfitted_raises(self):
        with pytest.raises(EncodingError):
            MinMaxScaler().transform(np.zeros((2, 2)))

    def test_dict_round_trip(self):
        X = np.array([[0.0, 1.0], [2.0, 5.0]])
        scaler = MinMaxScaler().fit(X)
        clone = MinMaxScaler.from_dict(scaler.to_dict())
        assert np.array_equal(clone.transform(X), scaler.transform(X))
