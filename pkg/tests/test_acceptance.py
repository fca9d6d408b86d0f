"""Acceptance checks: one test per shipped guarantee, tolerances inline.

These are end-to-end checks against independent oracles: hand-worked
values, brute-force searches, closed-form algebra, and a curated corpus
with stored expectations.  The final test compares against published
full-corpus numbers and only runs when PLAYCALL_REAL_CORPUS points at a
real play-by-play corpus.
"""

import json
import math
import os
import threading
import time
import urllib.request

import numpy as np
import pytest

from playcall.dataset import NFL_TEAMS, ingest, record_from_json
from playcall.encode import MinMaxScaler, build_schema, encode_many
from playcall.evaluate import (
    classification_report,
    cross_validate,
    grid_search,
    regression_report,
)
from playcall.kernel import GridSpec, KernelSpec, fit_svc_smo, fit_svr_smo
from playcall.labels import compute_labels, progress
from playcall.linear import fit_lda, fit_linear_regression, fit_nearest_centroid
from playcall.neural import MLPConfig, grad_check, init_mlp, train_sgd
from playcall.persist import ModelBundle, load_model, save_model
from playcall.playparse import (
    ParseError,
    PlayFeatures,
    classify_record,
    parse_play,
)
from playcall.ranking import enumerate_candidates
from playcall.server import make_server
from playcall.stats import anova_f_scores, pca_fit
from playcall.synth import SynthSpec, synthesize_plays
from playcall.trees import TreeParams, fit_classification_tree, fit_regression_tree

# Three reference plays with hand-stated feature and label rows.  The
# expected dicts are written out here, not read from the fixtures, so a
# parser regression cannot hide behind a regenerated expectation file.
REFERENCE_PLAYS = [
    (
        {"game_id": "2009121311", "team": "ATL", "opponent": "CAR",
         "quarter": 3, "clock_seconds": 596, "yardline": 24, "down": 2,
         "togo": 10,
         "description": "(9:56) M.Ryan pass short left to M.Jenkins to "
                        "CAR 17 for 7 yards (T.Davis)."},
        {"features": {"team": "ATL", "opponent": "CAR", "half": 2,
                      "time": 1496.0, "position": 24, "down": 2, "togo": 10,
                      "shotgun": 0, "pass": 1, "side": "left",
                      "passlen": "short", "qbrun": 0},
         "outcome": {"gained": 7, "touchdown": 0},
         "labels": {"success": 0, "yards": 7.0, "progress": 0.49}},
    ),
    (
        {"game_id": "2009122012", "team": "DEN", "opponent": "OAK",
         "quarter": 1, "clock_seconds": 632, "yardline": 28, "down": 2,
         "togo": 1,
         "description": "(10:32) K.Moreno right tackle to OAK 27 for "
                        "1 yard (T.Kelly)."},
        {"features": {"team": "DEN", "opponent": "OAK", "half": 1,
                      "time": 1532.0, "position": 28, "down": 2, "togo": 1,
                      "shotgun": 0, "pass": 0, "side": "right",
                      "passlen": "none", "qbrun": 0},
         "outcome": {"gained": 1, "touchdown": 0},
         "labels": {"success": 1, "yards": 1.0, "progress": 1.0}},
    ),
    (
        {"game_id": "2009100410", "team": "ARI", "opponent": "HOU",
         "quarter": 2, "clock_seconds": 27, "yardline": 26, "down": 1,
         "togo": 10,
         "description": "(:27) (No Huddle, Shotgun) K.Warner pass deep "
                        "left to L.Fitzgerald for 26 yards, TOUCHDOWN."},
        {"features": {"team": "ARI", "opponent": "HOU", "half": 1,
                      "time": 27.0, "position": 26, "down": 1, "togo": 10,
                      "shotgun": 1, "pass": 1, "side": "left",
                      "passlen": "deep", "qbrun": 0},
         "outcome": {"gained": 26, "touchdown": 1},
         "labels": {"success": 1, "yards": 26.0, "progress": 1.0}},
    ),
]


def test_parser_reference_plays_and_curated_corpus(golden_corpus_path,
                                                   golden_expected):
    start = time.perf_counter()
    for raw, expected in REFERENCE_PLAYS:
        record = record_from_json(raw)
        assert classify_record(record) is None
        features, outcome = parse_play(record)
        labels = compute_labels(features, outcome)
        assert features.to_dict() == expected["features"]
        assert outcome.to_dict() == expected["outcome"]
        assert labels.to_dict() == expected["labels"]

    with open(golden_corpus_path, encoding="utf-8") as fh:
        raw_lines = [json.loads(line) for line in fh]
    assert len(raw_lines) == len(golden_expected) == 300
    for raw, expected in zip(raw_lines, golden_expected):
        record = record_from_json(raw)
        rejection = classify_record(record)
        if rejection is not None:
            assert expected == {"rejection": rejection.reason}
            continue
        try:
            features, outcome = parse_play(record)
        except ParseError:
            assert expected == {"rejection": "unparseable"}
            continue
        labels = compute_labels(features, outcome)
        got = {"features": features.to_dict(), "outcome": outcome.to_dict(),
               "labels": labels.to_dict()}
        assert got == expected
    assert time.perf_counter() - start < 1.0


def test_progress_reference_values_and_monotonicity():
    start = time.perf_counter()
    assert progress(2, 10, 7) == 0.49
    assert progress(1, 10, 5) == 0.5
    assert progress(2, 10, 5) == 0.25
    # late downs are all or nothing
    for down in (3, 4):
        for togo in (1, 5, 12):
            for gained in range(-10, 25):
                assert progress(down, togo, gained) in (0.0, 1.0)
    rng = np.random.default_rng(99)
    count = 100_000
    downs = rng.integers(1, 5, size=count).tolist()
    togos = rng.integers(1, 31, size=count).tolist()
    lows = rng.integers(-10, 41, size=count).tolist()
    extras = rng.integers(0, 15, size=count).tolist()
    for down, togo, low, extra in zip(downs, togos, lows, extras):
        assert progress(down, togo, low) <= progress(down, togo, low + extra)
    assert time.perf_counter() - start < 1.0


def test_encoding_width_and_one_hot_blocks():
    schema = build_schema(NFL_TEAMS)
    assert len(NFL_TEAMS) == 32
    assert schema.width == 77
    assert len(schema.columns) == 77

    rng = np.random.default_rng(123)
    count = 10_000
    n_teams = len(schema.teams)
    features = []
    for _ in range(count):
        pick = rng.choice(n_teams, size=2, replace=False)
        is_pass = int(rng.integers(2))
        if is_pass:
            passlen = ("short", "deep")[rng.integers(2)]
            side = ("left", "middle", "right")[rng.integers(3)]
            qbrun = 0
        else:
            passlen = "none"
            side = ("left", "middle", "right", "none")[rng.integers(4)]
            qbrun = int(rng.integers(2))
        features.append(PlayFeatures(
            team=schema.teams[pick[0]], opponent=schema.teams[pick[1]],
            half=int(rng.integers(1, 3)), time=float(rng.integers(0, 1801)),
            position=int(rng.integers(1, 100)), down=int(rng.integers(1, 5)),
            togo=int(rng.integers(1, 31)), shotgun=int(rng.integers(2)),
            is_pass=is_pass, side=side, passlen=passlen, qbrun=qbrun))
    X = encode_many(features, schema)
    assert X.shape == (count, 77)

    team_block = X[:, :n_teams]
    opp_block = X[:, n_teams:2 * n_teams]
    side_block = X[:, 2 * n_teams:2 * n_teams + 3]
    passlen_block = X[:, 2 * n_teams + 3:2 * n_teams + 5]
    assert np.array_equal(team_block.sum(axis=1), np.ones(count))
    assert np.array_equal(opp_block.sum(axis=1), np.ones(count))
    for row, f in enumerate(features):
        assert team_block[row, schema.teams.index(f.team)] == 1.0
        assert opp_block[row, schema.teams.index(f.opponent)] == 1.0
    side_hot = np.array([0.0 if f.side == "none" else 1.0 for f in features])
    pass_hot = np.array([float(f.is_pass) for f in features])
    assert np.array_equal(side_block.sum(axis=1), side_hot)
    assert np.array_equal(passlen_block.sum(axis=1), pass_hot)
    tail = X[:, 2 * n_teams + 5:]
    hand = np.array([[f.half, f.time, f.position, f.down, f.togo,
                      f.shotgun, f.is_pass, f.qbrun] for f in features])
    assert np.array_equal(tail, hand)


def test_metric_identities_and_all_failure_predictor():
    rng = np.random.default_rng(7)
    count = 100_000
    y_true = rng.integers(0, 2, size=(count, 8))
    y_pred = rng.integers(0, 2, size=(count, 8))
    tp_all = ((y_true == 1) & (y_pred == 1)).sum(axis=1)
    fp_all = ((y_true == 0) & (y_pred == 1)).sum(axis=1)
    fn_all = ((y_true == 1) & (y_pred == 0)).sum(axis=1)
    for i in range(count):
        report = classification_report(y_true[i], y_pred[i])
        tp, fp, fn = int(tp_all[i]), int(fp_all[i]), int(fn_all[i])
        direct = 2 * tp / (2 * tp + fp + fn) if 2 * tp + fp + fn else 0.0
        p = tp / (tp + fp) if tp + fp else 0.0
        r = tp / (tp + fn) if tp + fn else 0.0
        harmonic = 2 * p * r / (p + r) if p + r else 0.0
        assert abs(report.f1 - direct) <= 1e-12
        assert abs(report.f1 - harmonic) <= 1e-12

    truth = rng.normal(size=(count, 8))
    approx = truth + rng.normal(size=(count, 8))
    for i in range(count):
        report = regression_report(truth[i], approx[i])
        assert report.rmse >= report.mae

    # predicting failure on everything: right 70% of the time, useless
    all_failure = classification_report(
        np.repeat([0, 1], [700, 300]), np.zeros(1000))
    assert all_failure.accuracy == 0.70
    assert all_failure.precision == 0.0
    assert all_failure.recall == 0.0
    assert all_failure.f1 == 0.0


def test_planted_tree_recovery_and_memorization():
    start = time.perf_counter()
    plays = synthesize_plays(SynthSpec(n=10_000), seed=41)
    teams = sorted({p.features.team for p in plays}
                   | {p.features.opponent for p in plays})
    schema = build_schema(teams)
    X = encode_many([p.features for p in plays], schema)
    success = np.array([p.labels.success for p in plays])
    yards = np.array([p.labels.yards for p in plays])

    stump = fit_classification_tree(
        X, success, TreeParams(max_depth=1, class_weighting="balanced"))
    assert schema.columns[stump.root.column] == "togo"
    assert 7.0 < stump.root.threshold < 8.0

    reg = fit_regression_tree(X, yards, TreeParams(max_depth=1))
    assert schema.columns[reg.root.column] == "passlen=deep"
    assert abs(reg.root.left.value - 5.3) <= 0.3
    assert abs(reg.root.right.value - 11.1) <= 0.3

    # unlimited depth memorizes distinct rows exactly
    rng = np.random.default_rng(77)
    Xm = rng.normal(size=(2000, 10))
    ym = rng.integers(0, 2, size=2000)
    deep_cls = fit_classification_tree(Xm, ym, TreeParams())
    assert np.array_equal(deep_cls.predict(Xm), ym.astype(float))
    yr = rng.normal(size=800)
    deep_reg = fit_regression_tree(Xm[:800], yr, TreeParams())
    assert np.allclose(deep_reg.predict(Xm[:800]), yr, atol=1e-12)
    assert time.perf_counter() - start < 30.0


def test_lda_and_linear_regression_closed_forms():
    # both solvers against hand-inverted diagonal pooled covariance,
    # once balanced and once with a 2:1 class skew in the prior term
    off = np.array([[1.5, 0.0], [-1.5, 0.0], [0.0, 0.7], [0.0, -0.7]])
    cases = [
        (np.array([0.0, 0.0]), np.array([3.0, 1.0]), 1),
        (np.array([-1.0, 2.0]), np.array([2.5, -0.5]), 2),
    ]
    rng = np.random.default_rng(31)
    probe = rng.normal(size=(50, 2)) * 2.0
    for mu0, mu1, copies in cases:
        X0 = mu0 + off
        X1 = mu1 + np.vstack([off] * copies)
        X = np.vstack([X0, X1])
        y = np.repeat([0, 1], [len(X0), len(X1)])
        scatter = np.array([2 * 1.5 ** 2, 2 * 0.7 ** 2])
        pooled = (scatter + copies * scatter) / (len(X) - 2)
        w = (mu1 - mu0) / pooled
        b = -w @ ((mu0 + mu1) / 2.0) + math.log(len(X1) / len(X0))
        hand = probe @ w + b
        for solver in ("eigen", "svd"):
            model = fit_lda(X, y, solver=solver)
            assert np.abs(model.decision_values(probe) - hand).max() <= 1e-8

    # least-squares residuals are orthogonal to every regressor column
    n = 400
    Xr = rng.normal(size=(n, 7))
    yr = Xr @ rng.normal(size=7) + rng.normal(size=n)
    fit = fit_linear_regression(Xr, yr)
    residual = yr - fit.predict(Xr)
    assert np.abs(Xr.T @ residual).max() <= 1e-6 * n
    assert abs(residual.sum()) <= 1e-6 * n

    # full shrinkage turns the discriminant into a centroid rule
    Xs = rng.normal(size=(60, 5))
    ys = rng.integers(0, 2, size=60)
    shrunk = fit_lda(Xs, ys, solver="eigen", shrinkage=1.0, priors="equal")
    centroid = fit_nearest_centroid(Xs, ys)
    queries = rng.normal(size=(1000, 5)) * 2.0
    assert np.array_equal(shrunk.predict(queries), centroid.predict(queries))


def test_svm_svr_dual_oracles_and_kkt_audit():
    linear = KernelSpec("linear")

    def audited(fitter, *args, **kwargs):
        begin = time.perf_counter()
        model = fitter(*args, **kwargs)
        assert time.perf_counter() - begin < 60.0
        assert model.meta["kkt_max_violation"] <= 1e-3
        assert model.meta["objective_monotone"] is True
        return model

    # separable four-point problem: brute-force the dual on the
    # constraint plane a4 = a1 + a2 - a3 and compare optima
    X4 = np.array([[0.0, 0.0], [0.0, 1.0], [2.0, 0.0], [2.0, 1.0]])
    y4 = np.array([0.0, 0.0, 1.0, 1.0])
    model = audited(fit_svc_smo, X4, y4, C=1.0, spec=linear, tol=1e-3)
    assert np.array_equal(model.predict(X4), y4)
    grid = np.linspace(0.0, 1.0, 101)
    a1, a2, a3 = (g.ravel() for g in np.meshgrid(grid, grid, grid))
    a4 = a1 + a2 - a3
    ok = (a4 >= 0.0) & (a4 <= 1.0)
    alphas = np.column_stack([a1[ok], a2[ok], a3[ok], a4[ok]])
    signed = np.array([-1.0, -1.0, 1.0, 1.0])[:, None] * X4
    margin = alphas @ signed
    brute = (alphas.sum(axis=1) - 0.5 * (margin * margin).sum(axis=1)).max()
    assert abs(model.meta["dual_objective"] - brute) <= 1e-4

    # noiseless line lands inside the epsilon tube
    x = np.linspace(0.0, 5.0, 21)[:, None]
    y_line = 2.0 * x[:, 0] + 1.0
    svr = audited(fit_svr_smo, x, y_line, C=100.0, epsilon=0.01,
                  spec=linear, tol=1e-4)
    assert np.abs(svr.predict(x) - y_line).mean() <= 0.01 + 1e-3

    # a spread of desk-scale fits, each passing the same audit
    rng = np.random.default_rng(20)
    Xa = rng.normal(size=(40, 6))
    ya = (Xa[:, 0] + 0.5 * Xa[:, 1]
          + 0.2 * rng.normal(size=40) > 0).astype(float)
    audited(fit_svc_smo, Xa, ya, C=0.5, spec=linear, tol=1e-3)
    audited(fit_svc_smo, Xa, ya, C=10.0,
            spec=KernelSpec("rbf", gamma=0.3), tol=1e-3)
    xs = np.linspace(0.0, 2.0 * math.pi, 35)[:, None]
    audited(fit_svr_smo, xs, np.sin(xs[:, 0]), C=10.0, epsilon=0.05,
            spec=KernelSpec("rbf", gamma=1.0), tol=1e-3)
    audited(fit_svr_smo, Xa, Xa[:, 2] - 0.3 * Xa[:, 4], C=5.0, epsilon=0.1,
            spec=linear, tol=1e-3)


def test_mlp_gradient_check_determinism_and_line_task():
    rng = np.random.default_rng(3)
    # wide two-hidden-layer nets, one per output head
    for output, loss in (("linear", "squared_error"),
                         ("sigmoid", "cross_entropy")):
        config = MLPConfig(hidden_layers=2, hidden_units=50,
                           activation="tanh", output=output, loss=loss,
                           seed=9)
        net = init_mlp(config, 77)
        X = rng.normal(size=(4, 77))
        if loss == "cross_entropy":
            y = rng.integers(0, 2, size=4).astype(float)
        else:
            y = rng.normal(size=4)
        assert grad_check(net, X, y, loss=loss, h=1e-5) < 1e-4

    line_x = np.linspace(-1.0, 1.0, 64)[:, None]
    line_y = 0.8 * line_x[:, 0] - 0.3
    config = MLPConfig(hidden_layers=1, hidden_units=16, activation="tanh",
                       output="linear", loss="squared_error", max_epochs=100,
                       learning_rate=0.05, momentum=0.9, batch_size=16,
                       seed=4)
    first, losses_a = train_sgd(init_mlp(config, 1), line_x, line_y, config)
    second, losses_b = train_sgd(init_mlp(config, 1), line_x, line_y, config)
    assert losses_a == losses_b
    assert all(np.array_equal(wa, wb)
               for wa, wb in zip(first.weights, second.weights))
    assert all(np.array_equal(ba, bb)
               for ba, bb in zip(first.biases, second.biases))

    # the same deterministic run must also have learned the line
    assert len(losses_a) == 100
    assert np.abs(first.decision_values(line_x) - line_y).mean() < 0.05


def test_pca_and_anova_oracles():
    rng = np.random.default_rng(17)
    X = rng.normal(size=(240, 6)) @ rng.normal(size=(6, 6)) \
        + rng.normal(size=6)
    model = pca_fit(X)
    assert abs(model.ratios.sum() - 1.0) <= 1e-9
    centered = X - X.mean(axis=0)
    eigvals = np.linalg.eigh(centered.T @ centered)[0][::-1]
    assert np.abs(model.ratios - eigvals / eigvals.sum()).max() <= 1e-8

    # one-way F on two three-point groups, checkable by hand:
    # between = 54, within = 4 over 4 dof, F = 54 / 1
    scores = anova_f_scores(
        np.array([[1.0], [2.0], [3.0], [7.0], [8.0], [9.0]]),
        np.array([0, 0, 0, 1, 1, 1]))
    assert abs(scores[0] - 54.0) <= 1e-9

    Xs = rng.normal(size=(120, 5))
    ys = rng.integers(0, 2, size=120)
    base = anova_f_scores(Xs, ys)
    scaled = anova_f_scores(Xs * 3.7, ys)
    assert np.abs(scaled - base).max() <= 1e-9 * max(1.0, np.abs(base).max())


def test_model_round_trip_and_rank_service(tmp_path):
    schema = build_schema(("AAA", "BBB"))
    width = schema.width
    rng = np.random.default_rng(6)
    X = rng.normal(size=(60, width))
    y_class = (X[:, 0] + 0.3 * rng.normal(size=60) > 0).astype(float)
    y_reg = 2.0 * X[:, 1] - X[:, 2] + 0.1 * rng.normal(size=60)
    y_unit = (y_reg - y_reg.min()) / np.ptp(y_reg)
    scaler = MinMaxScaler().fit(X)
    Xs = scaler.transform(X)
    mlp_config = MLPConfig(hidden_units=6, max_epochs=3, output="sigmoid",
                           loss="cross_entropy", seed=3)
    mlp_model, _ = train_sgd(init_mlp(mlp_config, width), Xs, y_class,
                             mlp_config)
    fits = {
        "tree": (fit_classification_tree(X, y_class, TreeParams(max_depth=3)),
                 "success", None),
        "centroid": (fit_nearest_centroid(X, y_class), "success", None),
        "lda": (fit_lda(X, y_class, shrinkage=0.1), "success", None),
        "linreg": (fit_linear_regression(X, y_reg), "yards", None),
        "svm": (fit_svc_smo(Xs, y_class, C=1.0,
                            spec=KernelSpec("rbf", gamma=0.05)),
                "success", scaler),
        "svr": (fit_svr_smo(Xs, y_reg, C=1.0, epsilon=0.2,
                            spec=KernelSpec("rbf", gamma=0.05)),
                "yards", scaler),
        "mlp": (mlp_model, "success", scaler),
    }
    probes = rng.normal(size=(1000, width))
    saved = {}
    for kind, (model, target, packed) in fits.items():
        bundle = ModelBundle(kind=kind, target=target, model=model,
                             schema=schema, scaler=packed)
        path = tmp_path / f"{kind}.json"
        save_model(bundle, path)
        loaded = load_model(path)
        assert np.array_equal(loaded.model.decision_values(probes),
                              model.decision_values(probes))
        saved[kind] = loaded

    # the scaled scoring path survives the round trip bitwise as well
    sample = [PlayFeatures(team="AAA", opponent="BBB", half=2, time=300.0,
                           position=35, down=3, togo=8, shotgun=s,
                           is_pass=1, side="left", passlen="deep", qbrun=0)
              for s in (0, 1)]
    for kind in ("svm", "tree"):
        bundle = ModelBundle(kind=kind, target="success",
                             model=fits[kind][0], schema=schema,
                             scaler=fits[kind][2])
        assert np.array_equal(saved[kind].scores(sample),
                              bundle.scores(sample))

    bundles = {
        "success": saved["tree"],
        "yards": saved["linreg"],
        "progress": ModelBundle(
            kind="tree", target="progress",
            model=fit_regression_tree(X, y_unit, TreeParams(max_depth=2)),
            schema=schema),
    }
    httpd = make_server(bundles, port=0)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    try:
        port = httpd.server_address[1]
        body = json.dumps({"situation": {
            "team": "AAA", "opponent": "BBB", "half": 2, "time": 300.0,
            "position": 35, "down": 3, "togo": 8}}).encode()

        def call():
            req = urllib.request.Request(
                f"http://127.0.0.1:{port}/rank", data=body, method="POST")
            req.add_header("Content-Type", "application/json")
            with urllib.request.urlopen(req, timeout=10) as resp:
                return resp.status, resp.read()

        status_a, raw_a = call()
        status_b, raw_b = call()
    finally:
        httpd.shutdown()
        httpd.server_close()
    assert status_a == status_b == 200
    assert raw_a == raw_b
    plays = json.loads(raw_a)["plays"]
    assert [p["rank"] for p in plays] == list(range(1, 25))
    returned = [p["candidate"] for p in plays]
    expected = [c.to_dict() for c in enumerate_candidates()]
    as_key = lambda d: json.dumps(d, sort_keys=True)
    assert sorted(returned, key=as_key) == sorted(expected, key=as_key)


class _Scaled:
    """Couples a fitted kernel model to the scaler its fold trained."""

    def __init__(self, model, scaler):
        self.model = model
        self.scaler = scaler

    def predict(self, X):
        return self.model.predict(self.scaler.transform(X))


REAL_CORPUS = os.environ.get("PLAYCALL_REAL_CORPUS", "")


@pytest.mark.skipif(not REAL_CORPUS,
                    reason="set PLAYCALL_REAL_CORPUS to a real multi-season "
                           "play-by-play corpus to check published numbers")
def test_real_corpus_published_numbers():
    ds, _ = ingest(REAL_CORPUS)

    stump = cross_validate(
        lambda d: fit_classification_tree(d.X, d.success,
                                          TreeParams(max_depth=1)),
        ds, "success", k=5, seed=0)
    assert abs(stump.means["accuracy"] - 0.692) <= 0.01

    lda_cv = cross_validate(
        lambda d: fit_lda(d.X, d.success, solver="svd"),
        ds, "success", k=5, seed=0)
    assert abs(lda_cv.means["accuracy"] - 0.6691) <= 0.015

    def scaled_svc(c, gamma):
        def recipe(d):
            scaler = MinMaxScaler().fit(d.X)
            model = fit_svc_smo(scaler.transform(d.X), d.success, C=c,
                                spec=KernelSpec("rbf", gamma=gamma))
            return _Scaled(model, scaler)
        return recipe

    grid = GridSpec(c_values=tuple(2.0 ** k for k in (9, 11, 13)),
                    gamma_values=tuple(2.0 ** k for k in (-19, -17, -15)),
                    folds=5)
    result = grid_search(scaled_svc, grid, ds, "success", seed=0)
    assert result.best is not None
    assert result.best.c == 2.0 ** 11
    assert result.best.gamma == 2.0 ** -17
    assert abs(result.best.mean_score - 0.663) <= 0.02

    def scaled_svr(d):
        scaler = MinMaxScaler().fit(d.X)
        model = fit_svr_smo(scaler.transform(d.X), d.progress, C=2.0 ** 11,
                            epsilon=0.01,
                            spec=KernelSpec("rbf", gamma=2.0 ** -17))
        return _Scaled(model, scaler)

    svr_cv = cross_validate(scaled_svr, ds, "progress", k=5, seed=0)
    assert abs(svr_cv.means["mae"] - 0.1351) <= 0.015
