"""Command line interface for the play-call workbench.

Subcommands cover the whole pipeline: synthesize or ingest a corpus,
train and evaluate models, sweep kernel hyperparameters, inspect
features, score plays, rank candidate calls, and serve the advisor API.
"""

import argparse
import hashlib
import json
import os
import sys

from . import figures
from .dataset import IngestError, ingest, split, undersample
from .encode import MinMaxScaler
from .evaluate import (
    TARGET_TASKS,
    classification_report,
    comparison_csv,
    cross_validate,
    grid_search,
    regression_report,
)
from .kernel import GridSpec, KernelSpec, fit_svc_smo, fit_svr_smo
from .labels import compute_labels
from .linear import fit_lda, fit_linear_regression, fit_nearest_centroid
from .neural import MLPConfig, init_mlp, train_sgd
from .persist import BundleError, ModelBundle, load_model, save_model
from .playparse import ParseError, classify_record, parse_play
from .ranking import Situation, enumerate_candidates, rank_plays
from .server import DEFAULT_PORT, load_bundle_dir, make_server
from .stats import anova_f, pca_fit
from .synth import SynthSpec, synthesize
from .trees import TreeParams, fit_classification_tree, fit_regression_tree

MODEL_CHOICES = ("tree", "centroid", "lda", "linreg", "svm", "svr", "mlp")
# trees keep raw feature units so their printed splits stay readable
AUTO_SCALED = frozenset({"centroid", "lda", "linreg", "svm", "svr", "mlp"})

ENV_PORT = "PLAYCALL_PORT"
ENV_MODELS = "PLAYCALL_MODELS"
ENV_CONFIG = "PLAYCALL_CONFIG"
DEFAULT_CONFIG_NAME = "playcall.json"


class CliError(Exception):
    """A user-facing failure that should print one line and exit 1."""


def _sha256(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _load_config(path: str | None) -> dict:
    """Optional JSON config file with default port and model directory."""
    if path is None:
        path = os.environ.get(ENV_CONFIG)
    if path is None:
        if os.path.exists(DEFAULT_CONFIG_NAME):
            path = DEFAULT_CONFIG_NAME
        else:
            return {}
    try:
        with open(path) as fh:
            config = json.load(fh)
    except OSError as err:
        raise CliError(f"cannot read config {path}: {err}") from err
    except json.JSONDecodeError as err:
        raise CliError(f"config {path} is not valid JSON: {err}") from err
    if not isinstance(config, dict):
        raise CliError(f"config {path} must hold a JSON object")
    return config


def _resolve_models_dir(args, config: dict) -> str:
    value = getattr(args, "models", None)
    if value is None:
        value = os.environ.get(ENV_MODELS)
    if value is None:
        value = config.get("models_dir")
    if value is None:
        raise CliError(
            "no model directory: pass --models, set "
            f"{ENV_MODELS}, or put models_dir in the config file"
        )
    return str(value)


def _resolve_port(args, config: dict) -> int:
    value = getattr(args, "port", None)
    if value is None:
        value = os.environ.get(ENV_PORT)
    if value is None:
        value = config.get("port")
    if value is None:
        return DEFAULT_PORT
    try:
        port = int(value)
    except (TypeError, ValueError) as err:
        raise CliError(f"bad port {value!r}") from err
    if not 0 <= port <= 65535:
        raise CliError(f"port out of range: {port}")
    return port


def _ingest(args):
    try:
        return ingest(
            args.corpus,
            strict=args.strict,
            keep_interceptions=not args.drop_interceptions,
        )
    except (OSError, IngestError) as err:
        raise CliError(str(err)) from err


def _add_corpus_options(sub) -> None:
    sub.add_argument("--corpus", required=True, help="play-by-play JSONL file")
    sub.add_argument("--strict", action="store_true",
                     help="abort on the first malformed line")
    sub.add_argument("--drop-interceptions", action="store_true",
                     help="exclude intercepted passes from the dataset")


class ScaledModel:
    """A fitted model plus the scaler its inputs must pass through."""

    def __init__(self, model, scaler: MinMaxScaler | None):
        self.model = model
        self.scaler = scaler

    def _prepare(self, X):
        return X if self.scaler is None else self.scaler.transform(X)

    def predict(self, X):
        return self.model.predict(self._prepare(X))

    def decision_values(self, X):
        return self.model.decision_values(self._prepare(X))


def _collect_params(args, kind: str, task: str) -> dict:
    """The hyperparameters that define one training configuration."""
    if kind == "tree":
        return {
            "max_depth": args.max_depth,
            "min_samples_leaf": args.min_samples_leaf,
            "class_weighting": "balanced" if args.balanced else "none",
        }
    if kind == "centroid":
        return {}
    if kind == "lda":
        return {
            "solver": args.solver,
            "shrinkage": args.shrinkage,
            "priors": args.priors,
        }
    if kind == "linreg":
        return {}
    if kind in ("svm", "svr"):
        params = {
            "c": args.c,
            "kernel": "rbf" if args.gamma is not None else "linear",
            "gamma": args.gamma,
            "tol": args.tol,
            "max_iter": args.max_iter,
        }
        if kind == "svr":
            params["epsilon"] = args.epsilon
        return params
    if kind == "mlp":
        output = args.output
        loss = args.loss
        if output is None:
            output = "sigmoid" if task == "classification" else "linear"
        if loss is None:
            loss = ("cross_entropy" if task == "classification"
                    else "squared_error")
        return {
            "hidden_layers": args.hidden_layers,
            "hidden_units": args.hidden_units,
            "activation": args.activation,
            "output": output,
            "loss": loss,
            "max_epochs": args.epochs,
            "learning_rate": args.lr,
            "momentum": args.momentum,
            "batch_size": args.batch_size,
        }
    raise CliError(f"unknown model kind {kind!r}")


def _make_fitter(kind: str, task: str, params: dict, seed: int):
    """Build fit(X, y) -> (model, extras) for one configuration."""
    if kind == "tree":
        tree_params = TreeParams(
            max_depth=params["max_depth"],
            min_samples_leaf=params["min_samples_leaf"],
            class_weighting=(params["class_weighting"]
                             if task == "classification" else "none"),
        )
        fit_tree = (fit_classification_tree if task == "classification"
                    else fit_regression_tree)

        def fit(X, y):
            return fit_tree(X, y, tree_params), {}

    elif kind == "centroid":

        def fit(X, y):
            return fit_nearest_centroid(X, y), {}

    elif kind == "lda":

        def fit(X, y):
            return fit_lda(X, y, solver=params["solver"],
                           shrinkage=params["shrinkage"],
                           priors=params["priors"]), {}

    elif kind == "linreg":

        def fit(X, y):
            return fit_linear_regression(X, y), {}

    elif kind in ("svm", "svr"):
        if params["kernel"] == "rbf":
            spec = KernelSpec("rbf", gamma=params["gamma"])
        else:
            spec = KernelSpec("linear")

        def fit(X, y):
            if kind == "svm":
                model = fit_svc_smo(X, y, C=params["c"], spec=spec,
                                    tol=params["tol"],
                                    max_iter=params["max_iter"])
            else:
                model = fit_svr_smo(X, y, C=params["c"],
                                    epsilon=params["epsilon"], spec=spec,
                                    tol=params["tol"],
                                    max_iter=params["max_iter"])
            return model, {"meta": model.meta}

    elif kind == "mlp":
        config = MLPConfig(
            hidden_layers=params["hidden_layers"],
            hidden_units=params["hidden_units"],
            activation=params["activation"],
            output=params["output"],
            loss=params["loss"],
            max_epochs=params["max_epochs"],
            learning_rate=params["learning_rate"],
            momentum=params["momentum"],
            batch_size=params["batch_size"],
            seed=seed,
        )

        def fit(X, y):
            model = init_mlp(config, X.shape[1])
            trained, losses = train_sgd(model, X, y, config)
            return trained, {"losses": losses}

    else:
        raise CliError(f"unknown model kind {kind!r}")
    return fit


def _fit_bundle_on(ds, kind, target, params, scale, seed):
    """Fit one configuration on a dataset; returns (bundle pieces, extras)."""
    task = TARGET_TASKS[target]
    y = ds.target(target)
    scaler = MinMaxScaler().fit(ds.X) if scale else None
    X = ds.X if scaler is None else scaler.transform(ds.X)
    fit = _make_fitter(kind, task, params, seed)
    model, extras = fit(X, y)
    return model, scaler, extras


def _report_for(task, y_true, y_pred):
    if task == "classification":
        return classification_report(y_true, y_pred)
    return regression_report(y_true, y_pred)


def _print_report(task, report, prefix="") -> None:
    if task == "classification":
        print(f"{prefix}accuracy  {report.accuracy:.4f}")
        print(f"{prefix}precision {report.precision:.4f}")
        print(f"{prefix}recall    {report.recall:.4f}")
        print(f"{prefix}f1        {report.f1:.4f}")
    else:
        print(f"{prefix}mae  {report.mae:.4f}")
        print(f"{prefix}rmse {report.rmse:.4f}")


# --- subcommands -----------------------------------------------------


def cmd_synthesize(args, config) -> int:
    spec = SynthSpec(
        n=args.n,
        reject_rate=args.reject_rate,
        intercept_rate=args.intercept_rate,
    )
    summary = synthesize(spec, args.seed, args.out,
                         expected_path=args.expected)
    print(f"wrote {summary['n']} records to {args.out} "
          f"({summary['kept']} plays, {summary['rejected']} rejects)")
    return 0


def cmd_ingest(args, config) -> int:
    ds, report = _ingest(args)
    print(report.text_summary(ds))
    if args.report is not None:
        with open(args.report, "w") as fh:
            json.dump(report.to_dict(ds), fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"report written to {args.report}")
    return 0


def cmd_train(args, config) -> int:
    kind = args.model
    target = args.target
    task = TARGET_TASKS[target]
    if kind not in MODEL_CHOICES:
        raise CliError(f"unknown model kind {kind!r}")
    if task == "classification" and kind in ("linreg", "svr"):
        raise CliError(f"{kind} cannot train the {target} target")
    if task == "regression" and kind in ("centroid", "lda", "svm"):
        raise CliError(f"{kind} cannot train the {target} target")

    ds, report = _ingest(args)
    if ds.n == 0:
        raise CliError("corpus produced no usable plays")
    if args.undersample:
        if task != "classification":
            raise CliError("--undersample only applies to success models")
        ds = undersample(ds, args.seed)

    holdout = None
    train_ds = ds
    if args.holdout > 0:
        train_ds, holdout = split(ds, args.holdout, args.seed)

    scale = (kind in AUTO_SCALED) if args.scale == "auto" else args.scale == "on"
    params = _collect_params(args, kind, task)
    model, scaler, extras = _fit_bundle_on(
        train_ds, kind, target, params, scale, args.seed
    )

    fitted = ScaledModel(model, scaler)
    eval_ds = holdout if holdout is not None else train_ds
    y_true = eval_ds.target(target)
    y_pred = fitted.predict(eval_ds.X)
    metric_report = _report_for(task, y_true, y_pred)

    metadata = {
        "params": params,
        "scale": scale,
        "undersample": bool(args.undersample),
        "seed": args.seed,
        "corpus": {
            "path": os.path.abspath(args.corpus),
            "sha256": _sha256(args.corpus),
            "records_kept": report.records_kept,
            "plays_trained": train_ds.n,
        },
        "report": metric_report.to_dict(),
        "report_scope": "holdout" if holdout is not None else "train",
    }
    bundle = ModelBundle(kind=kind, target=target, model=model,
                         schema=train_ds.schema, scaler=scaler,
                         metadata=metadata)
    save_model(bundle, args.out)

    scope = metadata["report_scope"]
    print(f"trained {kind} on {train_ds.n} plays (target {target})")
    _print_report(task, metric_report, prefix=f"{scope} ")
    if kind in ("svm", "svr") and not extras["meta"]["converged"]:
        print("warning: optimizer hit the iteration cap before converging")
    if args.figure is not None:
        if kind != "mlp":
            raise CliError("--figure is only produced for mlp training")
        figures.loss_curve(extras["losses"], args.figure)
        print(f"figure written to {args.figure}")
    print(f"model written to {args.out}")
    return 0


def cmd_evaluate(args, config) -> int:
    ds, _ = _ingest(args)
    if ds.n == 0:
        raise CliError("corpus produced no usable plays")
    bundles = []
    for path in args.model_file:
        try:
            bundles.append((path, load_model(path)))
        except BundleError as err:
            raise CliError(f"{path}: {err}") from err

    if args.cv is not None:
        return _evaluate_cv(args, ds, bundles)

    entries = []
    for path, bundle in bundles:
        name = os.path.splitext(os.path.basename(path))[0]
        fitted = ScaledModel(bundle.model, bundle.scaler)
        y_true = ds.target(bundle.target)
        y_pred = fitted.predict(ds.X)
        metric_report = _report_for(bundle.task, y_true, y_pred)
        print(f"{name} ({bundle.kind}, target {bundle.target}, "
              f"n={ds.n})")
        _print_report(bundle.task, metric_report, prefix="  ")
        entries.append((name, metric_report))
    if args.csv is not None:
        if len({type(r) for _, r in entries}) != 1:
            raise CliError("--csv needs reports of a single task type")
        comparison_csv(entries, args.csv)
        print(f"table written to {args.csv}")
    return 0


def _evaluate_cv(args, ds, bundles) -> int:
    for path, bundle in bundles:
        name = os.path.splitext(os.path.basename(path))[0]
        params = bundle.metadata.get("params")
        if params is None:
            raise CliError(f"{path}: no stored params; cannot cross-validate")
        task = bundle.task
        work = ds
        if bundle.metadata.get("undersample"):
            work = undersample(ds, args.seed)
        scale = bool(bundle.metadata.get("scale"))
        fit = _make_fitter(bundle.kind, task, params, args.seed)

        def recipe(train_ds):
            scaler = MinMaxScaler().fit(train_ds.X) if scale else None
            X = train_ds.X if scaler is None else scaler.transform(train_ds.X)
            model, _ = fit(X, train_ds.target(bundle.target))
            return ScaledModel(model, scaler)

        result = cross_validate(recipe, work, bundle.target,
                                k=args.cv, seed=args.seed)
        print(f"{name} ({bundle.kind}, target {bundle.target}, "
              f"{args.cv}-fold on {work.n} plays)")
        for metric, value in sorted(result.means.items()):
            print(f"  mean {metric} {value:.4f}")
    return 0


def _parse_floats(text: str, flag: str) -> tuple:
    try:
        values = tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError as err:
        raise CliError(f"bad {flag} value: {err}") from err
    if not values:
        raise CliError(f"{flag} needs at least one number")
    return values


def cmd_grid_search(args, config) -> int:
    target = args.target
    task = TARGET_TASKS[target]
    ds, _ = _ingest(args)
    if ds.n == 0:
        raise CliError("corpus produced no usable plays")
    if args.undersample:
        if task != "classification":
            raise CliError("--undersample only applies to the success target")
        ds = undersample(ds, args.seed)

    defaults = GridSpec()
    c_values = (defaults.c_values if args.c_values is None
                else _parse_floats(args.c_values, "--c-values"))
    gamma_values = (defaults.gamma_values if args.gamma_values is None
                    else _parse_floats(args.gamma_values, "--gamma-values"))
    grid = GridSpec(c_values=c_values, gamma_values=gamma_values,
                    folds=args.folds)

    def make_recipe(c, gamma):
        spec = KernelSpec("rbf", gamma=gamma)

        def recipe(train_ds):
            scaler = MinMaxScaler().fit(train_ds.X)
            X = scaler.transform(train_ds.X)
            y = train_ds.target(target)
            if task == "classification":
                model = fit_svc_smo(X, y, C=c, spec=spec, tol=args.tol,
                                    max_iter=args.max_iter)
            else:
                model = fit_svr_smo(X, y, C=c, epsilon=args.epsilon,
                                    spec=spec, tol=args.tol,
                                    max_iter=args.max_iter)
            return ScaledModel(model, scaler)

        return recipe

    result = grid_search(make_recipe, grid, ds, target,
                         seed=args.seed, subsample_cap=args.cap)
    failures = sum(1 for cell in result.cells if cell.error is not None)
    print(f"searched {len(result.cells)} cells on {result.n_used} plays "
          f"({failures} failed)")
    if result.best is None:
        print("no cell produced a score")
    else:
        score = ("accuracy" if task == "classification" else "-MAE")
        print(f"best C={result.best.c:g} gamma={result.best.gamma:g} "
              f"mean {score} {result.best.mean_score:.4f}")
    if args.out is not None:
        result.to_csv(args.out)
        print(f"grid written to {args.out}")
    if args.figure is not None:
        figures.grid_heatmap(result, args.figure)
        print(f"figure written to {args.figure}")
    return 0


def cmd_feature_scores(args, config) -> int:
    ds, _ = _ingest(args)
    if ds.n == 0:
        raise CliError("corpus produced no usable plays")
    table = anova_f(ds)
    for name, value in table.rows[: args.top]:
        print(f"{name:24s} {value:.4f}")
    if args.out is not None:
        table.to_csv(args.out)
        print(f"scores written to {args.out}")
    if args.figure is not None:
        figures.feature_score_bar(table, args.figure, top=args.top)
        print(f"figure written to {args.figure}")
    return 0


def cmd_pca(args, config) -> int:
    ds, _ = _ingest(args)
    if ds.n == 0:
        raise CliError("corpus produced no usable plays")
    X = ds.X
    if args.scale != "off":
        X = MinMaxScaler().fit(X).transform(X)
    model = pca_fit(X)
    ratios = model.ratios
    total = 0.0
    print("component  ratio      cumulative")
    shown = ratios if args.top is None else ratios[: args.top]
    for i, ratio in enumerate(shown):
        total += float(ratio)
        print(f"{i + 1:9d}  {ratio:.6f}   {total:.6f}")
    if args.out is not None:
        import csv as _csv

        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            writer = _csv.writer(fh)
            writer.writerow(["component", "ratio", "cumulative"])
            running = 0.0
            for i, ratio in enumerate(ratios):
                running += float(ratio)
                writer.writerow([i + 1, repr(float(ratio)), repr(running)])
        print(f"ratios written to {args.out}")
    if args.figure is not None:
        figures.pca_variance(model, args.figure)
        print(f"figure written to {args.figure}")
    return 0


def cmd_predict(args, config) -> int:
    try:
        bundle = load_model(args.model_file)
    except BundleError as err:
        raise CliError(f"{args.model_file}: {err}") from err
    out = sys.stdout if args.out is None else open(args.out, "w")
    try:
        with open(args.corpus) as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                row = _predict_line(bundle, lineno, line)
                out.write(json.dumps(row) + "\n")
    except OSError as err:
        raise CliError(str(err)) from err
    finally:
        if out is not sys.stdout:
            out.close()
            print(f"predictions written to {args.out}")
    return 0


def _predict_line(bundle, lineno: int, line: str) -> dict:
    from .dataset import record_from_json

    try:
        record = record_from_json(json.loads(line))
    except (json.JSONDecodeError, TypeError, ValueError) as err:
        return {"line": lineno, "kept": False, "reason": "malformed",
                "detail": str(err)}
    rejection = classify_record(record)
    if rejection is not None:
        return {"line": lineno, "kept": False, "reason": rejection.reason}
    try:
        features, outcome = parse_play(record)
    except ParseError as err:
        return {"line": lineno, "kept": False, "reason": "malformed",
                "detail": str(err)}
    labels = compute_labels(features, outcome)
    score = float(bundle.scores([features])[0])
    return {
        "line": lineno,
        "kept": True,
        "score": score,
        "actual": labels.to_dict()[bundle.target],
        "play": features.to_dict(),
    }


def _load_playbook(path: str | None):
    if path is None:
        return None
    try:
        with open(path) as fh:
            entries = json.load(fh)
    except OSError as err:
        raise CliError(str(err)) from err
    except json.JSONDecodeError as err:
        raise CliError(f"{path} is not valid JSON: {err}") from err
    if not isinstance(entries, list):
        raise CliError("playbook file must hold a JSON list of plays")
    return entries


def cmd_rank(args, config) -> int:
    models_dir = _resolve_models_dir(args, config)
    try:
        bundles = load_bundle_dir(models_dir)
    except BundleError as err:
        raise CliError(str(err)) from err
    if not bundles:
        raise CliError(f"no model files in {models_dir}")
    try:
        situation = Situation(
            team=args.team, opponent=args.opponent, half=args.half,
            time=args.time, position=args.position, down=args.down,
            togo=args.togo,
        )
        candidates = enumerate_candidates(_load_playbook(args.playbook))
        ranked = rank_plays(situation, candidates, bundles,
                            primary=args.primary)
    except (TypeError, ValueError) as err:
        raise CliError(str(err)) from err

    primary = args.primary
    if primary is None:
        from .ranking import choose_primary

        primary = choose_primary(bundles)
    loaded = ", ".join(f"{t}:{bundles[t].kind}" for t in sorted(bundles))
    print(f"models: {loaded}")
    print(f"ranked by {primary} "
          f"(model scores, not observed outcomes)")
    header = f"{'rank':>4}  {'play':28s} {'progress':>9} {'success':>9} {'yards':>9}"
    print(header)

    def cell(value):
        return "     -" if value is None else f"{value:9.4f}"

    for rp in ranked:
        print(f"{rp.rank:>4}  {rp.candidate.label():28s} "
              f"{cell(rp.progress):>9} {cell(rp.success_score):>9} "
              f"{cell(rp.yards):>9}")
    if args.out is not None:
        _write_ranking_csv(ranked, args.out)
        print(f"ranking written to {args.out}")
    if args.figure is not None:
        figures.ranking_bar(ranked, primary, args.figure)
        print(f"figure written to {args.figure}")
    return 0


def _write_ranking_csv(ranked, path: str) -> None:
    import csv as _csv

    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = _csv.writer(fh)
        writer.writerow(["rank", "play", "pass", "side", "passlen",
                         "shotgun", "qbrun", "progress", "success_score",
                         "yards"])
        for rp in ranked:
            c = rp.candidate
            scores = [
                "" if v is None else repr(float(v))
                for v in (rp.progress, rp.success_score, rp.yards)
            ]
            writer.writerow([rp.rank, c.label(), c.is_pass, c.side,
                             c.passlen, c.shotgun, c.qbrun] + scores)


def cmd_serve(args, config) -> int:
    models_dir = _resolve_models_dir(args, config)
    port = _resolve_port(args, config)
    try:
        bundles = load_bundle_dir(models_dir)
    except BundleError as err:
        raise CliError(str(err)) from err
    httpd = make_server(bundles, host=args.host, port=port,
                        quiet=not args.verbose)
    host, bound_port = httpd.server_address[:2]
    targets = ", ".join(sorted(bundles)) if bundles else "none"
    print(f"serving on http://{host}:{bound_port} (models: {targets})")
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        print("shutting down")
    finally:
        httpd.server_close()
    return 0


# --- parser ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="playcall",
        description="Play-outcome models and play-call ranking "
                    "for football play-by-play data.",
    )
    parser.add_argument("--config", default=None,
                        help="JSON config file with defaults "
                             f"(default: ./{DEFAULT_CONFIG_NAME} if present)")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("synthesize", help="generate a synthetic corpus")
    sub.add_argument("--out", required=True)
    sub.add_argument("--n", type=int, default=1000)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--reject-rate", type=float, default=0.0)
    sub.add_argument("--intercept-rate", type=float, default=0.0)
    sub.add_argument("--expected", default=None,
                     help="also write the generator's intended features")
    sub.set_defaults(func=cmd_synthesize)

    sub = subs.add_parser("ingest", help="parse a corpus and report on it")
    _add_corpus_options(sub)
    sub.add_argument("--report", default=None, help="write a JSON report")
    sub.set_defaults(func=cmd_ingest)

    sub = subs.add_parser("train", help="train one model and save a bundle")
    _add_corpus_options(sub)
    sub.add_argument("--model", required=True, choices=MODEL_CHOICES)
    sub.add_argument("--target", required=True, choices=sorted(TARGET_TASKS))
    sub.add_argument("--out", required=True, help="bundle file to write")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--holdout", type=float, default=0.0,
                     help="fraction held out for the metric report")
    sub.add_argument("--undersample", action="store_true",
                     help="balance classes before training")
    sub.add_argument("--scale", choices=("auto", "on", "off"), default="auto")
    sub.add_argument("--figure", default=None,
                     help="training-loss figure (mlp only)")
    group = sub.add_argument_group("tree")
    group.add_argument("--max-depth", type=int, default=None)
    group.add_argument("--min-samples-leaf", type=int, default=1)
    group.add_argument("--balanced", action="store_true",
                       help="weight classes by inverse frequency")
    group = sub.add_argument_group("lda")
    group.add_argument("--solver", choices=("svd", "eigen"), default="svd")
    group.add_argument("--shrinkage", type=float, default=0.0)
    group.add_argument("--priors", choices=("empirical", "equal"),
                       default="empirical")
    group = sub.add_argument_group("svm/svr")
    group.add_argument("--c", type=float, default=1.0)
    group.add_argument("--gamma", type=float, default=None,
                       help="rbf width; omit for a linear kernel")
    group.add_argument("--epsilon", type=float, default=0.1)
    group.add_argument("--tol", type=float, default=1e-3)
    group.add_argument("--max-iter", type=int, default=1_000_000)
    group = sub.add_argument_group("mlp")
    group.add_argument("--hidden-layers", type=int, default=1)
    group.add_argument("--hidden-units", type=int, default=10)
    group.add_argument("--activation", choices=("sigmoid", "tanh", "linear"),
                       default="tanh")
    group.add_argument("--output", choices=("linear", "sigmoid"), default=None)
    group.add_argument("--loss", choices=("squared_error", "cross_entropy"),
                       default=None)
    group.add_argument("--epochs", type=int, default=100)
    group.add_argument("--lr", type=float, default=0.01)
    group.add_argument("--momentum", type=float, default=0.9)
    group.add_argument("--batch-size", type=int, default=32)
    sub.set_defaults(func=cmd_train)

    sub = subs.add_parser("evaluate", help="score saved models on a corpus")
    _add_corpus_options(sub)
    sub.add_argument("--model-file", action="append", required=True,
                     help="bundle file; repeat to compare methods")
    sub.add_argument("--cv", type=int, default=None,
                     help="retrain each bundle's configuration with "
                          "k-fold cross-validation")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--csv", default=None, help="comparison table output")
    sub.set_defaults(func=cmd_evaluate)

    sub = subs.add_parser("grid-search",
                          help="cross-validated (C, gamma) sweep")
    _add_corpus_options(sub)
    sub.add_argument("--target", required=True, choices=sorted(TARGET_TASKS))
    sub.add_argument("--c-values", default=None,
                     help="comma-separated C grid (default: powers of two)")
    sub.add_argument("--gamma-values", default=None,
                     help="comma-separated gamma grid")
    sub.add_argument("--folds", type=int, default=GridSpec().folds)
    sub.add_argument("--cap", type=int, default=20000,
                     help="subsample cap before the sweep")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--undersample", action="store_true")
    sub.add_argument("--epsilon", type=float, default=0.1)
    sub.add_argument("--tol", type=float, default=1e-3)
    sub.add_argument("--max-iter", type=int, default=1_000_000)
    sub.add_argument("--out", default=None, help="grid CSV output")
    sub.add_argument("--figure", default=None, help="heatmap output")
    sub.set_defaults(func=cmd_grid_search)

    sub = subs.add_parser("feature-scores",
                          help="rank encoded columns by ANOVA F-score")
    _add_corpus_options(sub)
    sub.add_argument("--top", type=int, default=15)
    sub.add_argument("--out", default=None, help="CSV output")
    sub.add_argument("--figure", default=None, help="bar chart output")
    sub.set_defaults(func=cmd_feature_scores)

    sub = subs.add_parser("pca", help="principal component spectrum")
    _add_corpus_options(sub)
    sub.add_argument("--scale", choices=("on", "off"), default="on")
    sub.add_argument("--top", type=int, default=10,
                     help="components to print")
    sub.add_argument("--out", default=None, help="CSV output")
    sub.add_argument("--figure", default=None, help="variance plot output")
    sub.set_defaults(func=cmd_pca)

    sub = subs.add_parser("predict", help="score corpus plays with a bundle")
    sub.add_argument("--model-file", required=True)
    sub.add_argument("--corpus", required=True)
    sub.add_argument("--out", default=None, help="JSONL output (default stdout)")
    sub.set_defaults(func=cmd_predict)

    sub = subs.add_parser("rank", help="rank candidate plays for a situation")
    sub.add_argument("--models", default=None,
                     help=f"model directory (or {ENV_MODELS})")
    sub.add_argument("--team", required=True)
    sub.add_argument("--opponent", required=True)
    sub.add_argument("--half", type=int, required=True)
    sub.add_argument("--time", type=float, required=True)
    sub.add_argument("--position", type=int, required=True)
    sub.add_argument("--down", type=int, required=True)
    sub.add_argument("--togo", type=int, required=True)
    sub.add_argument("--primary", choices=sorted(TARGET_TASKS), default=None)
    sub.add_argument("--playbook", default=None,
                     help="JSON list of candidate plays")
    sub.add_argument("--out", default=None, help="CSV output")
    sub.add_argument("--figure", default=None, help="bar chart output")
    sub.set_defaults(func=cmd_rank)

    sub = subs.add_parser("serve", help="run the advisor HTTP API")
    sub.add_argument("--models", default=None,
                     help=f"model directory (or {ENV_MODELS})")
    sub.add_argument("--port", type=int, default=None,
                     help=f"listen port (or {ENV_PORT})")
    sub.add_argument("--host", default="127.0.0.1")
    sub.add_argument("--verbose", action="store_true",
                     help="log one line per request")
    sub.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
        return args.func(args, config)
    except CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
