"""Command-line driver: train, eval, kfold, explain, serve, report.

Exit codes: 0 success, 2 configuration/validation error, 1 runtime error.
A JSON config file (--config or $SARCALAB_CONFIG) supplies defaults;
explicit flags override file values.
"""

from __future__ import annotations

import functools
import json
import os
import sys
from pathlib import Path

import click

from . import classifiers, evaluation, features, lime
from .blackbox import EndpointError, ModelEndpoint
from .classifiers import ClassifierError, Hyperparams
from .corpus import CorpusError, SplitSpec, load_dataset, stratified_split
from .evaluation import EvalError, PipelineSpec
from .features import FeaturesError
from .lime import LimeError
from .pipeline import TextClassifier, train_text_classifier
from .preprocess import default_config, load_config

_CONFIG_ERRORS = (CorpusError, ClassifierError, EvalError, FeaturesError, LimeError, ValueError)


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def guarded(fn):
    """Map validation failures to exit 2 and runtime failures to exit 1."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (SystemExit, click.ClickException):
            raise
        except EndpointError as e:
            _fail(1, str(e))
        except _CONFIG_ERRORS as e:
            _fail(2, str(e))
        except OSError as e:
            _fail(1, str(e))

    return wrapper


def _merge_config(config_path: str | None, values: dict) -> dict:
    """File values fill in options the user did not pass on the CLI."""
    path = config_path or os.environ.get("SARCALAB_CONFIG")
    if not path:
        return values
    file_values = json.loads(Path(path).read_text(encoding="utf-8"))
    merged = dict(values)
    for key, val in file_values.items():
        if merged.get(key) in (None, ()):
            merged[key] = val
    return merged


def _hyperparams(v: dict) -> Hyperparams:
    return Hyperparams(
        algorithm=v["algo"],
        seed=v.get("seed") or 0,
        trees=v.get("trees"),
        max_depth=v.get("max_depth"),
        k_neighbors=v.get("k_neighbors") or 5,
        learning_rate=v.get("learning_rate"),
        epochs=v.get("epochs"),
        regularization=v.get("regularization"),
        smoothing=v.get("smoothing") if v.get("smoothing") is not None else 1.0,
        loss=v.get("loss"),
    )


def _pre_cfg(v: dict):
    if v.get("pre_config"):
        return load_config(v["pre_config"])
    return default_config()


def _echo_config(v: dict, keys) -> dict:
    return {k: v.get(k) for k in keys}


_hp_options = [
    click.option("--trees", type=int, default=None),
    click.option("--max-depth", type=int, default=None),
    click.option("--k-neighbors", type=int, default=None),
    click.option("--learning-rate", type=float, default=None),
    click.option("--epochs", type=int, default=None),
    click.option("--regularization", type=float, default=None),
    click.option("--smoothing", type=float, default=None),
    click.option("--loss", type=click.Choice(["hinge", "log"]), default=None),
]


def hp_options(fn):
    for opt in reversed(_hp_options):
        fn = opt(fn)
    return fn


@click.group()
def main():
    """Sarcasm-classifier toolkit: training, evaluation and explanation."""


@main.command()
@click.option("--data", required=True, type=click.Path())
@click.option("--format", "data_format", type=click.Choice(["csv", "jsonl"]), default=None)
@click.option("--algo", required=True, type=click.Choice(list(classifiers.ALGORITHMS)))
@click.option("--seed", type=int, default=None)
@click.option("--split", default=None, help="train,val,test fractions, e.g. 0.6,0.2,0.2")
@click.option("--pre-config", type=click.Path(), default=None)
@click.option("--no-normalize", is_flag=True, default=False)
@click.option("--out", required=True, type=click.Path())
@click.option("--config", type=click.Path(), default=None)
@hp_options
@guarded
def train(config, **values):
    """Fit a classifier on a stratified train split and report test metrics."""
    v = _merge_config(config, values)
    seed = v.get("seed") or 0
    fracs = [float(x) for x in (v.get("split") or "0.6,0.2,0.2").split(",")]
    if len(fracs) != 3:
        raise CorpusError("--split needs exactly three fractions")
    spec = SplitSpec(*fracs, seed=seed)

    ds = load_dataset(v["data"], v.get("data_format"))
    train_ds, _val_ds, test_ds = stratified_split(ds, spec)
    hp = _hyperparams(v)
    clf = train_text_classifier(
        train_ds.texts,
        train_ds.labels,
        hp,
        pre_cfg=_pre_cfg(v),
        normalize=not v.get("no_normalize"),
        model_id=Path(v["out"]).name,
    )
    echo_keys = (
        "data", "algo", "seed", "split", "pre_config", "no_normalize", "trees",
        "max_depth", "k_neighbors", "learning_rate", "epochs", "regularization",
        "smoothing", "loss",
    )
    clf.config_echo = _echo_config(v, echo_keys)
    out = Path(v["out"])
    clf.save(out)

    preds = clf.predict_texts(test_ds.texts)
    cm = evaluation.confusion(preds, test_ds.labels)
    evaluation.write_report_json(
        {
            "config": clf.config_echo,
            "seed": seed,
            "test_confusion": {"tp": cm.tp, "fp": cm.fp, "fn": cm.fn, "tn": cm.tn},
            "test_metrics_micro": evaluation.metrics(cm, "micro").to_dict(),
            "test_metrics_macro": evaluation.metrics(cm, "macro").to_dict(),
        },
        out / "metrics.json",
    )
    click.echo(f"model written to {out}")


def _eval_one(clf: TextClassifier, ds, out: Path, echo: dict):
    probs = clf.predict_proba_texts(ds.texts)
    preds = (probs[:, 1] > probs[:, 0]).astype(int)
    cm = evaluation.confusion(preds, ds.labels)
    roc = evaluation.roc_curve(probs[:, 1], ds.labels)
    pr = evaluation.pr_curve(probs[:, 1], ds.labels)
    out.mkdir(parents=True, exist_ok=True)
    evaluation.export_curve_csv(roc, out / f"roc_{clf.model_id}.csv")
    evaluation.export_curve_csv(pr, out / f"pr_{clf.model_id}.csv")
    evaluation.render_curves_svg({clf.model_id: roc}, out / "roc_overlay.svg", "ROC")
    evaluation.render_curves_svg({clf.model_id: pr}, out / "pr_overlay.svg", "Precision-Recall")
    evaluation.write_report_json(
        {
            "config": echo,
            "model_id": clf.model_id,
            "confusion": {"tp": cm.tp, "fp": cm.fp, "fn": cm.fn, "tn": cm.tn},
            "metrics_micro": evaluation.metrics(cm, "micro").to_dict(),
            "metrics_macro": evaluation.metrics(cm, "macro").to_dict(),
            "roc_auc": roc.area,
            "pr_area": pr.area,
            "pr_area_rule": pr.area_rule,
        },
        out / "report.json",
    )


@main.command("eval")
@click.option("--model", "model_dir", required=True, type=click.Path())
@click.option("--data", required=True, type=click.Path())
@click.option("--format", "data_format", type=click.Choice(["csv", "jsonl"]), default=None)
@click.option("--out", required=True, type=click.Path())
@click.option("--config", type=click.Path(), default=None)
@guarded
def eval_cmd(config, **values):
    """Evaluate a persisted model on a dataset; writes report + curve files."""
    v = _merge_config(config, values)
    clf = TextClassifier.load(v["model_dir"])
    ds = load_dataset(v["data"], v.get("data_format"))
    _eval_one(clf, ds, Path(v["out"]), _echo_config(v, ("model_dir", "data")))
    click.echo(f"report written to {v['out']}")


@main.command()
@click.option("--data", required=True, type=click.Path())
@click.option("--format", "data_format", type=click.Choice(["csv", "jsonl"]), default=None)
@click.option("--k", required=True, type=int)
@click.option("--algo", type=click.Choice(list(classifiers.ALGORITHMS)), default=None)
@click.option("--endpoint", default=None, help="base URL of a remote classifier")
@click.option("--seed", type=int, default=None)
@click.option("--pre-config", type=click.Path(), default=None)
@click.option("--out", required=True, type=click.Path())
@click.option("--config", type=click.Path(), default=None)
@hp_options
@guarded
def kfold(config, **values):
    """Stratified K-fold evaluation of an algorithm or remote endpoint."""
    v = _merge_config(config, values)
    if bool(v.get("algo")) == bool(v.get("endpoint")):
        raise EvalError("exactly one of --algo or --endpoint is required")
    seed = v.get("seed") or 0
    ds = load_dataset(v["data"], v.get("data_format"))
    spec = PipelineSpec(
        pre_cfg=_pre_cfg(v),
        hyperparams=_hyperparams(v) if v.get("algo") else None,
        endpoint=ModelEndpoint(base_url=v["endpoint"]) if v.get("endpoint") else None,
    )
    report = evaluation.run_kfold(ds, spec, v["k"], seed)
    out = Path(v["out"])
    out.mkdir(parents=True, exist_ok=True)
    payload = report.to_dict()
    payload["config"] = _echo_config(v, ("data", "k", "algo", "endpoint", "seed"))
    payload["seed"] = seed
    evaluation.write_report_json(payload, out / "report.json")
    click.echo(f"k-fold report written to {out / 'report.json'}")


@main.command()
@click.option("--model", "model_dir", type=click.Path(), default=None)
@click.option("--endpoint", default=None)
@click.option("--text", required=True)
@click.option("--n-samples", type=int, default=None)
@click.option("--kernel-width", type=float, default=None)
@click.option("--ridge-lambda", type=float, default=None)
@click.option("--top-k", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--target-class", default=None)
@click.option("--out", type=click.Path(), default=None,
              help="directory for explanation.json / explanation.html")
@click.option("--config", type=click.Path(), default=None)
@guarded
def explain(config, **values):
    """Token-level LIME explanation of one prediction."""
    v = _merge_config(config, values)
    if bool(v.get("model_dir")) == bool(v.get("endpoint")):
        raise LimeError("exactly one of --model or --endpoint is required")
    overrides = {}
    for key in ("n_samples", "kernel_width", "ridge_lambda", "top_k", "seed"):
        if v.get(key) is not None:
            overrides[key] = v[key]
    if v.get("target_class") is not None:
        tc = v["target_class"]
        overrides["target_class"] = tc if tc == "predicted" else int(tc)
    cfg = lime.LimeConfig(**overrides)

    if v.get("model_dir"):
        model = TextClassifier.load(v["model_dir"])
        pre_cfg = model.pre_cfg
    else:
        model = ModelEndpoint(base_url=v["endpoint"])
        pre_cfg = None
    exp = lime.explain(v["text"], model, pre_cfg, cfg)
    if v.get("out"):
        out = Path(v["out"])
        out.mkdir(parents=True, exist_ok=True)
        (out / "explanation.json").write_text(exp.to_json(), encoding="utf-8")
        (out / "explanation.html").write_text(exp.to_html(), encoding="utf-8")
        click.echo(f"explanation written to {out}")
    else:
        click.echo(exp.to_json())


@main.command()
@click.option("--model", "model_dirs", type=click.Path(), multiple=True)
@click.option("--endpoint", "endpoints", multiple=True, help="name=url")
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
@click.option("--runs", type=click.Path(), default=None)
@click.option("--seed", type=int, default=0)
@click.option("--config", type=click.Path(), default=None)
@guarded
def serve(config, **values):
    """Serve loaded models over HTTP for the explorer UI."""
    import uvicorn

    from .service import create_app

    v = _merge_config(config, values)
    models = {}
    for d in v.get("model_dirs") or ():
        clf = TextClassifier.load(d)  # fail fast on a broken model dir
        models[clf.model_id] = clf
    for item in v.get("endpoints") or ():
        name, _, url = item.partition("=")
        if not url:
            raise EvalError(f"--endpoint must be name=url, got {item!r}")
        models[name] = ModelEndpoint(base_url=url, model_id=name)
    if not models:
        raise EvalError("at least one --model or --endpoint is required")
    app = create_app(models, runs_dir=v.get("runs"), default_seed=v.get("seed") or 0)
    uvicorn.run(app, host=v.get("host") or "127.0.0.1", port=v.get("port") or 8000)


def _read_curve_csv(path: Path) -> evaluation.CurvePoints:
    lines = path.read_text(encoding="utf-8").splitlines()
    kind = "roc" if path.name.startswith("roc_") else "pr"
    points = []
    area, rule = 0.0, ""
    for line in lines[1:]:
        if line.startswith("#"):
            fields = dict(f.split("=", 1) for f in line[1:].split())
            area = float(fields.get("area", 0.0))
            rule = fields.get("rule", "")
            continue
        x, y = line.split(",")
        points.append((float(x), float(y)))
    return evaluation.CurvePoints(points=points, area=area, kind=kind, area_rule=rule)


@main.command()
@click.option("--run", "runs", type=click.Path(), multiple=True, required=True)
@click.option("--out", required=True, type=click.Path())
@guarded
def report(runs, out):
    """Overlay the ROC/PR curves of several eval runs into shared SVGs."""
    roc_curves, pr_curves = {}, {}
    for run_dir in runs:
        for csv_path in sorted(Path(run_dir).glob("roc_*.csv")):
            roc_curves[csv_path.stem[4:]] = _read_curve_csv(csv_path)
        for csv_path in sorted(Path(run_dir).glob("pr_*.csv")):
            pr_curves[csv_path.stem[3:]] = _read_curve_csv(csv_path)
    if not roc_curves and not pr_curves:
        raise EvalError("no curve files found in the given runs")
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    if roc_curves:
        evaluation.render_curves_svg(roc_curves, out / "roc_overlay.svg", "ROC")
    if pr_curves:
        evaluation.render_curves_svg(pr_curves, out / "pr_overlay.svg", "Precision-Recall")
    click.echo(f"overlays written to {out}")


if __name__ == "__main__":
    main()
