"""Confusion-matrix metrics, ROC/PR curves, and the stratified K-fold harness."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import classifiers, features
from .blackbox import ModelEndpoint, remote_predict_proba
from .corpus import Dataset, stratified_kfold
from .preprocess import PipelineConfig, preprocess


class EvalError(ValueError):
    pass


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


def confusion(preds, truth) -> ConfusionMatrix:
    """Counts with class 1 as positive."""
    preds = list(preds)
    truth = list(truth)
    if len(preds) != len(truth):
        raise EvalError(f"length mismatch: {len(preds)} preds vs {len(truth)} labels")
    if not preds:
        raise EvalError("nothing to evaluate")
    tp = sum(1 for p, t in zip(preds, truth) if p == 1 and t == 1)
    fp = sum(1 for p, t in zip(preds, truth) if p == 1 and t == 0)
    fn = sum(1 for p, t in zip(preds, truth) if p == 0 and t == 1)
    tn = sum(1 for p, t in zip(preds, truth) if p == 0 and t == 0)
    return ConfusionMatrix(tp=tp, fp=fp, fn=fn, tn=tn)


@dataclass
class MetricsReport:
    accuracy: float
    precision: float
    recall: float
    f1: float
    averaging: str
    degenerate: bool = False
    per_class: dict | None = None

    def to_dict(self) -> dict:
        d = {
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "averaging": self.averaging,
            "degenerate": self.degenerate,
        }
        if self.per_class is not None:
            d["per_class"] = self.per_class
        return d


def _prf(tp, fp, fn):
    degenerate = False
    if tp + fp == 0:
        precision, degenerate = 0.0, True
    else:
        precision = tp / (tp + fp)
    if tp + fn == 0:
        recall, degenerate = 0.0, True
    else:
        recall = tp / (tp + fn)
    if precision + recall == 0:
        f1, degenerate = 0.0, True
    else:
        f1 = 2 * precision * recall / (precision + recall)
    return precision, recall, f1, degenerate


def metrics(c: ConfusionMatrix, averaging: str = "micro") -> MetricsReport:
    """Micro pools both classes' decisions, which for single-label binary
    classification makes precision = recall = f1 = accuracy exactly."""
    if c.total == 0:
        raise EvalError("empty confusion matrix")
    accuracy = (c.tp + c.tn) / c.total

    # class 1 as positive, and class 0 with the roles swapped
    p1, r1, f1_1, d1 = _prf(c.tp, c.fp, c.fn)
    p0, r0, f1_0, d0 = _prf(c.tn, c.fn, c.fp)

    if averaging == "micro":
        # pooled TP over both classes = correct decisions, and pooled
        # FP = pooled FN = errors, so all three equal accuracy
        return MetricsReport(accuracy, accuracy, accuracy, accuracy, "micro")
    if averaging == "macro":
        return MetricsReport(
            accuracy,
            (p0 + p1) / 2,
            (r0 + r1) / 2,
            (f1_0 + f1_1) / 2,
            "macro",
            degenerate=d0 or d1,
        )
    if averaging == "per_class":
        return MetricsReport(
            accuracy, p1, r1, f1_1, "per_class",
            degenerate=d0 or d1,
            per_class={
                "0": {"precision": p0, "recall": r0, "f1": f1_0},
                "1": {"precision": p1, "recall": r1, "f1": f1_1},
            },
        )
    raise EvalError(f"unknown averaging {averaging!r}")


@dataclass
class CurvePoints:
    points: list[tuple[float, float]]
    area: float
    kind: str  # "roc" or "pr"
    area_rule: str


def _check_scores(scores, truth):
    scores = np.asarray(scores, dtype=float)
    truth = np.asarray(truth, dtype=int)
    if scores.shape[0] != truth.shape[0]:
        raise EvalError("scores and truth differ in length")
    if not np.isfinite(scores).all():
        raise EvalError("non-finite score")
    return scores, truth


def roc_curve(scores, truth) -> CurvePoints:
    """Threshold sweep over distinct scores; AUC equals the trapezoidal
    area, which equals (concordant + 0.5*tied) / (P*N)."""
    scores, truth = _check_scores(scores, truth)
    pos = int((truth == 1).sum())
    neg = int((truth == 0).sum())
    if pos == 0 or neg == 0:
        raise EvalError("ROC needs both classes in truth")

    order = np.argsort(-scores, kind="stable")
    s, t = scores[order], truth[order]
    points = [(0.0, 0.0)]
    tp = fp = 0
    for i in range(len(s)):
        tp += int(t[i] == 1)
        fp += int(t[i] == 0)
        if i + 1 < len(s) and s[i + 1] == s[i]:
            continue  # same threshold; emit one point per distinct score
        points.append((fp / neg, tp / pos))

    area = 0.0
    for (x0, y0), (x1, y1) in zip(points, points[1:]):
        area += (x1 - x0) * (y0 + y1) / 2.0
    return CurvePoints(points=points, area=area, kind="roc", area_rule="trapezoid")


def pr_curve(scores, truth) -> CurvePoints:
    """Precision-recall points ordered by increasing recall; area by the
    step-wise interpolated-precision rule."""
    scores, truth = _check_scores(scores, truth)
    pos = int((truth == 1).sum())
    if pos == 0:
        raise EvalError("PR curve needs at least one positive in truth")

    order = np.argsort(-scores, kind="stable")
    s, t = scores[order], truth[order]
    points = []
    tp = fp = 0
    for i in range(len(s)):
        tp += int(t[i] == 1)
        fp += int(t[i] == 0)
        if i + 1 < len(s) and s[i + 1] == s[i]:
            continue
        points.append((tp / pos, tp / (tp + fp)))

    # interpolated precision: best precision at any recall >= r
    interp = []
    best = 0.0
    for r, p in reversed(points):
        best = max(best, p)
        interp.append((r, best))
    interp.reverse()
    area = 0.0
    prev_r = 0.0
    for r, p in interp:
        area += (r - prev_r) * p
        prev_r = r
    return CurvePoints(points=points, area=area, kind="pr", area_rule="interpolated_step")


@dataclass
class FoldReport:
    k: int
    per_fold: list[MetricsReport]
    mean: dict
    std: dict
    final_fold: dict
    vocabularies: list[set] | None = None

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "per_fold": [m.to_dict() for m in self.per_fold],
            "mean": self.mean,
            "std": self.std,
            "final_fold": self.final_fold,
        }


@dataclass
class PipelineSpec:
    """What to run in each fold: either a native algorithm over the
    preprocess + TF-IDF path, or a remote endpoint over raw text."""

    pre_cfg: PipelineConfig
    hyperparams: classifiers.Hyperparams | None = None
    endpoint: ModelEndpoint | None = None
    normalize: bool = True

    def __post_init__(self):
        if (self.hyperparams is None) == (self.endpoint is None):
            raise EvalError("exactly one of hyperparams or endpoint required")


def _fold_predictions(spec: PipelineSpec, train_ds: Dataset, test_ds: Dataset,
                      collect_vocab: bool):
    if spec.endpoint is not None:
        probs = remote_predict_proba(spec.endpoint, test_ds.texts)
        preds = (probs[:, 1] > probs[:, 0]).astype(int)
        return preds, None
    train_docs = [preprocess(t, spec.pre_cfg) for t in train_ds.texts]
    tfidf = features.fit_tfidf(train_docs, normalize=spec.normalize)
    X_train = features.transform_corpus(tfidf, train_docs)
    model = classifiers.train(X_train, train_ds.labels, spec.hyperparams)
    test_docs = [preprocess(t, spec.pre_cfg) for t in test_ds.texts]
    preds = model.predict(features.transform_corpus(tfidf, test_docs))
    vocab = set(tfidf.vocabulary.token_index) if collect_vocab else None
    return preds, vocab


def run_kfold(d: Dataset, spec: PipelineSpec, k: int, seed: int = 0,
              collect_vocabularies: bool = False) -> FoldReport:
    """Stratified K-fold: the featurizer and model are fit on the k-1
    training folds only, then scored on the held-out fold."""
    assignment = stratified_kfold(d, k, seed)
    per_fold = []
    vocabs = [] if collect_vocabularies else None
    for fold in range(k):
        train_ds = d.subset(assignment.train_indices(fold))
        test_ds = d.subset(assignment.fold_indices(fold))
        try:
            preds, vocab = _fold_predictions(spec, train_ds, test_ds,
                                             collect_vocabularies)
        except Exception as e:
            raise EvalError(f"fold {fold}: {e}") from e
        per_fold.append(metrics(confusion(preds, test_ds.labels), "micro"))
        if vocabs is not None:
            vocabs.append(vocab or set())

    names = ("accuracy", "precision", "recall", "f1")
    mean = {n: float(np.mean([getattr(m, n) for m in per_fold])) for n in names}
    std = {n: float(np.std([getattr(m, n) for m in per_fold])) for n in names}
    return FoldReport(
        k=k,
        per_fold=per_fold,
        mean=mean,
        std=std,
        final_fold=per_fold[-1].to_dict(),
        vocabularies=vocabs,
    )


# ---------------------------------------------------------------- reports


def export_curve_csv(curve: CurvePoints, path) -> None:
    header = "fpr,tpr" if curve.kind == "roc" else "recall,precision"
    lines = [header] + [f"{x!r},{y!r}" for x, y in curve.points]
    lines.append(f"# area={curve.area!r} rule={curve.area_rule}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


_SVG_COLORS = (
    "#d62728", "#1f77b4", "#2ca02c", "#ff7f0e",
    "#9467bd", "#8c564b", "#17becf", "#7f7f7f",
)


def render_curves_svg(curves: dict[str, CurvePoints], path, title: str) -> None:
    """Deterministic, dependency-free SVG line plot on the unit square."""
    w, h, margin = 480, 480, 50

    def px(x):
        return margin + x * (w - 2 * margin)

    def py(y):
        return h - margin - y * (h - 2 * margin)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}">',
        f'<rect width="{w}" height="{h}" fill="white"/>',
        f'<text x="{w / 2}" y="24" text-anchor="middle" font-size="14">{title}</text>',
        f'<rect x="{margin}" y="{margin}" width="{w - 2 * margin}" '
        f'height="{h - 2 * margin}" fill="none" stroke="black"/>',
    ]
    for i, (name, curve) in enumerate(sorted(curves.items())):
        color = _SVG_COLORS[i % len(_SVG_COLORS)]
        coords = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in curve.points)
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{margin + 8}" y="{margin + 16 + 14 * i}" font-size="11" '
            f'fill="{color}">{name} (area={curve.area:.4f})</text>'
        )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n", encoding="utf-8")


def write_report_json(payload: dict, path) -> None:
    Path(path).write_text(
        json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False),
        encoding="utf-8",
    )
