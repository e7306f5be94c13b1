"""Local explanation of one prediction: perturb the comment's tokens, query
the model, and fit a proximity-weighted sparse ridge surrogate whose
coefficients are signed per-token attributions."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .blackbox import ModelEndpoint, remote_predict_proba
from .pipeline import TextClassifier
from .preprocess import PipelineConfig, preprocess, tokenize


class LimeError(ValueError):
    pass


@dataclass(frozen=True)
class LimeConfig:
    n_samples: int = 1000
    kernel_width: float = 0.25
    ridge_lambda: float = 1.0
    top_k: int = 10
    seed: int = 0
    target_class: int | str = "predicted"

    def __post_init__(self):
        if self.n_samples < 10:
            raise LimeError(f"n_samples must be >= 10, got {self.n_samples}")
        if self.kernel_width <= 0:
            raise LimeError("kernel_width must be > 0")
        if self.ridge_lambda < 0:
            raise LimeError("ridge_lambda must be >= 0")
        if self.top_k < 1:
            raise LimeError("top_k must be >= 1")
        if self.target_class not in (0, 1, "predicted"):
            raise LimeError(f"bad target_class {self.target_class!r}")

    def to_dict(self) -> dict:
        return {
            "n_samples": self.n_samples,
            "kernel_width": self.kernel_width,
            "ridge_lambda": self.ridge_lambda,
            "top_k": self.top_k,
            "seed": self.seed,
            "target_class": self.target_class,
        }


@dataclass
class PerturbationSample:
    mask: tuple[int, ...]
    rendered_text: str
    proximity_weight: float


@dataclass
class LocalFit:
    weights: np.ndarray
    intercept: float
    r2: float
    degenerate: bool = False


@dataclass
class Explanation:
    tokens: list[str]  # the instance's distinct tokens, first-occurrence order
    weights: list[float]  # positive pushes toward class 1 (sarcasm)
    intercept: float
    local_fit_r2: float
    predicted_class: int
    predicted_proba: list[float]
    target_class: int
    degenerate: bool
    config: dict

    def to_dict(self) -> dict:
        return {
            "tokens": self.tokens,
            "weights": self.weights,
            "intercept": self.intercept,
            "r2": self.local_fit_r2,
            "predicted_class": self.predicted_class,
            "probs": self.predicted_proba,
            "target_class": self.target_class,
            "degenerate": self.degenerate,
            "config": self.config,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)

    def to_html(self) -> str:
        """Self-contained fragment: orange spans push toward sarcasm,
        blue away; opacity scales with |weight| / max |weight|."""
        max_w = max((abs(w) for w in self.weights), default=0.0)
        spans = []
        for tok, w in zip(self.tokens, self.weights):
            if max_w == 0.0 or w == 0.0:
                spans.append(f"<span>{_escape(tok)}</span>")
                continue
            opacity = abs(w) / max_w
            color = "255,140,0" if w > 0 else "60,110,220"
            spans.append(
                f'<span style="background-color: rgba({color},{opacity:.3f})" '
                f'title="{w:+.5f}">{_escape(tok)}</span>'
            )
        label = "sarcastic" if self.predicted_class == 1 else "non-sarcastic"
        return (
            '<div class="lime-explanation">'
            f"<p>Predicted: <b>{label}</b> "
            f"(p={self.predicted_proba[self.predicted_class]:.3f})</p>"
            f'<p class="tokens">{" ".join(spans)}</p>'
            "</div>"
        )


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def distinct_tokens(tokens: list[str]) -> list[str]:
    seen = []
    for t in tokens:
        if t not in seen:
            seen.append(t)
    return seen


def _proximity(kept: int, total: int, width: float) -> float:
    # cosine of a binary mask against all-ones is sqrt(kept/total)
    d = 1.0 - math.sqrt(kept / total) if kept else 1.0
    return math.exp(-(d * d) / (width * width))


def sample_perturbations(tokens: list[str], cfg: LimeConfig) -> list[PerturbationSample]:
    """Token-removal perturbations. The first sample keeps everything; each
    other removes a uniformly drawn non-zero number of distinct tokens.
    Duplicate tokens toggle together."""
    distinct = distinct_tokens(tokens)
    n = len(distinct)
    if n == 0:
        raise LimeError("no tokens to perturb")
    index_of = {t: i for i, t in enumerate(distinct)}
    rng = np.random.default_rng(cfg.seed)

    def render(mask) -> str:
        return " ".join(t for t in tokens if mask[index_of[t]])

    samples = [
        PerturbationSample(tuple([1] * n), render([1] * n), 1.0)
    ]
    for _ in range(cfg.n_samples - 1):
        n_remove = int(rng.integers(1, n + 1))
        removed = rng.choice(n, size=n_remove, replace=False)
        mask = [1] * n
        for i in removed:
            mask[i] = 0
        samples.append(
            PerturbationSample(
                tuple(mask), render(mask), _proximity(n - n_remove, n, cfg.kernel_width)
            )
        )
    return samples


def _weighted_ridge(M: np.ndarray, y: np.ndarray, w: np.ndarray, lam: float):
    """Minimize sum_i w_i (y_i - b.m_i - b0)^2 + lam * ||b||^2; the
    intercept is unpenalized. Singular systems fall back to the min-norm
    least-squares solution."""
    n, p = M.shape
    A = np.column_stack([M, np.ones(n)])
    AtW = A.T * w
    lhs = AtW @ A
    lhs[np.arange(p), np.arange(p)] += lam
    rhs = AtW @ y
    try:
        beta = np.linalg.solve(lhs, rhs)
    except np.linalg.LinAlgError:
        beta = np.linalg.lstsq(lhs, rhs, rcond=None)[0]
    return beta[:p], float(beta[p])


def _weighted_r2(y, y_hat, w) -> tuple[float, bool]:
    mean = float(np.sum(w * y) / np.sum(w))
    ss_tot = float(np.sum(w * (y - mean) ** 2))
    if ss_tot == 0.0:
        return 0.0, True
    ss_res = float(np.sum(w * (y - y_hat) ** 2))
    return max(0.0, 1.0 - ss_res / ss_tot), False


def fit_local(masks, proximity_weights, target_probs, cfg: LimeConfig) -> LocalFit:
    """Weighted ridge fit on the mask matrix, hard top-k selection by
    absolute coefficient, then a refit on the retained support."""
    M = np.asarray(masks, dtype=float)
    w = np.asarray(proximity_weights, dtype=float)
    y = np.asarray(target_probs, dtype=float)
    if M.ndim != 2 or M.shape[0] < 2:
        raise LimeError("need at least 2 perturbation samples")
    if not (M.shape[0] == w.shape[0] == y.shape[0]):
        raise LimeError("masks, weights and targets differ in length")

    if np.all(M == M[0]):
        intercept = float(np.sum(w * y) / np.sum(w))
        return LocalFit(np.zeros(M.shape[1]), intercept, 0.0, degenerate=True)

    beta, intercept = _weighted_ridge(M, y, w, cfg.ridge_lambda)
    p = M.shape[1]
    if cfg.top_k < p:
        keep = np.sort(np.argsort(-np.abs(beta), kind="stable")[: cfg.top_k])
        sub_beta, intercept = _weighted_ridge(M[:, keep], y, w, cfg.ridge_lambda)
        beta = np.zeros(p)
        beta[keep] = sub_beta

    y_hat = M @ beta + intercept
    r2, degenerate = _weighted_r2(y, y_hat, w)
    return LocalFit(beta, intercept, r2, degenerate=degenerate)


def explain(text: str, model, pre_cfg: PipelineConfig, cfg: LimeConfig) -> Explanation:
    """Explain one prediction of a native TextClassifier or a remote
    ModelEndpoint. Deterministic for a fixed seed and deterministic model."""
    if isinstance(model, ModelEndpoint):
        if not text.strip():
            raise LimeError("empty text")
        tokens = tokenize(text)

        def query(texts):
            # a fully-masked rendering is empty; the wire protocol rejects
            # empty strings, so send a single space
            return remote_predict_proba(model, [t if t else " " for t in texts])

    elif isinstance(model, TextClassifier):
        tokens = preprocess(text, pre_cfg)
        if not tokens:
            raise LimeError("text is empty after preprocessing")
        query = model.predict_proba_texts
    else:
        raise LimeError(f"cannot explain model of type {type(model).__name__}")

    samples = sample_perturbations(tokens, cfg)
    probs = query([s.rendered_text for s in samples])
    orig = probs[0]
    predicted_class = int(orig[1] > orig[0])
    target = predicted_class if cfg.target_class == "predicted" else int(cfg.target_class)

    fit = fit_local(
        [s.mask for s in samples],
        [s.proximity_weight for s in samples],
        probs[:, target],
        cfg,
    )
    weights = fit.weights if target == 1 else -fit.weights  # positive => class 1
    return Explanation(
        tokens=distinct_tokens(tokens),
        weights=[float(v) for v in weights],
        intercept=fit.intercept,
        local_fit_r2=fit.r2,
        predicted_class=predicted_class,
        predicted_proba=[float(orig[0]), float(orig[1])],
        target_class=target,
        degenerate=fit.degenerate,
        config=cfg.to_dict(),
    )
