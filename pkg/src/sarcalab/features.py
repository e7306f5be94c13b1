"""TF-IDF vectorizer over preprocessed token sequences."""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import scipy.sparse as sp

FORMAT_VERSION = 1


class FeaturesError(ValueError):
    pass


@dataclass(frozen=True)
class SparseVector:
    """Ordered (index, value) pairs with strictly increasing indices."""

    indices: tuple[int, ...]
    values: tuple[float, ...]
    dimension: int

    def __post_init__(self):
        if len(self.indices) != len(self.values):
            raise FeaturesError("indices and values differ in length")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise FeaturesError("indices must be strictly increasing")
        if self.indices and self.indices[-1] >= self.dimension:
            raise FeaturesError("index out of range")
        if any(not math.isfinite(v) or v == 0.0 for v in self.values):
            raise FeaturesError("values must be finite and non-zero")

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.dimension)
        out[list(self.indices)] = self.values
        return out

    def norm(self) -> float:
        return math.sqrt(sum(v * v for v in self.values))


def stack(vectors: list[SparseVector]) -> sp.csr_matrix:
    """CSR matrix with one row per vector; all dimensions must agree."""
    if not vectors:
        raise FeaturesError("no vectors to stack")
    dim = vectors[0].dimension
    if any(v.dimension != dim for v in vectors):
        raise FeaturesError("inconsistent vector dimensions")
    indptr = np.cumsum([0] + [len(v.indices) for v in vectors])
    indices = np.concatenate([v.indices for v in vectors]) if indptr[-1] else np.empty(0, int)
    data = np.concatenate([v.values for v in vectors]) if indptr[-1] else np.empty(0)
    return sp.csr_matrix((data, indices, indptr), shape=(len(vectors), dim))


@dataclass
class Vocabulary:
    token_index: dict[str, int]
    document_frequency: dict[str, int]
    n_documents: int

    def __len__(self):
        return len(self.token_index)


@dataclass
class TfidfModel:
    vocabulary: Vocabulary
    idf: dict[str, float]
    normalize: bool = True

    @property
    def dimension(self) -> int:
        return len(self.vocabulary)


def fit_tfidf(
    corpus: list[list[str]],
    normalize: bool = True,
    min_df: int = 1,
    max_df_fraction: float = 1.0,
) -> TfidfModel:
    """Fit vocabulary and smoothed idf: ln((1+N)/(1+df)) + 1.

    min_df / max_df_fraction prune rare and ubiquitous tokens; the
    defaults keep everything.
    """
    if not corpus:
        raise FeaturesError("corpus is empty")
    if all(len(doc) == 0 for doc in corpus):
        raise FeaturesError("corpus contains only empty documents")

    n = len(corpus)
    df = Counter()
    for doc in corpus:
        df.update(set(doc))
    kept = sorted(
        t for t, c in df.items() if c >= min_df and c <= max_df_fraction * n
    )
    if not kept:
        raise FeaturesError("pruning removed the whole vocabulary")
    vocab = Vocabulary(
        token_index={t: i for i, t in enumerate(kept)},
        document_frequency={t: df[t] for t in kept},
        n_documents=n,
    )
    idf = {t: math.log((1 + n) / (1 + df[t])) + 1.0 for t in kept}
    return TfidfModel(vocabulary=vocab, idf=idf, normalize=normalize)


def transform(model: TfidfModel, doc: list[str]) -> SparseVector:
    """count(t) * idf(t), L2-normalized when the model says so. OOV tokens
    are ignored; an empty (or fully-OOV) doc maps to the zero vector."""
    counts = Counter(t for t in doc if t in model.vocabulary.token_index)
    pairs = sorted(
        (model.vocabulary.token_index[t], c * model.idf[t]) for t, c in counts.items()
    )
    values = [v for _, v in pairs]
    if model.normalize and values:
        norm = math.sqrt(sum(v * v for v in values))
        values = [v / norm for v in values]
    return SparseVector(
        indices=tuple(i for i, _ in pairs),
        values=tuple(values),
        dimension=model.dimension,
    )


def transform_corpus(model: TfidfModel, corpus: list[list[str]]) -> list[SparseVector]:
    return [transform(model, doc) for doc in corpus]


def save_tfidf(model: TfidfModel, path) -> None:
    tokens = sorted(model.vocabulary.token_index, key=model.vocabulary.token_index.get)
    payload = {
        "format_version": FORMAT_VERSION,
        "vocabulary": tokens,
        "df": [model.vocabulary.document_frequency[t] for t in tokens],
        "n_documents": model.vocabulary.n_documents,
        "idf": [model.idf[t] for t in tokens],
        "normalize": model.normalize,
    }
    Path(path).write_text(
        json.dumps(payload, ensure_ascii=False, sort_keys=True), encoding="utf-8"
    )


def load_tfidf(path) -> TfidfModel:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if raw.get("format_version") != FORMAT_VERSION:
        raise FeaturesError(f"unsupported vectorizer format: {raw.get('format_version')}")
    tokens = raw["vocabulary"]
    vocab = Vocabulary(
        token_index={t: i for i, t in enumerate(tokens)},
        document_frequency=dict(zip(tokens, raw["df"])),
        n_documents=raw["n_documents"],
    )
    return TfidfModel(
        vocabulary=vocab,
        idf=dict(zip(tokens, raw["idf"])),
        normalize=raw["normalize"],
    )
