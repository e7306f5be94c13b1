"""A trained text classifier = preprocessing config + TF-IDF + classifier,
persisted together as a model directory."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import classifiers, features
from .preprocess import (
    DEFAULT_EMOJI_RANGES,
    PipelineConfig,
    default_config,
    preprocess,
)

VECTORIZER_FILE = "vectorizer.json"
MODEL_FILE = "model.json"
CONFIG_FILE = "config.json"


@dataclass
class TextClassifier:
    pre_cfg: PipelineConfig
    tfidf: features.TfidfModel
    model: classifiers.TrainedModel
    model_id: str = "model"
    config_echo: dict | None = None

    def vectorize(self, texts: list[str]) -> list[features.SparseVector]:
        docs = [preprocess(t, self.pre_cfg) for t in texts]
        return [features.transform(self.tfidf, d) for d in docs]

    def predict_proba_texts(self, texts: list[str]) -> np.ndarray:
        return self.model.predict_proba(self.vectorize(texts))

    def predict_texts(self, texts: list[str]) -> np.ndarray:
        return self.model.predict(self.vectorize(texts))

    def save(self, directory) -> None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        features.save_tfidf(self.tfidf, directory / VECTORIZER_FILE)
        classifiers.save_model(self.model, directory / MODEL_FILE)
        cfg = {
            "model_id": self.model_id,
            "stopword_list": sorted(self.pre_cfg.stopword_list),
            "emoji_ranges": [[f"{a:X}", f"{b:X}"] for a, b in self.pre_cfg.emoji_ranges],
            "strip_punctuation": self.pre_cfg.strip_punctuation,
            "config_echo": self.config_echo,
        }
        (directory / CONFIG_FILE).write_text(
            json.dumps(cfg, sort_keys=True, ensure_ascii=False, indent=2),
            encoding="utf-8",
        )

    @classmethod
    def load(cls, directory) -> "TextClassifier":
        directory = Path(directory)
        cfg = json.loads((directory / CONFIG_FILE).read_text(encoding="utf-8"))
        pre_cfg = PipelineConfig(
            stopword_list=frozenset(cfg["stopword_list"]),
            emoji_ranges=tuple((int(a, 16), int(b, 16)) for a, b in cfg["emoji_ranges"]),
            strip_punctuation=cfg["strip_punctuation"],
        )
        return cls(
            pre_cfg=pre_cfg,
            tfidf=features.load_tfidf(directory / VECTORIZER_FILE),
            model=classifiers.load_model(directory / MODEL_FILE),
            model_id=cfg.get("model_id", directory.name),
            config_echo=cfg.get("config_echo"),
        )


def train_text_classifier(
    texts: list[str],
    labels: list[int],
    hp: classifiers.Hyperparams,
    pre_cfg: PipelineConfig | None = None,
    normalize: bool = True,
    model_id: str = "model",
) -> TextClassifier:
    pre_cfg = pre_cfg or default_config()
    docs = [preprocess(t, pre_cfg) for t in texts]
    tfidf = features.fit_tfidf(docs, normalize=normalize)
    X = [features.transform(tfidf, d) for d in docs]
    model = classifiers.train(X, labels, hp)
    return TextClassifier(pre_cfg=pre_cfg, tfidf=tfidf, model=model, model_id=model_id)
