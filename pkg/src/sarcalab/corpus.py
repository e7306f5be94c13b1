"""Labeled comment datasets: loading, summaries, stratified splits and folds."""

from __future__ import annotations

import csv
import json
import random
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class LabeledComment:
    text: str
    label: int

    def __post_init__(self):
        if self.label not in (0, 1):
            raise CorpusError(f"label must be 0 or 1, got {self.label!r}")
        if not self.text.strip():
            raise CorpusError("text is empty after trimming")


@dataclass
class Dataset:
    records: list[LabeledComment]
    name: str = "dataset"

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def labels(self) -> list[int]:
        return [r.label for r in self.records]

    @property
    def texts(self) -> list[str]:
        return [r.text for r in self.records]

    def summary(self) -> dict:
        counts = {0: 0, 1: 0}
        for r in self.records:
            counts[r.label] += 1
        return {"name": self.name, "total": len(self.records), "per_class": counts}

    def subset(self, indices, name: str | None = None) -> "Dataset":
        return Dataset([self.records[i] for i in indices], name or self.name)


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.6
    val_fraction: float = 0.2
    test_fraction: float = 0.2
    seed: int = 0

    def __post_init__(self):
        fracs = (self.train_fraction, self.val_fraction, self.test_fraction)
        if any(not 0.0 < f < 1.0 for f in fracs):
            raise CorpusError(f"split fractions must lie in (0,1), got {fracs}")
        if abs(sum(fracs) - 1.0) > 1e-9:
            raise CorpusError(f"split fractions must sum to 1, got {sum(fracs)}")


@dataclass
class FoldAssignment:
    k: int
    fold_index_per_record: list[int]

    def fold_indices(self, fold: int) -> list[int]:
        """Record indices held out in `fold`."""
        return [i for i, f in enumerate(self.fold_index_per_record) if f == fold]

    def train_indices(self, fold: int) -> list[int]:
        return [i for i, f in enumerate(self.fold_index_per_record) if f != fold]


def one_hot(label: int) -> list[int]:
    """0 -> [1, 0], 1 -> [0, 1]."""
    if label not in (0, 1):
        raise CorpusError(f"label must be 0 or 1, got {label!r}")
    return [1, 0] if label == 0 else [0, 1]


def _make_record(text, label, row_no: int) -> LabeledComment:
    if not isinstance(text, str) or not text.strip():
        raise CorpusError(f"row {row_no}: empty text")
    try:
        label_int = int(label)
    except (TypeError, ValueError):
        raise CorpusError(f"row {row_no}: label {label!r} is not an integer") from None
    if label_int not in (0, 1):
        raise CorpusError(f"row {row_no}: label must be 0 or 1, got {label!r}")
    # NFC keeps Bangla combining characters comparable downstream
    return LabeledComment(unicodedata.normalize("NFC", text.strip()), label_int)


def load_dataset(path, format: str | None = None) -> Dataset:
    """Load a `text,label` CSV or `{"text":…, "label":…}` JSONL file.

    Rows are kept in file order; bad rows are rejected with their row
    number. Format is inferred from the extension when not given.
    """
    path = Path(path)
    if not path.exists():
        raise CorpusError(f"dataset file not found: {path}")
    if format is None:
        format = "jsonl" if path.suffix.lower() in (".jsonl", ".ndjson") else "csv"
    if format not in ("csv", "jsonl"):
        raise CorpusError(f"unknown dataset format {format!r}")

    records = []
    if format == "csv":
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or not {"text", "label"} <= set(reader.fieldnames):
                raise CorpusError(f"{path}: CSV header must contain 'text' and 'label'")
            for row_no, row in enumerate(reader, start=2):
                records.append(_make_record(row.get("text"), row.get("label"), row_no))
    else:
        with open(path, encoding="utf-8") as fh:
            for row_no, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as e:
                    raise CorpusError(f"row {row_no}: invalid JSON ({e})") from None
                records.append(_make_record(obj.get("text"), obj.get("label"), row_no))

    if not records:
        raise CorpusError(f"{path}: no records")
    return Dataset(records, name=path.stem)


def _per_class_indices(d: Dataset) -> dict[int, list[int]]:
    by_class: dict[int, list[int]] = {0: [], 1: []}
    for i, r in enumerate(d.records):
        by_class[r.label].append(i)
    return by_class


def _apportion(n: int, fractions: list[float]) -> list[int]:
    """Largest-remainder apportionment of n items over fractions."""
    exact = [n * f for f in fractions]
    floors = [int(x) for x in exact]
    short = n - sum(floors)
    order = sorted(range(len(fractions)), key=lambda i: (-(exact[i] - floors[i]), i))
    for i in order[:short]:
        floors[i] += 1
    return floors


def stratified_split(d: Dataset, spec: SplitSpec) -> tuple[Dataset, Dataset, Dataset]:
    """Seeded stratified train/val/test split with exact per-class counts."""
    by_class = _per_class_indices(d)
    for cls, idxs in by_class.items():
        if len(idxs) < 3:
            raise CorpusError(
                f"class {cls} has {len(idxs)} records; need at least 3 to split"
            )
    fractions = [spec.train_fraction, spec.val_fraction, spec.test_fraction]
    rng = random.Random(spec.seed)
    parts: list[list[int]] = [[], [], []]
    for cls in sorted(by_class):
        idxs = list(by_class[cls])
        rng.shuffle(idxs)
        sizes = _apportion(len(idxs), fractions)
        # every partition gets at least one record of each class
        while min(sizes) == 0:
            sizes[sizes.index(max(sizes))] -= 1
            sizes[sizes.index(min(sizes))] += 1
        cut1, cut2 = sizes[0], sizes[0] + sizes[1]
        parts[0].extend(idxs[:cut1])
        parts[1].extend(idxs[cut1:cut2])
        parts[2].extend(idxs[cut2:])
    names = ("train", "val", "test")
    return tuple(
        d.subset(sorted(p), f"{d.name}.{nm}") for p, nm in zip(parts, names)
    )


def stratified_kfold(d: Dataset, k: int, seed: int = 0) -> FoldAssignment:
    """Seeded k-fold assignment with per-class fold counts differing by <= 1."""
    if k < 2:
        raise CorpusError(f"k must be >= 2, got {k}")
    by_class = _per_class_indices(d)
    for cls, idxs in by_class.items():
        if len(idxs) < k:
            raise CorpusError(
                f"class {cls} has {len(idxs)} records, fewer than k={k}"
            )
    rng = random.Random(seed)
    assignment = [0] * len(d.records)
    for cls in sorted(by_class):
        idxs = list(by_class[cls])
        rng.shuffle(idxs)
        for pos, i in enumerate(idxs):
            assignment[i] = pos % k
    return FoldAssignment(k=k, fold_index_per_record=assignment)
