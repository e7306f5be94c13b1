"""Comment cleaning pipeline: emoji removal, tokenization, stopwords, punctuation."""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

# Unicode emoji presentation blocks, as (start, end) codepoint intervals.
DEFAULT_EMOJI_RANGES: tuple[tuple[int, int], ...] = (
    (0x1F1E6, 0x1F1FF),  # regional indicators (flags)
    (0x1F300, 0x1F5FF),  # misc symbols and pictographs
    (0x1F600, 0x1F64F),  # emoticons
    (0x1F680, 0x1F6FF),  # transport and map
    (0x1F900, 0x1F9FF),  # supplemental symbols and pictographs
    (0x1FA70, 0x1FAFF),  # symbols and pictographs extended-A
    (0x2600, 0x26FF),    # misc symbols
    (0x2700, 0x27BF),    # dingbats
    (0xFE0E, 0xFE0F),    # variation selectors used for emoji presentation
)


@dataclass(frozen=True)
class PipelineConfig:
    stopword_list: frozenset[str] = frozenset()
    emoji_ranges: tuple[tuple[int, int], ...] = DEFAULT_EMOJI_RANGES
    strip_punctuation: bool = True

    def __post_init__(self):
        ranges = sorted(self.emoji_ranges)
        for (a, b), (c, d) in zip(ranges, ranges[1:]):
            if c <= b:
                raise ValueError(f"emoji ranges overlap: {(a, b)} and {(c, d)}")
        object.__setattr__(self, "emoji_ranges", tuple(ranges))


def load_stopwords(path) -> frozenset[str]:
    """One token per line, UTF-8; `#` starts a comment."""
    words = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        word = line.split("#", 1)[0].strip()
        if word:
            words.add(unicodedata.normalize("NFC", word))
    return frozenset(words)


def default_config() -> PipelineConfig:
    """Bundled Bangla stopword list and the default emoji ranges."""
    with resources.as_file(
        resources.files("sarcalab.data").joinpath("stopwords_bn.txt")
    ) as p:
        stop = load_stopwords(p)
    return PipelineConfig(stopword_list=stop)


def load_config(path) -> PipelineConfig:
    """JSON config: {"stopword_file": str?, "emoji_ranges": [["1F600","1F64F"], …]?,
    "strip_punctuation": bool?}. Missing fields take the defaults."""
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    stop = frozenset()
    if raw.get("stopword_file"):
        stop_path = Path(raw["stopword_file"])
        if not stop_path.is_absolute():
            stop_path = Path(path).parent / stop_path
        stop = load_stopwords(stop_path)
    elif "stopword_file" not in raw:
        stop = default_config().stopword_list
    ranges = DEFAULT_EMOJI_RANGES
    if "emoji_ranges" in raw:
        ranges = tuple((int(a, 16), int(b, 16)) for a, b in raw["emoji_ranges"])
    return PipelineConfig(
        stopword_list=stop,
        emoji_ranges=ranges,
        strip_punctuation=raw.get("strip_punctuation", True),
    )


def _in_ranges(cp: int, ranges) -> bool:
    for a, b in ranges:
        if a <= cp <= b:
            return True
    return False


def remove_emoji(text: str, cfg: PipelineConfig) -> str:
    """Drop codepoints inside the configured emoji ranges, keep everything else."""
    return "".join(ch for ch in text if not _in_ranges(ord(ch), cfg.emoji_ranges))


def tokenize(text: str) -> list[str]:
    """Maximal runs of non-whitespace."""
    return text.split()


def remove_stopwords(tokens: list[str], cfg: PipelineConfig) -> list[str]:
    return [t for t in tokens if t not in cfg.stopword_list]


def strip_punctuation(tokens: list[str]) -> list[str]:
    """Remove Unicode punctuation (categories P*) from each token; drop
    tokens that become empty."""
    out = []
    for t in tokens:
        kept = "".join(ch for ch in t if not unicodedata.category(ch).startswith("P"))
        if kept:
            out.append(kept)
    return out


def _lower_ascii(text: str) -> str:
    # Bangla has no case; only ASCII letters in mixed-script comments fold
    return "".join(ch.lower() if "A" <= ch <= "Z" else ch for ch in text)


def preprocess(text: str, cfg: PipelineConfig) -> list[str]:
    """Full pipeline: emoji removal, ASCII lowercasing, tokenize, stopwords,
    punctuation stripping, then a second stopword pass.

    The second pass catches tokens that only become stopwords once their
    punctuation is gone ("to!" -> "to"); without it the output could
    still contain stopwords."""
    cleaned = _lower_ascii(remove_emoji(text, cfg))
    tokens = remove_stopwords(tokenize(cleaned), cfg)
    if cfg.strip_punctuation:
        tokens = remove_stopwords(strip_punctuation(tokens), cfg)
    return tokens
