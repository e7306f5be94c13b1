import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sarcalab.preprocess import (
    PipelineConfig,
    default_config,
    load_config,
    load_stopwords,
    preprocess,
    remove_emoji,
    remove_stopwords,
    strip_punctuation,
    tokenize,
)

CFG = PipelineConfig()

# Bangla + ASCII, no uppercase, no punctuation, no emoji: the alphabet on
# which the pipeline is a pure token filter
SAFE_ALPHABET = "অআকখগচছজটठতদনপবমরলশষসহািীুেো abcdefgh"


class TestRemoveEmoji:
    def test_emoticon_block(self):
        assert remove_emoji("ha ha \U0001F602", CFG) == "ha ha "

    def test_identity_without_emoji(self):
        assert remove_emoji("valo lagse", CFG) == "valo lagse"

    def test_all_emoji(self):
        assert remove_emoji("\U0001F602\U0001F62D\U0001F923", CFG) == ""

    def test_other_codepoints_preserved_in_order(self):
        assert remove_emoji("a\U0001F680b❤c", CFG) == "abc"


class TestTokenize:
    def test_whitespace_split(self):
        assert tokenize("ki darun  bepar") == ["ki", "darun", "bepar"]

    def test_empty(self):
        assert tokenize("") == []

    def test_all_whitespace_classes(self):
        assert tokenize("one\ttwo\nthree") == ["one", "two", "three"]


class TestRemoveStopwords:
    def test_definition(self):
        cfg = PipelineConfig(stopword_list=frozenset({"ami"}))
        assert remove_stopwords(["ami", "khub", "khushi"], cfg) == ["khub", "khushi"]

    def test_empty_stoplist_identity(self):
        assert remove_stopwords(["a", "b"], CFG) == ["a", "b"]

    def test_all_stopwords(self):
        cfg = PipelineConfig(stopword_list=frozenset({"a", "b"}))
        assert remove_stopwords(["a", "b"], cfg) == []


class TestStripPunctuation:
    def test_trailing_and_pure_punct(self):
        assert strip_punctuation(["darun!!", "..."]) == ["darun"]

    def test_hyphen(self):
        assert strip_punctuation(["no-punct"]) == ["nopunct"]

    def test_bangla_danda(self):
        assert strip_punctuation(["।"]) == []


class TestPipeline:
    def test_composition_matches_stepwise(self):
        texts = [
            "ki darun!! \U0001F602 bepar",
            "ami khub khushi...",
            "। valo na",
            "eta ekta test",
        ]
        cfg = PipelineConfig(stopword_list=frozenset({"ami", "na"}))
        for text in texts:
            stepwise = remove_stopwords(
                strip_punctuation(
                    remove_stopwords(tokenize(remove_emoji(text, cfg)), cfg)
                ),
                cfg,
            )
            assert preprocess(text, cfg) == stepwise

    def test_emoji_and_stopword_only(self):
        cfg = PipelineConfig(stopword_list=frozenset({"to"}))
        assert preprocess("to \U0001F602 to", cfg) == []

    def test_ascii_lowercased(self):
        assert preprocess("Valo LAGSE", CFG) == ["valo", "lagse"]

    @given(st.text(alphabet=SAFE_ALPHABET, max_size=60))
    @settings(max_examples=60, deadline=None)
    def test_idempotent_on_joined_output(self, text):
        cfg = PipelineConfig(stopword_list=frozenset({"zq"}))
        once = preprocess(text, cfg)
        again = preprocess(" ".join(once), cfg)
        assert again == once

    @given(st.text(alphabet=SAFE_ALPHABET + "!.,।\U0001F602", max_size=60))
    @settings(max_examples=60, deadline=None)
    def test_no_new_codepoints(self, text):
        tokens = preprocess(text, CFG)
        assert set("".join(tokens)) <= set(text)

    @given(st.text(max_size=60))
    @settings(max_examples=60, deadline=None)
    def test_never_longer_than_tokenization(self, text):
        assert len(preprocess(text, CFG)) <= len(tokenize(text))

    def test_no_token_contains_whitespace_or_stopword(self):
        cfg = default_config()
        tokens = preprocess("আমি খুব khushi \U0001F602 ami to!", cfg)
        assert all(" " not in t for t in tokens)
        assert not set(tokens) & cfg.stopword_list


class TestConfig:
    def test_stopword_file_with_comments(self, tmp_path):
        path = tmp_path / "stop.txt"
        path.write_text("# comment\nami  # trailing\n\nkhub\n", encoding="utf-8")
        assert load_stopwords(path) == {"ami", "khub"}

    def test_default_config_bundled_list(self):
        cfg = default_config()
        assert "আমি" in cfg.stopword_list

    def test_overlapping_ranges_rejected(self):
        with pytest.raises(ValueError, match="overlap"):
            PipelineConfig(emoji_ranges=((0x100, 0x200), (0x150, 0x250)))

    def test_load_json_config(self, tmp_path):
        stop = tmp_path / "stop.txt"
        stop.write_text("ami\n", encoding="utf-8")
        cfg_file = tmp_path / "pre.json"
        cfg_file.write_text(
            '{"stopword_file": "stop.txt", "emoji_ranges": [["1F600", "1F64F"]],'
            ' "strip_punctuation": false}',
            encoding="utf-8",
        )
        cfg = load_config(cfg_file)
        assert cfg.stopword_list == {"ami"}
        assert cfg.emoji_ranges == ((0x1F600, 0x1F64F),)
        assert cfg.strip_punctuation is False
