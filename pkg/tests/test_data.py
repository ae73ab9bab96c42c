import itertools

import numpy as np
import pytest

from parseq_urdu import data
from parseq_urdu.data import MalformedManifest, Sample, UnsupportedImageFormat
from parseq_urdu.lexicon import DEMO_WORDS
from parseq_urdu.shaping import EmptyWord, build_vocab, full_vocab, shape_word


class TestGlyphs:
    def test_fixed_size_and_stable(self):
        form = shape_word("ب")[0]
        bm = data.glyph_bitmap(form)
        assert bm.shape == (data.GLYPH_H, data.GLYPH_W)
        data.glyph_bitmap.cache_clear()
        assert np.array_equal(data.glyph_bitmap(form), bm)

    def test_distinct_over_full_vocabulary(self):
        vocab = full_vocab()
        seen = {}
        for form in vocab.entries:
            key = data.glyph_bitmap(form).tobytes()
            assert key not in seen, (form, seen.get(key))
            seen[key] = form

    def test_distinct_over_demo_vocabulary(self):
        forms = build_vocab(DEMO_WORDS).entries
        for a, b in itertools.combinations(forms, 2):
            assert not np.array_equal(data.glyph_bitmap(a), data.glyph_bitmap(b))

    def test_right_to_left_layout(self):
        ink = data.word_ink("با")
        beh, alef = (data.glyph_bitmap(f) for f in shape_word("با"))
        step = data.GLYPH_W - 1
        assert ink.shape == (data.GLYPH_H, 2 * step + 1)
        # the first letter sits at the right edge
        assert np.array_equal(ink[:, -data.GLYPH_W:] & beh, beh)
        assert np.array_equal(ink[:, :data.GLYPH_W] & alef, alef)


class TestRender:
    def test_deterministic(self):
        a = data.render_synthetic("لاہور", np.random.default_rng(3))
        b = data.render_synthetic("لاہور", np.random.default_rng(3))
        assert np.array_equal(a.image, b.image) and a.label == "لاہور"

    def test_geometry(self):
        s = data.render_synthetic("پاکستان", np.random.default_rng(0), 32, 128)
        assert s.image.shape == (32, 128) and s.image.dtype == np.uint8

    def test_empty_word(self):
        with pytest.raises(EmptyWord):
            data.render_synthetic("", np.random.default_rng(0))

    def test_sample_needs_label(self):
        with pytest.raises(ValueError):
            Sample(np.zeros((2, 2), dtype=np.uint8), "", "x")


class TestPgm:
    def test_round_trip(self, tmp_path):
        img = np.random.default_rng(0).integers(0, 256, size=(5, 7)).astype(np.uint8)
        data.write_pgm(tmp_path / "a.pgm", img)
        assert np.array_equal(data.read_pgm(tmp_path / "a.pgm"), img)

    def test_header_comments(self, tmp_path):
        path = tmp_path / "c.pgm"
        path.write_bytes(b"P5\n# made by hand\n3 2\n# another\n255\n" + bytes(range(6)))
        assert data.read_pgm(path).tolist() == [[0, 1, 2], [3, 4, 5]]

    @pytest.mark.parametrize("blob", [b"P2\n1 1\n255\n0\n", b"P5\n1 1\n65535\n\x00\x00",
                                      b"P5\n2 2\n255\n\x00", b"P5\n"])
    def test_rejected(self, tmp_path, blob):
        path = tmp_path / "bad.pgm"
        path.write_bytes(blob)
        with pytest.raises(UnsupportedImageFormat):
            data.read_pgm(path)


class TestManifest:
    def test_empty_file(self, tmp_path):
        (tmp_path / "m.tsv").write_text("", encoding="utf-8")
        assert data.load_manifest(tmp_path / "m.tsv") == []

    def test_missing_tab(self, tmp_path):
        data.write_pgm(tmp_path / "a.pgm", np.zeros((2, 2), dtype=np.uint8))
        (tmp_path / "m.tsv").write_text("a.pgm\tب\na.pgm ب\n", encoding="utf-8")
        with pytest.raises(MalformedManifest) as exc:
            data.load_manifest(tmp_path / "m.tsv")
        assert exc.value.lineno == 2
        assert ":2:" in str(exc.value)

    def test_missing_files(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            data.load_manifest(tmp_path / "nope.tsv")
        (tmp_path / "m.tsv").write_text("gone.pgm\tب\n", encoding="utf-8")
        with pytest.raises(FileNotFoundError, match="gone.pgm"):
            data.load_manifest(tmp_path / "m.tsv")

    def test_round_trip(self, tmp_path):
        samples = data.synth_samples(12, 7, DEMO_WORDS, "val")
        manifest = data.synth_dataset(tmp_path, 12, 7, DEMO_WORDS, "val")
        loaded = data.load_manifest(manifest)
        assert [s.label for s in loaded] == [s.label for s in samples]
        assert all(np.array_equal(a.image, b.image) for a, b in zip(loaded, samples))
        assert (tmp_path / "vocab.tsv").exists()
        text = manifest.read_bytes()
        assert b"\r" not in text and text.count(b"\n") == 12


class TestSynth:
    def test_deterministic(self):
        a = data.synth_samples(6, 1, DEMO_WORDS)
        b = data.synth_samples(6, 1, DEMO_WORDS)
        assert [s.label for s in a] == [s.label for s in b]
        assert all(np.array_equal(x.image, y.image) for x, y in zip(a, b))

    def test_splits_differ(self):
        a = data.synth_samples(20, 1, DEMO_WORDS, "train")
        b = data.synth_samples(20, 1, DEMO_WORDS, "val")
        assert [s.label for s in a] != [s.label for s in b]

    def test_empty(self):
        assert data.synth_samples(0, 1, DEMO_WORDS) == []

    def test_random_word_supported(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            w = data.random_word(rng, 1, 8)
            assert 1 <= len(shape_word(w)) <= 8

    def test_demo_lexicon(self):
        assert len(DEMO_WORDS) == 200 == len(set(DEMO_WORDS))
        assert all(len(shape_word(w)) <= 25 for w in DEMO_WORDS)
