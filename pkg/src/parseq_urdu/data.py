"""Word-image datasets: synthetic rendering, binary PGM files and manifests.

A manifest is a UTF-8 text file with one ``<relative image path>\\t<label>``
line per sample; paths are relative to the manifest's directory.
"""

from __future__ import annotations

import hashlib
import os
import zlib
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import imaging
from .errors import ParseqError
from .shaping import GlyphForm, Position, build_vocab, shape_word, supported_letters

GLYPH_H, GLYPH_W = 16, 12
CONNECTOR_ROWS = slice(11, 13)


class MalformedManifest(ParseqError):
    def __init__(self, path, lineno: int, reason: str):
        super().__init__(f"{path}:{lineno}: {reason}")
        self.path = path
        self.lineno = lineno


class UnsupportedImageFormat(ParseqError):
    pass


@dataclass
class Sample:
    image: np.ndarray
    label: str
    id: str

    def __post_init__(self):
        if not self.label:
            raise ValueError(f"sample {self.id!r} has an empty label")


# -- synthetic glyphs ----------------------------------------------------------

@lru_cache(maxsize=None)
def glyph_bitmap(form: GlyphForm) -> np.ndarray:
    """A fixed 16x12 boolean bitmap for a glyph form.

    Seeded by a hash of (codepoint, position) only, so every dataset and every
    seed draws the same "font".  Every glyph sits on a short baseline stroke
    that extends to the edge on each joined side.
    """
    digest = hashlib.sha256(f"glyph:{form.base:04X}:{form.position.label}".encode()).digest()
    rng = np.random.default_rng(int.from_bytes(digest[:8], "little"))
    bm = np.zeros((GLYPH_H, GLYPH_W), dtype=bool)
    for _ in range(int(rng.integers(2, 4))):
        y, x = int(rng.integers(3, 12)), int(rng.integers(2, 10))
        for _ in range(int(rng.integers(8, 15))):
            bm[y, x] = True
            if rng.random() < 0.5:
                bm[y, min(x + 1, GLYPH_W - 1)] = True
            y = int(np.clip(y + rng.integers(-1, 2), 2, 13))
            x = int(np.clip(x + rng.integers(-1, 2), 1, GLYPH_W - 2))
    for _ in range(int(rng.integers(0, 3))):
        top = int(rng.choice([0, 14]))
        left = int(rng.integers(2, GLYPH_W - 3))
        bm[top:top + 2, left:left + 2] = True
    bm[CONNECTOR_ROWS, 1:GLYPH_W - 1] = True
    # the next letter sits to the left, the previous one to the right
    if form.position in (Position.INITIAL, Position.MEDIAL):
        bm[CONNECTOR_ROWS, : GLYPH_W // 2] = True
    if form.position in (Position.FINAL, Position.MEDIAL):
        bm[CONNECTOR_ROWS, GLYPH_W // 2:] = True
    bm.flags.writeable = False
    return bm


def word_ink(word: str) -> np.ndarray:
    """Boolean ink mask of a word, glyphs laid right to left with 1px overlap."""
    forms = shape_word(word)
    step = GLYPH_W - 1
    width = step * len(forms) + 1
    canvas = np.zeros((GLYPH_H, width), dtype=bool)
    for i, form in enumerate(forms):
        right = width - step * i
        canvas[:, right - GLYPH_W:right] |= glyph_bitmap(form)
    return canvas


def render_synthetic(word: str, rng: np.random.Generator, height: int = 32, width: int = 128,
                     sample_id: str = "") -> Sample:
    """Render a word to a noisy grayscale image of the given geometry."""
    ink = word_ink(word)
    bg = rng.uniform(200.0, 240.0)
    fg = rng.uniform(10.0, 60.0)
    img = np.where(ink, fg, bg).round().astype(np.uint8)
    img = imaging.fit_to(img, height, width, fill=bg)
    noisy = img + rng.normal(0.0, 6.0, size=img.shape)
    return Sample(np.clip(np.rint(noisy), 0, 255).astype(np.uint8), word, sample_id)


def random_word(rng: np.random.Generator, min_len: int = 1, max_len: int = 8,
                letters: Sequence[int] | None = None) -> str:
    letters = supported_letters() if letters is None else letters
    n = int(rng.integers(min_len, max_len + 1))
    return "".join(chr(letters[i]) for i in rng.integers(0, len(letters), size=n))


# -- PGM -------------------------------------------------------------------------

def write_pgm(path, img: np.ndarray) -> None:
    img = np.asarray(img)
    if img.ndim != 2 or img.dtype != np.uint8:
        raise UnsupportedImageFormat(f"{path}: need a 2-D uint8 array, got {img.dtype} {img.shape}")
    h, w = img.shape
    with open(path, "wb") as fh:
        fh.write(b"P5\n%d %d\n255\n" % (w, h))
        fh.write(np.ascontiguousarray(img).tobytes())


def read_pgm(path) -> np.ndarray:
    """Read a binary (P5) PGM with maxval 255."""
    with open(path, "rb") as fh:
        data = fh.read()
    tokens, pos = [], 0
    while len(tokens) < 4:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if data[pos:pos + 1] == b"#":
            while pos < len(data) and data[pos:pos + 1] != b"\n":
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace():
            pos += 1
        if start == pos:
            raise UnsupportedImageFormat(f"{path}: truncated PGM header")
        tokens.append(data[start:pos])
    if tokens[0] != b"P5":
        raise UnsupportedImageFormat(f"{path}: not a binary PGM (magic {tokens[0]!r})")
    try:
        w, h, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise UnsupportedImageFormat(f"{path}: bad PGM header") from None
    if maxval != 255:
        raise UnsupportedImageFormat(f"{path}: maxval {maxval} unsupported (need 255)")
    pos += 1  # single whitespace after maxval
    body = data[pos:pos + w * h]
    if len(body) != w * h:
        raise UnsupportedImageFormat(f"{path}: expected {w * h} pixel bytes, got {len(body)}")
    return np.frombuffer(body, dtype=np.uint8).reshape(h, w).copy()


# -- manifests -------------------------------------------------------------------

def load_manifest(path) -> list[Sample]:
    """Load every sample of a manifest; the sample id is its relative image path."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"manifest not found: {path}")
    root = path.parent
    samples = []
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            rel, sep, label = line.partition("\t")
            if not sep:
                raise MalformedManifest(path, lineno, "missing tab separator")
            if not rel or not label or "\t" in label:
                raise MalformedManifest(path, lineno, "expected '<image path>\\t<label>'")
            img_path = root / rel
            if not img_path.exists():
                raise FileNotFoundError(f"{path}:{lineno}: image not found: {img_path}")
            samples.append(Sample(read_pgm(img_path), label, rel))
    return samples


def write_manifest(out_dir, samples: Iterable[Sample], name: str = "manifest.tsv") -> Path:
    """Write images under ``out_dir/images`` and the manifest next to them."""
    out_dir = Path(out_dir)
    (out_dir / "images").mkdir(parents=True, exist_ok=True)
    lines = []
    for s in samples:
        rel = f"images/{s.id}.pgm"
        write_pgm(out_dir / rel, s.image)
        lines.append(f"{rel}\t{s.label}\n")
    manifest = out_dir / name
    with open(manifest, "w", encoding="utf-8", newline="\n") as fh:
        fh.writelines(lines)
    return manifest


def split_code(split: str) -> int:
    return zlib.crc32(split.encode("utf-8"))


def synth_samples(n: int, seed: int, words: Sequence[str], split: str = "train",
                  height: int = 32, width: int = 128) -> list[Sample]:
    """Draw n words uniformly from ``words`` and render them.

    Word choice uses the stream (seed, split); each image uses its own stream
    (seed, split, index), so a sample does not depend on how many come before it.
    """
    if n and not words:
        raise ValueError("no words to render")
    code = split_code(split)
    pick = np.random.default_rng([seed, code])
    chosen = [words[i] for i in pick.integers(0, len(words), size=n)] if n else []
    return [render_synthetic(w, np.random.default_rng([seed, code, i]), height, width,
                             f"{split}-{i:06d}")
            for i, w in enumerate(chosen)]


def synth_dataset(out_dir, n: int, seed: int, words: Sequence[str], split: str = "train",
                  height: int = 32, width: int = 128) -> Path:
    """Render a dataset and write manifest.tsv, images/ and vocab.tsv into out_dir."""
    samples = synth_samples(n, seed, words, split, height, width)
    manifest = write_manifest(out_dir, samples)
    vocab = build_vocab(words)
    vocab.save(os.path.join(out_dir, "vocab.tsv"))
    return manifest


def read_lexicon(path) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return [w for line in fh for w in line.split()]
