"""Positional glyph labels for Urdu words.

Each base character of a word is resolved to one of four contextual forms
(isolated, initial, medial, final) with the Arabic joining rules, and every
(base, form) pair becomes its own output class.  Combining marks are
transparent: they neither join nor break joins and are dropped from the
label sequence.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ._joining import JOINING_TYPES
from .errors import ParseqError

ARABIC_BLOCK = range(0x0600, 0x0700)


class EmptyWord(ParseqError):
    pass


class InvalidWord(ParseqError):
    pass


class InvalidId(ParseqError):
    pass


class EmptyCorpus(ParseqError):
    pass


class VocabFormatError(ParseqError):
    pass


class JoiningClass(enum.Enum):
    DUAL = "DualJoining"
    RIGHT = "RightJoining"
    NON = "NonJoining"
    TRANSPARENT = "Transparent"


class Position(enum.IntEnum):
    ISOLATED = 0
    INITIAL = 1
    MEDIAL = 2
    FINAL = 3

    @property
    def label(self) -> str:
        return self.name.capitalize()


# Join-causing (TATWEEL) shapes like a dual joiner; there are no left joiners
# in the block.
_UCD_TO_CLASS = {
    "D": JoiningClass.DUAL,
    "C": JoiningClass.DUAL,
    "R": JoiningClass.RIGHT,
    "T": JoiningClass.TRANSPARENT,
    "U": JoiningClass.NON,
}


def joining_class(cp: int) -> JoiningClass:
    """Joining behaviour of a codepoint; anything outside the table is NonJoining."""
    return _UCD_TO_CLASS[JOINING_TYPES.get(cp, "U")]


@dataclass(frozen=True, order=True)
class GlyphForm:
    base: int
    position: Position

    def __post_init__(self):
        jc = joining_class(self.base)
        if jc is JoiningClass.TRANSPARENT:
            raise ValueError(f"U+{self.base:04X} is a combining mark")
        if jc is JoiningClass.RIGHT and self.position in (Position.INITIAL, Position.MEDIAL):
            raise ValueError(f"right-joining U+{self.base:04X} cannot be {self.position.label}")
        if jc is JoiningClass.NON and self.position is not Position.ISOLATED:
            raise ValueError(f"non-joining U+{self.base:04X} cannot be {self.position.label}")

    def __str__(self) -> str:
        return f"U+{self.base:04X}.{self.position.label}"


def legal_positions(cp: int) -> tuple[Position, ...]:
    jc = joining_class(cp)
    if jc is JoiningClass.DUAL:
        return tuple(Position)
    if jc is JoiningClass.RIGHT:
        return (Position.ISOLATED, Position.FINAL)
    if jc is JoiningClass.NON:
        return (Position.ISOLATED,)
    return ()


def _joins_left(jc: JoiningClass) -> bool:
    # can connect to the following (visually leftward) character
    return jc is JoiningClass.DUAL


def _joins_right(jc: JoiningClass) -> bool:
    return jc in (JoiningClass.DUAL, JoiningClass.RIGHT)


def shape_word(text: str) -> list[GlyphForm]:
    """Resolve every non-mark character of a single word to its positional form.

    Args:
        text: one word in logical order, no whitespace.

    Returns:
        One GlyphForm per non-transparent codepoint, in logical order.

    Raises:
        InvalidWord: the text contains whitespace.
        EmptyWord: nothing is left once combining marks are stripped.
    """
    if any(ch.isspace() for ch in text):
        raise InvalidWord(f"expected a single word, got {text!r}")
    bases = [ord(ch) for ch in text if joining_class(ord(ch)) is not JoiningClass.TRANSPARENT]
    if not bases:
        raise EmptyWord(f"no base characters in {text!r}")
    classes = [joining_class(cp) for cp in bases]
    forms = []
    for i, (cp, jc) in enumerate(zip(bases, classes)):
        prev_joins = i > 0 and _joins_left(classes[i - 1]) and _joins_right(jc)
        next_joins = i + 1 < len(bases) and _joins_left(jc) and _joins_right(classes[i + 1])
        if prev_joins and next_joins:
            pos = Position.MEDIAL
        elif prev_joins:
            pos = Position.FINAL
        elif next_joins:
            pos = Position.INITIAL
        else:
            pos = Position.ISOLATED
        forms.append(GlyphForm(cp, pos))
    return forms


SPECIALS = ("PAD", "BOS", "EOS", "UNK")
PAD, BOS, EOS, UNK = range(4)


@dataclass(frozen=True)
class GlyphVocabulary:
    """Dense id assignment for glyph forms; ids 0..3 are PAD, BOS, EOS, UNK."""

    entries: tuple[GlyphForm, ...]
    index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index = {form: i + len(SPECIALS) for i, form in enumerate(self.entries)}
        if len(index) != len(self.entries):
            raise ValueError("duplicate glyph forms in vocabulary")
        object.__setattr__(self, "index", index)

    def __len__(self) -> int:
        return len(SPECIALS) + len(self.entries)

    def id_of(self, form: GlyphForm) -> int:
        return self.index.get(form, UNK)

    def form_of(self, idx: int) -> GlyphForm | None:
        """The glyph form for an id, or None for a special token."""
        if not 0 <= idx < len(self):
            raise InvalidId(f"id {idx} outside vocabulary of size {len(self)}")
        if idx < len(SPECIALS):
            return None
        return self.entries[idx - len(SPECIALS)]

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.dumps())

    def dumps(self) -> str:
        lines = [f"-\t{name}\t{i}" for i, name in enumerate(SPECIALS)]
        for form in self.entries:
            lines.append(f"{form.base:04X}\t{form.position.label}\t{self.index[form]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, path) -> GlyphVocabulary:
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read())

    @classmethod
    def loads(cls, text: str) -> GlyphVocabulary:
        positions = {p.label: p for p in Position}
        entries = []
        for lineno, line in enumerate(text.splitlines(), 1):
            parts = line.split("\t")
            if len(parts) != 3:
                raise VocabFormatError(f"line {lineno}: expected 3 tab-separated fields")
            cp, name, idx = parts
            if int(idx) != lineno - 1:
                raise VocabFormatError(f"line {lineno}: ids must be dense and ordered")
            if lineno <= len(SPECIALS):
                if cp != "-" or name != SPECIALS[lineno - 1]:
                    raise VocabFormatError(f"line {lineno}: expected special {SPECIALS[lineno - 1]}")
                continue
            try:
                entries.append(GlyphForm(int(cp, 16), positions[name]))
            except (KeyError, ValueError) as exc:
                raise VocabFormatError(f"line {lineno}: {exc}") from None
        return cls(tuple(entries))


def build_vocab(corpus: Iterable[str]) -> GlyphVocabulary:
    """Collect every glyph form seen in the corpus, sorted by (base, position)."""
    forms = set()
    n_words = 0
    for word in corpus:
        n_words += 1
        forms.update(shape_word(word))
    if n_words == 0:
        raise EmptyCorpus("cannot build a vocabulary from an empty corpus")
    return GlyphVocabulary(tuple(sorted(forms)))


def full_vocab(codepoints: Iterable[int] = ARABIC_BLOCK) -> GlyphVocabulary:
    """Every legal form of every non-mark codepoint given."""
    forms = [GlyphForm(cp, pos) for cp in codepoints for pos in legal_positions(cp)]
    return GlyphVocabulary(tuple(sorted(forms)))


def encode(text: str, vocab: GlyphVocabulary) -> list[int]:
    return [vocab.id_of(form) for form in shape_word(text)]


def decode(ids: Sequence[int], vocab: GlyphVocabulary) -> str:
    """Map class ids back to base characters; specials are dropped."""
    chars = []
    for idx in ids:
        form = vocab.form_of(int(idx))
        if form is not None:
            chars.append(chr(form.base))
    return "".join(chars)


def supported_letters() -> list[int]:
    """Non-mark codepoints of the Arabic block, usable in generated words."""
    return [cp for cp in sorted(JOINING_TYPES) if joining_class(cp) is not JoiningClass.TRANSPARENT]
