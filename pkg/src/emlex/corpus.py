"""Loading documents and splitting them into position-preserving tokens."""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass, field
from pathlib import Path

from .lexicon import APOSTROPHES, Lexicon, fold, unify_apostrophes

WORD, PUNCT, NUMBER = "Word", "Punct", "Number"

LEADING_APOSTROPHE = "LeadingApostrophe"
INTERNAL_APOSTROPHE = "InternalApostrophe"
TRAILING_APOSTROPHE = "TrailingApostrophe"
INTERNAL_HYPHEN = "InternalHyphen"
CAPITALIZED = "Capitalized"
ALL_CAPS = "AllCaps"

FLAG_ORDER = (LEADING_APOSTROPHE, INTERNAL_APOSTROPHE, TRAILING_APOSTROPHE,
              INTERNAL_HYPHEN, CAPITALIZED, ALL_CAPS)

PAGE_BREAK = "\f"

_L = r"[^\W\d_]"
_A = "['‘’]"
_TOKEN_RE = re.compile(
    rf"(?P<word>{_L}+(?:(?:{_A}|-){_L}+)*)|(?P<num>\d+)|(?P<other>\S)")
_HYPHEN_RE = re.compile(rf"{_L}-{_L}")
_APOS_BETWEEN_RE = re.compile(rf"{_L}{_A}{_L}")


class CorpusError(Exception):
    pass


class EmptyDocument(CorpusError):
    pass


class DecodeError(CorpusError):
    def __init__(self, path, offset: int):
        super().__init__(f"{path}: invalid UTF-8 at byte offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class SourceDocument:
    text: str
    id: str
    meta: dict[str, str] = field(default_factory=dict, compare=False)


@dataclass(frozen=True, slots=True)
class Token:
    """A slice of a document.

    ``span`` holds UTF-8 byte offsets into the document text; ``chars`` the
    same slice in code points, for indexing Python strings.
    """

    surface: str
    span: tuple[int, int]
    kind: str
    flags: frozenset[str] = frozenset()
    chars: tuple[int, int] = (0, 0)

    @property
    def start(self) -> int:
        return self.span[0]

    @property
    def end(self) -> int:
        return self.span[1]

    @property
    def is_word(self) -> bool:
        return self.kind == WORD

    @property
    def form(self) -> str:
        """Surface with curly apostrophes mapped to U+0027."""
        return unify_apostrophes(self.surface)

    @property
    def key(self) -> str:
        return fold(self.surface)

    @property
    def bare(self) -> str:
        """Folded form without leading/trailing apostrophes."""
        return self.key.strip("'")

    @property
    def letters(self) -> str:
        return "".join(c for c in self.surface if c.isalpha())

    @property
    def apostrophes(self) -> str:
        """Apostrophe code points in the surface, in order."""
        return "".join(c for c in self.surface if c in APOSTROPHES)

    def flag_string(self) -> str:
        return "|".join(f for f in FLAG_ORDER if f in self.flags)


def load_document(path: str | Path, id: str | None = None,
                  latin1_fallback: bool = False) -> SourceDocument:
    path = Path(path)
    data = path.read_bytes()
    if not data:
        raise EmptyDocument(f"{path}: empty document")
    meta = {"source": str(path), "encoding": "utf-8"}
    try:
        text = data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        if not latin1_fallback:
            raise DecodeError(path, exc.start) from None
        text = data.decode("latin-1")
        meta["encoding"] = "latin-1"
        meta["decode_fallback"] = f"invalid UTF-8 at byte {exc.start}"
    text = text.replace("\r\n", "\n").replace("\r", "\n")
    if not text:
        raise EmptyDocument(f"{path}: empty document")
    return SourceDocument(text=text, id=id if id is not None else path.stem, meta=meta)


def _word_spans(text: str):
    for m in _TOKEN_RE.finditer(text):
        if m.lastgroup == "word":
            yield m.start(), m.end()


def strip_catchwords(doc: SourceDocument, page_break_marker: str = PAGE_BREAK) -> SourceDocument:
    """Drop the catchword repeated at the top of each page.

    When the first word after a page break equals the last word before it,
    or is a tail of it ("religious" / "ous"), that first word and the
    whitespace after it are removed.
    """
    if not page_break_marker or page_break_marker not in doc.text:
        return doc
    pages = doc.text.split(page_break_marker)
    removed = []
    offset = len(pages[0]) + len(page_break_marker)
    for i in range(1, len(pages)):
        prev_words = list(_word_spans(pages[i - 1]))
        first = next(_word_spans(pages[i]), None)
        if prev_words and first:
            ps, pe = prev_words[-1]
            last = fold(pages[i - 1][ps:pe])
            fs, fe = first
            head = fold(pages[i][fs:fe])
            if head == last or (len(head) >= 2 and last.endswith(head)):
                end = fe
                while end < len(pages[i]) and pages[i][end] in " \t":
                    end += 1
                removed.append(f"{pages[i][fs:fe]}@{offset + fs}")
                pages[i] = pages[i][:fs] + pages[i][end:]
        offset += len(pages[i]) + len(page_break_marker)
    if not removed:
        return doc
    meta = dict(doc.meta)
    meta["catchwords_removed"] = ";".join(removed)
    return SourceDocument(text=page_break_marker.join(pages), id=doc.id, meta=meta)


@functools.lru_cache(maxsize=65536)
def _word_flags(surface: str) -> frozenset[str]:
    flags = set()
    if surface[0] in APOSTROPHES:
        flags.add(LEADING_APOSTROPHE)
    if surface[-1] in APOSTROPHES and len(surface) > 1:
        flags.add(TRAILING_APOSTROPHE)
    if _APOS_BETWEEN_RE.search(surface):
        flags.add(INTERNAL_APOSTROPHE)
    if _HYPHEN_RE.search(surface):
        flags.add(INTERNAL_HYPHEN)
    letters = [c for c in surface if c.isalpha()]
    if letters[0].isupper():
        flags.add(CAPITALIZED)
        if len(letters) > 1 and all(c.isupper() for c in letters):
            flags.add(ALL_CAPS)
    return frozenset(flags)


def _is_letter(ch: str) -> bool:
    return ch.isalpha()


def tokenize(doc: SourceDocument | str, contractions: Lexicon | None = None) -> list[Token]:
    """Split a document into Word, Number and Punct tokens.

    Apostrophes between letters, and hyphens between letters, stay inside
    the word.  A trailing apostrophe attaches to the word before it.  A
    leading apostrophe attaches when the resulting form is a known
    contraction ('tis, 'twas); otherwise it attaches unless it is U+2018,
    which outside a known contraction reads as an opening quote.
    """
    text = doc.text if isinstance(doc, SourceDocument) else doc
    raw: list[tuple[int, int, str]] = []
    append = raw.append
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup
        s, e = m.span()
        if kind == "word":
            if e < len(text) and text[e] in APOSTROPHES:
                e += 1
            if raw and raw[-1][2] == PUNCT and raw[-1][1] == s and text[s - 1] in APOSTROPHES:
                ps = s - 1
                before_ok = ps == 0 or not _is_letter(text[ps - 1])
                if before_ok and _attach_leading(text[ps:e], text[ps], contractions):
                    raw.pop()
                    s = ps
            append((s, e, WORD))
        elif kind == "num":
            append((s, e, NUMBER))
        else:
            if raw and raw[-1][1] > s:
                continue  # trailing apostrophe already taken by the previous word
            append((s, e, PUNCT))

    tokens = []
    ascii_text = text.isascii()
    cpos = bpos = 0
    for s, e, kind in raw:
        surface = text[s:e]
        if ascii_text:
            bs, be = s, e
        else:
            bs = bpos + len(text[cpos:s].encode("utf-8"))
            be = bs + len(surface.encode("utf-8"))
            cpos, bpos = e, be
        flags = _word_flags(surface) if kind == WORD else frozenset()
        tokens.append(Token(surface, (bs, be), kind, flags, (s, e)))
    return tokens


def _attach_leading(form: str, apostrophe: str, contractions: Lexicon | None) -> bool:
    if contractions is not None and form in contractions:
        return True
    return apostrophe != "‘"


def word_tokens(tokens: list[Token]) -> list[Token]:
    return [t for t in tokens if t.kind == WORD]


def word_count(tokens: list[Token]) -> int:
    """Corpus word total: the number of Word tokens."""
    return sum(1 for t in tokens if t.kind == WORD)


def gap_before(text: str, tokens: list[Token], i: int) -> str:
    prev_end = tokens[i - 1].chars[1] if i else 0
    return text[prev_end:tokens[i].chars[0]]


def tokens_tsv(tokens: list[Token]) -> str:
    lines = ["index\tstart\tend\tkind\tflags\tsurface"]
    for i, t in enumerate(tokens):
        lines.append(f"{i}\t{t.start}\t{t.end}\t{t.kind}\t{t.flag_string()}\t{t.surface}")
    return "\n".join(lines) + "\n"
