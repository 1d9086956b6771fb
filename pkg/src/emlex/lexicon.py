"""Dictionaries in the comma/plus entry format.

One entry per line::

    accrew,accrue,V+EN=accrue+Dic_EN_XVII+spelling
    displacency,N+EN=displeasure+Dic_EN_XVII+meaning
    'twou'd,<it,PRO+3+n+s> <would,V+PT+3+s>+UNAMB

The lemma is omitted when it equals the surface.  Multi-unit entries
(contractions) carry a part of speech per unit instead of one for the
whole entry.  Lines starting with ``#`` and blank lines are ignored.
"""

from __future__ import annotations

import functools
import gzip
import re
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

UNAMB = "UNAMB"
XVII = "Dic_EN_XVII"
SPELLING = "spelling"
MEANING = "meaning"
MODERN = "EN"

APOSTROPHES = "'‘’"
_APOS_TABLE = str.maketrans({"‘": "'", "’": "'"})

_NAME_RE = re.compile(r"[^\s+<>,=]+")
_VALUE_RE = re.compile(r"[^\s+<>,]+")
_POS_RE = re.compile(r"[^\s+<>,=]+")

# name=value pairs and bare names, after the part of speech
_SIMPLE_RE = re.compile(
    r"^([^,<]+),(?:([^,<>+]+),)?([^\s+<>,=]+)((?:\+[^\s+<>,=]+(?:=[^\s+<>,]+)?)*)$"
)


def unify_apostrophes(text: str) -> str:
    """Map curly single quotes onto U+0027."""
    return text.translate(_APOS_TABLE)


def fold(surface: str) -> str:
    """Lookup key: case-folded, apostrophes unified."""
    return unify_apostrophes(surface).casefold()


class LexiconError(Exception):
    pass


class ParseError(LexiconError):
    def __init__(self, line: int, column: int, reason: str):
        super().__init__(f"line {line}, column {column}: {reason}")
        self.line = line
        self.column = column
        self.reason = reason


class ValidationError(ParseError):
    pass


class ConflictError(LexiconError):
    pass


@dataclass(frozen=True)
class Feature:
    name: str
    value: str | None = None

    def __post_init__(self):
        if not self.name:
            raise ValueError("feature name must be non-empty")

    def __str__(self) -> str:
        return f"+{self.name}" if self.value is None else f"+{self.name}={self.value}"


@dataclass(frozen=True)
class Unit:
    form: str
    pos: str
    lemma: str = ""
    features: tuple[Feature, ...] = ()

    def __post_init__(self):
        if not self.lemma:
            object.__setattr__(self, "lemma", self.form)

    def __str__(self) -> str:
        head = self.form if self.lemma == self.form else f"{self.form},{self.lemma}"
        return f"<{head},{self.pos}{_tags(self.features)}>"


@dataclass(frozen=True)
class LexEntry:
    surface: str
    pos: str = ""
    lemma: str = ""
    features: tuple[Feature, ...] = ()
    expansion: tuple[Unit, ...] | None = None
    origin: str = ""
    line: int | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.lemma:
            object.__setattr__(self, "lemma", self.surface)

    def has(self, name: str) -> bool:
        for f in self.features:
            if f.name == name:
                return True
        return False

    def get(self, name: str) -> str | None:
        for f in self.features:
            if f.name == name:
                return f.value
        return None

    @property
    def unambiguous(self) -> bool:
        return self.has(UNAMB)

    @property
    def archaic(self) -> bool:
        return self.has(XVII)

    @property
    def modern(self) -> str | None:
        """Contemporary form for a 17th-century spelling entry, else None."""
        if self.has(XVII) and self.has(SPELLING):
            return self.get(MODERN)
        return None

    @property
    def analysis(self) -> tuple:
        return (self.lemma, self.pos, self.features, self.expansion)

    @property
    def key(self) -> tuple:
        """Identity used for de-duplication on merge (origin ignored)."""
        return (self.surface, self.lemma, self.pos, self.features, self.expansion)

    def expansion_text(self) -> str:
        if self.expansion:
            return " ".join(u.form for u in self.expansion)
        return self.surface


def _tags(features: Iterable[Feature]) -> str:
    return "".join(str(f) for f in features)


def format_entry(entry: LexEntry) -> str:
    """Canonical one-line form of an entry."""
    if entry.expansion:
        units = " ".join(str(u) for u in entry.expansion)
        return f"{entry.surface},{units}{_tags(entry.features)}"
    head = entry.surface if entry.lemma == entry.surface else f"{entry.surface},{entry.lemma}"
    return f"{head},{entry.pos}{_tags(entry.features)}"


class _LineParser:
    """Character scanner for one line; used for units and error reporting."""

    def __init__(self, text: str, lineno: int):
        self.text = text
        self.pos = 0
        self.lineno = lineno

    def fail(self, reason: str, at: int | None = None):
        col = (self.pos if at is None else at) + 1
        raise ParseError(self.lineno, col, reason)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_spaces(self):
        while self.peek() in (" ", "\t") and self.peek():
            self.pos += 1

    def read(self, regex: re.Pattern, what: str) -> str:
        m = regex.match(self.text, self.pos)
        if not m:
            self.fail(f"expected {what}")
        self.pos = m.end()
        return m.group(0)

    def tags(self, stop: str = "") -> tuple[Feature, ...]:
        out = []
        while self.peek() == "+":
            self.pos += 1
            if not _NAME_RE.match(self.text, self.pos):
                self.fail("malformed tag: empty feature name")
            name = self.read(_NAME_RE, "feature name")
            value = None
            if self.peek() == "=":
                self.pos += 1
                if not _VALUE_RE.match(self.text, self.pos):
                    self.fail(f"malformed tag: empty value for {name}")
                value = self.read(_VALUE_RE, "feature value")
            out.append(Feature(name, value))
        if self.peek() and self.peek() not in stop:
            self.fail(f"malformed tag: unexpected {self.peek()!r}")
        return tuple(out)

    def unit(self) -> Unit:
        start = self.pos
        self.pos += 1  # '<'
        close = self.text.find(">", self.pos)
        nxt = self.text.find("<", self.pos)
        if close < 0 or (0 <= nxt < close):
            self.fail("unclosed '<'", at=start)
        head, sep, _ = self.text[self.pos:close].partition("+")
        parts = head.split(",")
        if len(parts) not in (2, 3) or not all(parts):
            self.fail("unit must be <form,POS> or <form,lemma,POS>")
        form, pos = parts[0], parts[-1]
        lemma = parts[1] if len(parts) == 3 else ""
        if not _POS_RE.fullmatch(pos):
            self.fail(f"bad part of speech {pos!r}")
        self.pos += len(head)
        feats = self.tags(stop=">")
        if self.peek() != ">":
            self.fail("unclosed '<'", at=start)
        self.pos += 1
        return Unit(form=form, pos=pos, lemma=lemma, features=feats)

    def entry(self, origin: str) -> LexEntry:
        comma = self.text.find(",")
        if comma == 0:
            self.fail("empty surface")
        if comma < 0:
            self.fail("missing ',' after surface", at=len(self.text))
        surface = self.text[:comma]
        self.pos = comma + 1
        self.skip_spaces()
        if self.peek() == "<":
            units = []
            while self.peek() == "<":
                units.append(self.unit())
                self.skip_spaces()
            feats = self.tags()
            return LexEntry(surface=surface, features=feats, expansion=tuple(units),
                            origin=origin, line=self.lineno)
        rest = self.text[self.pos:]
        head = rest.split("+", 1)[0]
        parts = head.split(",")
        if len(parts) > 2:
            self.fail("too many ',' separated fields")
        if len(parts) == 2 and not parts[0]:
            self.fail("empty lemma")
        pos = parts[-1]
        if not pos:
            self.fail("missing part of speech", at=self.pos + len(head))
        if not _POS_RE.fullmatch(pos):
            self.fail(f"bad part of speech {pos!r}")
        lemma = parts[0] if len(parts) == 2 else ""
        self.pos += len(head)
        feats = self.tags()
        return LexEntry(surface=surface, lemma=lemma, pos=pos, features=feats,
                        origin=origin, line=self.lineno)


@functools.lru_cache(maxsize=4096)
def _parse_features(tagstr: str) -> tuple[Feature, ...]:
    if not tagstr:
        return ()
    out = []
    for chunk in tagstr[1:].split("+"):
        name, eq, value = chunk.partition("=")
        out.append(Feature(name, value if eq else None))
    return tuple(out)


def validate_entry(entry: LexEntry) -> None:
    if not entry.surface:
        raise ValidationError(entry.line or 0, 1, "empty surface")
    if not entry.pos and not entry.expansion:
        raise ValidationError(entry.line or 0, 1, "missing part of speech")
    if entry.archaic:
        kinds = [f for f in entry.features if f.name in (SPELLING, MEANING)]
        if len(kinds) != 1:
            raise ValidationError(
                entry.line or 0, 1,
                f"{XVII} entry {entry.surface!r} needs exactly one of +spelling / +meaning")
        if not entry.get(MODERN):
            raise ValidationError(
                entry.line or 0, 1, f"{XVII} entry {entry.surface!r} lacks +EN=<modern form>")


def parse_line(line: str, lineno: int = 1, origin: str = "") -> LexEntry:
    m = _SIMPLE_RE.match(line)
    if m:
        surface, lemma, pos, tagstr = m.groups()
        entry = LexEntry(surface=surface, lemma=lemma or "", pos=pos,
                         features=_parse_features(tagstr), origin=origin, line=lineno)
    else:
        entry = _LineParser(line, lineno).entry(origin)
    validate_entry(entry)
    return entry


def iter_entries(text: str, origin: str = "") -> Iterator[LexEntry]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        yield parse_line(line, lineno, origin)


class Lexicon:
    """Read-only collection of entries indexed by folded surface.

    Exact duplicates are collapsed; differing analyses of one surface are
    all kept.
    """

    def __init__(self, entries: Iterable[LexEntry] = (), name: str = ""):
        self.name = name
        self._entries: list[LexEntry] = []
        self._index: dict[str, list[LexEntry]] = {}
        self._keys: set[tuple] = set()
        self._add(entries)

    def _add(self, entries: Iterable[LexEntry]):
        seen = self._keys
        for e in entries:
            key = e.key
            if key in seen:
                continue
            seen.add(key)
            self._entries.append(e)
            self._index.setdefault(fold(e.surface), []).append(e)
        self.__dict__.pop("_lemmas", None)

    def _copy(self, name: str) -> "Lexicon":
        new = Lexicon(name=name)
        new._entries = list(self._entries)
        new._index = {k: list(v) for k, v in self._index.items()}
        new._keys = set(self._keys)
        return new

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[LexEntry]:
        return iter(self._entries)

    def __contains__(self, surface: str) -> bool:
        return fold(surface) in self._index

    def __repr__(self) -> str:
        return f"Lexicon({self.name!r}, {len(self)} entries)"

    def __eq__(self, other) -> bool:
        return isinstance(other, Lexicon) and self._entries == other._entries

    def lookup(self, surface: str) -> list[LexEntry]:
        hits = self._index.get(fold(surface), [])
        for e in hits:
            if e.unambiguous:
                return [e]
        return list(hits)

    def surfaces(self) -> set[str]:
        return set(self._index)

    def by_lemma(self, lemma: str) -> list[LexEntry]:
        """Entries whose lemma folds to ``lemma``; built on first use."""
        if not hasattr(self, "_lemmas"):
            index: dict[str, list[LexEntry]] = {}
            for e in self._entries:
                index.setdefault(fold(e.lemma), []).append(e)
            self._lemmas = index
        return self._lemmas.get(fold(lemma), [])


def parse_lexicon(text: str, origin: str = "") -> Lexicon:
    return Lexicon(iter_entries(text, origin), name=origin)


def lookup(lexicon: Lexicon, surface: str) -> list[LexEntry]:
    return lexicon.lookup(surface)


def merge(base: Lexicon, overlay: Lexicon, name: str | None = None) -> Lexicon:
    """Union of two lexicons; overlay entries sit beside base entries.

    Raises ConflictError when both sides hold an UNAMB entry for the same
    surface with different analyses.
    """
    for e in overlay:
        if not e.unambiguous:
            continue
        for b in base._index.get(fold(e.surface), []):
            if b.unambiguous and b.analysis != e.analysis:
                raise ConflictError(
                    f"conflicting UNAMB entries for {e.surface!r}: "
                    f"{format_entry(b)} vs {format_entry(e)}")
    label = name if name is not None else "+".join(n for n in (base.name, overlay.name) if n)
    merged = base._copy(label)
    merged._add(overlay)
    return merged


def read_text(path: str | Path) -> str:
    path = Path(path)
    if path.suffix == ".gz":
        with gzip.open(path, "rt", encoding="utf-8") as fh:
            return fh.read()
    return path.read_text(encoding="utf-8")


def load_lexicon(path: str | Path, origin: str | None = None) -> Lexicon:
    path = Path(path)
    name = origin if origin is not None else path.name.split(".")[0]
    return parse_lexicon(read_text(path), origin=name)


BUNDLED = {
    "base": "base_en.dic.gz",
    "xvii": "xvii_overlay.dic",
    "contractions": "contractions.dic",
}

_bundled_cache: dict[str, Lexicon] = {}


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("emlex") / "data" / BUNDLED[name]))


def bundled(name: str) -> Lexicon:
    """One of the shipped dictionaries: ``base``, ``xvii`` or ``contractions``."""
    if name not in _bundled_cache:
        _bundled_cache[name] = load_lexicon(bundled_path(name), origin=name)
    return _bundled_cache[name]
