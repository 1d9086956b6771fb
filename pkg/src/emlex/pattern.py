"""Token-sequence queries, KWIC concordances and affix inquiries.

Query syntax, one item per whitespace-separated chunk::

    you            literal word, case-insensitive
    <N>            part of speech (needs an annotated corpus)
    <LETTERS+16>   a word of exactly 16 letters
    <^dis>         a word starting with "dis"
    <ness$>        a word ending in "ness"
"""

from __future__ import annotations

import functools
import re
from collections import Counter
from dataclasses import dataclass, field

from .corpus import Token
from .lexicon import fold
from .report import Report


class PatternSyntaxError(ValueError):
    def __init__(self, position: int, expected: str):
        super().__init__(f"position {position}: expected {expected}")
        self.position = position
        self.expected = expected


class MissingAnnotations(ValueError):
    pass


def _letters(token: Token) -> str:
    return _alpha(token.surface)


@dataclass(frozen=True)
class Literal:
    word: str

    def matches(self, token: Token, pos_tags=(), form: str | None = None) -> bool:
        if token.is_word:
            target = fold(form) if form is not None else token.bare
            return target == fold(self.word).strip("'")
        return token.surface == self.word

    def __str__(self):
        return self.word


@dataclass(frozen=True)
class Pos:
    tag: str

    def matches(self, token: Token, pos_tags=(), form: str | None = None) -> bool:
        return self.tag in pos_tags

    def __str__(self):
        return f"<{self.tag}>"


@dataclass(frozen=True)
class Length:
    n: int

    def matches(self, token: Token, pos_tags=(), form: str | None = None) -> bool:
        return token.is_word and len(_letters(token)) == self.n

    def __str__(self):
        return f"<LETTERS+{self.n}>"


@dataclass(frozen=True)
class PrefixIs:
    prefix: str

    def matches(self, token: Token, pos_tags=(), form: str | None = None) -> bool:
        if not token.is_word:
            return False
        letters = _alpha(form) if form is not None else _letters(token)
        return len(letters) > len(self.prefix) and letters.startswith(self.prefix.casefold())

    def __str__(self):
        return f"<^{self.prefix}>"


@dataclass(frozen=True)
class SuffixIs:
    suffix: str

    def matches(self, token: Token, pos_tags=(), form: str | None = None) -> bool:
        if not token.is_word:
            return False
        letters = _alpha(form) if form is not None else _letters(token)
        return len(letters) > len(self.suffix) and letters.endswith(self.suffix.casefold())

    def __str__(self):
        return f"<{self.suffix}$>"


@functools.lru_cache(maxsize=65536)
def _alpha(form: str) -> str:
    return "".join(c for c in form if c.isalpha()).casefold()


TokenConstraint = Literal | Pos | Length | PrefixIs | SuffixIs


@dataclass(frozen=True)
class Pattern:
    items: tuple[TokenConstraint, ...]

    def __str__(self):
        return " ".join(str(i) for i in self.items)

    @property
    def uses_pos(self) -> bool:
        return any(isinstance(i, Pos) for i in self.items)


_ITEM_RE = re.compile(r"\S+")
_AFFIX_RE = re.compile(r"[^\W\d_]+")
_TAG_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_WORD_RE = re.compile(r"[^\s<>]+")


def compile_pattern(expr: str) -> Pattern:
    items: list[TokenConstraint] = []
    pos = 0
    n = len(expr)
    while True:
        while pos < n and expr[pos].isspace():
            pos += 1
        if pos >= n:
            break
        if expr[pos] == "<":
            close = expr.find(">", pos)
            if close < 0:
                raise PatternSyntaxError(n, "'>'")
            body = expr[pos + 1:close]
            items.append(_bracket(body, pos + 1))
            pos = close + 1
            if pos < n and not expr[pos].isspace():
                raise PatternSyntaxError(pos, "whitespace between items")
        else:
            m = _WORD_RE.match(expr, pos)
            if not m:
                raise PatternSyntaxError(pos, "a word")
            items.append(Literal(m.group(0)))
            pos = m.end()
            if pos < n and not expr[pos].isspace():
                raise PatternSyntaxError(pos, "whitespace between items")
    if not items:
        raise PatternSyntaxError(0, "at least one item")
    return Pattern(tuple(items))


def _bracket(body: str, at: int) -> TokenConstraint:
    if body.upper().startswith("LETTERS+"):
        num = body[len("LETTERS+"):]
        if not num.isdigit() or int(num) < 1:
            raise PatternSyntaxError(at + len("LETTERS+"), "a positive letter count")
        return Length(int(num))
    if body.startswith("^"):
        if not _AFFIX_RE.fullmatch(body[1:]):
            raise PatternSyntaxError(at + 1, "letters after '^'")
        return PrefixIs(body[1:])
    if body.endswith("$"):
        if not _AFFIX_RE.fullmatch(body[:-1]):
            raise PatternSyntaxError(at, "letters before '$'")
        return SuffixIs(body[:-1])
    if not _TAG_RE.fullmatch(body):
        raise PatternSyntaxError(at, "a part-of-speech tag, LETTERS+N, ^prefix or suffix$")
    return Pos(body)


@dataclass(frozen=True)
class Match:
    start: int
    end: int
    doc_id: str = ""
    tokens: tuple[Token, ...] = field(default=(), compare=False, repr=False)
    text: str = field(default="", compare=False, repr=False)

    @property
    def surface(self) -> str:
        a, b = self.tokens[self.start].chars[0], self.tokens[self.end - 1].chars[1]
        return self.text[a:b]


@dataclass(frozen=True)
class ConcordanceLine:
    left: str
    key: str
    right: str
    location: tuple[str, int]

    def display(self, width: int = 40) -> str:
        left = " ".join(self.left.split())
        right = " ".join(self.right.split())
        left = left[-width:].rjust(width)
        return f"{left}  {' '.join(self.key.split())}  {right[:width]}".rstrip()


def locate(pattern: Pattern, tokens, annotations=None, doc_id: str = "",
           text: str = "", normalized: bool = False) -> list[Match]:
    """All non-overlapping, leftmost matches of ``pattern`` in ``tokens``.

    ``annotations`` (an AnnotationIndex) supplies parts of speech, and with
    ``normalized=True`` the modern forms that literals and affixes are then
    compared against.
    """
    tokens = tuple(tokens)
    if pattern.uses_pos and annotations is None:
        raise MissingAnnotations("pattern uses a part-of-speech constraint; annotate the corpus first")
    if normalized and annotations is None:
        raise MissingAnnotations("normalized matching needs an annotated corpus")
    m = len(pattern.items)
    n = len(tokens)
    tags = annotations.pos_tags if annotations is not None else None
    forms = annotations.normalized if (normalized and annotations is not None) else None

    def ok(item, i):
        return item.matches(tokens[i],
                            tags.get(i, ()) if tags is not None else (),
                            forms.get(i) if forms is not None else None)

    first = pattern.items[0]
    if isinstance(first, Literal) and forms is None:
        want = fold(first.word).strip("'")
        starts = [i for i, t in enumerate(tokens)
                  if (t.bare == want if t.is_word else t.surface == first.word)]
    else:
        starts = [i for i in range(n) if ok(first, i)]

    out: list[Match] = []
    next_free = 0
    for i in starts:
        if i < next_free or i + m > n:
            continue
        if all(ok(item, i + k) for k, item in enumerate(pattern.items[1:], 1)):
            out.append(Match(i, i + m, doc_id, tokens, text))
            next_free = i + m
    return out


def kwic(match: Match, width: int) -> ConcordanceLine:
    """Concordance line with ``width`` tokens of context on each side.

    left + key + right is the exact source slice, gaps included.
    """
    if width < 0:
        raise ValueError("width must be >= 0")
    toks, text = match.tokens, match.text
    key_a, key_b = toks[match.start].chars[0], toks[match.end - 1].chars[1]
    if width == 0:
        left = right = ""
    else:
        lo = max(0, match.start - width)
        hi = min(len(toks), match.end + width)
        left = text[toks[lo].chars[0]:key_a] if lo < match.start else ""
        right = text[key_b:toks[hi - 1].chars[1]] if hi > match.end else ""
    return ConcordanceLine(left, text[key_a:key_b], right, (match.doc_id, match.start))


@dataclass
class AffixReport:
    kind: str
    affix: str
    counts: list[tuple[str, int]]

    @property
    def distinct(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(c for _, c in self.counts)

    @property
    def forms(self) -> list[str]:
        return [f for f, _ in self.counts]

    def to_report(self, provenance: str = "") -> Report:
        mark = f"^{self.affix}" if self.kind == "prefix" else f"{self.affix}$"
        rows = [[f, c] for f, c in self.counts]
        rows.append(["TOTAL", self.total])
        return Report(f"Words matching {mark}: {self.distinct} forms, {self.total} occurrences",
                      ["form", "occurrences"], rows, provenance)


def affix_query(kind: str, affix: str, tokens, forms: dict[int, str] | None = None) -> AffixReport:
    """Group Word tokens whose letters start (prefix) or end (suffix) with
    ``affix``.  A word is never counted as its own affix."""
    if kind not in ("prefix", "suffix"):
        raise ValueError(f"kind must be 'prefix' or 'suffix', not {kind!r}")
    if not affix or not _AFFIX_RE.fullmatch(affix):
        raise ValueError(f"affix must be non-empty letters, got {affix!r}")
    item = PrefixIs(affix) if kind == "prefix" else SuffixIs(affix)
    counts: Counter[str] = Counter()
    for i, t in enumerate(tokens):
        form = forms.get(i) if forms is not None else None
        if item.matches(t, (), form):
            counts[fold(form) if form is not None else t.key] += 1
    ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return AffixReport(kind, affix, ordered)
