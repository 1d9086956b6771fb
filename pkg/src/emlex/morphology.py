"""Rule cascade from 17th-century word forms to contemporary ones.

Every rule proposes a rewrite and checks it against a lexicon; a rewrite
that finds no entry is either dropped or kept as ``Noise``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .corpus import INTERNAL_HYPHEN, Token
from .lexicon import Feature, LexEntry, Lexicon, fold, merge, unify_apostrophes

FUSE_HYPHEN = "FuseHyphen"
FUSE_JUXTAPOSED = "FuseJuxtaposed"
IN_EN_SWAP = "InEnSwap"
CONTRACTION_DICT = "ContractionDict"
ELISION_RESTORE = "ElisionRestore"
INFLECTION = "InflectionEthEst"
DEGREE = "DegreeErEst"
OVERLAY_SPELLING = "OverlaySpelling"

# composition markers recorded in RewriteCandidate.steps
JUNCTION_MERGE = "JunctionMerge"
PRETERITE_T = "PreteriteT"

RULES = (CONTRACTION_DICT, FUSE_HYPHEN, IN_EN_SWAP, ELISION_RESTORE,
         INFLECTION, DEGREE, FUSE_JUXTAPOSED)

LEXICAL, RULE_VALIDATED, NOISE = "Lexical", "RuleValidated", "Noise"
_CONFIDENCE_RANK = {LEXICAL: 0, RULE_VALIDATED: 1, NOISE: 2}

VOWELS = set("aeiouy")

FUSION_WHITELIST = frozenset({
    ("some", "body"), ("every", "day"), ("for", "ever"), ("every", "one"),
    ("any", "one"), ("any", "thing"), ("often", "times"), ("like", "wise"),
    ("to", "day"), ("no", "body"), ("back", "wardness"),
})
_SELF_HOSTS = frozenset({"my", "thy", "your", "her", "him", "it", "our", "them", "one", "their"})
_SELF = frozenset({"self", "selves"})

DEFAULT_DEGREE_EXCEPTIONS = {"worser": ("bad", "comparative")}


class MorphologyError(ValueError):
    pass


class NotHyphenated(MorphologyError):
    pass


class NoApostrophe(MorphologyError):
    pass


@dataclass(frozen=True)
class RewriteCandidate:
    source: str
    result: str
    rule: str
    validated: bool
    confidence: str
    steps: tuple[str, ...] = ()
    entries: tuple[LexEntry, ...] = field(default=(), compare=False, repr=False)

    @property
    def edits(self) -> int:
        return edit_distance(fold(self.source), fold(self.result))

    def sort_key(self):
        return (_CONFIDENCE_RANK[self.confidence], self.edits, self.result)


@dataclass(frozen=True)
class LengthClass:
    letters: int


@dataclass(frozen=True)
class InflectionAnalysis:
    lemma: str
    person: int
    number: str
    tenses: tuple[str, ...]
    suffix: str
    modern: str


@dataclass(frozen=True)
class DegreeAnalysis:
    lemma: str
    degree: str
    modern: str
    irregular: bool = False


def edit_distance(a: str, b: str) -> int:
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def rank(candidates) -> list[RewriteCandidate]:
    """Lexical before RuleValidated before Noise; then fewer edits; then A-Z."""
    best: dict[tuple[str, str], RewriteCandidate] = {}
    for c in candidates:
        k = (c.result, c.rule)
        if k not in best or c.sort_key() < best[k].sort_key():
            best[k] = c
    return sorted(best.values(), key=RewriteCandidate.sort_key)


def resolve(form: str, lex: Lexicon) -> tuple[str, tuple[LexEntry, ...], bool] | None:
    """Check ``form`` against the lexicon.

    Returns (modern form, supporting entries, respelled) or None.  A form
    known only as an archaic spelling resolves to its modern spelling.
    """
    hits = lex.lookup(form)
    if not hits:
        return None
    for e in hits:
        if e.modern is None and not e.expansion:
            return e.surface, tuple(hits), False
    for e in hits:
        if e.modern is not None:
            return e.modern, tuple(hits), True
    return hits[0].expansion_text(), tuple(hits), False


def letter_length(form: str) -> LengthClass:
    return LengthClass(sum(1 for c in form if c.isalpha()))


def _swap(part: str) -> str | None:
    head = part[:2]
    if head.lower() == "in":
        return ("E" if head[0] == "I" else "e") + "n" + part[2:]
    if head.lower() == "en":
        return ("I" if head[0] == "E" else "i") + "n" + part[2:]
    return None


def _apostrophe_forms(form: str, lex: Lexicon, contractions: Lexicon | None = None):
    """Rule expansions of an apostrophe-bearing single form.

    Yields (result, entries, steps) for each validated expansion: suffix
    rules first, then elision restoration at the apostrophe.
    """
    low = form
    if low.endswith("'d") and len(low) > 2:
        stem = low[:-2]
        for cand in ([stem + "ed", stem + "d"] if stem.endswith("e") else [stem + "ed"]):
            r = resolve(cand, lex)
            if r:
                yield r[0], r[1], _elision_steps(r)
    if low.endswith("'t") and len(low) > 2:
        stem = low[:-2]
        r = _resolve_part(stem, lex, contractions)
        if r:
            yield f"{r[0]} it", r[1], (ELISION_RESTORE,)
        r = resolve(stem + "ed", lex)
        if r:
            yield r[0], r[1], _elision_steps(r) + (PRETERITE_T,)
    if low.endswith("'s") and len(low) > 2:
        r = resolve(low[:-2], lex)
        if r:
            yield r[0] + "'s", r[1], _elision_steps(r)
    if low.endswith("s'") and len(low) > 2:
        r = resolve(low[:-1], lex)
        if r:
            yield r[0] + "'", r[1], _elision_steps(r)
    if low.lower().startswith("'t") and len(low) > 3:
        r = resolve(low[2:], lex)
        if r:
            yield f"it {r[0]}", r[1], _elision_steps(r)
    for c in restore_elision(form, lex):
        yield c.result, c.entries, c.steps


def _elision_steps(r) -> tuple[str, ...]:
    return (ELISION_RESTORE, OVERLAY_SPELLING) if r[2] else (ELISION_RESTORE,)


def _resolve_part(part: str, lex: Lexicon, contractions: Lexicon | None):
    r = resolve(part, lex)
    if r:
        return r
    if contractions is not None:
        hits = contractions.lookup(part + "'")
        if hits:
            return hits[0].expansion_text(), tuple(hits), False
    return None


def restore_elision(form: str, lex: Lexicon) -> list[RewriteCandidate]:
    """Put back a single elided letter.

    At an apostrophe the letter replaces the apostrophe, 'e' first, then
    the other letters.  Without an apostrophe only an 'e' is tried, in
    front of a final r/n/l cluster (blustring -> blustering).
    """
    form = unify_apostrophes(form)
    e_first: list[RewriteCandidate] = []
    others: list[RewriteCandidate] = []
    sites = [i for i, c in enumerate(form) if c == "'"]
    tries: list[tuple[str, bool]] = []
    if sites:
        for i in sites:
            for letter in "eabcdfghijklmnopqrstuvwxyz":
                tries.append((form[:i] + letter + form[i + 1:], letter == "e"))
    else:
        m = re.search(r"[^aeiouy\W\d_]([rnl])(ing|ed|er|ers|est|s|y|ly|ess)$", form, re.I)
        if m:
            i = m.start(1)
            tries.append((form[:i] + "e" + form[i:], True))
    seen = set()
    for cand, is_e in tries:
        r = resolve(cand, lex)
        if not r or r[0] in seen:
            continue
        seen.add(r[0])
        c = RewriteCandidate(form, r[0], ELISION_RESTORE, True, RULE_VALIDATED,
                             _elision_steps(r), r[1])
        (e_first if is_e else others).append(c)
    return e_first + sorted(others, key=lambda c: c.result)


def fuse_hyphenated(token: Token | str, lex: Lexicon,
                    contractions: Lexicon | None = None) -> RewriteCandidate:
    """Join a hyphenated compound into one word and validate it.

    Tried in order: plain concatenation; concatenation with the apostrophe
    rules (over-stock'd); dropping a letter doubled across the hyphen
    (where-ever); in/en swap on a later element (pre-ingage), then on the
    whole.  With no validated form the bare concatenation comes back as
    Noise.
    """
    surface = token.surface if isinstance(token, Token) else token
    form = unify_apostrophes(surface)
    if isinstance(token, Token):
        hyphenated = INTERNAL_HYPHEN in token.flags
    else:
        hyphenated = re.search(r"[^\W\d_]-[^\W\d_]", form) is not None
    if not hyphenated:
        raise NotHyphenated(surface)
    parts = form.split("-")
    concat = "".join(parts)

    def attempt(cand: str, steps: tuple[str, ...]):
        r = resolve(cand, lex)
        if r:
            extra = (OVERLAY_SPELLING,) if r[2] else ()
            return r[0], r[1], steps + extra
        if "'" in cand:
            for res, entries, more in _apostrophe_forms(cand, lex, contractions):
                if " " not in res:
                    return res, entries, steps + more
        return None

    tries: list[tuple[str, tuple[str, ...]]] = [(concat, (FUSE_HYPHEN,))]
    merged = parts[0]
    did_merge = False
    for p in parts[1:]:
        if merged and p and merged[-1].lower() == p[0].lower():
            merged += p[1:]
            did_merge = True
        else:
            merged += p
    if did_merge:
        tries.append((merged, (FUSE_HYPHEN, JUNCTION_MERGE)))
    for j in range(1, len(parts)):
        swapped = _swap(parts[j])
        if swapped:
            tries.append(("".join(parts[:j] + [swapped] + parts[j + 1:]), (FUSE_HYPHEN, IN_EN_SWAP)))
    whole = _swap(concat)
    if whole:
        tries.append((whole, (FUSE_HYPHEN, IN_EN_SWAP)))

    for cand, steps in tries:
        got = attempt(cand, steps)
        if got:
            return RewriteCandidate(surface, got[0], FUSE_HYPHEN, True, RULE_VALIDATED,
                                    got[2], got[1])
    return RewriteCandidate(surface, concat, FUSE_HYPHEN, False, NOISE, (FUSE_HYPHEN,))


def fuse_juxtaposed(left: Token | str, right: Token | str, lex: Lexicon) -> RewriteCandidate | None:
    """Join two adjacent words written apart (my self -> myself).

    Whitelisted pairs come back as Lexical.  Any other pair whose halves
    are both words in their own right is Noise (not able -> notable).
    """
    lsurf = left.surface if isinstance(left, Token) else left
    rsurf = right.surface if isinstance(right, Token) else right
    lkey, rkey = fold(lsurf), fold(rsurf)
    source = f"{lsurf} {rsurf}"
    concat = unify_apostrophes(lsurf + rsurf)
    r = resolve(concat, lex)
    whitelisted = (lkey, rkey) in FUSION_WHITELIST or (lkey in _SELF_HOSTS and rkey in _SELF)
    if whitelisted:
        result = r[0] if r else concat.lower()
        return RewriteCandidate(source, result, FUSE_JUXTAPOSED, r is not None, LEXICAL,
                                (FUSE_JUXTAPOSED,), r[1] if r else ())
    if r is None:
        return None
    if lex.lookup(lsurf) and lex.lookup(rsurf):
        return RewriteCandidate(source, r[0], FUSE_JUXTAPOSED, True, NOISE,
                                (FUSE_JUXTAPOSED,), r[1])
    return RewriteCandidate(source, r[0], FUSE_JUXTAPOSED, True, RULE_VALIDATED,
                            (FUSE_JUXTAPOSED,), r[1])


def expand_contraction(token: Token | str, contractions: Lexicon,
                       lex: Lexicon) -> list[RewriteCandidate]:
    """Expand an apostrophe-marked form.

    Contraction dictionary hits come first and are Lexical; an UNAMB hit
    is returned alone.  Then the suffix rules ('d, 't, 's) and elision
    restoration, each checked against ``lex``.
    """
    surface = token.surface if isinstance(token, Token) else token
    form = unify_apostrophes(surface)
    if "'" not in form:
        raise NoApostrophe(surface)
    out: list[RewriteCandidate] = []
    hits = contractions.lookup(form)
    for e in hits:
        units = e.expansion or ()
        ok = all(lex.lookup(u.form) for u in units) if units else bool(lex.lookup(e.lemma))
        c = RewriteCandidate(surface, e.expansion_text(), CONTRACTION_DICT, ok, LEXICAL,
                             (CONTRACTION_DICT,), (e,))
        if e.unambiguous:
            return [c]
        out.append(c)
    for result, entries, steps in _apostrophe_forms(form, lex, contractions):
        out.append(RewriteCandidate(surface, result, ELISION_RESTORE, True, RULE_VALIDATED,
                                    steps, entries))
    return rank(out)


def swap_in_en(form: str, lex: Lexicon) -> RewriteCandidate | None:
    """in- <-> en- prefix variation (encrease -> increase)."""
    if len(form) < 4:
        return None
    swapped = _swap(form)
    if swapped is None:
        return None
    r = resolve(swapped, lex)
    if r is None:
        return None
    steps = (IN_EN_SWAP, OVERLAY_SPELLING) if r[2] else (IN_EN_SWAP,)
    return RewriteCandidate(form, r[0], IN_EN_SWAP, True, RULE_VALIDATED, steps, r[1])


def _root_variants(root: str) -> list[str]:
    out = [root, root + "e"]
    if len(root) > 2 and root[-1] == root[-2] and root[-1] not in VOWELS:
        out.append(root[:-1])
    if root.endswith("i"):
        out.append(root[:-1] + "y")
    return out


def _first_with_pos(form: str, lex: Lexicon, pos: set[str]) -> LexEntry | None:
    for e in lex.lookup(form):
        if e.pos in pos and e.modern is None:
            return e
    return None


def _find_form(lex: Lexicon, lemma: str, pos: set[str], feats: set[str]) -> str | None:
    for e in lex.by_lemma(lemma):
        if e.pos in pos and feats <= {f.name for f in e.features} and e.modern is None:
            return e.surface
    return None


def analyze_archaic_inflection(form: str, lex: Lexicon) -> InflectionAnalysis | None:
    """-eth/-th (3rd person) and -est/-st (2nd person) verb endings."""
    low = fold(form)
    for suffix, person in (("eth", 3), ("est", 2), ("th", 3), ("st", 2)):
        if not low.endswith(suffix) or len(low) <= len(suffix) + 2:
            continue
        root = low[: -len(suffix)]
        for variant in _root_variants(root):
            e = _first_with_pos(variant, lex, {"V"})
            if e is None:
                continue
            lemma = e.lemma
            preterite = e.has("PT")
            if person == 3 and not preterite:
                modern = _find_form(lex, lemma, {"V"}, {"PR", "3"}) or lemma
            else:
                modern = e.surface
            return InflectionAnalysis(lemma, person, "s", ("present", "preterit"), suffix, modern)
    return None


def analyze_degree(form: str, lex: Lexicon,
                   exceptions: dict[str, tuple[str, str]] | None = None) -> DegreeAnalysis | None:
    """Comparative -er and superlative -est on adjectives and adverbs."""
    low = fold(form)
    table = DEFAULT_DEGREE_EXCEPTIONS if exceptions is None else exceptions
    if low in table:
        lemma, degree = table[low]
        feat = "CMP" if degree == "comparative" else "SUP"
        modern = _find_form(lex, lemma, {"A", "ADV"}, {feat}) or lemma
        return DegreeAnalysis(lemma, degree, modern, irregular=True)
    for suffix, degree in (("est", "superlative"), ("er", "comparative")):
        if not low.endswith(suffix) or len(low) <= len(suffix):
            continue
        root = low[: -len(suffix)]
        for variant in _root_variants(root):
            e = _first_with_pos(variant, lex, {"A", "ADV"})
            if e is None or e.has("CMP") or e.has("SUP"):
                continue
            feat = "CMP" if degree == "comparative" else "SUP"
            modern = (_find_form(lex, e.lemma, {e.pos}, {feat})
                      or ("more " if feat == "CMP" else "most ") + e.lemma)
            return DegreeAnalysis(e.lemma, degree, modern)
    return None


@dataclass
class RuleConfig:
    """Which rules run, and the irregular-degree table."""

    enabled: frozenset[str] = frozenset(RULES)
    degree_exceptions: dict[str, tuple[str, str]] = field(
        default_factory=lambda: dict(DEFAULT_DEGREE_EXCEPTIONS))

    def on(self, rule: str) -> bool:
        return rule in self.enabled

    @classmethod
    def none(cls) -> "RuleConfig":
        return cls(enabled=frozenset())


@dataclass
class TokenNormalization:
    index: int
    token: Token
    known: bool
    entries: tuple[LexEntry, ...]
    candidates: list[RewriteCandidate]

    @property
    def best(self) -> RewriteCandidate | None:
        for c in self.candidates:
            if c.confidence != NOISE:
                return c
        return None


class Cascade:
    """The normalization pipeline over a merged lexicon.

    Order: contraction dictionary, hyphen fusion, in/en swap, elision
    restoration, inflection and degree analysis; juxtaposed pairs are
    fused in a final pass over the token stream.
    """

    def __init__(self, lex: Lexicon, contractions: Lexicon | None = None,
                 config: RuleConfig | None = None):
        self.contractions = contractions if contractions is not None else Lexicon()
        self.lex = merge(lex, self.contractions) if contractions is not None else lex
        self.config = config or RuleConfig()

    def known(self, token: Token) -> tuple[LexEntry, ...]:
        hits = self.lex.lookup(token.surface)
        if not hits and token.bare != token.key and token.bare:
            hits = self.lex.lookup(token.bare)
        return tuple(hits)

    def direct(self, token: Token, hits) -> list[RewriteCandidate]:
        """Rewrites carried by the dictionary entries themselves."""
        out = []
        if any(e.modern is None and not e.expansion for e in hits):
            return out
        for e in hits:
            if e.expansion and self.config.on(CONTRACTION_DICT):
                out.append(RewriteCandidate(token.surface, e.expansion_text(), CONTRACTION_DICT,
                                            True, LEXICAL, (CONTRACTION_DICT,), (e,)))
            elif e.modern is not None:
                out.append(RewriteCandidate(token.surface, e.modern, OVERLAY_SPELLING,
                                            True, LEXICAL, (OVERLAY_SPELLING,), (e,)))
        return rank(out)

    def candidates(self, token: Token) -> list[RewriteCandidate]:
        """Single-token rewrites for a form the lexicon does not know."""
        cfg = self.config
        out: list[RewriteCandidate] = []
        form = token.form
        if "'" in form and cfg.on(CONTRACTION_DICT):
            got = expand_contraction(token, self.contractions, self.lex)
            if any(c.rule == CONTRACTION_DICT and c.entries and c.entries[0].unambiguous
                   for c in got):
                return got
            out.extend(c for c in got if c.rule == CONTRACTION_DICT
                       or cfg.on(ELISION_RESTORE))
        if INTERNAL_HYPHEN in token.flags and cfg.on(FUSE_HYPHEN):
            out.append(fuse_hyphenated(token, self.lex, self.contractions))
        bare = form.strip("'")
        if cfg.on(IN_EN_SWAP):
            c = swap_in_en(bare, self.lex)
            if c:
                out.append(c)
        if cfg.on(ELISION_RESTORE) and "'" not in form:
            out.extend(restore_elision(bare, self.lex))
        if cfg.on(INFLECTION):
            a = analyze_archaic_inflection(bare, self.lex)
            if a:
                feats = ("PR", "PT", str(a.person), a.number)
                entry = LexEntry(bare, pos="V", lemma=a.lemma,
                                 features=tuple(Feature(f) for f in feats))
                out.append(RewriteCandidate(token.surface, a.modern, INFLECTION, True,
                                            RULE_VALIDATED, (INFLECTION,), (entry,)))
        if cfg.on(DEGREE):
            a = analyze_degree(bare, self.lex, cfg.degree_exceptions)
            if a:
                entry = LexEntry(bare, pos="A", lemma=a.lemma,
                                 features=(Feature("CMP" if a.degree == "comparative" else "SUP"),))
                out.append(RewriteCandidate(token.surface, a.modern, DEGREE, True,
                                            RULE_VALIDATED, (DEGREE,), (entry,)))
        return rank(out)

    def normalize(self, tokens: list[Token], text: str | None = None) -> list[TokenNormalization]:
        rows: list[TokenNormalization] = []
        by_index: dict[int, TokenNormalization] = {}
        for i, t in enumerate(tokens):
            if not t.is_word:
                continue
            hits = self.known(t)
            if hits:
                row = TokenNormalization(i, t, True, hits, self.direct(t, hits))
            else:
                row = TokenNormalization(i, t, False, (), self.candidates(t))
            rows.append(row)
            by_index[i] = row
        if self.config.on(FUSE_JUXTAPOSED):
            for i, j in adjacent_word_pairs(tokens, text):
                c = fuse_juxtaposed(tokens[i], tokens[j], self.lex)
                if c is None:
                    continue
                for k in (i, j):
                    row = by_index[k]
                    row.candidates = rank([*row.candidates, c])
        return rows


def adjacent_word_pairs(tokens: list[Token], text: str | None = None):
    """Index pairs of consecutive Word tokens.

    With ``text``, pairs split by a blank line or a page break are skipped.
    """
    for i in range(len(tokens) - 1):
        a, b = tokens[i], tokens[i + 1]
        if not (a.is_word and b.is_word and b.chars[0] > a.chars[1]):
            continue
        if text is not None:
            gap = text[a.chars[1]:b.chars[0]]
            if "\f" in gap or gap.count("\n") > 1:
                continue
        yield i, i + 1
