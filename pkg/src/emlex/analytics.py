"""Annotation pipeline and corpus census reports."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .corpus import SourceDocument, Token
from .lexicon import LexEntry, Lexicon, bundled, merge
from .morphology import (FUSE_JUXTAPOSED, NOISE, Cascade, RewriteCandidate, RuleConfig,
                         adjacent_word_pairs, fuse_juxtaposed)
from .pattern import SuffixIs
from .report import Report

BASE, XVII_LAYER = "Base", "XVII"


@dataclass(frozen=True)
class Analysis:
    lemma: str
    pos: str
    features: tuple[str, ...] = ()
    provenance: str = BASE

    def __str__(self):
        feats = "".join(f"+{f}" for f in self.features)
        return f"{self.lemma},{self.pos}{feats}[{self.provenance}]"


@dataclass
class AnnotationIndex:
    """Per-token analyses plus the recognized/unknown split of surfaces.

    Keys of ``analyses``, ``normalized`` and ``pos_tags`` are token indices;
    surfaces in ``recognized``/``unknown`` are folded.
    """

    analyses: dict[int, tuple[Analysis, ...]] = field(default_factory=dict)
    normalized: dict[int, str] = field(default_factory=dict)
    pos_tags: dict[int, frozenset[str]] = field(default_factory=dict)
    recognized: set[str] = field(default_factory=set)
    unknown: set[str] = field(default_factory=set)
    counts: Counter = field(default_factory=Counter)
    suggestions: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def provenance_counts(self) -> Counter:
        c: Counter = Counter()
        for items in self.analyses.values():
            for a in items:
                c[a.provenance] += 1
        return c


def _entry_analysis(e: LexEntry, provenance: str) -> Analysis:
    feats = tuple(str(f)[1:] for f in e.features)
    if e.expansion:
        return Analysis(" ".join(u.lemma for u in e.expansion),
                        "+".join(u.pos for u in e.expansion), feats, provenance)
    return Analysis(e.lemma, e.pos, feats, provenance)


def _entry_pos(e: LexEntry) -> set[str]:
    if e.expansion:
        return {u.pos for u in e.expansion}
    return {e.pos}


class _Annotator:
    def __init__(self, base: Lexicon, overlay: Lexicon | None, contractions: Lexicon | None,
                 rules: RuleConfig):
        lex = merge(base, overlay) if overlay is not None and len(overlay) else base
        self.cascade = Cascade(lex, contractions, rules)
        self.contraction_keys = {e.key for e in contractions} if contractions is not None else set()
        self._memo: dict[str, tuple] = {}

    def provenance(self, e: LexEntry) -> str:
        if e.archaic:
            return XVII_LAYER
        if e.key in self.contraction_keys:
            return "Rule:ContractionDict"
        return BASE

    def token(self, t: Token):
        """(analyses, pos tags, normalized form, noise suggestions), memoized by surface."""
        got = self._memo.get(t.surface)
        if got is not None:
            return got
        hits = self.cascade.known(t)
        if hits:
            analyses = tuple(_entry_analysis(e, self.provenance(e)) for e in hits)
            tags = frozenset().union(*(_entry_pos(e) for e in hits))
            direct = self.cascade.direct(t, hits)
            form = direct[0].result if direct else t.form
            got = (analyses, tags, form, ())
        else:
            cands = self.cascade.candidates(t)
            got = self._from_candidates(t, cands)
        self._memo[t.surface] = got
        return got

    def _from_candidates(self, t: Token, cands: list[RewriteCandidate]):
        good = [c for c in cands if c.confidence != NOISE and c.validated]
        if not good:
            return ((), frozenset(), t.form, tuple(dict.fromkeys(c.result for c in cands)))
        analyses, tags = [], set()
        for c in good:
            prov = f"Rule:{c.rule}"
            for e in c.entries or (LexEntry(c.result),):
                a = _entry_analysis(e, prov)
                if a not in analyses:
                    analyses.append(a)
                    tags |= _entry_pos(e)
        tags.discard("")
        return (tuple(analyses), frozenset(tags), good[0].result, ())


def annotate_corpus(tokens: list[Token], base: Lexicon, overlay: Lexicon | None = None,
                    contractions: Lexicon | None = None,
                    rules: RuleConfig | None = None, text: str | None = None) -> AnnotationIndex:
    """Analyse every Word token.

    A token is looked up in the merged lexicon; failing that the rule
    cascade runs.  Pass ``rules=RuleConfig.none()`` for a dictionary-only
    run.  ``text`` (the source of ``tokens``) keeps juxtaposed pairs from
    spanning a blank line or page break.
    """
    rules = rules if rules is not None else RuleConfig()
    ann = _Annotator(base, overlay, contractions, rules)
    index = AnnotationIndex()
    noise: dict[str, list[str]] = {}
    for i, t in enumerate(tokens):
        if not t.is_word:
            continue
        analyses, tags, form, suggestions = ann.token(t)
        index.counts[t.key] += 1
        index.normalized[i] = form
        if analyses:
            index.analyses[i] = analyses
            index.pos_tags[i] = tags
        elif suggestions:
            noise.setdefault(t.key, list(suggestions))

    if rules.on(FUSE_JUXTAPOSED):
        lex = ann.cascade.lex
        pair_memo: dict[tuple[str, str], RewriteCandidate | None] = {}
        for i, j in adjacent_word_pairs(tokens, text):
            if i in index.analyses and j in index.analyses:
                continue
            key = (tokens[i].key, tokens[j].key)
            if key not in pair_memo:
                pair_memo[key] = fuse_juxtaposed(tokens[i], tokens[j], lex)
            c = pair_memo[key]
            if c is None:
                continue
            for k in (i, j):
                if k in index.analyses:
                    continue
                if c.confidence == NOISE:
                    noise.setdefault(tokens[k].key, []).append(c.result)
                    continue
                prov = f"Rule:{c.rule}"
                index.analyses[k] = tuple(_entry_analysis(e, prov) for e in c.entries) or (
                    Analysis(c.result, "", (), prov),)
                index.pos_tags[k] = frozenset(p for e in c.entries for p in _entry_pos(e) if p)

    seen_known = {tokens[i].key for i in index.analyses}
    index.recognized = seen_known
    index.unknown = set(index.counts) - seen_known
    for key in index.unknown:
        if key in noise:
            index.suggestions[key] = tuple(sorted(set(noise[key])))
    return index


# --- census reports ---

PRONOUN_GROUPS: tuple[tuple[str, tuple[str, ...]], ...] = (
    ("me/my self/my/I", ("me", "my self", "my", "i")),
    ("thou/thy/thine", ("thou", "thy", "thine")),
    ("she/her", ("she", "her")),
    ("he/him/his", ("he", "him", "his")),
    ("we/us/our", ("we", "us", "our")),
    ("you/your", ("you", "your")),
    ("they/them/their", ("they", "them", "their")),
)


def pronoun_census(tokens: list[Token], provenance: str = "", text: str | None = None) -> Report:
    """Personal pronoun and possessive counts by group.

    "my self" is counted as a bigram of adjacent Word tokens; those "my"
    tokens are not counted again as "my".  Pass the source ``text`` so a
    pair split by a blank line or page break is not joined.
    """
    counts: Counter[str] = Counter()
    skip: set[int] = set()
    for i, j in adjacent_word_pairs(tokens, text):
        if tokens[i].key == "my" and tokens[j].key == "self":
            counts["my self"] += 1
            skip.add(i)
    wanted = {f for _, forms in PRONOUN_GROUPS for f in forms}
    for i, t in enumerate(tokens):
        if t.is_word and i not in skip and t.key in wanted:
            counts[t.key] += 1
    report = Report("Personal pronouns", ["group", "form", "occurrences"], provenance=provenance)
    grand = 0
    for group, forms in PRONOUN_GROUPS:
        for f in forms:
            report.add(group, "I" if f == "i" else f, counts[f])
        subtotal = sum(counts[f] for f in forms)
        report.add(group, "TOTAL", subtotal)
        grand += subtotal
    report.add("ALL", "TOTAL", grand)
    return report


def _ratio(num: int, den: int) -> str:
    return f"{num / den:.2f}" if den else "0.00"


def length_distribution(tokens: list[Token], min_letters: int = 7, provenance: str = "") -> Report:
    """Distinct forms and occurrences per letter count, from ``min_letters`` up."""
    if min_letters < 1:
        raise ValueError("min_letters must be >= 1")
    forms: dict[int, set[str]] = {}
    occ: Counter[int] = Counter()
    words = 0
    for t in tokens:
        if not t.is_word:
            continue
        words += 1
        n = len(t.letters)
        if n >= min_letters:
            forms.setdefault(n, set()).add(t.key)
            occ[n] += 1
    report = Report(f"Words of {min_letters} letters or more",
                    ["length", "forms", "occurrences", "ratio"], provenance=provenance)
    if occ:
        for n in range(min_letters, max(occ) + 1):
            f = len(forms.get(n, ()))
            report.add(n, f, occ[n], _ratio(occ[n], f))
    total_forms = sum(len(s) for s in forms.values())
    total_occ = sum(occ.values())
    report.add("Total", total_forms, total_occ, _ratio(total_occ, total_forms))
    share = f"{100 * total_occ / words:.2f}%" if words else "0.00%"
    report.add("Corpus", words, total_occ, share)
    return report


APOSTROPHE_MARKS = (("'", "U+0027 apostrophe"), ("\u2018", "U+2018 left single quotation mark"),
                    ("\u2019", "U+2019 right single quotation mark"))


def punctuation_census(doc: SourceDocument | str, provenance: str = "") -> Report:
    """Apostrophe code points, full stops and commas over the raw text."""
    text = doc.text if isinstance(doc, SourceDocument) else doc
    c = Counter(text)
    report = Report("Apostrophes and punctuation", ["mark", "occurrences"], provenance=provenance)
    for ch, label in APOSTROPHE_MARKS:
        report.add(label, c[ch])
    report.add("apostrophes total", sum(c[ch] for ch, _ in APOSTROPHE_MARKS))
    report.add("U+002E full stop", c["."])
    report.add("U+002C comma", c[","])
    return report


def unknown_words(index: AnnotationIndex, provenance: str = "") -> Report:
    report = Report("Unknown words", ["surface", "occurrences", "suggestions"],
                    provenance=provenance)
    for key in sorted(index.unknown):
        report.add(key, index.counts[key], "; ".join(index.suggestions.get(key, ())))
    return report


NOUN_SUFFIXES = ("tion/tions", "ity/ities", "ness/nesses", "ment/ments", "ence/ences",
                 "ance/ances", "ure/ures", "ency/encies", "sion/sions", "er/ers", "or/ors",
                 "acy/acies", "ancy/ancies", "ive/ives", "ary/aries", "ist/ists", "al/als",
                 "ast/asts", "yon/yons")
ADJECTIVE_SUFFIXES = ("ous", "al", "able", "ary", "ly", "ish", "ate", "less", "ick", "ical",
                      "ic", "ose", "ist")
DEFAULT_SUFFIXES = NOUN_SUFFIXES + ADJECTIVE_SUFFIXES


def _suffix_counts(tokens, suffix: str) -> Counter:
    item = SuffixIs(suffix)
    return Counter(t.key for t in tokens if item.matches(t))


def suffix_table(tokens: list[Token], suffix_list=DEFAULT_SUFFIXES,
                 overlay: Lexicon | None = None, provenance: str = "") -> Report:
    """Per suffix (``sg`` or ``sg/pl``): distinct forms and occurrences for
    each member, and the forms carrying a 17th-century overlay entry."""
    suffix_list = list(suffix_list)
    if not suffix_list:
        raise ValueError("suffix list must not be empty")
    overlay = overlay if overlay is not None else bundled("xvii")
    tokens = [t for t in tokens if t.is_word]
    report = Report("Suffix census", ["suffix", "forms", "occurrences", "plural_forms",
                                      "plural_occurrences", "archaic"], provenance=provenance)
    for item in suffix_list:
        sg, _, pl = item.partition("/")
        one = _suffix_counts(tokens, sg)
        many = _suffix_counts(tokens, pl) if pl else Counter()
        archaic = sorted(f for f in set(one) | set(many)
                         if any(e.archaic for e in overlay.lookup(f)))
        report.add(item, len(one), sum(one.values()), len(many), sum(many.values()),
                   ", ".join(archaic))
    return report
