from collections import Counter

import pytest

from emlex.analytics import (Analysis, annotate_corpus, length_distribution, pronoun_census,
                             punctuation_census, suffix_table, unknown_words)
from emlex.corpus import tokenize
from emlex.lexicon import parse_lexicon
from emlex.morphology import RuleConfig

PARAGRAPH = ("They inforce and ingage; we incourage. accrew Aegypt benumb buz cyons meerly "
             "mormo shewn viz. back wardness, my self, 'tis e'er so.")


def test_annotate_base_only_vs_full(base, overlay, contractions):
    toks = tokenize(PARAGRAPH, contractions)
    bare = annotate_corpus(toks, base, None, None, RuleConfig.none())
    assert {"inforce", "ingage", "incourage", "accrew", "cyons", "meerly", "viz"} <= bare.unknown
    full = annotate_corpus(toks, base, overlay, contractions)
    assert full.unknown == set()
    i = next(i for i, t in enumerate(toks) if t.key == "inforce")
    assert full.analyses[i] == (Analysis("enforce", "V", ("INF",), "Rule:InEnSwap"),)
    assert full.normalized[i] == "enforce"
    j = next(i for i, t in enumerate(toks) if t.key == "shewn")
    assert full.analyses[j][0].provenance == "XVII" and full.normalized[j] == "shown"
    k = next(i for i, t in enumerate(toks) if t.key == "wardness")
    assert full.analyses[k][0].provenance == "Rule:FuseJuxtaposed"


def test_annotate_overlay_off_keeps_inforce_unknown(base, contractions):
    toks = tokenize("We inforce it.", contractions)
    assert "inforce" in annotate_corpus(toks, base, None, contractions, RuleConfig.none()).unknown
    assert "inforce" in annotate_corpus(toks, base, None, None, RuleConfig.none()).unknown
    assert "inforce" not in annotate_corpus(toks, base, None, contractions).unknown


def test_unamb_gives_single_analysis(base, overlay, contractions):
    toks = tokenize("e'er 'twou'd", contractions)
    idx = annotate_corpus(toks, base, overlay, contractions)
    assert len(idx.analyses[0]) == 1
    assert idx.analyses[0][0].provenance == "Rule:ContractionDict"
    assert idx.analyses[1][0].lemma == "it will"
    assert idx.normalized[1] == "it would"


def test_partition(base, overlay, contractions, excerpt_tokens):
    idx = annotate_corpus(excerpt_tokens, base, overlay, contractions)
    words = {t.key for t in excerpt_tokens if t.is_word}
    assert idx.recognized | idx.unknown == words
    assert not idx.recognized & idx.unknown


def test_unknown_report_with_suggestions():
    base = parse_lexicon("yet,ADV\ni,PRO\nyeti,N+s\n")
    toks = tokenize("qqq qqq yet I")
    idx = annotate_corpus(toks, base)
    rep = unknown_words(idx, "prov")
    assert rep.rows == [["qqq", 2, ""]]
    assert rep.provenance == "prov"


def test_unknown_report_lists_noise_candidates():
    base = parse_lexicon("not,ADV\nnotable,A\n")
    toks = tokenize("not zzable")
    idx = annotate_corpus(toks, base)
    assert idx.unknown == {"zzable"}
    toks = tokenize("qux-zork")
    idx = annotate_corpus(toks, base)
    assert unknown_words(idx).rows == [["qux-zork", 1, "quxzork"]]


def test_unknown_empty_for_known_words(base):
    toks = tokenize("the world and the garden")
    assert unknown_words(annotate_corpus(toks, base)).rows == []


def test_pronoun_census():
    toks = tokenize("I pray you, my self and my Sex; You, your and YOUR. We think our selves "
                    "too little; they them their. She her he him his us me me")
    rep = pronoun_census(toks)
    cell = {(r[0], r[1]): r[2] for r in rep.rows}
    assert cell[("you/your", "you")] == 2 and cell[("you/your", "your")] == 2
    assert cell[("me/my self/my/I", "my self")] == 1
    assert cell[("me/my self/my/I", "my")] == 1
    assert cell[("me/my self/my/I", "I")] == 1
    assert cell[("me/my self/my/I", "me")] == 2
    assert cell[("thou/thy/thine", "TOTAL")] == 0
    for group in {r[0] for r in rep.rows} - {"ALL"}:
        forms = [r[2] for r in rep.rows if r[0] == group and r[1] != "TOTAL"]
        assert cell[(group, "TOTAL")] == sum(forms)
    assert cell[("ALL", "TOTAL")] == sum(r[2] for r in rep.rows if r[1] == "TOTAL" and r[0] != "ALL")


def test_pronoun_census_empty():
    rep = pronoun_census([])
    assert all(r[2] == 0 for r in rep.rows)


def test_length_distribution():
    toks = tokenize("uncharitableness Knowledge knowledge Ignorance a aa fore-heads")
    rep = length_distribution(toks, 7)
    assert rep.find(length=16) == [16, 1, 1, "1.00"]
    assert rep.find(length=9) == [9, 3, 4, "1.33"]
    assert rep.find(length=12) == [12, 0, 0, "0.00"]
    assert rep.find(length="Total") == ["Total", 4, 5, "1.25"]
    assert rep.find(length="Corpus") == ["Corpus", 7, 5, "71.43%"]


def test_length_distribution_empty_rows():
    rep = length_distribution(tokenize("a aa"), 7)
    assert rep.rows == [["Total", 0, 0, "0.00"], ["Corpus", 2, 0, "0.00%"]]
    with pytest.raises(ValueError):
        length_distribution([], 0)


def test_punctuation_census():
    rep = punctuation_census("a,b,c.")
    counts = dict((r[0], r[1]) for r in rep.rows)
    assert counts["U+002C comma"] == 2 and counts["U+002E full stop"] == 1
    assert counts["apostrophes total"] == 0
    rep = punctuation_census("tho' ‘tis wou’d")
    counts = dict((r[0], r[1]) for r in rep.rows)
    assert counts["U+0027 apostrophe"] == 1
    assert counts["U+2018 left single quotation mark"] == 1
    assert counts["U+2019 right single quotation mark"] == 1
    assert counts["apostrophes total"] == 3


def test_punctuation_census_matches_counter(excerpt):
    c = Counter(excerpt.text)
    rows = {r[0]: r[1] for r in punctuation_census(excerpt).rows}
    assert rows["U+002C comma"] == c[","]
    assert rows["apostrophes total"] == c["'"] + c["‘"] + c["’"]


def test_suffix_table(overlay):
    toks = tokenize("impertinency innocency decency decency Ency propensions compliance goodness")
    rep = suffix_table(toks, ["ency/encies", "sion/sions", "ance", "ness/nesses"], overlay)
    assert rep.find(suffix="ency/encies") == ["ency/encies", 3, 4, 0, 0,
                                              "impertinency, innocency"]
    assert rep.find(suffix="sion/sions") == ["sion/sions", 0, 0, 1, 1, "propensions"]
    assert rep.find(suffix="ance") == ["ance", 1, 1, 0, 0, "compliance"]
    assert rep.find(suffix="ness/nesses")[5] == ""
    with pytest.raises(ValueError):
        suffix_table(toks, [], overlay)


def test_suffix_table_empty_corpus(overlay):
    rep = suffix_table([], overlay=overlay)
    assert len(rep.rows) == 32
    assert all(r[1:5] == [0, 0, 0, 0] for r in rep.rows)
