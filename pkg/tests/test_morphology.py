import pytest

from emlex.corpus import tokenize
from emlex.lexicon import parse_lexicon
from emlex.morphology import (CONTRACTION_DICT, DEGREE, ELISION_RESTORE, FUSE_HYPHEN,
                              FUSE_JUXTAPOSED, IN_EN_SWAP, INFLECTION, JUNCTION_MERGE, LEXICAL,
                              NOISE, RULE_VALIDATED, Cascade, NoApostrophe, NotHyphenated,
                              RewriteCandidate, RuleConfig, analyze_archaic_inflection,
                              analyze_degree, edit_distance, expand_contraction,
                              fuse_hyphenated, fuse_juxtaposed, letter_length, rank,
                              restore_elision, swap_in_en)


@pytest.mark.parametrize("surface,expected,steps", [
    ("fore-heads", "foreheads", (FUSE_HYPHEN,)),
    ("pre-ingage", "preengage", (FUSE_HYPHEN, IN_EN_SWAP)),
    ("where-ever", "wherever", (FUSE_HYPHEN, JUNCTION_MERGE)),
    ("over-stock'd", "overstocked", (FUSE_HYPHEN, ELISION_RESTORE)),
])
def test_fuse_hyphenated(lex, contractions, surface, expected, steps):
    c = fuse_hyphenated(surface, lex, contractions)
    assert (c.result, c.confidence, c.validated) == (expected, RULE_VALIDATED, True)
    assert c.steps == steps


def test_fuse_hyphenated_unresolved(lex):
    c = fuse_hyphenated("qux-zork", lex)
    assert (c.result, c.confidence, c.validated) == ("quxzork", NOISE, False)


def test_fuse_hyphenated_requires_hyphen(lex):
    with pytest.raises(NotHyphenated):
        fuse_hyphenated("forehead", lex)
    with pytest.raises(NotHyphenated):
        fuse_hyphenated(tokenize("-if")[0], lex)


@pytest.mark.parametrize("left,right,result,confidence", [
    ("my", "self", "myself", LEXICAL),
    ("our", "selves", "ourselves", LEXICAL),
    ("back", "wardness", "backwardness", LEXICAL),
    ("some", "body", "somebody", LEXICAL),
    ("not", "able", "notable", NOISE),
    ("yet", "I", "yeti", NOISE),
])
def test_fuse_juxtaposed(lex, left, right, result, confidence):
    c = fuse_juxtaposed(left, right, lex)
    assert c.result == result and c.confidence == confidence
    assert c.rule == FUSE_JUXTAPOSED


def test_fuse_juxtaposed_nothing(lex):
    assert fuse_juxtaposed("the", "world", lex) is None


@pytest.mark.parametrize("form,result", [
    ("e'er", "ever"), ("'twou'd", "it would"), ("tho't", "though it"),
    ("cou'd", "could"), ("ev'ry", "every"), ("heav'n", "heaven"),
])
def test_expand_contraction_sole_candidate(lex, contractions, form, result):
    got = expand_contraction(form, contractions, lex)
    assert len(got) == 1
    assert (got[0].result, got[0].rule, got[0].confidence) == (result, CONTRACTION_DICT, LEXICAL)


@pytest.mark.parametrize("form,result", [("monopoliz'd", "monopolized"), ("nurs'd", "nursed"),
                                         ("oblig'd", "obliged"), ("instanc'd", "instanced")])
def test_expand_contraction_rules(lex, contractions, form, result):
    got = expand_contraction(form, contractions, lex)
    assert got[0].result == result
    assert got[0].rule == ELISION_RESTORE


def test_ambiguous_contraction_keeps_alternatives(lex, contractions):
    got = expand_contraction("it's", contractions, lex)
    assert {c.result for c in got if c.rule == CONTRACTION_DICT} == {"it is", "it has"}


def test_expand_requires_apostrophe(lex, contractions):
    with pytest.raises(NoApostrophe):
        expand_contraction("could", contractions, lex)


def test_restore_elision(lex):
    assert restore_elision("ev'ry", lex)[0].result == "every"
    assert restore_elision("cou'd", lex)[0].result == "could"
    for form, result in (("blustring", "blustering"), ("loosning", "loosening"),
                         ("mouldring", "mouldering")):
        assert restore_elision(form, lex)[0].result == result
    assert restore_elision("zzkrt", lex) == []


def test_restore_elision_orders_e_first():
    lex = parse_lexicon("caled,V+PT\ncalid,A\ncalad,N+s\n")
    assert [c.result for c in restore_elision("cal'd", lex)] == ["caled", "calad", "calid"]


@pytest.mark.parametrize("form,result", [("encrease", "increase"), ("inforce", "enforce"),
                                         ("ingage", "engage"), ("incourage", "encourage")])
def test_swap_in_en(lex, form, result):
    c = swap_in_en(form, lex)
    assert c.result == result and c.rule == IN_EN_SWAP


def test_swap_in_en_rejects(lex):
    assert swap_in_en("intend", lex) is None
    assert swap_in_en("inn", lex) is None
    assert swap_in_en("world", lex) is None


def test_archaic_inflection(lex):
    a = analyze_archaic_inflection("profiteth", lex)
    assert (a.lemma, a.person, a.number, a.modern) == ("profit", 3, "s", "profits")
    assert a.tenses == ("present", "preterit")
    assert analyze_archaic_inflection("speaketh", lex).lemma == "speak"
    thou = analyze_archaic_inflection("knowest", lex)
    assert (thou.lemma, thou.person) == ("know", 2)
    assert analyze_archaic_inflection("best", lex) is None
    assert analyze_archaic_inflection("zzkreth", lex) is None


def test_degree(lex):
    w = analyze_degree("worser", lex)
    assert (w.lemma, w.degree, w.irregular, w.modern) == ("bad", "comparative", True, "worse")
    g = analyze_degree("greatest", lex)
    assert (g.lemma, g.degree) == ("great", "superlative")
    assert analyze_degree("wiser", lex).lemma == "wise"
    assert analyze_degree("bigger", lex).lemma == "big"
    assert analyze_degree("mother", lex) is None


def test_degree_exception_table_is_configurable(lex):
    assert analyze_degree("lesser", lex, {"lesser": ("little", "comparative")}).lemma == "little"
    assert analyze_degree("worser", lex, {}) is None


def test_letter_length():
    assert letter_length("uncharitableness").letters == 16
    assert letter_length("pragmaticalness").letters == 15
    assert letter_length("fore-heads").letters == 9
    assert letter_length("nurs'd").letters == 5


def test_rank_orders_by_confidence_edits_alpha():
    cs = [RewriteCandidate("x", "bbb", "R", True, RULE_VALIDATED),
          RewriteCandidate("x", "aaa", "R", True, RULE_VALIDATED),
          RewriteCandidate("x", "x", "R", False, NOISE),
          RewriteCandidate("x", "xy", "R", True, RULE_VALIDATED),
          RewriteCandidate("x", "zzz", "D", True, LEXICAL)]
    assert [c.result for c in rank(cs)] == ["zzz", "xy", "aaa", "bbb", "x"]
    assert edit_distance("kitten", "sitting") == 3


def test_cascade_normalize(lex, contractions):
    text = "They inforce it, 'tis true; my self and yet I profiteth the blustring Holy-day."
    tokens = tokenize(text, contractions)
    rows = {r.token.surface: r for r in Cascade(lex, contractions).normalize(tokens)}
    assert rows["inforce"].best.result == "enforce"
    assert rows["'tis"].best.result == "it is"
    assert rows["my"].best.result == "myself"
    assert rows["yet"].best is None  # yeti stays Noise
    assert rows["profiteth"].best.rule == INFLECTION
    assert rows["blustring"].best.result == "blustering"
    assert rows["Holy-day"].best.result == "holiday"
    assert rows["They"].candidates == []


def test_cascade_rules_can_be_disabled(lex, contractions):
    tokens = tokenize("inforce worser", contractions)
    cfg = RuleConfig(frozenset({DEGREE}))
    rows = Cascade(lex, contractions, cfg).normalize(tokens)
    assert rows[0].candidates == []
    assert rows[1].best.rule == DEGREE
    assert all(r.candidates == [] for r in Cascade(lex, contractions, RuleConfig.none())
               .normalize(tokens))
