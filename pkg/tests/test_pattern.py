import pytest

from emlex.corpus import tokenize
from emlex.pattern import (Length, Literal, MissingAnnotations, Pattern, PatternSyntaxError, Pos,
                           PrefixIs, SuffixIs, affix_query, compile_pattern, kwic, locate)


@pytest.mark.parametrize("expr,items", [
    ("you", (Literal("you"),)),
    ("<LETTERS+16>", (Length(16),)),
    ("<^dis>", (PrefixIs("dis"),)),
    ("<ness$>", (SuffixIs("ness"),)),
    ("I pray <PRO>", (Literal("I"), Literal("pray"), Pos("PRO"))),
    ("  tho'   <V> ", (Literal("tho'"), Pos("V"))),
])
def test_compile(expr, items):
    assert compile_pattern(expr) == Pattern(items)


@pytest.mark.parametrize("expr,position", [
    ("", 0), ("   ", 0), ("<V", 2), ("<LETTERS+x>", 9), ("<LETTERS+0>", 9),
    ("<^>", 2), ("<$>", 1), ("<a b>", 1), ("you<V>", 3), ("<V>x", 3),
])
def test_compile_errors(expr, position):
    with pytest.raises(PatternSyntaxError) as info:
        compile_pattern(expr)
    assert info.value.position == position


def test_pretty_print_is_canonical():
    p = compile_pattern("  you   <letters+7> <^En>  <ness$>")
    assert str(p) == "you <LETTERS+7> <^En> <ness$>"
    assert compile_pattern(str(p)) == p


def test_locate_literal_case_insensitive():
    text = "You and you, YOU."
    toks = tokenize(text)
    ms = locate(compile_pattern("you"), toks, text=text, doc_id="d")
    assert [m.start for m in ms] == [0, 2, 4]
    assert ms[0].surface == "You"


def test_locate_non_overlapping():
    text = "la la la la la"
    toks = tokenize(text)
    ms = locate(compile_pattern("la la"), toks, text=text)
    assert [(m.start, m.end) for m in ms] == [(0, 2), (2, 4)]


def test_locate_empty_and_length():
    assert locate(compile_pattern("you"), []) == []
    text = "Knowledge and Ignorance are opposites"
    toks = tokenize(text)
    assert [m.start for m in locate(compile_pattern("<LETTERS+9>"), toks, text=text)] == [0, 2, 4]


def test_locate_pos_needs_annotations():
    with pytest.raises(MissingAnnotations):
        locate(compile_pattern("<V>"), tokenize("go"))


def test_kwic_example():
    text = "How can you be content to be in the World"
    toks = tokenize(text)
    m = locate(compile_pattern("you"), toks, text=text)[0]
    line = kwic(m, 2)
    assert (line.left.strip(), line.key, line.right.strip()) == ("How can", "you", "be content")
    assert line.left + line.key + line.right == text[0:22]
    empty = kwic(m, 0)
    assert (empty.left, empty.right) == ("", "")
    edge = kwic(m, 50)
    assert edge.left + edge.key + edge.right == text


def test_kwic_keeps_original_gaps():
    text = "a  ,b\n\nyou  c"
    toks = tokenize(text)
    m = locate(compile_pattern("you"), toks, text=text)[0]
    line = kwic(m, 2)
    assert line.left == ",b\n\n" and line.right == "  c"
    assert line.display(10) == "        ,b  you  c"


def test_kwic_rejects_negative_width():
    text = "you"
    m = locate(compile_pattern("you"), tokenize(text), text=text)[0]
    with pytest.raises(ValueError):
        kwic(m, -1)


def test_affix_query():
    toks = tokenize("Encrease, enforce and encrease; dis dispise disquisition. En")
    r = affix_query("prefix", "en", toks)
    assert r.counts == [("encrease", 2), ("enforce", 1)]
    assert (r.distinct, r.total) == (2, 3)
    d = affix_query("prefix", "dis", toks)
    assert d.forms == ["dispise", "disquisition"]
    assert affix_query("suffix", "zzz", toks).counts == []


def test_affix_query_validates():
    with pytest.raises(ValueError):
        affix_query("infix", "en", [])
    with pytest.raises(ValueError):
        affix_query("prefix", "e1", [])
    with pytest.raises(ValueError):
        affix_query("prefix", "", [])


def test_affix_report_table():
    toks = tokenize("goodness goodness kindness")
    rep = affix_query("suffix", "ness", toks).to_report("p")
    assert rep.rows == [["goodness", 2], ["kindness", 1], ["TOTAL", 3]]
    assert rep.provenance == "p"


def test_normalized_matching(base, overlay, contractions):
    from emlex.analytics import annotate_corpus
    text = "They inforce it and enforce it."
    toks = tokenize(text, contractions)
    index = annotate_corpus(toks, base, overlay, contractions)
    assert len(locate(compile_pattern("enforce"), toks, text=text)) == 1
    assert len(locate(compile_pattern("enforce"), toks, index, text=text, normalized=True)) == 2
    assert affix_query("prefix", "en", toks, index.normalized).counts == [("enforce", 2)]
    assert [m.start for m in locate(compile_pattern("<PRO> <V>"), toks, index, text=text)] == [0]
    with pytest.raises(MissingAnnotations):
        locate(compile_pattern("you"), toks, normalized=True)
