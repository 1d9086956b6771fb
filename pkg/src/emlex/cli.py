"""Command-line entry point: ``emlex <command> ...``.

Exit status is 0 on success, 1 on a usage error and 2 when an input file
or dictionary cannot be read or parsed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .analytics import (DEFAULT_SUFFIXES, annotate_corpus, length_distribution,
                        pronoun_census, punctuation_census, suffix_table, unknown_words)
from .config import ConfigError, RunConfig, find_dictionary, parse_rules_file
from .corpus import (PAGE_BREAK, CorpusError, SourceDocument, load_document, strip_catchwords,
                     tokenize, tokens_tsv)
from .lexicon import (BUNDLED, ConflictError, LexiconError, Lexicon, bundled, bundled_path,
                      format_entry, load_lexicon, merge)
from .morphology import RULES, Cascade, RuleConfig
from .pattern import (MissingAnnotations, PatternSyntaxError, affix_query, compile_pattern, kwic,
                      locate)
from .report import Report


class InputError(Exception):
    """Raised for unreadable or malformed input; exit status 2."""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _data_versions() -> str:
    parts = []
    for name in sorted(BUNDLED):
        digest = hashlib.sha256(bundled_path(name).read_bytes()).hexdigest()[:10]
        parts.append(f"{name}={digest}")
    return " ".join(parts)


def _add_dict_options(p):
    g = p.add_argument_group("dictionaries")
    g.add_argument("--dict", dest="base", metavar="PATH", help="base dictionary (default: bundled)")
    g.add_argument("--overlay", metavar="PATH", help="17th-century overlay (default: bundled)")
    g.add_argument("--contractions", metavar="PATH", help="contraction dictionary (default: bundled)")
    g.add_argument("--no-overlay", action="store_true", help="do not load any overlay")
    g.add_argument("--rules", metavar="FILE", help="rule toggles, key=value per line")
    g.add_argument("--disable", action="append", default=[], choices=RULES, metavar="RULE",
                   help="turn a rule off (repeatable)")
    g.add_argument("--base-only", action="store_true",
                   help="base dictionary alone: no overlay, contractions or rules")


def _add_corpus_options(p, many=True):
    p.add_argument("corpus", nargs="+" if many else None, help="UTF-8 text file(s)")
    p.add_argument("--catchwords", nargs="?", const=PAGE_BREAK, default=None, metavar="MARKER",
                   help="strip catchwords at page breaks (default marker: form feed)")
    p.add_argument("--latin1-fallback", action="store_true",
                   help="decode as Latin-1 when a file is not valid UTF-8")


def _add_format_options(p, default="tsv"):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--format", "--emit", choices=("tsv", "json", "text"), default=default)
    g.add_argument("--tsv", dest="format", action="store_const", const="tsv")
    g.add_argument("--json", dest="format", action="store_const", const="json")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="emlex", description="Early Modern English lexical analysis.")
    parser.add_argument("--version", action="version",
                        version=f"emlex {__version__} (data: {_data_versions()})")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("tokenize", help="list tokens with byte spans and flags")
    _add_corpus_options(p, many=False)
    p.add_argument("--contractions", metavar="PATH")
    _add_format_options(p)

    p = sub.add_parser("dict", help="check, merge or reformat dictionaries")
    dsub = p.add_subparsers(dest="action", metavar="ACTION", parser_class=_Parser)
    dsub.required = True
    q = dsub.add_parser("check", help="parse and validate")
    q.add_argument("files", nargs="+")
    q = dsub.add_parser("merge", help="merge dictionaries in order into OUT ('-' for stdout)")
    q.add_argument("out")
    q.add_argument("files", nargs="+")
    q = dsub.add_parser("fmt", help="print entries in canonical form")
    q.add_argument("file")

    p = sub.add_parser("normalize", help="modern forms for archaic tokens")
    _add_corpus_options(p)
    _add_dict_options(p)
    p.add_argument("--all", action="store_true", help="list every Word token")
    _add_format_options(p)

    p = sub.add_parser("locate", help="find a token pattern; print concordance lines")
    _add_corpus_options(p)
    _add_dict_options(p)
    p.add_argument("--pattern", required=True)
    p.add_argument("--kwic", type=int, default=5, metavar="N", help="context tokens per side")
    p.add_argument("--normalized", action="store_true", help="match modern forms")
    _add_format_options(p, default="text")

    p = sub.add_parser("affix", help="words by prefix or suffix")
    _add_corpus_options(p)
    _add_dict_options(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--prefix")
    g.add_argument("--suffix")
    p.add_argument("--normalized", action="store_true", help="match modern forms")
    _add_format_options(p)

    p = sub.add_parser("stats", help="census reports")
    p.add_argument("report", choices=("pronouns", "lengths", "punct", "suffixes", "unknown"))
    _add_corpus_options(p)
    _add_dict_options(p)
    p.add_argument("--min-letters", type=int, default=7)
    p.add_argument("--suffix", action="append", dest="suffixes", metavar="SG[/PL]",
                   help="suffix row (repeatable; default: built-in list)")
    _add_format_options(p)

    p = sub.add_parser("annotate", help="analyses for every Word token")
    _add_corpus_options(p)
    _add_dict_options(p)
    _add_format_options(p)
    return parser


# --- loading ---

def _load_corpus(args) -> SourceDocument:
    docs = []
    paths = args.corpus if isinstance(args.corpus, list) else [args.corpus]
    for path in paths:
        if not Path(path).is_file():
            raise InputError(f"corpus file not found: {path}")
        try:
            doc = load_document(path, latin1_fallback=args.latin1_fallback)
        except (CorpusError, OSError) as exc:
            raise InputError(str(exc)) from None
        if args.catchwords:
            doc = strip_catchwords(doc, args.catchwords)
        docs.append(doc)
    if len(docs) == 1:
        return docs[0]
    return SourceDocument("\n\n".join(d.text for d in docs), "+".join(d.id for d in docs))


def _lexicon(path: str | None, name: str) -> Lexicon:
    if path is None:
        return bundled(name)
    try:
        return load_lexicon(path, origin=name)
    except LexiconError as exc:
        raise InputError(f"{path}: {exc}") from None
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from None


class _Session:
    """Lexicons and settings resolved from the command line."""

    def __init__(self, args):
        self.args = args
        self.config = RunConfig(corpus=list(args.corpus) if isinstance(args.corpus, list)
                                else [args.corpus], format=args.format,
                                catchword_marker=args.catchwords,
                                kwic_width=getattr(args, "kwic", 5) or 0)
        try:
            for attr in ("base", "overlay", "contractions"):
                value = getattr(args, attr, None)
                if value is not None:
                    setattr(self.config, attr, str(find_dictionary(value)))
        except ConfigError as exc:
            raise InputError(str(exc)) from None
        rc = RuleConfig()
        if getattr(args, "rules", None):
            try:
                rc = parse_rules_file(Path(args.rules).read_text(encoding="utf-8"), args.rules)
            except OSError as exc:
                raise InputError(str(exc)) from None
            except ConfigError as exc:
                raise InputError(str(exc)) from None
        rc = RuleConfig(rc.enabled - set(getattr(args, "disable", [])), rc.degree_exceptions)
        self.base_only = getattr(args, "base_only", False)
        if self.base_only:
            rc = RuleConfig.none()
        self.config.use_overlay = not (self.base_only or getattr(args, "no_overlay", False))
        self.config.set_rules(rc)

    @property
    def rules(self) -> RuleConfig:
        return self.config.rule_config()

    def base(self) -> Lexicon:
        return _lexicon(self.config.base, "base")

    def overlay(self) -> Lexicon | None:
        if not self.config.use_overlay:
            return None
        return _lexicon(self.config.overlay, "xvii")

    def contractions(self) -> Lexicon | None:
        if self.base_only:
            return None
        return _lexicon(self.config.contractions, "contractions")

    def tokenizer_contractions(self) -> Lexicon:
        return _lexicon(self.config.contractions, "contractions")

    def provenance(self, doc: SourceDocument) -> str:
        return f"{doc.id} config:{self.config.hash()}"

    def annotate(self, tokens, text):
        try:
            return annotate_corpus(tokens, self.base(), self.overlay(), self.contractions(),
                                   self.rules, text)
        except ConflictError as exc:
            raise InputError(str(exc)) from None


# --- output ---

def _emit(report: Report, fmt: str, out):
    if fmt == "json":
        out.write(report.to_json())
    elif fmt == "text":
        out.write(report.to_text())
    else:
        out.write(report.to_tsv())


# --- commands ---

def cmd_tokenize(args, out):
    doc = _load_corpus(args)
    con = _lexicon(args.contractions, "contractions") if args.contractions else bundled("contractions")
    tokens = tokenize(doc, con)
    if args.format == "json":
        rows = [{"index": i, "start": t.start, "end": t.end, "kind": t.kind,
                 "flags": [f for f in t.flag_string().split("|") if f], "surface": t.surface}
                for i, t in enumerate(tokens)]
        out.write(json.dumps({"document": doc.id, "meta": dict(sorted(doc.meta.items())),
                              "tokens": rows}, ensure_ascii=False, indent=1) + "\n")
    else:
        out.write(tokens_tsv(tokens))


def _read_dict(path: str) -> Lexicon:
    try:
        return load_lexicon(find_dictionary(path))
    except ConfigError as exc:
        raise InputError(str(exc)) from None
    except LexiconError as exc:
        raise InputError(f"{path}: {exc}") from None
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_dict(args, out):
    if args.action == "check":
        for path in args.files:
            lex = _read_dict(path)
            out.write(f"{path}: ok, {len(lex)} entries\n")
    elif args.action == "fmt":
        for e in _read_dict(args.file):
            out.write(format_entry(e) + "\n")
    else:
        lex = _read_dict(args.files[0])
        for path in args.files[1:]:
            try:
                lex = merge(lex, _read_dict(path))
            except ConflictError as exc:
                raise InputError(str(exc)) from None
        text = "".join(format_entry(e) + "\n" for e in lex)
        if args.out == "-":
            out.write(text)
        else:
            try:
                Path(args.out).write_text(text, encoding="utf-8")
            except OSError as exc:
                raise InputError(str(exc)) from None


def cmd_normalize(args, out):
    s = _Session(args)
    doc = _load_corpus(args)
    tokens = tokenize(doc, s.tokenizer_contractions())
    base, overlay, con = s.base(), s.overlay(), s.contractions()
    lex = merge(base, overlay) if overlay is not None else base
    rows = Cascade(lex, con, s.rules).normalize(tokens, doc.text)
    report = Report("Normalization", ["index", "surface", "normalized", "rule", "confidence",
                                      "alternatives"], provenance=s.provenance(doc))
    for r in rows:
        best = r.best
        if not args.all and r.known and best is None:
            continue
        others = "; ".join(f"{c.result} [{c.rule}:{c.confidence}]" for c in r.candidates
                           if c is not best)
        if best is None:
            report.add(r.index, r.token.surface, "" if not r.known else r.token.surface,
                       "" if not r.known else "Lexicon", "Unknown" if not r.known else "Lexical",
                       others)
        else:
            report.add(r.index, r.token.surface, best.result, best.rule, best.confidence, others)
    _emit(report, args.format, out)


def cmd_locate(args, out):
    if args.kwic < 0:
        raise UsageError("--kwic must be >= 0")
    s = _Session(args)
    try:
        pattern = compile_pattern(args.pattern)
    except PatternSyntaxError as exc:
        raise InputError(f"pattern: {exc}") from None
    doc = _load_corpus(args)
    tokens = tokenize(doc, s.tokenizer_contractions())
    index = s.annotate(tokens, doc.text) if (pattern.uses_pos or args.normalized) else None
    try:
        matches = locate(pattern, tokens, index, doc_id=doc.id, text=doc.text,
                         normalized=args.normalized)
    except MissingAnnotations as exc:
        raise InputError(str(exc)) from None
    lines = [kwic(m, args.kwic) for m in matches]
    if args.format == "text":
        for line in lines:
            out.write(line.display() + "\n")
        return
    report = Report(f"Concordance for {pattern}", ["document", "index", "left", "key", "right"],
                    provenance=s.provenance(doc))
    for line in lines:
        report.add(line.location[0], line.location[1], line.left, line.key, line.right)
    _emit(report, args.format, out)


def cmd_affix(args, out):
    s = _Session(args)
    doc = _load_corpus(args)
    tokens = tokenize(doc, s.tokenizer_contractions())
    kind, affix = ("prefix", args.prefix) if args.prefix is not None else ("suffix", args.suffix)
    forms = s.annotate(tokens, doc.text).normalized if args.normalized else None
    try:
        result = affix_query(kind, affix, tokens, forms)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(result.to_report(s.provenance(doc)), args.format, out)


def cmd_stats(args, out):
    s = _Session(args)
    doc = _load_corpus(args)
    prov = s.provenance(doc)
    if args.report == "punct":
        _emit(punctuation_census(doc, prov), args.format, out)
        return
    tokens = tokenize(doc, s.tokenizer_contractions())
    if args.report == "pronouns":
        report = pronoun_census(tokens, prov, doc.text)
    elif args.report == "lengths":
        if args.min_letters < 1:
            raise UsageError("--min-letters must be >= 1")
        report = length_distribution(tokens, args.min_letters, prov)
    elif args.report == "suffixes":
        suffixes = args.suffixes or DEFAULT_SUFFIXES
        for sfx in suffixes:
            if not all(part.isalpha() for part in sfx.split("/")) or sfx.count("/") > 1:
                raise UsageError(f"bad suffix {sfx!r}: expected letters, optionally sg/pl")
        overlay = s.overlay() if s.config.use_overlay else Lexicon()
        report = suffix_table(tokens, suffixes, overlay, prov)
    else:
        report = unknown_words(s.annotate(tokens, doc.text), prov)
    _emit(report, args.format, out)


def cmd_annotate(args, out):
    s = _Session(args)
    doc = _load_corpus(args)
    tokens = tokenize(doc, s.tokenizer_contractions())
    index = s.annotate(tokens, doc.text)
    report = Report("Annotations", ["index", "surface", "normalized", "analyses"],
                    provenance=s.provenance(doc))
    for i, t in enumerate(tokens):
        if t.is_word:
            report.add(i, t.surface, index.normalized[i],
                       " | ".join(str(a) for a in index.analyses.get(i, ())))
    _emit(report, args.format, out)


COMMANDS = {"tokenize": cmd_tokenize, "dict": cmd_dict, "normalize": cmd_normalize,
            "locate": cmd_locate, "affix": cmd_affix, "stats": cmd_stats,
            "annotate": cmd_annotate}


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    saved = sys.stdout, sys.stderr
    sys.stdout, sys.stderr = out, err
    try:
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return exc.code if isinstance(exc.code, int) else 1
        try:
            COMMANDS[args.command](args, out)
        except UsageError as exc:
            err.write(f"emlex {args.command}: error: {exc}\n")
            return 1
        except InputError as exc:
            err.write(f"emlex: {exc}\n")
            return 2
        except BrokenPipeError:
            return 0
        return 0
    finally:
        sys.stdout, sys.stderr = saved


if __name__ == "__main__":
    sys.exit(main())
