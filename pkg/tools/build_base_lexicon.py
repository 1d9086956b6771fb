#!/usr/bin/env python3
"""Regenerate src/emlex/data/base_en.dic.gz.

Sources:
  * the inflection lookup table shipped with the ``lemminflect`` package
    (lemma, word class, inflected forms; derived from the NLM SPECIALIST
    lexicon), and
  * tools/base_supplement.dic (closed-class words, a few compounds).

Surfaces that the 17th-century overlay marks as archaic spellings are left
out, so that the base wordlist stays a contemporary one.

    python tools/build_base_lexicon.py [--table PATH/infl_lu.csv.gz]
"""

import argparse
import csv
import gzip
import importlib.util
import io
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from emlex.lexicon import LexEntry, Feature, fold, format_entry, iter_entries  # noqa: E402

OUT = ROOT / "src" / "emlex" / "data" / "base_en.dic.gz"
SUPPLEMENT = ROOT / "tools" / "base_supplement.dic"
OVERLAY = ROOT / "src" / "emlex" / "data" / "xvii_overlay.dic"

POS = {"noun": "N", "verb": "V", "adj": "A", "adv": "ADV"}
# column -> features, per word class
SLOTS = {
    "noun": [("N", ("p",))],
    "verb": [("V", ("PT",)), ("V", ("PP",)), ("V", ("G",)), ("V", ("PR", "3", "s"))],
    "adj": [("A", ("CMP",)), ("A", ("SUP",))],
    "adv": [("ADV", ("CMP",)), ("ADV", ("SUP",))],
}
BASE_FEATS = {"noun": ("s",), "verb": ("INF",), "adj": (), "adv": ()}


def default_table() -> Path:
    spec = importlib.util.find_spec("lemminflect")
    if spec is None or not spec.submodule_search_locations:
        sys.exit("lemminflect not installed; pass --table")
    return Path(list(spec.submodule_search_locations)[0]) / "resources" / "infl_lu.csv.gz"


def usable(form: str) -> bool:
    return bool(form) and all(c.isalpha() or c in "'-" for c in form)


def entries_from_table(path: Path):
    with gzip.open(path, "rt", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            lemma, cls, *slots = row
            if cls not in POS or not usable(lemma):
                continue
            pos = POS[cls]
            yield LexEntry(lemma, pos=pos, features=tuple(Feature(f) for f in BASE_FEATS[cls]))
            if cls == "verb" and len(slots) >= 2 and not slots[1]:
                slots[1] = slots[0]  # past participle same as past
            for (p, feats), cell in zip(SLOTS[cls], slots):
                for form in cell.split("/"):
                    if not usable(form) or (form == lemma and cls == "noun"):
                        continue
                    yield LexEntry(form, pos=p, lemma=lemma,
                                   features=tuple(Feature(f) for f in feats))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--table", type=Path, default=None)
    args = ap.parse_args()
    table = args.table or default_table()

    archaic = {fold(e.surface) for e in iter_entries(OVERLAY.read_text(encoding="utf-8"))
               if e.modern is not None}
    supplement = list(iter_entries(SUPPLEMENT.read_text(encoding="utf-8")))

    seen = set()
    lines = []
    lemmas = set()
    for e in [*entries_from_table(table), *supplement]:
        if fold(e.surface) in archaic:
            continue
        line = format_entry(e)
        if line in seen:
            continue
        seen.add(line)
        lines.append(line)
        lemmas.add((e.lemma, e.pos))

    header = [
        "# Contemporary English base wordlist: surface,lemma,POS+features",
        "# Generated by tools/build_base_lexicon.py from the lemminflect inflection",
        "# table plus tools/base_supplement.dic.  Do not edit by hand.",
        f"# lemmas: {len(lemmas)}  entries: {len(lines)}",
    ]
    buf = io.BytesIO()
    with gzip.GzipFile(fileobj=buf, mode="wb", mtime=0, filename="") as gz:
        gz.write(("\n".join(header + lines) + "\n").encode("utf-8"))
    OUT.write_bytes(buf.getvalue())
    print(f"wrote {OUT} ({len(lemmas)} lemmas, {len(lines)} entries)")


if __name__ == "__main__":
    main()
