"""Tabular census results with TSV and JSON serialization."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

_INT_RE = re.compile(r"-?\d+")
_ESCAPES = {"\\": "\\\\", "\t": "\\t", "\n": "\\n", "\r": "\\r"}
_UNESCAPES = {"\\": "\\", "t": "\t", "n": "\n", "r": "\r"}


class ReportError(ValueError):
    pass


def _escape(cell) -> str:
    if isinstance(cell, int):
        return str(cell)
    return "".join(_ESCAPES.get(c, c) for c in cell)


def _unescape(text: str) -> str:
    out = []
    it = iter(text)
    for c in it:
        if c == "\\":
            nxt = next(it, "")
            out.append(_UNESCAPES.get(nxt, nxt))
        else:
            out.append(c)
    return "".join(out)


@dataclass
class Report:
    """A titled table.  Cells are ``str`` or ``int``.

    In TSV, a cell that spells an integer is an integer; string cells are
    written with a leading ``'`` when they would otherwise read as one.
    """

    title: str
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    provenance: str = ""

    def __post_init__(self):
        for row in self.rows:
            self._check(row)

    def _check(self, row):
        if len(row) != len(self.columns):
            raise ReportError(f"row {row!r} has {len(row)} cells, expected {len(self.columns)}")
        for cell in row:
            if isinstance(cell, bool) or not isinstance(cell, (int, str)):
                raise ReportError(f"cell {cell!r} is neither str nor int")

    def add(self, *cells):
        row = list(cells)
        self._check(row)
        self.rows.append(row)

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [r[i] for r in self.rows]

    def find(self, **match) -> list | None:
        """First row whose named cells equal the given values."""
        idx = {k: self.columns.index(k) for k in match}
        for r in self.rows:
            if all(r[i] == match[k] for k, i in idx.items()):
                return r
        return None

    def to_tsv(self) -> str:
        lines = [f"# title: {_escape(self.title)}", f"# provenance: {_escape(self.provenance)}",
                 "\t".join(_escape(c) for c in self.columns)]
        for row in self.rows:
            cells = []
            for c in row:
                if isinstance(c, str) and (_INT_RE.fullmatch(c) or c.startswith("'")):
                    c = "'" + c
                cells.append(_escape(c))
            lines.append("\t".join(cells))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_tsv(cls, text: str) -> "Report":
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        meta = {}
        while lines and lines[0].startswith("# "):
            key, _, value = lines.pop(0)[2:].partition(": ")
            meta[key] = _unescape(value)
        if not lines:
            raise ReportError("missing column header")
        columns = [_unescape(c) for c in lines[0].split("\t")]
        rows = []
        for line in lines[1:]:
            cells = []
            for raw in line.split("\t"):
                if _INT_RE.fullmatch(raw):
                    cells.append(int(raw))
                else:
                    cell = _unescape(raw)
                    cells.append(cell[1:] if cell.startswith("'") else cell)
            rows.append(cells)
        return cls(meta.get("title", ""), columns, rows, meta.get("provenance", ""))

    def to_dict(self) -> dict:
        return {"title": self.title, "provenance": self.provenance,
                "columns": list(self.columns), "rows": [list(r) for r in self.rows]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        d = json.loads(text)
        return cls(d["title"], d["columns"], d["rows"], d.get("provenance", ""))

    def to_text(self) -> str:
        """Aligned plain-text table."""
        table = [list(map(str, self.columns))] + [[str(c) for c in r] for r in self.rows]
        widths = [max(len(r[i]) for r in table) for i in range(len(self.columns))]
        out = [self.title]
        for r in table:
            out.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        return "\n".join(out) + "\n"
