"""Run configuration shared by the command-line tool and report provenance."""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .morphology import DEFAULT_DEGREE_EXCEPTIONS, RULES, RuleConfig

DICT_PATH_ENV = "EMLEX_DICT_PATH"
FORMATS = ("tsv", "json", "text")
DEGREES = ("comparative", "superlative")
_TRUE = {"on", "true", "yes", "1"}
_FALSE = {"off", "false", "no", "0"}


class ConfigError(ValueError):
    pass


def find_dictionary(name: str | Path) -> Path:
    """Resolve a dictionary path, falling back to the EMLEX_DICT_PATH directories."""
    path = Path(name)
    if path.exists():
        return path
    if not path.is_absolute():
        for d in os.environ.get(DICT_PATH_ENV, "").split(os.pathsep):
            if d and (Path(d) / path).exists():
                return Path(d) / path
    raise ConfigError(f"dictionary not found: {name}")


def parse_rules_file(text: str, source: str = "<rules>") -> RuleConfig:
    """Rule toggles from ``key=value`` lines.

    ``InEnSwap=off`` disables a rule; ``degree.worser=bad:comparative``
    adds an irregular degree form.  ``#`` starts a comment.
    """
    enabled = set(RULES)
    degrees = dict(DEFAULT_DEGREE_EXCEPTIONS)
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, value = (s.strip() for s in line.partition("="))
        if not eq or not key:
            raise ConfigError(f"{source}:{n}: expected key=value")
        if key.startswith("degree."):
            lemma, colon, degree = value.partition(":")
            if not colon or not lemma or degree not in DEGREES:
                raise ConfigError(f"{source}:{n}: expected lemma:comparative|superlative")
            degrees[key[len("degree."):].casefold()] = (lemma, degree)
        elif key in RULES:
            if value.lower() in _TRUE:
                enabled.add(key)
            elif value.lower() in _FALSE:
                enabled.discard(key)
            else:
                raise ConfigError(f"{source}:{n}: expected on or off, got {value!r}")
        else:
            raise ConfigError(f"{source}:{n}: unknown rule {key!r}")
    return RuleConfig(frozenset(enabled), degrees)


@dataclass
class RunConfig:
    corpus: list[str] = field(default_factory=list)
    base: str | None = None
    overlay: str | None = None
    contractions: str | None = None
    use_overlay: bool = True
    rules: list[str] = field(default_factory=lambda: sorted(RULES))
    degree_exceptions: dict[str, list[str]] = field(
        default_factory=lambda: {k: list(v) for k, v in DEFAULT_DEGREE_EXCEPTIONS.items()})
    format: str = "tsv"
    catchword_marker: str | None = None
    kwic_width: int = 5

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {', '.join(FORMATS)}")
        if self.kwic_width < 0:
            raise ConfigError("kwic width must be >= 0")
        unknown = set(self.rules) - set(RULES)
        if unknown:
            raise ConfigError(f"unknown rules: {', '.join(sorted(unknown))}")

    def rule_config(self) -> RuleConfig:
        return RuleConfig(frozenset(self.rules),
                          {k: (v[0], v[1]) for k, v in self.degree_exceptions.items()})

    def set_rules(self, rc: RuleConfig):
        self.rules = sorted(rc.enabled)
        self.degree_exceptions = {k: list(v) for k, v in sorted(rc.degree_exceptions.items())}

    def validate_paths(self):
        for p in self.corpus:
            if not Path(p).is_file():
                raise ConfigError(f"corpus file not found: {p}")
        for attr in ("base", "overlay", "contractions"):
            value = getattr(self, attr)
            if value is not None:
                setattr(self, attr, str(find_dictionary(value)))

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        return cls(**json.loads(text))

    def hash(self) -> str:
        """Digest of the analysis settings; corpus paths and output format excluded."""
        d = asdict(self)
        for k in ("corpus", "format", "kwic_width"):
            d.pop(k)
        blob = json.dumps(d, sort_keys=True, ensure_ascii=False).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()[:12]
