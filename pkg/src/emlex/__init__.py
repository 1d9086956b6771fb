"""Early Modern English lexicon, normalization and concordance tools."""

__version__ = "0.1.0"
