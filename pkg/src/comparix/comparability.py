"""Dictionary-based comparability between documents in two languages.

Three measures are provided, all driven by a bilingual translation
dictionary:

* ``binary_coverage`` counts, over the distinct dictionary entries present
  on each side, the fraction whose translation shows up on the other side.
* ``weighted_coverage_mean`` weights each entry by its occurrence count
  divided by its number of translations, and averages the two per-side
  coverage ratios.
* ``weighted_coverage_pooled`` uses the same weighting but pools the two
  sides into a single ratio, which makes the two variants coincide exactly
  whenever the per-side totals are equal.

All three return values in [0, 1].  Degenerate inputs (no dictionary entry
present on either side) yield 0 with a warning instead of an error, so
pairwise matrix assembly survives pathological documents.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Literal, Mapping, Sequence

import numpy as np

from .diagnostics import FormatError, warn_degenerate
from .learners import Partition
from .matrices import ComparabilityMatrix

__all__ = [
    "BilingualDictionary",
    "LexiconView",
    "Measure",
    "translation_present",
    "binary_coverage",
    "weighted_coverage",
    "weighted_coverage_mean",
    "weighted_coverage_pooled",
    "pairwise_comparability",
    "cluster_comparability",
]

Direction = Literal["forward", "reverse"]


@dataclass(frozen=True, eq=False)
class BilingualDictionary:
    """Term translations in both directions.

    ``forward`` maps first-language terms to their second-language
    translations; ``reverse`` is the exact transpose relation.  Every entry
    has at least one translation.
    """

    forward: Mapping[str, frozenset[str]]
    reverse: Mapping[str, frozenset[str]]

    def __init__(self, forward: Mapping[str, Iterable[str]]):
        fwd: dict[str, frozenset[str]] = {}
        rev: dict[str, set[str]] = {}
        for term, translations in forward.items():
            ts = frozenset(translations)
            if not ts:
                raise ValueError(f"dictionary entry {term!r} has no translations")
            fwd[term] = ts
            for t in ts:
                rev.setdefault(t, set()).add(term)
        object.__setattr__(self, "forward", fwd)
        object.__setattr__(self, "reverse", {t: frozenset(s) for t, s in rev.items()})

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]]) -> "BilingualDictionary":
        forward: dict[str, set[str]] = {}
        for first, second in pairs:
            forward.setdefault(first, set()).add(second)
        return cls(forward)

    @classmethod
    def load(cls, path: str | Path) -> "BilingualDictionary":
        """Read a tab-separated ``term_lang1<TAB>term_lang2`` file.

        Lines are case-folded, duplicates deduplicated; blank lines and
        ``#`` comments are skipped.
        """
        pairs: list[tuple[str, str]] = []
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                fields = line.split("\t")
                if len(fields) != 2 or not fields[0].strip() or not fields[1].strip():
                    raise FormatError(
                        "expected exactly two tab-separated terms", str(path), lineno
                    )
                pairs.append((fields[0].strip().casefold(), fields[1].strip().casefold()))
        if not pairs:
            raise FormatError("dictionary file has no entries", str(path))
        return cls.from_pairs(pairs)

    def entries(self, direction: Direction = "forward") -> Mapping[str, frozenset[str]]:
        return self.forward if direction == "forward" else self.reverse

    def translation_count(self, term: str, direction: Direction = "forward") -> int:
        """Number of distinct translations of a dictionary entry."""
        return len(self.entries(direction)[term])

    def reversed(self) -> "BilingualDictionary":
        """Swap the two languages."""
        return BilingualDictionary(self.reverse)

    def __len__(self) -> int:
        return len(self.forward)


@dataclass(frozen=True, eq=False)
class LexiconView:
    """Distinct terms of one document or corpus with occurrence counts."""

    terms: frozenset[str]
    tf: Mapping[str, int]

    def __init__(self, tf: Mapping[str, int]):
        counts = {}
        for term, count in tf.items():
            if count < 1:
                raise ValueError(f"term {term!r} has occurrence count {count} < 1")
            counts[term] = int(count)
        object.__setattr__(self, "tf", counts)
        object.__setattr__(self, "terms", frozenset(counts))

    @classmethod
    def from_tokens(cls, tokens: Iterable[str]) -> "LexiconView":
        return cls(Counter(tokens))


def translation_present(
    term: str,
    dictionary: BilingualDictionary,
    other_lexicon: LexiconView,
    direction: Direction = "forward",
) -> int:
    """1 if at least one translation of ``term`` occurs in the other lexicon."""
    translations = dictionary.entries(direction)[term]
    return 1 if not translations.isdisjoint(other_lexicon.terms) else 0


def binary_coverage(
    lex_first: LexiconView, lex_second: LexiconView, dictionary: BilingualDictionary
) -> float:
    """Fraction of present dictionary entries with a translation on the other side.

    Sums run over distinct terms only; occurrence counts play no role, so
    the result is exactly invariant under any rescaling of term counts.
    """
    first_entries = sorted(lex_first.terms & dictionary.forward.keys())
    second_entries = sorted(lex_second.terms & dictionary.reverse.keys())
    denom = len(first_entries) + len(second_entries)
    if denom == 0:
        warn_degenerate("no dictionary entry occurs on either side; coverage defined as 0")
        return 0.0
    hits = sum(translation_present(w, dictionary, lex_second, "forward") for w in first_entries)
    hits += sum(translation_present(w, dictionary, lex_first, "reverse") for w in second_entries)
    return hits / denom


def weighted_coverage(
    lexicon: LexiconView,
    dictionary: BilingualDictionary,
    other_lexicon: LexiconView,
    direction: Direction = "forward",
) -> tuple[float, float]:
    """Occurrence-weighted coverage mass of one side.

    Each dictionary entry present in ``lexicon`` contributes its occurrence
    count divided by its number of translations; the first component keeps
    only entries with a translation present on the other side, the second
    sums all of them.  Returns ``(covered, total)`` with
    ``0 <= covered <= total``.
    """
    entries = sorted(lexicon.terms & dictionary.entries(direction).keys())
    covered = 0.0
    total = 0.0
    for term in entries:
        weight = lexicon.tf[term] / dictionary.translation_count(term, direction)
        total += weight
        if translation_present(term, dictionary, other_lexicon, direction):
            covered += weight
    return covered, total


def weighted_coverage_mean(
    lex_first: LexiconView, lex_second: LexiconView, dictionary: BilingualDictionary
) -> float:
    """Arithmetic mean of the two per-side weighted coverage ratios."""
    covered_1, total_1 = weighted_coverage(lex_first, dictionary, lex_second, "forward")
    covered_2, total_2 = weighted_coverage(lex_second, dictionary, lex_first, "reverse")
    if total_1 == 0.0 or total_2 == 0.0:
        warn_degenerate("weighted coverage total is zero on a side; measure defined as 0")
        return 0.0
    return 0.5 * (covered_1 / total_1 + covered_2 / total_2)


def weighted_coverage_pooled(
    lex_first: LexiconView, lex_second: LexiconView, dictionary: BilingualDictionary
) -> float:
    """Pooled weighted coverage ratio over both sides."""
    covered_1, total_1 = weighted_coverage(lex_first, dictionary, lex_second, "forward")
    covered_2, total_2 = weighted_coverage(lex_second, dictionary, lex_first, "reverse")
    if total_1 + total_2 == 0.0:
        warn_degenerate("weighted coverage total is zero on both sides; measure defined as 0")
        return 0.0
    return (covered_1 + covered_2) / (total_1 + total_2)


class Measure(str, Enum):
    """Comparability measure selector; values match the CLI codes."""

    LG = "lg"
    VA1 = "va1"
    VA2 = "va2"

    def compute(
        self, lex_first: LexiconView, lex_second: LexiconView, dictionary: BilingualDictionary
    ) -> float:
        return _MEASURE_FUNCTIONS[self](lex_first, lex_second, dictionary)


_MEASURE_FUNCTIONS = {
    Measure.LG: binary_coverage,
    Measure.VA1: weighted_coverage_mean,
    Measure.VA2: weighted_coverage_pooled,
}


def pairwise_comparability(
    docs_first: Sequence[LexiconView],
    docs_second: Sequence[LexiconView],
    dictionary: BilingualDictionary,
    measure: Measure | str = Measure.VA2,
    row_ids: Sequence[str] | None = None,
    col_ids: Sequence[str] | None = None,
) -> ComparabilityMatrix:
    """Comparability matrix with one cell per document pair.

    Degenerate cells warn (once per distinct message) and land at 0; the
    assembly itself never aborts.
    """
    if not docs_first or not docs_second:
        raise ValueError("both document lists must be nonempty")
    measure = Measure(measure)
    if row_ids is None:
        row_ids = [str(i) for i in range(len(docs_first))]
    if col_ids is None:
        col_ids = [str(j) for j in range(len(docs_second))]
    values = np.empty((len(docs_first), len(docs_second)), dtype=np.float64)
    for i, lex_a in enumerate(docs_first):
        for j, lex_b in enumerate(docs_second):
            values[i, j] = measure.compute(lex_a, lex_b, dictionary)
    return ComparabilityMatrix(values, row_ids, col_ids)


def cluster_comparability(
    comp: ComparabilityMatrix, part_rows: Partition, part_cols: Partition
) -> np.ndarray:
    """Mean comparability per (row cluster, column cluster) pair.

    Returns a ``part_rows.n_clusters x part_cols.n_clusters`` array; pairs
    touching an empty cluster are reported as missing (NaN).
    """
    if len(part_rows.assignment) != comp.rows or len(part_cols.assignment) != comp.cols:
        raise ValueError("partitions do not cover the matrix rows/columns")
    out = np.full((part_rows.n_clusters, part_cols.n_clusters), np.nan)
    for k in range(part_rows.n_clusters):
        rows = np.flatnonzero(part_rows.assignment == k)
        if rows.size == 0:
            continue
        for l in range(part_cols.n_clusters):
            cols = np.flatnonzero(part_cols.assignment == l)
            if cols.size == 0:
                continue
            out[k, l] = float(comp.values[np.ix_(rows, cols)].mean())
    return out
