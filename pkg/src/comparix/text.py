"""Tokenized corpora, tf-idf vectors, native cosine similarity, refinement.

The refinement pipeline turns a large noisy corpus into a desk-size
comparable one: per class, documents are ranked by how many same-class
neighbors they have above a similarity threshold, the best ``top_n`` are
kept, and the result is then deliberately re-noised by injecting randomly
drawn leftover documents into each class.  Injected documents adopt the
class they are injected into, which is what makes them noise.

Inputs are assumed pre-tokenized (one whitespace-separated token list per
document); normalization is case folding plus stoplist and punctuation
filtering, so pre-lemmatized input passes through untouched apart from
filtering.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .diagnostics import FormatError, warn_degenerate
from .matrices import SimilarityMatrix, _normalized_gram

__all__ = [
    "Document",
    "Corpus",
    "WeightedVector",
    "normalize_tokens",
    "tfidf_vectors",
    "cosine_similarity_matrix",
    "refine_corpus",
    "inject_noise",
    "prepare_corpus",
    "read_corpus",
    "write_corpus",
    "read_stoplist",
]


@dataclass(frozen=True)
class Document:
    """One tokenized document."""

    id: str
    language: str
    label: str | None
    tokens: tuple[str, ...]

    def __init__(self, id: str, language: str, label: str | None, tokens: Iterable[str]):
        object.__setattr__(self, "id", str(id))
        object.__setattr__(self, "language", str(language))
        object.__setattr__(self, "label", None if label is None else str(label))
        object.__setattr__(self, "tokens", tuple(tokens))

    def term_counts(self) -> Counter:
        return Counter(self.tokens)


@dataclass(frozen=True, eq=False)
class Corpus:
    """A labeled set of same-language documents."""

    language: str
    documents: tuple[Document, ...]

    def __init__(self, language: str, documents: Iterable[Document]):
        docs = tuple(documents)
        ids = [d.id for d in docs]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate document ids in corpus")
        for d in docs:
            if d.language != language:
                raise ValueError(
                    f"document {d.id!r} has language {d.language!r}, corpus is {language!r}"
                )
        object.__setattr__(self, "language", str(language))
        object.__setattr__(self, "documents", docs)

    def __len__(self) -> int:
        return len(self.documents)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(d.id for d in self.documents)

    @property
    def labels(self) -> tuple[str | None, ...]:
        return tuple(d.label for d in self.documents)

    @property
    def lexicon(self) -> frozenset[str]:
        terms: set[str] = set()
        for d in self.documents:
            terms.update(d.tokens)
        return frozenset(terms)

    def class_names(self) -> list[str]:
        return sorted({d.label for d in self.documents if d.label is not None})

    def subset(self, ids: Iterable[str]) -> "Corpus":
        """Documents with the given ids, in corpus order."""
        wanted = set(ids)
        return Corpus(self.language, [d for d in self.documents if d.id in wanted])


def normalize_tokens(raw_tokens: Iterable[str], stoplist: frozenset[str] | set[str] = frozenset()):
    """Case-fold, drop stoplist terms and tokens without any alphanumeric char."""
    out = []
    for token in raw_tokens:
        term = token.casefold()
        if term in stoplist:
            continue
        if not any(ch.isalnum() for ch in term):
            continue
        out.append(term)
    return out


@dataclass(frozen=True, eq=False)
class WeightedVector:
    """Sparse non-negative term weights; exact zeros are omitted."""

    weights: Mapping[str, float]

    def __init__(self, weights: Mapping[str, float]):
        clean: dict[str, float] = {}
        for term in sorted(weights):
            w = float(weights[term])
            if not math.isfinite(w) or w < 0.0:
                raise ValueError(f"weight of {term!r} must be finite and non-negative, got {w}")
            if w != 0.0:
                clean[term] = w
        object.__setattr__(self, "weights", clean)

    def __len__(self) -> int:
        return len(self.weights)

    def norm(self) -> float:
        return math.sqrt(sum(w * w for w in self.weights.values()))

    def dot(self, other: "WeightedVector") -> float:
        if len(other.weights) < len(self.weights):
            self, other = other, self
        return sum(w * other.weights[t] for t, w in self.weights.items() if t in other.weights)


def tfidf_vectors(corpus: Corpus) -> list[WeightedVector]:
    """Classic tf-idf: ``tf(w, d) * ln(N / df(w))``, no smoothing.

    Terms present in every document get idf 0 and drop out of the vectors;
    empty documents yield empty vectors with a warning.
    """
    if len(corpus) == 0:
        raise ValueError("corpus is empty")
    n_docs = len(corpus)
    df = Counter()
    for doc in corpus.documents:
        df.update(set(doc.tokens))
    idf = {term: math.log(n_docs / count) for term, count in df.items()}
    vectors = []
    empty_ids = []
    for doc in corpus.documents:
        counts = doc.term_counts()
        vectors.append(WeightedVector({t: c * idf[t] for t, c in counts.items()}))
        if not counts:
            empty_ids.append(doc.id)
    if empty_ids:
        warn_degenerate(f"documents with no tokens: {empty_ids}")
    return vectors


def cosine_similarity_matrix(
    vectors: Sequence[WeightedVector], ids: Sequence[str] | None = None
) -> SimilarityMatrix:
    """Pairwise cosine similarity; zero-norm vectors warn and fall back to
    self-similarity 1 / cross-similarity 0."""
    if not vectors:
        raise ValueError("vector list is empty")
    if ids is None:
        ids = [str(i) for i in range(len(vectors))]
    vocab = sorted(set().union(*(v.weights.keys() for v in vectors)))
    index = {t: j for j, t in enumerate(vocab)}
    dense = np.zeros((len(vectors), max(len(vocab), 1)), dtype=np.float64)
    for i, v in enumerate(vectors):
        for t, w in v.weights.items():
            dense[i, index[t]] = w
    gram = dense @ dense.T
    return _normalized_gram(gram, ids, "tf-idf vectors")


def refine_corpus(sim: SimilarityMatrix, threshold: float = 0.5, top_n: int = 100) -> list[str]:
    """Ids of the ``top_n`` documents with most neighbors above ``threshold``.

    Neighbor counts exclude the document itself; ties break by ascending id.
    """
    if not -1.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must lie in [-1, 1], got {threshold}")
    if top_n < 1:
        raise ValueError("top_n must be >= 1")
    hits = sim.values >= threshold
    counts = hits.sum(axis=1) - np.diag(hits)
    order = sorted(range(sim.n), key=lambda i: (-int(counts[i]), sim.ids[i]))
    return [sim.ids[i] for i in order[: min(top_n, sim.n)]]


def inject_noise(selected: Corpus, pool: Corpus, fraction: float, seed: int = 0) -> Corpus:
    """Grow every class by ``round(fraction * size)`` documents drawn from the pool.

    Draws are uniform without replacement across the whole operation and
    deterministic for a fixed seed.  Drawn documents are relabeled with the
    class they join.  A too-small pool is drained with a warning.
    """
    if fraction < 0:
        raise ValueError("fraction must be >= 0")
    if pool.language != selected.language:
        raise ValueError(
            f"pool language {pool.language!r} differs from corpus language {selected.language!r}"
        )
    overlap = set(selected.ids) & set(pool.ids)
    if overlap:
        raise ValueError(f"pool overlaps the selected corpus: {sorted(overlap)[:5]}")
    rng = np.random.default_rng(seed)
    remaining = list(pool.documents)
    injected: list[Document] = []
    for label in selected.class_names():
        class_size = sum(1 for d in selected.documents if d.label == label)
        want = round(fraction * class_size)
        if want > len(remaining):
            warn_degenerate(
                f"pool exhausted for class {label!r}: "
                f"wanted {want}, drawing {len(remaining)}"
            )
            want = len(remaining)
        if want == 0:
            continue
        picks = rng.choice(len(remaining), size=want, replace=False)
        for p in picks:
            doc = remaining[p]
            injected.append(Document(doc.id, doc.language, label, doc.tokens))
        for p in sorted(picks, reverse=True):
            del remaining[p]
    return Corpus(selected.language, selected.documents + tuple(injected))


def prepare_corpus(
    corpus: Corpus,
    stoplist: frozenset[str] | set[str] = frozenset(),
    threshold: float = 0.5,
    top_n: int = 100,
    noise_fraction: float = 0.5,
    seed: int = 0,
) -> Corpus:
    """Normalize, refine per class, then inject noise: the full corpus prep.

    Document frequencies for the refinement-time tf-idf are estimated on
    the whole normalized corpus; the per-class similarity matrices reuse
    those weights.  Unlabeled documents never enter the refined selection
    but stay eligible as noise.
    """
    normalized = Corpus(
        corpus.language,
        [
            Document(d.id, d.language, d.label, normalize_tokens(d.tokens, stoplist))
            for d in corpus.documents
        ],
    )
    vectors = tfidf_vectors(normalized)
    by_id = dict(zip(normalized.ids, vectors))
    selected_ids: set[str] = set()
    for label in normalized.class_names():
        class_docs = [d for d in normalized.documents if d.label == label]
        class_sim = cosine_similarity_matrix(
            [by_id[d.id] for d in class_docs], [d.id for d in class_docs]
        )
        selected_ids.update(refine_corpus(class_sim, threshold, top_n))
    selected = normalized.subset(selected_ids)
    pool = Corpus(
        normalized.language, [d for d in normalized.documents if d.id not in selected_ids]
    )
    if len(pool) == 0 and noise_fraction > 0:
        warn_degenerate("refinement selected every document; no pool left for noise")
        return selected
    if noise_fraction == 0:
        return selected
    return inject_noise(selected, pool, noise_fraction, seed)


# ---------------------------------------------------------------------------
# Corpus file format: UTF-8 TSV, one document per line with fields
# id, language, label (may be empty), whitespace-joined tokens.
# ---------------------------------------------------------------------------


def read_corpus(path: str | Path) -> Corpus:
    docs: list[Document] = []
    language: str | None = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            fields = line.split("\t")
            if len(fields) != 4:
                raise FormatError(
                    f"expected 4 tab-separated fields (id, language, label, tokens), "
                    f"found {len(fields)}",
                    str(path),
                    lineno,
                )
            doc_id, lang, label, tokens = fields
            if not doc_id:
                raise FormatError("empty document id", str(path), lineno)
            if language is None:
                language = lang
            elif lang != language:
                raise FormatError(
                    f"language {lang!r} differs from the corpus language {language!r}",
                    str(path),
                    lineno,
                )
            docs.append(Document(doc_id, lang, label or None, tokens.split()))
    if not docs:
        raise FormatError("corpus file has no documents", str(path))
    try:
        return Corpus(language, docs)
    except ValueError as exc:
        raise FormatError(str(exc), str(path)) from None


def write_corpus(path: str | Path, corpus: Corpus) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for d in corpus.documents:
            fh.write(f"{d.id}\t{d.language}\t{d.label or ''}\t{' '.join(d.tokens)}\n")


def read_stoplist(path: str | Path) -> frozenset[str]:
    """One term per line, case-folded; blank lines ignored."""
    terms = set()
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            term = raw.strip().casefold()
            if term:
                terms.add(term)
    return frozenset(terms)
