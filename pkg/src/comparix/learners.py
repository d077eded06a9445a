"""Similarity-based 1-NN classification and k-medoids clustering.

Both learners consume a precomputed :class:`~comparix.matrices.SimilarityMatrix`
directly.  Clustering converts similarity to distance as ``d = 1 - s``;
since every decision in here is an argmin/argmax, any monotone conversion
would produce identical results, and ``1 - s`` keeps cosine-derived
distances in [0, 1].  Synthetic similarities can make distances negative,
which is harmless to comparisons.

All randomized procedures take explicit seeds and embed them in their
reports; a result depends only on its seed, never on scheduling.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .diagnostics import warn_degenerate
from .matrices import SimilarityMatrix

__all__ = [
    "Partition",
    "CVReport",
    "KMedoidsResult",
    "knn1_classify",
    "kfold_cv",
    "loocv",
    "kmedoids",
]


@dataclass(frozen=True, eq=False)
class Partition:
    """Assignment of documents to clusters labeled 0..n_clusters-1."""

    assignment: np.ndarray
    n_clusters: int

    def __init__(self, assignment: Sequence[int], n_clusters: int):
        arr = np.array(assignment, dtype=np.int64, copy=True)
        if arr.ndim != 1:
            raise ValueError("assignment must be one-dimensional")
        if n_clusters < 1:
            raise ValueError("n_clusters must be >= 1")
        if arr.size and (arr.min() < 0 or arr.max() >= n_clusters):
            raise ValueError(f"cluster ids must lie in [0, {n_clusters})")
        arr.flags.writeable = False
        object.__setattr__(self, "assignment", arr)
        object.__setattr__(self, "n_clusters", int(n_clusters))

    @classmethod
    def from_labels(cls, labels: Sequence) -> "Partition":
        """Relabel arbitrary class labels to dense ids in sorted label order."""
        uniques, inverse = np.unique(np.asarray(labels), return_inverse=True)
        return cls(inverse, len(uniques))

    def __len__(self) -> int:
        return int(self.assignment.size)

    def members(self, cluster: int) -> np.ndarray:
        return np.flatnonzero(self.assignment == cluster)

    def sizes(self) -> np.ndarray:
        return np.bincount(self.assignment, minlength=self.n_clusters)

    def as_sets(self) -> frozenset[frozenset[int]]:
        """The partition as a set of nonempty document-index sets."""
        return frozenset(
            frozenset(self.members(k).tolist())
            for k in range(self.n_clusters)
            if self.members(k).size
        )


@dataclass(frozen=True, eq=False)
class CVReport:
    """Per-fold error rates of a seeded cross-validation run."""

    fold_errors: tuple[float, ...]
    fold_assignment: np.ndarray
    k: int
    seed: int

    def __post_init__(self):
        if any(not 0.0 <= e <= 1.0 for e in self.fold_errors):
            raise ValueError("fold error rates must lie in [0, 1]")
        self.fold_assignment.flags.writeable = False

    @cached_property
    def mean_error(self) -> float:
        return float(np.mean(self.fold_errors))

    @cached_property
    def std_error(self) -> float:
        return float(np.std(self.fold_errors))


def knn1_classify(
    sim: SimilarityMatrix,
    labels: Sequence,
    train_mask: Sequence[bool],
    test_index: int,
):
    """Label of the most similar training document, self excluded.

    Ties break toward the lowest document index.
    """
    labels = np.asarray(labels)
    mask = np.asarray(train_mask, dtype=bool).copy()
    mask[test_index] = False
    if not mask.any():
        raise ValueError("training set is empty")
    scores = np.where(mask, sim.values[test_index], -np.inf)
    return labels[int(np.argmax(scores))]


def _fold_assignment(labels: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Stratified folds: per-class round-robin after a seeded shuffle.

    The round-robin cursor carries across classes, which keeps total fold
    sizes within one document of each other.
    """
    fold_of = np.empty(labels.size, dtype=np.int64)
    cursor = 0
    for label in np.unique(labels):
        idx = np.flatnonzero(labels == label)
        if idx.size < k:
            warn_degenerate(
                f"class {label!r} has {idx.size} < {k} documents; "
                "it will be absent from some folds"
            )
        perm = rng.permutation(idx)
        fold_of[perm] = (cursor + np.arange(idx.size)) % k
        cursor = (cursor + idx.size) % k
    return fold_of


def kfold_cv(sim: SimilarityMatrix, labels: Sequence, k: int = 10, seed: int = 0) -> CVReport:
    """Stratified k-fold cross-validation of the 1-NN classifier."""
    labels = np.asarray(labels)
    if k < 2:
        raise ValueError("k must be >= 2")
    if k > sim.n:
        raise ValueError(f"cannot split {sim.n} documents into {k} folds")
    if labels.size != sim.n:
        raise ValueError("labels length does not match the similarity matrix")
    rng = np.random.default_rng(seed)
    fold_of = _fold_assignment(labels, k, rng)
    errors = []
    for fold in range(k):
        test_idx = np.flatnonzero(fold_of == fold)
        train_idx = np.flatnonzero(fold_of != fold)
        scores = sim.values[np.ix_(test_idx, train_idx)]
        predicted = labels[train_idx[np.argmax(scores, axis=1)]]
        errors.append(float(np.mean(predicted != labels[test_idx])))
    return CVReport(tuple(errors), fold_of, k, seed)


def loocv(sim: SimilarityMatrix, labels: Sequence) -> float:
    """Leave-one-out error rate of the 1-NN classifier (deterministic)."""
    labels = np.asarray(labels)
    if sim.n < 2:
        raise ValueError("leave-one-out needs at least two documents")
    scores = sim.values.copy()
    np.fill_diagonal(scores, -np.inf)
    predicted = labels[np.argmax(scores, axis=1)]
    return float(np.mean(predicted != labels))


@dataclass(frozen=True, eq=False)
class KMedoidsResult:
    """Converged clustering plus the objective trace used to audit descent."""

    partition: Partition
    medoids: tuple[int, ...]
    objective: float
    objective_trace: tuple[float, ...]
    n_iter: int
    converged: bool
    seed: int


def _assign_to_medoids(dist: np.ndarray, medoids: np.ndarray) -> np.ndarray:
    # argmin over the medoid axis; medoids are kept sorted, so ties resolve
    # to the lowest medoid document index.
    return np.argmin(dist[:, medoids], axis=1)


def kmedoids(
    sim: SimilarityMatrix,
    n_clusters: int,
    seed: int = 0,
    max_iter: int = 100,
) -> KMedoidsResult:
    """Alternating k-medoids over ``d = 1 - sim``.

    Each round assigns every document to its nearest medoid (ties to the
    lowest medoid index), then re-centers each cluster on the member with
    minimal summed intra-cluster distance (ties to the lowest index).  The
    total assignment cost never increases; iteration stops when the medoid
    set is stable or after ``max_iter`` rounds.

    A cluster emptied by duplicate documents gets its medoid reseeded to
    the document farthest from the old medoid, with a warning.
    """
    n = sim.n
    if n_clusters > n:
        raise ValueError(f"cannot place {n_clusters} medoids among {n} documents")
    if n_clusters < 1:
        raise ValueError("n_clusters must be >= 1")
    dist = 1.0 - sim.values
    rng = np.random.default_rng(seed)
    medoids = np.sort(rng.choice(n, size=n_clusters, replace=False))

    trace: list[float] = []
    converged = False
    iteration = 0
    assignment = _assign_to_medoids(dist, medoids)
    for iteration in range(1, max_iter + 1):
        # Reseed medoids of empty clusters before re-centering.
        for kappa in range(n_clusters):
            if not np.any(assignment == kappa):
                candidates = np.setdiff1d(np.arange(n), medoids, assume_unique=False)
                if candidates.size == 0:
                    continue
                farthest = candidates[int(np.argmax(dist[medoids[kappa], candidates]))]
                warn_degenerate(
                    f"cluster of medoid {medoids[kappa]} became empty; "
                    f"reseeding its medoid to document {farthest}"
                )
                medoids[kappa] = farthest
                medoids = np.sort(medoids)
                assignment = _assign_to_medoids(dist, medoids)
        trace.append(float(dist[np.arange(n), medoids[assignment]].sum()))

        new_medoids = medoids.copy()
        for kappa in range(n_clusters):
            members = np.flatnonzero(assignment == kappa)
            if members.size == 0:
                continue
            intra = dist[np.ix_(members, members)].sum(axis=0)
            new_medoids[kappa] = members[int(np.argmin(intra))]
        new_medoids = np.sort(new_medoids)
        if np.array_equal(new_medoids, medoids):
            converged = True
            break
        medoids = new_medoids
        assignment = _assign_to_medoids(dist, medoids)
    if not converged:
        trace.append(float(dist[np.arange(n), medoids[assignment]].sum()))

    return KMedoidsResult(
        partition=Partition(assignment, n_clusters),
        medoids=tuple(int(m) for m in medoids),
        objective=trace[-1],
        objective_trace=tuple(trace),
        n_iter=iteration,
        converged=converged,
        seed=seed,
    )
