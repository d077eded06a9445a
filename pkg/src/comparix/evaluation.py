"""External and internal clustering quality metrics.

Accuracy scores a predicted partition against ground truth under the best
one-to-one cluster/class matching, found by an exact optimal-assignment
solve on the contingency table.  Normalized mutual information divides the
partitions' mutual information by the average of their entropies.  The
Davies-Bouldin index is the internal check: lower means tighter clusters
relative to the separation of their centers.  Similarity-only data has no
coordinate centroids, so cluster centers are medoids throughout, matching
the clustering pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .learners import Partition
from .matrices import SimilarityMatrix

__all__ = ["MetricReport", "accuracy", "nmi", "davies_bouldin", "score_clustering"]


def _contingency(pred: Partition, truth: Partition) -> np.ndarray:
    """Counts with true classes on rows, predicted clusters on columns."""
    if len(pred) != len(truth):
        raise ValueError("partitions cover different document counts")
    table = np.zeros((truth.n_clusters, pred.n_clusters), dtype=np.int64)
    np.add.at(table, (truth.assignment, pred.assignment), 1)
    return table


def accuracy(pred: Partition, truth: Partition) -> float:
    """Fraction of documents correct under the best cluster-class matching.

    The contingency table is zero-padded to square when the cluster and
    class counts differ, which generalizes the usual equal-K definition.
    """
    table = _contingency(pred, truth)
    size = max(table.shape)
    padded = np.zeros((size, size), dtype=np.int64)
    padded[: table.shape[0], : table.shape[1]] = table
    rows, cols = linear_sum_assignment(-padded)
    return int(padded[rows, cols].sum()) / len(pred)


def nmi(pred: Partition, truth: Partition) -> float:
    """Mutual information normalized by the average of the two entropies.

    Natural logarithms; empty joint cells contribute nothing (the 0*log 0
    convention).  Identical set partitions score exactly 1; if exactly one
    side is a single cluster the score is 0.
    """
    table = _contingency(pred, truth)
    if pred.as_sets() == truth.as_sets():
        return 1.0
    n = len(pred)
    p_truth = table.sum(axis=1) / n
    p_pred = table.sum(axis=0) / n
    h_truth = -sum(p * math.log(p) for p in p_truth if p > 0)
    h_pred = -sum(p * math.log(p) for p in p_pred if p > 0)
    if h_truth == 0.0 or h_pred == 0.0:
        return 0.0
    info = 0.0
    for i in range(table.shape[0]):
        for j in range(table.shape[1]):
            if table[i, j] == 0:
                continue
            p_joint = table[i, j] / n
            info += p_joint * math.log(p_joint / (p_truth[i] * p_pred[j]))
    value = info / ((h_truth + h_pred) / 2.0)
    return min(max(value, 0.0), 1.0)


def _medoid(dist: np.ndarray, members: np.ndarray) -> int:
    intra = dist[np.ix_(members, members)].sum(axis=0)
    return int(members[int(np.argmin(intra))])


def davies_bouldin(sim: SimilarityMatrix, part: Partition) -> float:
    """Davies-Bouldin index over ``d = 1 - sim`` with medoid centers.

    Per cluster, scatter is the mean distance of members to the medoid;
    the index averages each cluster's worst-case ratio of summed scatters
    to inter-medoid distance.  Coincident medoids make the ratio undefined
    and raise.
    """
    if len(part) != sim.n:
        raise ValueError("partition does not cover the similarity matrix")
    if part.n_clusters < 2:
        raise ValueError("Davies-Bouldin needs at least two clusters")
    dist = 1.0 - sim.values
    medoids = []
    scatters = []
    for k in range(part.n_clusters):
        members = part.members(k)
        if members.size == 0:
            raise ValueError(f"cluster {k} is empty")
        medoid = _medoid(dist, members)
        medoids.append(medoid)
        scatters.append(float(dist[medoid, members].mean()))
    total = 0.0
    for k in range(part.n_clusters):
        worst = -math.inf
        for j in range(part.n_clusters):
            if j == k:
                continue
            separation = dist[medoids[k], medoids[j]]
            if separation == 0.0:
                raise ValueError(
                    f"clusters {k} and {j} have coincident medoids "
                    f"({medoids[k]}, {medoids[j]}); their separation is 0"
                )
            worst = max(worst, (scatters[k] + scatters[j]) / separation)
        total += worst
    return total / part.n_clusters


@dataclass(frozen=True)
class MetricReport:
    """Bundle of clustering scores plus provenance metadata."""

    ac: float
    nmi: float
    db: float | None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0.0 <= self.ac <= 1.0:
            raise ValueError(f"accuracy out of range: {self.ac}")
        if not 0.0 <= self.nmi <= 1.0:
            raise ValueError(f"NMI out of range: {self.nmi}")
        if self.db is not None and self.db < 0.0:
            raise ValueError(f"Davies-Bouldin must be >= 0: {self.db}")


def score_clustering(
    pred: Partition, truth: Partition, sim: SimilarityMatrix | None = None
) -> MetricReport:
    """Accuracy and NMI against truth, plus Davies-Bouldin when a similarity
    matrix is supplied."""
    metadata = {
        "n": len(pred),
        "clusters_predicted": pred.n_clusters,
        "clusters_true": truth.n_clusters,
        "center": "medoid",
    }
    if pred.n_clusters != truth.n_clusters:
        metadata["assignment_padded"] = True
    db = davies_bouldin(sim, pred) if sim is not None else None
    return MetricReport(ac=accuracy(pred, truth), nmi=nmi(pred, truth), db=db, metadata=metadata)
