"""Seeded random benchmark: two clustered similarity spaces plus a mapping.

Each test draws two independent collections of clustered elements.  Within
a collection, same-cluster pairs get similarity ``0.5 + v_s * N(0,1)`` and
cross-cluster pairs ``-0.5 + v_s * N(0,1)``; each unordered pair is drawn
once and mirrored, the diagonal is fixed at 1.  The two collections are
connected by a comparability matrix whose cell for a (first-side cluster k,
second-side cluster l) pair is ``N(0,1) * v_c + level(l, k)``, where the
per-cluster-pair levels are themselves standard normal draws.  With the
default ``v_c = 3 * v_s`` the cross-space mapping is three times noisier
than the native similarities, so similarity induced from it alone should
classify worse than the native similarities do.

Reproducibility contract: one generator per test seed, consumed in a fixed
order (cluster counts, cluster sizes, first-space noise, second-space
noise, cluster levels, mapping noise).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrices import ComparabilityMatrix, SimilarityMatrix

__all__ = ["SyntheticTest", "generate_test", "generate_suite"]

CLUSTER_COUNT_RANGE = (3, 18)
CLUSTER_SIZE_RANGE = (20, 40)


@dataclass(frozen=True, eq=False)
class SyntheticTest:
    """One generated instance: two similarity spaces and their mapping.

    ``comp`` has first-side documents on rows and second-side documents on
    columns; ``cluster_map`` keeps its generation-time orientation
    (second-side clusters on rows).
    """

    sim_first: SimilarityMatrix
    sim_second: SimilarityMatrix
    comp: ComparabilityMatrix
    labels_first: np.ndarray
    labels_second: np.ndarray
    cluster_map: np.ndarray
    seed: int

    @property
    def n_clusters_first(self) -> int:
        return int(self.labels_first.max()) + 1

    @property
    def n_clusters_second(self) -> int:
        return int(self.labels_second.max()) + 1


def _clustered_similarity(
    rng: np.random.Generator, labels: np.ndarray, spread: float, ids: list[str]
) -> SimilarityMatrix:
    same = labels[:, None] == labels[None, :]
    base = np.where(same, 0.5, -0.5)
    noise = rng.standard_normal((labels.size, labels.size))
    values = base + spread * noise
    values = np.triu(values, 1)
    values += values.T
    np.fill_diagonal(values, 1.0)
    return SimilarityMatrix(values, ids)


def generate_test(seed: int, v_s: float = 1.0, v_c: float = 3.0) -> SyntheticTest:
    """Generate one test instance, deterministic per seed."""
    if v_s <= 0 or v_c <= 0:
        raise ValueError("spread parameters must be positive")
    rng = np.random.default_rng(seed)
    lo_c, hi_c = CLUSTER_COUNT_RANGE
    lo_s, hi_s = CLUSTER_SIZE_RANGE
    n_clusters_first = int(rng.integers(lo_c, hi_c + 1))
    n_clusters_second = int(rng.integers(lo_c, hi_c + 1))
    sizes_first = rng.integers(lo_s, hi_s + 1, size=n_clusters_first)
    sizes_second = rng.integers(lo_s, hi_s + 1, size=n_clusters_second)
    labels_first = np.repeat(np.arange(n_clusters_first), sizes_first)
    labels_second = np.repeat(np.arange(n_clusters_second), sizes_second)
    ids_first = [f"a{i:04d}" for i in range(labels_first.size)]
    ids_second = [f"b{i:04d}" for i in range(labels_second.size)]

    sim_first = _clustered_similarity(rng, labels_first, v_s, ids_first)
    sim_second = _clustered_similarity(rng, labels_second, v_s, ids_second)

    # Per-cluster-pair comparability levels, second-side clusters on rows.
    cluster_map = rng.standard_normal((n_clusters_second, n_clusters_first))
    level = cluster_map[labels_second[:, None], labels_first[None, :]]
    mapping = rng.standard_normal((labels_second.size, labels_first.size)) * v_c + level
    # Store with first-side documents on rows, the orientation every
    # downstream consumer uses.
    comp = ComparabilityMatrix(mapping.T, ids_first, ids_second)

    labels_first.flags.writeable = False
    labels_second.flags.writeable = False
    cluster_map.flags.writeable = False
    return SyntheticTest(
        sim_first=sim_first,
        sim_second=sim_second,
        comp=comp,
        labels_first=labels_first,
        labels_second=labels_second,
        cluster_map=cluster_map,
        seed=int(seed),
    )


def generate_suite(
    base_seed: int, count: int = 20, v_s: float = 1.0, v_c: float = 3.0
) -> list[SyntheticTest]:
    """Independent tests with per-test seeds derived from ``base_seed``."""
    if count < 1:
        raise ValueError("count must be >= 1")
    seeds = np.random.SeedSequence(base_seed).generate_state(count)
    return [generate_test(int(s), v_s=v_s, v_c=v_c) for s in seeds]
