"""Bilingual comparability mappings and similarity mixing.

comparix computes document-pair comparability from a bilingual translation
dictionary, derives similarity matrices induced by that comparability
mapping, blends them with native cosine similarity under a single
parameter, and measures the effect on nearest-neighbor classification and
k-medoids clustering.
"""

from .comparability import (
    BilingualDictionary,
    LexiconView,
    Measure,
    binary_coverage,
    cluster_comparability,
    pairwise_comparability,
    translation_present,
    weighted_coverage,
    weighted_coverage_mean,
    weighted_coverage_pooled,
)
from .diagnostics import ComparixWarning, DegenerateInputWarning, FormatError
from .evaluation import MetricReport, accuracy, davies_bouldin, nmi, score_clustering
from .learners import CVReport, KMedoidsResult, Partition, kfold_cv, kmedoids, knn1_classify, loocv
from .matrices import (
    ComparabilityMatrix,
    MixParameter,
    SimilarityMatrix,
    induced_similarity_cols,
    induced_similarity_rows,
    mix,
    read_comparability_csv,
    read_similarity_csv,
    write_comparability_csv,
    write_similarity_csv,
)
from .synthetic import SyntheticTest, generate_suite, generate_test
from .text import (
    Corpus,
    Document,
    WeightedVector,
    cosine_similarity_matrix,
    inject_noise,
    normalize_tokens,
    prepare_corpus,
    read_corpus,
    read_stoplist,
    refine_corpus,
    tfidf_vectors,
    write_corpus,
)

__version__ = "0.1.0"

__all__ = [
    "BilingualDictionary",
    "ComparabilityMatrix",
    "ComparixWarning",
    "Corpus",
    "CVReport",
    "DegenerateInputWarning",
    "Document",
    "FormatError",
    "KMedoidsResult",
    "LexiconView",
    "Measure",
    "MetricReport",
    "MixParameter",
    "Partition",
    "SimilarityMatrix",
    "SyntheticTest",
    "WeightedVector",
    "accuracy",
    "binary_coverage",
    "cluster_comparability",
    "cosine_similarity_matrix",
    "davies_bouldin",
    "generate_suite",
    "generate_test",
    "induced_similarity_cols",
    "induced_similarity_rows",
    "inject_noise",
    "kfold_cv",
    "kmedoids",
    "knn1_classify",
    "loocv",
    "mix",
    "nmi",
    "normalize_tokens",
    "pairwise_comparability",
    "prepare_corpus",
    "read_comparability_csv",
    "read_corpus",
    "read_similarity_csv",
    "read_stoplist",
    "refine_corpus",
    "score_clustering",
    "tfidf_vectors",
    "translation_present",
    "weighted_coverage",
    "weighted_coverage_mean",
    "weighted_coverage_pooled",
    "write_comparability_csv",
    "write_corpus",
    "write_similarity_csv",
]
