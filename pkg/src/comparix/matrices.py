"""Dense similarity/comparability matrices, induced similarity, and mixing.

A comparability matrix links two document collections: rows are the first
collection, columns the second.  Treating row *i* as a feature vector for
document *i*, the cosine of two rows is a similarity between first-side
documents that depends only on the cross-side mapping; the same applies to
columns for the second side.  These "induced" similarities can then be
blended with a native (intra-collection) similarity through a single
parameter ``alpha``.

All matrix types are immutable after construction and safe to share across
threads.  Similarity matrices are symmetric bitwise: producers fill the
upper triangle and mirror it.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .diagnostics import FormatError, warn_degenerate

__all__ = [
    "SimilarityMatrix",
    "ComparabilityMatrix",
    "MixParameter",
    "induced_similarity_rows",
    "induced_similarity_cols",
    "mix",
    "write_matrix_csv",
    "read_similarity_csv",
    "read_comparability_csv",
]

# Cell format for matrix CSV files: 17 significant digits, enough for an
# exact float64 round trip through text.
_CELL_FORMAT = "{:.16e}"


def _check_ids(ids: Sequence[str], what: str) -> tuple[str, ...]:
    out = tuple(str(i) for i in ids)
    if len(set(out)) != len(out):
        raise ValueError(f"duplicate {what} ids")
    return out


def _freeze(values: np.ndarray) -> np.ndarray:
    arr = np.array(values, dtype=np.float64, copy=True)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class SimilarityMatrix:
    """Square symmetric similarity matrix over one document set.

    Invariants enforced at construction: values are finite, the matrix is
    square and exactly symmetric, and ``ids`` are unique and match the
    matrix order.
    """

    values: np.ndarray
    ids: tuple[str, ...]

    def __init__(self, values: np.ndarray, ids: Sequence[str]):
        arr = _freeze(values)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"similarity matrix must be square, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("similarity matrix contains non-finite values")
        if not np.array_equal(arr, arr.T):
            raise ValueError("similarity matrix is not symmetric")
        ids = _check_ids(ids, "document")
        if len(ids) != arr.shape[0]:
            raise ValueError(f"{len(ids)} ids for a {arr.shape[0]}x{arr.shape[1]} matrix")
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "ids", ids)

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True, eq=False)
class ComparabilityMatrix:
    """Rectangular comparability mapping between two document sets.

    Rows index the first-side documents, columns the second side.  Values
    are finite reals; dictionary-based measures produce values in [0, 1],
    synthetic mappings may be unbounded, so no clamping happens here (the
    observed range is reported through :meth:`value_range`).
    """

    values: np.ndarray
    row_ids: tuple[str, ...]
    col_ids: tuple[str, ...]

    def __init__(self, values: np.ndarray, row_ids: Sequence[str], col_ids: Sequence[str]):
        arr = _freeze(values)
        if arr.ndim != 2:
            raise ValueError(f"comparability matrix must be 2-D, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("comparability matrix contains non-finite values")
        row_ids = _check_ids(row_ids, "row")
        col_ids = _check_ids(col_ids, "column")
        if (len(row_ids), len(col_ids)) != arr.shape:
            raise ValueError(
                f"id counts ({len(row_ids)}, {len(col_ids)}) do not match shape {arr.shape}"
            )
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "row_ids", row_ids)
        object.__setattr__(self, "col_ids", col_ids)

    @property
    def rows(self) -> int:
        return self.values.shape[0]

    @property
    def cols(self) -> int:
        return self.values.shape[1]

    def transpose(self) -> "ComparabilityMatrix":
        return ComparabilityMatrix(self.values.T, self.col_ids, self.row_ids)

    def value_range(self) -> tuple[float, float]:
        """Observed (min, max) cell value, recorded in run manifests."""
        return float(self.values.min()), float(self.values.max())


@dataclass(frozen=True)
class MixParameter:
    """Blend weight for induced vs native similarity, in [0, 1]."""

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not np.isfinite(a) or not 0.0 <= a <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha!r}")
        object.__setattr__(self, "alpha", a)


def _mirror_upper(a: np.ndarray) -> np.ndarray:
    """Copy the strict upper triangle onto the lower one, bitwise."""
    out = np.triu(a)
    out += np.triu(a, 1).T
    return out


def _normalized_gram(gram: np.ndarray, ids: Sequence[str], axis_name: str) -> SimilarityMatrix:
    diag = np.diag(gram).copy()
    zero = diag <= 0.0
    if np.any(zero):
        zero_ids = [ids[i] for i in np.flatnonzero(zero)]
        warn_degenerate(
            f"zero-norm {axis_name} for documents {zero_ids}: "
            "self-similarity set to 1, cross-similarity to 0"
        )
    scale = np.where(zero, 1.0, diag)
    out = gram / np.sqrt(np.outer(scale, scale))
    # Cosine values can drift a hair past +/-1 in floating point.
    np.clip(out, -1.0, 1.0, out=out)
    out[zero, :] = 0.0
    out[:, zero] = 0.0
    out = _mirror_upper(out)
    np.fill_diagonal(out, 1.0)
    return SimilarityMatrix(out, ids)


def induced_similarity_rows(comp: ComparabilityMatrix) -> SimilarityMatrix:
    """Similarity over row documents induced by the comparability mapping.

    Cell (i, j) is the cosine of rows i and j of the comparability matrix:
    G(i,j)/sqrt(G(i,i)*G(j,j)) with G the row Gram product.  All-zero rows
    get self-similarity 1 and cross-similarity 0, with a warning naming
    them.
    """
    if comp.rows < 1 or comp.cols < 1:
        raise ValueError("comparability matrix must have at least one row and one column")
    gram = comp.values @ comp.values.T
    return _normalized_gram(gram, comp.row_ids, "comparability rows")


def induced_similarity_cols(comp: ComparabilityMatrix) -> SimilarityMatrix:
    """Similarity over column documents; identical contract on the column Gram."""
    if comp.rows < 1 or comp.cols < 1:
        raise ValueError("comparability matrix must have at least one row and one column")
    gram = comp.values.T @ comp.values
    return _normalized_gram(gram, comp.col_ids, "comparability columns")


def mix(
    native: SimilarityMatrix,
    induced: SimilarityMatrix,
    alpha: MixParameter | float,
) -> SimilarityMatrix:
    """Linear blend ``alpha*induced + (1-alpha)*native``, cell by cell.

    Both operands must cover the same documents in the same order.
    """
    if not isinstance(alpha, MixParameter):
        alpha = MixParameter(float(alpha))
    if native.ids != induced.ids:
        raise ValueError(
            f"mix operands disagree: native has {native.n} ids starting "
            f"{native.ids[:3]}, induced has {induced.n} ids starting {induced.ids[:3]}"
        )
    a = alpha.alpha
    out = a * induced.values + (1.0 - a) * native.values
    return SimilarityMatrix(out, native.ids)


# ---------------------------------------------------------------------------
# Matrix CSV format: header row holds column ids (corner cell empty), each
# body row starts with its row id.  Shared by both matrix kinds.
# ---------------------------------------------------------------------------


def write_matrix_csv(
    path: str | Path,
    values: np.ndarray,
    row_ids: Sequence[str],
    col_ids: Sequence[str],
) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([""] + list(col_ids))
        for rid, row in zip(row_ids, np.asarray(values)):
            writer.writerow([rid] + [_CELL_FORMAT.format(v) for v in row])


def _read_matrix_csv(path: str | Path) -> tuple[np.ndarray, list[str], list[str]]:
    path = str(path)
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise FormatError("empty matrix file", path, 1) from None
        if len(header) < 2:
            raise FormatError("header must list at least one column id", path, 1)
        col_ids = header[1:]
        row_ids: list[str] = []
        rows: list[list[float]] = []
        for lineno, record in enumerate(reader, start=2):
            if not record:
                continue
            if len(record) != len(col_ids) + 1:
                raise FormatError(
                    f"expected {len(col_ids) + 1} fields, found {len(record)}", path, lineno
                )
            row_ids.append(record[0])
            try:
                rows.append([float(x) for x in record[1:]])
            except ValueError as exc:
                raise FormatError(f"bad numeric cell: {exc}", path, lineno) from None
    if not rows:
        raise FormatError("matrix file has no data rows", path, 2)
    return np.array(rows, dtype=np.float64), row_ids, col_ids


def read_similarity_csv(path: str | Path) -> SimilarityMatrix:
    values, row_ids, col_ids = _read_matrix_csv(path)
    if row_ids != col_ids:
        raise FormatError("similarity matrix row ids differ from column ids", str(path), 1)
    try:
        return SimilarityMatrix(values, row_ids)
    except ValueError as exc:
        raise FormatError(str(exc), str(path)) from None


def read_comparability_csv(path: str | Path) -> ComparabilityMatrix:
    values, row_ids, col_ids = _read_matrix_csv(path)
    try:
        return ComparabilityMatrix(values, row_ids, col_ids)
    except ValueError as exc:
        raise FormatError(str(exc), str(path)) from None


def write_similarity_csv(path: str | Path, sim: SimilarityMatrix) -> None:
    write_matrix_csv(path, sim.values, sim.ids, sim.ids)


def write_comparability_csv(path: str | Path, comp: ComparabilityMatrix) -> None:
    write_matrix_csv(path, comp.values, comp.row_ids, comp.col_ids)
