"""Plug-in information measures over integer-encoded discrete columns.

All quantities are in bits and are computed from empirical frequencies of
the observed labels. Sums that combine several entropies go through
``math.fsum`` so the result does not depend on column or cell order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    ConsistencyError,
    EmptyInputError,
    SelectionError,
    TooFewVariablesError,
    ValidationError,
)

#: tolerated excursion outside a measure's range before it counts as a bug
SLACK = 1e-12

# joint codes above this many cells are tabulated with np.unique instead of bincount
_BINCOUNT_LIMIT = 1 << 22
_CODE_LIMIT = 1 << 62


@dataclass(frozen=True, eq=False)
class LabelColumn:
    """One discrete attribute: label indices in ``[0, cardinality)``."""

    values: np.ndarray
    cardinality: int
    name: str = ""

    def __post_init__(self):
        values = np.asarray(self.values)
        if values.ndim != 1:
            raise ValidationError("column values must be one-dimensional")
        if values.size and not np.issubdtype(values.dtype, np.integer):
            raise ValidationError(f"column {self.name!r}: labels must be integers")
        values = values.astype(np.int64, copy=True)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        card = int(self.cardinality)
        if card < 1:
            raise ValidationError(f"column {self.name!r}: cardinality must be >= 1")
        object.__setattr__(self, "cardinality", card)
        if values.size and (values.min() < 0 or values.max() >= card):
            raise ValidationError(
                f"column {self.name!r}: labels must lie in [0, {card})"
            )

    def __len__(self):
        return self.values.shape[0]

    def __eq__(self, other):
        if not isinstance(other, LabelColumn):
            return NotImplemented
        return (
            self.name == other.name
            and self.cardinality == other.cardinality
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Dataset:
    columns: tuple[LabelColumn, ...]
    class_index: int | None = None

    def __post_init__(self):
        cols = tuple(self.columns)
        object.__setattr__(self, "columns", cols)
        if not cols:
            raise ValidationError("dataset needs at least one column")
        lengths = {len(c) for c in cols}
        if len(lengths) != 1:
            raise ValidationError(f"columns differ in length: {sorted(lengths)}")
        names = [c.name for c in cols]
        if len(set(names)) != len(names):
            raise ValidationError("column names must be unique")
        if self.class_index is not None and not 0 <= self.class_index < len(cols):
            raise ValidationError(f"class_index {self.class_index} out of range")

    @classmethod
    def from_arrays(cls, arrays: Mapping[str, Sequence[int]], cardinalities=None,
                    class_name: str | None = None) -> "Dataset":
        """Build a dataset from named label arrays.

        Cardinalities default to ``max + 1`` of each array.
        """
        cardinalities = cardinalities or {}
        cols = []
        for name, vals in arrays.items():
            vals = np.asarray(vals, dtype=np.int64)
            card = cardinalities.get(name, int(vals.max()) + 1 if vals.size else 1)
            cols.append(LabelColumn(vals, card, name))
        class_index = None
        if class_name is not None:
            class_index = [c.name for c in cols].index(class_name)
        return cls(tuple(cols), class_index)

    @property
    def n_rows(self) -> int:
        return len(self.columns[0])

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.columns]

    def position(self, key: int | str) -> int:
        if isinstance(key, str):
            try:
                return self.names.index(key)
            except ValueError:
                raise SelectionError(f"unknown column {key!r}") from None
        if isinstance(key, (int, np.integer)) and 0 <= key < len(self.columns):
            return int(key)
        raise SelectionError(f"bad selection: column position {key!r}")

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        return self.class_index == other.class_index and self.columns == other.columns

    __hash__ = None


@dataclass(frozen=True)
class JointCounts:
    """Occurrence counts of the observed row tuples of a column selection."""

    cells: dict[tuple[int, ...], int]
    total: int


@dataclass
class MeasureReport:
    columns: list[str]
    entropies: dict[str, float]
    su: dict[tuple[str, str], float] = field(default_factory=dict)
    total_correlation: float | None = None
    msu: float | None = None


def _select(ds: Dataset, cols) -> list[int]:
    if isinstance(cols, (int, str, np.integer)):
        cols = [cols]
    positions = [ds.position(c) for c in cols]
    if not positions:
        raise SelectionError("bad selection: no columns")
    if len(set(positions)) != len(positions):
        raise SelectionError("bad selection: duplicate columns")
    if ds.n_rows == 0:
        raise EmptyInputError()
    return positions


def _entropy_of_counts(counts: np.ndarray) -> float:
    counts = counts[counts > 0]
    if counts.size == 0:
        raise EmptyInputError()
    # the path depends only on the number of occupied cells, so relabelling cannot switch it
    if counts.size <= 64:
        cs = counts.tolist()
        total = sum(cs)
        return max(0.0, -math.fsum(c / total * math.log2(c / total) for c in cs))
    p = counts / counts.sum()
    return max(0.0, -math.fsum((p * np.log2(p)).tolist()))


def _joint_codes(arrays: Sequence[np.ndarray], cards: Sequence[int]):
    """Mixed-radix encode rows; returns (codes, number of cells) or None on overflow."""
    size = 1
    for c in cards:
        size *= c
    if size > _CODE_LIMIT:
        return None
    codes = np.zeros(arrays[0].shape[0], dtype=np.int64)
    for arr, card in zip(arrays, cards):
        codes *= card
        codes += arr
    return codes, size


def joint_count_array(arrays: Sequence[np.ndarray], cards: Sequence[int]) -> np.ndarray:
    """Counts of the distinct observed row tuples, in no particular order."""
    if len(arrays) == 1:
        return np.bincount(arrays[0], minlength=1)
    encoded = _joint_codes(arrays, cards)
    if encoded is None:
        _, counts = np.unique(np.stack(arrays, axis=1), axis=0, return_counts=True)
        return counts
    codes, size = encoded
    if size <= _BINCOUNT_LIMIT:
        return np.bincount(codes, minlength=1)
    _, counts = np.unique(codes, return_counts=True)
    return counts


def entropy_of_arrays(arrays: Sequence[np.ndarray], cards: Sequence[int]) -> float:
    return _entropy_of_counts(joint_count_array(arrays, cards))


def entropy(col: LabelColumn) -> float:
    """Plug-in Shannon entropy of one column in bits."""
    if len(col) == 0:
        raise EmptyInputError()
    return _entropy_of_counts(np.bincount(col.values))


def joint_counts(ds: Dataset, cols) -> JointCounts:
    positions = _select(ds, cols)
    rows = np.stack([ds.columns[p].values for p in positions], axis=1)
    keys, counts = np.unique(rows, axis=0, return_counts=True)
    cells = {tuple(int(v) for v in k): int(n) for k, n in zip(keys, counts)}
    return JointCounts(cells, ds.n_rows)


def joint_entropy(ds: Dataset, cols) -> float:
    positions = _select(ds, cols)
    arrays = [ds.columns[p].values for p in positions]
    cards = [ds.columns[p].cardinality for p in positions]
    return entropy_of_arrays(arrays, cards)


def _pair(ds: Dataset, x, y) -> tuple[int, int]:
    px, py = _select(ds, [x, y])
    return px, py


def conditional_entropy(ds: Dataset, x, y) -> float:
    """H(X|Y) = H(X,Y) - H(Y)."""
    px, py = _pair(ds, x, y)
    h = joint_entropy(ds, [px, py]) - entropy(ds.columns[py])
    return _clamp(h, 0.0, entropy(ds.columns[px]), "conditional entropy")


def information_gain(ds: Dataset, x, y) -> float:
    """IG(X|Y) = H(X) - H(X|Y), computed symmetrically as H(X)+H(Y)-H(X,Y)."""
    px, py = _pair(ds, x, y)
    hx = entropy(ds.columns[px])
    hy = entropy(ds.columns[py])
    ig = math.fsum([hx, hy, -joint_entropy(ds, [px, py])])
    return _clamp(ig, 0.0, min(hx, hy), "information gain")


def symmetrical_uncertainty(ds: Dataset, x, y) -> float:
    """2 IG / (H(X) + H(Y)); 0 when both columns are constant."""
    px, py = _pair(ds, x, y)
    arrays = [ds.columns[px].values, ds.columns[py].values]
    cards = [ds.columns[px].cardinality, ds.columns[py].cardinality]
    return msu_of_arrays(arrays, cards)


def _clamp(value: float, lo: float, hi: float, what: str) -> float:
    if value < lo - SLACK or value > hi + SLACK:
        raise ConsistencyError(f"{what} {value!r} outside [{lo}, {hi}]")
    return min(max(value, lo), hi)


def _correlation_parts(arrays, cards) -> tuple[float, float]:
    """(total correlation, sum of marginal entropies) of already-selected arrays."""
    marginals = [_entropy_of_counts(np.bincount(a, minlength=1)) for a in arrays]
    h_sum = math.fsum(marginals)
    h_joint = entropy_of_arrays(arrays, cards)
    c = _clamp(math.fsum(marginals + [-h_joint]), 0.0, math.inf, "total correlation")
    return c, h_sum


def total_correlation_of_arrays(arrays, cards) -> float:
    if len(arrays) < 2:
        raise TooFewVariablesError()
    return _correlation_parts(arrays, cards)[0]


def msu_of_arrays(arrays, cards) -> float:
    """MSU straight from label arrays; used by the simulation hot path."""
    n = len(arrays)
    if n < 2:
        raise TooFewVariablesError()
    c, h_sum = _correlation_parts(arrays, cards)
    if h_sum == 0.0:
        return 0.0
    return _clamp(n / (n - 1) * (c / h_sum), 0.0, 1.0, "MSU")


def total_correlation(ds: Dataset, cols) -> float:
    """Sum of marginal entropies minus the joint entropy."""
    if isinstance(cols, (int, str)) or len(cols) < 2:
        raise TooFewVariablesError()
    positions = _select(ds, cols)
    return total_correlation_of_arrays(
        [ds.columns[p].values for p in positions],
        [ds.columns[p].cardinality for p in positions],
    )


def msu(ds: Dataset, cols) -> float:
    """Multivariate symmetrical uncertainty of the selected columns.

    ``n/(n-1) * C / sum(H)``; lies in [0, 1] and equals SU for two columns.
    Returns 0 when every selected column is constant.
    """
    if isinstance(cols, (int, str)) or len(cols) < 2:
        raise TooFewVariablesError()
    positions = _select(ds, cols)
    return msu_of_arrays(
        [ds.columns[p].values for p in positions],
        [ds.columns[p].cardinality for p in positions],
    )


def measure_report(ds: Dataset, cols=None, su_pairs=None) -> MeasureReport:
    """Entropies of ``cols`` plus C and MSU over them, and SU for ``su_pairs``.

    When ``su_pairs`` is None and the dataset has a class, every other
    selected column is paired with the class.
    """
    positions = _select(ds, range(len(ds.columns)) if cols is None else cols)
    names = [ds.columns[p].name for p in positions]
    report = MeasureReport(names, {n: entropy(ds.columns[p]) for n, p in zip(names, positions)})
    if su_pairs is None:
        su_pairs = []
        if ds.class_index is not None:
            cls = ds.class_index
            su_pairs = [(p, cls) for p in positions if p != cls]
    for x, y in su_pairs:
        px, py = _pair(ds, x, y)
        report.su[(ds.columns[px].name, ds.columns[py].name)] = symmetrical_uncertainty(ds, px, py)
    if len(positions) >= 2:
        report.total_correlation = total_correlation(ds, positions)
        report.msu = msu(ds, positions)
    return report
