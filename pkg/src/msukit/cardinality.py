"""Univariate/multivariate cardinality and the sample-size rule."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

from .errors import CardinalityOverflowError, EmptyInputError, ValidationError
from .infotheory import LabelColumn

# counts are stored and written as signed 64-bit integers
MAX_COUNT = 2**63 - 1


@dataclass(frozen=True)
class CardinalityProfile:
    per_feature: tuple[tuple[str, int], ...]
    class_cardinality: int

    def __post_init__(self):
        object.__setattr__(self, "per_feature", tuple((str(n), int(c)) for n, c in self.per_feature))
        _check_cards([self.class_cardinality] + [c for _, c in self.per_feature])

    @classmethod
    def from_cards(cls, class_cardinality: int, cards: Iterable[int]) -> "CardinalityProfile":
        return cls(tuple((f"f{i}", c) for i, c in enumerate(cards, 1)), class_cardinality)

    @property
    def multivariate(self) -> int:
        return multivariate_cardinality(self.class_cardinality, [c for _, c in self.per_feature])


def _check_cards(cards):
    for c in cards:
        if int(c) != c or c < 1:
            raise ValidationError(f"cardinality must be a positive integer, got {c!r}")


def univariate_cardinality(col: LabelColumn, mode: Literal["declared", "observed"] = "declared") -> int:
    if mode == "declared":
        return col.cardinality
    if mode == "observed":
        if len(col) == 0:
            raise EmptyInputError()
        return int(np.unique(col.values).size)
    raise ValidationError(f"unknown cardinality mode {mode!r}")


def multivariate_cardinality(class_cardinality: int, feature_cards: Iterable[int]) -> int:
    """Number of possible label combinations of the features and the class."""
    feature_cards = list(feature_cards)
    if not feature_cards:
        raise ValidationError("need at least one feature")
    _check_cards([class_cardinality] + feature_cards)
    total = int(class_cardinality)
    for c in feature_cards:
        total *= int(c)
    if total > MAX_COUNT:
        raise CardinalityOverflowError()
    return total


def recommended_sample_size(class_cardinality: int, feature_cards: Iterable[int], factor: int = 10) -> int:
    """``factor`` times the multivariate cardinality (10 by default)."""
    if int(factor) != factor or factor < 1:
        raise ValidationError(f"factor must be a positive integer, got {factor!r}")
    size = int(factor) * multivariate_cardinality(class_cardinality, feature_cards)
    if size > MAX_COUNT:
        raise CardinalityOverflowError()
    return size
