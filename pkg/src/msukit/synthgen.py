"""Seeded synthetic datasets with informative and non-informative attributes.

Three attribute kinds are supported:

* non-informative: uniform over ``{0..V-1}``, independent of the class;
* Kononenko-informative: the class decides which half of the label range the
  value falls in (lower half ``{0..V//2-1}`` or upper half), the value is
  uniform inside that half;
* XOR members: uniform binary features whose parity, flipped with a small
  probability, *is* the class.

Every column draws from its own PCG64 stream keyed by
``(seed, trial, column index)`` through ``numpy.random.SeedSequence``, so a
column's content never depends on how many other columns exist or in which
order trials run. The class is column 0, features are 1..m in config order.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import ValidationError
from .infotheory import Dataset, LabelColumn

NONINFORMATIVE = "noninformative"
KONONENKO = "kononenko"
XOR = "xor"
ROLES = (NONINFORMATIVE, KONONENKO, XOR)

CLASS_NAME = "class"
_SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class FeatureSpec:
    name: str
    cardinality: int
    role: str = NONINFORMATIVE
    k: int = 1
    group: int = 0

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValidationError(f"feature {self.name!r}: unknown role {self.role!r}")
        if self.cardinality < 1:
            raise ValidationError(f"feature {self.name!r}: cardinality must be >= 1")
        if self.role == XOR and self.cardinality != 2:
            raise ValidationError(f"feature {self.name!r}: XOR members must be binary")
        if self.role == KONONENKO:
            if self.cardinality < 2:
                raise ValidationError(f"feature {self.name!r}: informative features need cardinality >= 2")
            if self.k < 1:
                raise ValidationError(f"feature {self.name!r}: k must be >= 1")


@dataclass(frozen=True)
class GeneratorConfig:
    class_cardinality: int
    features: tuple[FeatureSpec, ...]
    n_rows: int
    xor_noise: float = 0.05
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "features", tuple(self.features))
        self.validate()

    def validate(self):
        if not self.features:
            raise ValidationError("config has no features")
        if self.class_cardinality < 1:
            raise ValidationError("class cardinality must be >= 1")
        if self.n_rows < 1:
            raise ValidationError("n_rows must be >= 1")
        if not 0.0 <= self.xor_noise <= 0.5:
            raise ValidationError("xor noise must lie in [0, 0.5]")
        names = [f.name for f in self.features]
        if len(set(names)) != len(names) or CLASS_NAME in names:
            raise ValidationError("feature names must be unique and differ from 'class'")
        groups = {}
        for f in self.features:
            if f.role == XOR:
                groups.setdefault(f.group, []).append(f)
        if groups:
            if self.class_cardinality != 2:
                raise ValidationError("XOR groups require a binary class (class cardinality 2)")
            if len(groups) > 1:
                raise ValidationError("at most one XOR group can define the class")
            if any(len(g) < 2 for g in groups.values()):
                raise ValidationError("an XOR group needs at least two members")
        if self.class_cardinality < 2 and any(f.role == KONONENKO for f in self.features):
            raise ValidationError("informative features need class cardinality >= 2")

    @property
    def xor_members(self) -> list[int]:
        return [i for i, f in enumerate(self.features) if f.role == XOR]

    def with_rows(self, n_rows: int) -> "GeneratorConfig":
        return replace(self, n_rows=n_rows)


def column_rng(seed: int, trial: int, column: int) -> np.random.Generator:
    """Independent generator for one (seed, trial, column) triple."""
    ss = np.random.SeedSequence([int(seed) & _SEED_MASK, int(trial), int(column)])
    return np.random.Generator(np.random.PCG64(ss))


def gen_class(n: int, C: int, rng: np.random.Generator) -> LabelColumn:
    if C < 1:
        raise ValidationError("class cardinality must be >= 1")
    return LabelColumn(rng.integers(0, C, size=n), C, CLASS_NAME)


def kononenko_subset_probability(i: int, C: int, k: int = 1) -> float:
    """Probability that an informative attribute falls in its lower half given class index ``i`` (1-based)."""
    if not 1 <= i <= C:
        raise ValidationError(f"class index {i} outside 1..{C}")
    if k < 1:
        raise ValidationError("k must be >= 1")
    p = 1.0 / (i + k * C)
    return p if i % 2 == 0 else 1.0 - p


def _kononenko_values(V, class_values, C, k, rng):
    if V < 2:
        raise ValidationError("informative features need cardinality >= 2")
    n = class_values.shape[0]
    lower_size = V // 2
    p_lower = np.array([kononenko_subset_probability(i, C, k) for i in range(1, C + 1)])
    in_lower = rng.random(n) < p_lower[class_values]
    low = rng.integers(0, lower_size, size=n)
    high = rng.integers(lower_size, V, size=n)
    return np.where(in_lower, low, high)


def gen_kononenko(n: int, V: int, class_col: LabelColumn, C: int, k: int,
                  rng: np.random.Generator, name: str = "") -> LabelColumn:
    if len(class_col) != n:
        raise ValidationError("class column length differs from n")
    if class_col.values.size and class_col.values.max() >= C:
        raise ValidationError("class labels exceed C")
    return LabelColumn(_kononenko_values(V, class_col.values, C, k, rng), V, name)


def gen_noninformative(n: int, V: int, rng: np.random.Generator, name: str = "") -> LabelColumn:
    if V < 1:
        raise ValidationError("cardinality must be >= 1")
    return LabelColumn(rng.integers(0, V, size=n), V, name)


def _noisy_parity(features: Sequence[np.ndarray], noise: float, rng) -> np.ndarray:
    parity = np.bitwise_xor.reduce(np.stack(features), axis=0)
    flip = rng.random(parity.shape[0]) < noise
    return parity ^ flip.astype(np.int64)


def gen_xor_group(n: int, m: int, noise: float, rng: np.random.Generator):
    """``m`` uniform binary features and a class equal to their parity, flipped w.p. ``noise``."""
    if m < 2:
        raise ValidationError("an XOR group needs at least two members")
    if not 0.0 <= noise <= 0.5:
        raise ValidationError("xor noise must lie in [0, 0.5]")
    feats = [rng.integers(0, 2, size=n) for _ in range(m)]
    cls = _noisy_parity(feats, noise, rng)
    return ([LabelColumn(f, 2, f"f{i}") for i, f in enumerate(feats, 1)],
            LabelColumn(cls, 2, CLASS_NAME))


def generate_arrays(config: GeneratorConfig, trial: int = 0) -> list[np.ndarray]:
    """Raw label arrays, features in config order followed by the class."""
    n, C = config.n_rows, config.class_cardinality
    feats: list[np.ndarray | None] = [None] * len(config.features)
    xor_idx = config.xor_members
    for i in xor_idx:
        feats[i] = column_rng(config.seed, trial, i + 1).integers(0, 2, size=n)
    class_rng = column_rng(config.seed, trial, 0)
    if xor_idx:
        cls = _noisy_parity([feats[i] for i in xor_idx], config.xor_noise, class_rng)
    else:
        cls = class_rng.integers(0, C, size=n)
    for i, f in enumerate(config.features):
        if f.role == XOR:
            continue
        rng = column_rng(config.seed, trial, i + 1)
        if f.role == KONONENKO:
            feats[i] = _kononenko_values(f.cardinality, cls, C, f.k, rng)
        else:
            feats[i] = rng.integers(0, f.cardinality, size=n)
    return feats + [cls]


def generate_dataset(config: GeneratorConfig, trial: int = 0) -> Dataset:
    """Materialise one dataset; a pure function of ``(config, trial)``."""
    arrays = generate_arrays(config, trial)
    cols = [LabelColumn(a, f.cardinality, f.name) for a, f in zip(arrays, config.features)]
    cols.append(LabelColumn(arrays[-1], config.class_cardinality, CLASS_NAME))
    return Dataset(tuple(cols), class_index=len(cols) - 1)


def make_features(*, xor: int = 0, informative: Sequence[int] = (), noninformative: Sequence[int] = (),
                  k: int = 1) -> tuple[FeatureSpec, ...]:
    """Feature list named f1, f2, ... : XOR members first, then informative, then non-informative."""
    specs = [(2, XOR)] * xor + [(v, KONONENKO) for v in informative] + [(v, NONINFORMATIVE) for v in noninformative]
    return tuple(FeatureSpec(f"f{i}", card, role, k=k) for i, (card, role) in enumerate(specs, 1))
