"""Monte Carlo runner: trial-averaged measures, sweeps, stop rule, figure presets.

Trial ``t`` of every point draws from the streams keyed by
``(master_seed, t, column)``; results are gathered in trial order before any
reduction, so the numbers are identical for every thread count.
"""
from __future__ import annotations

import hashlib
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Sequence

import numpy as np

from . import synthgen
from .cardinality import recommended_sample_size
from .errors import NotConvergedError, ValidationError
from .infotheory import msu_of_arrays
from .synthgen import CLASS_NAME, GeneratorConfig

log = logging.getLogger(__name__)

AXES = ("cardinality", "features", "samples")
DEFAULT_SEED = 20190417
DEFAULT_TRIALS = 1000
#: cardinalities listed for the generated attributes
CARDINALITY_LIST = (2, 4, 5, 8, 10, 16, 20, 30, 32, 40, 64)
FIG1A_CARDINALITIES = (2, 4, 5, 8, 10, 16, 20, 32, 64)


def doubling_schedule(start: int = 10, count: int = 10) -> tuple[int, ...]:
    return tuple(start * 2**i for i in range(count))


DEFAULT_SCHEDULE = doubling_schedule()


@dataclass(frozen=True)
class Measure:
    """``kind`` is "su" or "msu"; ``columns=None`` means all features plus the class."""

    kind: str = "msu"
    columns: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("su", "msu"):
            raise ValidationError(f"unknown measure kind {self.kind!r}")
        if self.kind == "su" and (self.columns is None or len(self.columns) != 2):
            raise ValidationError("SU needs exactly two columns")
        if self.columns is not None and len(self.columns) < 2:
            raise ValidationError("need at least two variables")

    @property
    def label(self) -> str:
        cols = "all" if self.columns is None else ",".join(self.columns)
        return f"{self.kind.upper()}({cols})"


def su_vs_class(name: str) -> Measure:
    return Measure("su", (name, CLASS_NAME))


@dataclass(frozen=True)
class ExperimentConfig:
    base: GeneratorConfig
    axis: str
    values: tuple[int, ...]
    trials: int = DEFAULT_TRIALS
    measures: tuple[Measure, ...] = (Measure(),)
    master_seed: int = DEFAULT_SEED
    calculated: bool = False
    factor: int = 10
    label: str = "experiment"

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        object.__setattr__(self, "measures", tuple(self.measures))
        if self.axis not in AXES:
            raise ValidationError(f"sweep axis must be one of {AXES}")
        if not self.values:
            raise ValidationError("sweep values must be non-empty")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValidationError("sweep values must be strictly increasing")
        if self.trials < 1:
            raise ValidationError("trials must be >= 1")
        if not self.measures:
            raise ValidationError("no measures requested")

    def fingerprint(self) -> str:
        blob = json.dumps(asdict(self), sort_keys=True, default=list)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class CurvePoint:
    x: int
    mean: float
    stddev: float
    trials: int


@dataclass
class SweepResult:
    measure: str
    points: list[CurvePoint]
    fingerprint: str

    @property
    def xs(self):
        return [p.x for p in self.points]

    @property
    def means(self):
        return [p.mean for p in self.points]


@dataclass
class StopRuleResult:
    sample_size: int
    trace: list[tuple[int, float, float]] = field(default_factory=list)


def config_at(exp: ExperimentConfig, x: int) -> GeneratorConfig:
    """Generator config of one sweep position."""
    base = exp.base
    if exp.axis == "cardinality":
        feats = tuple(f if f.role == synthgen.XOR else replace(f, cardinality=x) for f in base.features)
        cfg = replace(base, features=feats)
    elif exp.axis == "features":
        proto = base.features[0]
        cfg = replace(base, features=tuple(replace(proto, name=f"f{i}") for i in range(1, x + 1)))
    else:
        cfg = replace(base, n_rows=x)
    if exp.calculated:
        n = recommended_sample_size(cfg.class_cardinality, [f.cardinality for f in cfg.features], exp.factor)
        cfg = replace(cfg, n_rows=n)
    return replace(cfg, seed=exp.master_seed)


def _measure_selectors(cfg: GeneratorConfig, measures: Sequence[Measure]):
    names = [f.name for f in cfg.features] + [CLASS_NAME]
    cards = [f.cardinality for f in cfg.features] + [cfg.class_cardinality]
    out = []
    for m in measures:
        if m.columns is None:
            idx = list(range(len(names)))
        else:
            try:
                idx = [names.index(c) for c in m.columns]
            except ValueError:
                raise ValidationError(f"measure {m.label} names a column not in {names}") from None
        out.append((idx, [cards[i] for i in idx]))
    return out


def _trial_values(cfg, selectors, trial):
    arrays = synthgen.generate_arrays(cfg, trial)
    return [msu_of_arrays([arrays[i] for i in idx], cards) for idx, cards in selectors]


def trial_matrix(cfg: GeneratorConfig, measures: Sequence[Measure], trials: int, threads: int = 1) -> np.ndarray:
    """``(trials, len(measures))`` array of per-trial measure values, rows in trial order."""
    selectors = _measure_selectors(cfg, measures)
    if threads > 1 and trials > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda t: _trial_values(cfg, selectors, t), range(trials)))
    else:
        rows = [_trial_values(cfg, selectors, t) for t in range(trials)]
    return np.array(rows, dtype=np.float64).reshape(trials, len(measures))


def _summarise(x, column):
    trials = column.shape[0]
    std = float(np.std(column, ddof=1)) if trials > 1 else 0.0
    return CurvePoint(int(x), float(np.mean(column)), std, trials)


def run_point(exp: ExperimentConfig, x: int, threads: int = 1) -> list[CurvePoint]:
    """Mean and stddev of every requested measure at sweep value ``x``."""
    cfg = config_at(exp, x)
    values = trial_matrix(cfg, exp.measures, exp.trials, threads)
    return [_summarise(x, values[:, j]) for j in range(len(exp.measures))]


def sweep(exp: ExperimentConfig, threads: int = 1) -> list[SweepResult]:
    """One SweepResult per measure, points in sweep order."""
    fp = exp.fingerprint()
    results = [SweepResult(f"{exp.label}:{m.label}", [], fp) for m in exp.measures]
    for x in exp.values:
        log.info("%s: x=%d", exp.label, x)
        for res, point in zip(results, run_point(exp, x, threads)):
            res.points.append(point)
    return results


def stop_rule_search(exp: ExperimentConfig, threshold: float = 0.01,
                     schedule: Sequence[int] = DEFAULT_SCHEDULE, threads: int = 1) -> StopRuleResult:
    """First schedule entry whose trial-mean MSU moved by less than ``threshold``.

    The trace holds ``(n, mean, delta)`` for every evaluated entry; the first
    entry has delta NaN. Raises NotConvergedError (with the trace) when the
    schedule runs out.
    """
    schedule = [int(n) for n in schedule]
    if len(schedule) < 2 or any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise ValidationError("schedule must be strictly increasing with at least two entries")
    measure = [m for m in exp.measures if m.kind == "msu"][:1] or list(exp.measures[:1])
    trace = []
    prev = None
    for n in schedule:
        cfg = replace(exp.base, n_rows=n, seed=exp.master_seed)
        mean = float(np.mean(trial_matrix(cfg, measure, exp.trials, threads)[:, 0]))
        delta = float("nan") if prev is None else abs(mean - prev)
        trace.append((n, mean, delta))
        log.info("stop rule: n=%d mean=%.6f delta=%.6f", n, mean, delta)
        if prev is not None and delta < threshold:
            return StopRuleResult(n, trace)
        prev = mean
    raise NotConvergedError(trace, threshold)


# ---------------------------------------------------------------- presets

def _gen(features, class_card=2, n_rows=1000, noise=0.05):
    return GeneratorConfig(class_card, features, n_rows, noise)


def _families(fig: str) -> list[ExperimentConfig]:
    make = synthgen.make_features
    if fig == "1a":
        base = _gen(make(informative=[2], noninformative=[2]), class_card=10, n_rows=1000)
        return [ExperimentConfig(base, "cardinality", FIG1A_CARDINALITIES, label="1a",
                                 measures=(su_vs_class("f1"), su_vs_class("f2"), Measure("msu")))]
    if fig == "1b":
        return [ExperimentConfig(_gen(make(xor=2)), "samples", DEFAULT_SCHEDULE, label="1b",
                                 measures=(su_vs_class("f1"), su_vs_class("f2"), Measure("msu")))]
    if fig in ("2a", "2b"):
        kind = {"2a": "informative", "2b": "noninformative"}[fig]
        pair = make(**{kind: [2, 2]})
        single = make(**{kind: [2]})
        return [
            ExperimentConfig(_gen(pair, n_rows=5000), "cardinality", (4, 8, 16, 32, 64), label=f"{fig}-univariate"),
            ExperimentConfig(_gen(single, n_rows=5000), "features", tuple(range(4, 13)), label=f"{fig}-multivariate"),
        ]
    if fig == "3a":
        return [
            ExperimentConfig(_gen(make(informative=[2, 2])), "samples", DEFAULT_SCHEDULE, label="3a-informative"),
            ExperimentConfig(_gen(make(noninformative=[2, 2])), "samples", DEFAULT_SCHEDULE, label="3a-noninformative"),
        ]
    if fig == "3b":
        return [
            ExperimentConfig(_gen(make(informative=[2, 2])), "cardinality", CARDINALITY_LIST,
                             calculated=True, label="3b-informative"),
            ExperimentConfig(_gen(make(noninformative=[2, 2])), "cardinality", CARDINALITY_LIST,
                             calculated=True, label="3b-noninformative"),
        ]
    if fig in ("4a", "4b"):
        calc = fig == "4b"
        counts = tuple(range(4, 13))
        return [
            ExperimentConfig(_gen(make(informative=[2])), "features", counts, calculated=calc,
                             label=f"{fig}-informative-univariate"),
            ExperimentConfig(_gen(make(xor=2)), "features", counts, calculated=calc,
                             label=f"{fig}-informative-multivariate"),
            ExperimentConfig(_gen(make(noninformative=[2])), "features", counts, calculated=calc,
                             label=f"{fig}-noninformative"),
        ]
    raise ValidationError(f"unknown figure {fig!r}; choose from {', '.join(FIGURES)}")


FIGURES = ("1a", "1b", "2a", "2b", "3a", "3b", "4a", "4b")


def figure_families(fig: str, *, trials: int | None = None, master_seed: int | None = None,
                    values: Sequence[int] | None = None, n_rows: int | None = None,
                    noise: float | None = None, class_cardinality: int | None = None,
                    calculated: bool | None = None, factor: int | None = None) -> list[ExperimentConfig]:
    """Experiment configs behind a figure, with any preset parameter overridden."""
    out = []
    for exp in _families(fig):
        base_changes = {}
        if n_rows is not None:
            base_changes["n_rows"] = n_rows
        if noise is not None:
            base_changes["xor_noise"] = noise
        if class_cardinality is not None:
            base_changes["class_cardinality"] = class_cardinality
        changes = {}
        if base_changes:
            changes["base"] = replace(exp.base, **base_changes)
        for key, val in (("trials", trials), ("master_seed", master_seed), ("calculated", calculated),
                         ("factor", factor)):
            if val is not None:
                changes[key] = val
        if values is not None:
            changes["values"] = tuple(values)
        out.append(replace(exp, **changes))
    return out


def figure_experiment(fig: str, threads: int = 1, **overrides) -> list[SweepResult]:
    results = []
    for exp in figure_families(fig, **overrides):
        results.extend(sweep(exp, threads))
    return results
