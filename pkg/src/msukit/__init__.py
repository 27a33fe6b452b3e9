"""Multivariate symmetrical uncertainty: estimators, synthetic data and bias experiments."""
from .cardinality import (
    CardinalityProfile,
    multivariate_cardinality,
    recommended_sample_size,
    univariate_cardinality,
)
from .errors import (
    CardinalityOverflowError,
    ConsistencyError,
    DataError,
    EmptyInputError,
    MSUError,
    NotConvergedError,
    SelectionError,
    TooFewVariablesError,
    ValidationError,
)
from .infotheory import (
    Dataset,
    JointCounts,
    LabelColumn,
    MeasureReport,
    conditional_entropy,
    entropy,
    information_gain,
    joint_counts,
    joint_entropy,
    measure_report,
    msu,
    symmetrical_uncertainty,
    total_correlation,
)
from .synthgen import FeatureSpec, GeneratorConfig, generate_dataset

__version__ = "0.1.0"

__all__ = [
    "CardinalityOverflowError",
    "CardinalityProfile",
    "ConsistencyError",
    "DataError",
    "Dataset",
    "EmptyInputError",
    "FeatureSpec",
    "GeneratorConfig",
    "JointCounts",
    "LabelColumn",
    "MSUError",
    "MeasureReport",
    "NotConvergedError",
    "SelectionError",
    "TooFewVariablesError",
    "ValidationError",
    "conditional_entropy",
    "entropy",
    "generate_dataset",
    "information_gain",
    "joint_counts",
    "joint_entropy",
    "measure_report",
    "msu",
    "multivariate_cardinality",
    "recommended_sample_size",
    "symmetrical_uncertainty",
    "total_correlation",
    "univariate_cardinality",
]
