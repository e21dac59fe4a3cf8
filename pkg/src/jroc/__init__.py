"""Cost-sensitive evaluation of trained classifiers across feature
configurations: lattice clouds, backward searches, JROC hulls and the
comparison harness."""

from ._backend import BACKEND_NAME
from .classifiers import (
    ClassifierSpec,
    TrainedModel,
    predict,
    predict_dataset,
    train,
)
from .configuration import FeatureConfiguration
from .cost import (
    CostContext,
    PerExampleContext,
    as_per_example,
    blend,
    context_from_json,
    context_to_json,
    expected_random_mc,
    joint_cost,
    misclassification_cost,
    normalize_context,
    random_context,
    test_cost,
    uniform_context,
)
from .data import (
    NOMINAL,
    NUMERIC,
    AttributeSchema,
    Dataset,
    Instance,
    load_csv,
    mask_instance,
    mask_matrix,
    split_dataset,
)
from .errors import (
    EmptyDatasetError,
    JrocError,
    LatticeTooLargeError,
    MissingLabelError,
    RaggedRowsError,
    SchemaMismatchError,
    ValidationError,
)
from .harness import ExperimentConfig, ExperimentReport, emit_report, run_experiment
from .hull import (
    Hull,
    OperatingRegion,
    dominance_regions,
    isometric_slope,
    lower_hull,
    select_best,
)
from .lattice import (
    ConfigurationEvaluator,
    EvalPoint,
    enumerate_full_lattice,
    evaluate_configuration,
    points_from_csv,
    points_to_csv,
)
from .plot import render_plot
from .search import (
    SearchTrace,
    backward_budget,
    backward_search,
    random_search,
    sample_configurations,
)
from .stats import (
    ResultMatrix,
    average_ranks,
    comparison_report,
    friedman_statistic,
    nemenyi_critical_difference,
    rank_row,
    report_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "AttributeSchema",
    "BACKEND_NAME",
    "ClassifierSpec",
    "ConfigurationEvaluator",
    "CostContext",
    "Dataset",
    "EmptyDatasetError",
    "EvalPoint",
    "ExperimentConfig",
    "ExperimentReport",
    "FeatureConfiguration",
    "Hull",
    "Instance",
    "JrocError",
    "LatticeTooLargeError",
    "MissingLabelError",
    "NOMINAL",
    "NUMERIC",
    "OperatingRegion",
    "PerExampleContext",
    "RaggedRowsError",
    "ResultMatrix",
    "SchemaMismatchError",
    "SearchTrace",
    "TrainedModel",
    "ValidationError",
    "as_per_example",
    "average_ranks",
    "backward_budget",
    "backward_search",
    "blend",
    "comparison_report",
    "context_from_json",
    "context_to_json",
    "dominance_regions",
    "emit_report",
    "enumerate_full_lattice",
    "evaluate_configuration",
    "expected_random_mc",
    "friedman_statistic",
    "isometric_slope",
    "joint_cost",
    "load_csv",
    "lower_hull",
    "mask_instance",
    "mask_matrix",
    "misclassification_cost",
    "nemenyi_critical_difference",
    "normalize_context",
    "points_from_csv",
    "points_to_csv",
    "predict",
    "predict_dataset",
    "random_context",
    "random_search",
    "rank_row",
    "render_plot",
    "report_to_json",
    "run_experiment",
    "sample_configurations",
    "select_best",
    "split_dataset",
    "test_cost",
    "train",
    "uniform_context",
]
