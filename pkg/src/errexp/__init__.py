"""Error exponents for asymptotic hypothesis testing, exact method-of-types
machinery, max-entropy level occupation, and Gaussian binary detection."""

from ._backend import USING_NUMBA
from .boltzmann import (
    EnergySystem,
    Occupancy,
    boltzmann_distribution,
    log_multiplicity_exact,
    log_multiplicity_stirling,
    maxent_verify,
    mean_energy,
    partition_function,
    solve_beta,
)
from .detection import (
    DetectionScenario,
    SweepRow,
    analytic_error,
    chernoff_error_bound,
    q_chernoff_bound,
    q_function,
    simulate_detection,
    sweep,
)
from .dist import (
    DiscreteDistribution,
    TiltedFamily,
    entropy,
    kl_divergence,
    log_factorial,
    make_distribution,
    tilted,
)
from .errors import (
    ConvergenceError,
    DegenerateHypothesisError,
    DegenerateSupportError,
    InfeasibleError,
    ResourceCapError,
    ValidationError,
)
from .testing import (
    BinaryHypothesis,
    ChernoffReport,
    SteinReport,
    bayesian_error_exponent,
    chernoff_lambda_star,
    neyman_pearson_min_beta,
    stein_errors,
    stein_region_membership,
)
from .types_method import (
    ConstraintSet,
    EmpiricalType,
    count_types,
    deviation_probability_exact,
    empirical_type,
    enumerate_types,
    sanov_exact_prob,
    sanov_exponent,
    type_class_log_prob,
    type_class_size,
    type_class_size_bounds,
)

__version__ = "0.1.0"

__all__ = [
    "USING_NUMBA",
    "BinaryHypothesis",
    "ChernoffReport",
    "ConstraintSet",
    "ConvergenceError",
    "DegenerateHypothesisError",
    "DegenerateSupportError",
    "DetectionScenario",
    "DiscreteDistribution",
    "EmpiricalType",
    "EnergySystem",
    "InfeasibleError",
    "Occupancy",
    "ResourceCapError",
    "SteinReport",
    "SweepRow",
    "TiltedFamily",
    "ValidationError",
    "analytic_error",
    "bayesian_error_exponent",
    "boltzmann_distribution",
    "chernoff_error_bound",
    "chernoff_lambda_star",
    "count_types",
    "deviation_probability_exact",
    "empirical_type",
    "entropy",
    "enumerate_types",
    "kl_divergence",
    "log_factorial",
    "log_multiplicity_exact",
    "log_multiplicity_stirling",
    "make_distribution",
    "maxent_verify",
    "mean_energy",
    "neyman_pearson_min_beta",
    "partition_function",
    "q_chernoff_bound",
    "q_function",
    "sanov_exact_prob",
    "sanov_exponent",
    "simulate_detection",
    "solve_beta",
    "stein_errors",
    "stein_region_membership",
    "sweep",
    "tilted",
    "type_class_log_prob",
    "type_class_size",
    "type_class_size_bounds",
]
