"""Normal-inverse-Wishart distribution as an exponential family.

Conversions between standard, natural and mean parameters, log densities,
and sampling.
"""

from .errors import (
    BracketingFailed,
    DimensionError,
    DomainError,
    InvalidMeanParams,
    InvalidNaturalParams,
    InvalidParams,
    InvalidStandardParams,
    NewtonStalled,
    NIWError,
    NoRoot,
    NotPositiveDefinite,
)
from .forward import mean_from_natural
from .model import (
    MeanParams,
    NaturalParams,
    StandardParams,
    SufficientStats,
    log_base_measure,
    log_partition,
    log_pdf,
    natural_to_standard,
    standard_to_natural,
    sufficient_statistic,
)
from .reverse import NuSolverConfig, NuSolveReport, find_nu, natural_from_mean, standard_from_mean
from .sampling import mc_mean_sufficient_stats, random_source, sample_inverse_wishart, sample_niw

__version__ = "0.1.0"
