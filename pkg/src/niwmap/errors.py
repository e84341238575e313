"""Exception hierarchy.

Every error carries a stable machine-readable ``code`` which the CLI emits
verbatim in its error documents.
"""


class NIWError(Exception):
    code = "INVALID_PARAMS"


class DimensionError(NIWError, ValueError):
    code = "DIM_MISMATCH"


class DomainError(NIWError, ValueError):
    """Argument outside the domain of a special function or root function."""

    code = "INVALID_PARAMS"


class NotPositiveDefinite(NIWError, ValueError):
    code = "NOT_PD"


class InvalidParams(NIWError, ValueError):
    code = "INVALID_PARAMS"


class InvalidStandardParams(InvalidParams):
    pass


class InvalidNaturalParams(InvalidParams):
    pass


class InvalidMeanParams(InvalidParams):
    pass


class SolverError(NIWError, RuntimeError):
    code = "SOLVER_STALLED"


class NoRoot(SolverError):
    """The mean parameters admit no degrees-of-freedom root."""

    code = "NO_ROOT"


class BracketingFailed(SolverError):
    pass


class NewtonStalled(SolverError):
    pass
