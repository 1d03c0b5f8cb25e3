"""Exception types shared across the package."""


class DistcorrError(Exception):
    """Base class for all package-specific errors."""


class DataQualityError(DistcorrError):
    """Raised when sample data contains non-finite or otherwise unusable values."""


class DimensionMismatchError(DistcorrError):
    """Raised when two samples have incompatible observation counts."""


class DegenerateVarianceError(DistcorrError):
    """Raised when Pearson correlation is requested for a constant sample."""


class DataFormatError(DistcorrError):
    """Raised for malformed input files: ragged rows, bad cells, missing values."""


class ConvergenceError(DistcorrError):
    """Quadrature failed to reach its tolerance within the panel budget.

    Carries the best available estimate and its error bar so callers can
    still inspect the result.
    """

    def __init__(self, message, best_estimate, error_estimate):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate
