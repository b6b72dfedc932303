"""Custom exceptions for Complex Splitting."""


class SplittingError(Exception):
    """Base exception for Complex Splitting."""

    pass


class ConfigurationError(SplittingError):
    """Configuration related errors."""

    pass


class MethodDefinitionError(SplittingError):
    """Invalid method tables, sequences or composition requests."""

    pass


class OrderConditionError(SplittingError):
    """A method table does not reach its claimed order."""

    pass


class MatrixSetError(SplittingError):
    """Inconsistent matrix sets for the BCH oracle."""

    pass


class RoundOffError(SplittingError):
    """Defects too small to fit an order from."""

    pass


class IntegrationError(SplittingError):
    """Time integration related errors."""

    pass


class BlowUpError(IntegrationError):
    """State became non-finite or grew beyond the blow-up threshold."""

    pass


class StepSizeUnderflowError(IntegrationError):
    """Adaptive step size fell below representable resolution."""

    pass


class StudyError(SplittingError):
    """Convergence or work-precision study errors."""

    pass


class RenderError(SplittingError):
    """Chart rendering errors."""

    pass


class ArtifactError(SplittingError):
    """Artifact writing and parsing errors."""

    pass
