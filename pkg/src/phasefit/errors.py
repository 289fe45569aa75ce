"""Exception types shared across the package."""


class PhasefitError(Exception):
    """Base class for all library errors."""


class DomainError(PhasefitError):
    """Evaluation requested too close to a pole or outside the valid domain."""


class SingularStep(PhasefitError):
    """The implicit stage of a step could not be solved (singular bracket)."""

    def __init__(self, message: str, x: float | None = None):
        super().__init__(message)
        self.x = x


class DegenerateMatch(PhasefitError):
    """Asymptotic matching points carry no usable phase information."""


class NoBracket(PhasefitError):
    """An energy bracket contains no phase-shift crossing."""


class FitError(PhasefitError):
    """A least-squares slope fit did not meet its confidence requirement."""
