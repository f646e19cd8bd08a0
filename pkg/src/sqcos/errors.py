"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NonConvergenceError(RuntimeError):
    """A series or refinement loop could not certify the requested tolerance.

    Carries enough context to retry with a larger term budget or higher
    working precision.
    """

    def __init__(self, message, *, order=None, point=None, terms_used=None):
        super().__init__(message)
        self.order = order
        self.point = point
        self.terms_used = terms_used
