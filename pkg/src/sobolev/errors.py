"""Package-wide exception types."""


class NumericalFailure(RuntimeError):
    """Raised when an iterative kernel fails to meet its numerical contract.

    Carries an optional diagnostic payload (iteration counts, residual
    norms) in ``details``.
    """

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details
