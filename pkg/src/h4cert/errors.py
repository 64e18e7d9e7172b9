class DomainError(ValueError):
    """An input outside the domain of an operation (a refusal, not a bug)."""

    def __init__(self, reason, **details):
        super().__init__(reason)
        self.reason = reason
        self.details = details


class BudgetExceeded(DomainError):
    """A size or search guard tripped."""


class CertificateError(RuntimeError):
    """An internally recomputed arithmetic claim did not hold."""
