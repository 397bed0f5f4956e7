class DomainError(ValueError):
    """Input is well formed but outside the mathematical domain of an operation."""


class SizeError(DomainError):
    """An enumeration would exceed the configured size cap."""
