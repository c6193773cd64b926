"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input is outside the admissible domain (bad temperature, cap exceeded, ...)."""


class EnumerationCapError(DomainError):
    """A brute-force enumeration would exceed the configured vertex cap."""
