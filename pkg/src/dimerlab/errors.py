class CapacityError(ValueError):
    """Raised when a problem exceeds one of the configured size caps."""

    def __init__(self, message, cap_name=None, cap=None):
        super().__init__(message)
        self.cap_name = cap_name
        self.cap = cap


class DomainError(ValueError):
    """Raised when an argument lies outside a function's mathematical domain."""
