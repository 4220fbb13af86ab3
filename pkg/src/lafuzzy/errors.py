"""Exception types shared by every module."""


class InputError(ValueError):
    """Malformed or out-of-range input (bad index, carrier mismatch, parse failure)."""


class CapacityError(RuntimeError):
    """A requested search exceeds a configured size bound."""
