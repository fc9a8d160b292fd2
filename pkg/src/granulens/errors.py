"""Exception types shared across the package."""


class GranulensError(ValueError):
    """Base class for all granulens errors."""


class DataError(GranulensError):
    """Malformed or inconsistent input data (CSV schema, label totality, ...)."""


class UniverseMismatchError(GranulensError):
    """Two inputs refer to universes of different sizes."""
