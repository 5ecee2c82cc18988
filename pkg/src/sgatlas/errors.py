"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Operands describe different site counts."""


class SizeCapError(ValueError):
    """Request exceeds a documented size cap."""
