"""Exception hierarchy shared across the package."""


class PrimeLabError(Exception):
    """Base class for all package-specific errors."""


class CapacityError(PrimeLabError):
    """A requested range exceeds the configured sieve ceiling."""


class UnsupportedPrimeError(PrimeLabError):
    """A prime divides the index [O_K : Z[theta]] and cannot be split
    by polynomial factorization; windows touching its powers are rejected."""

    def __init__(self, prime, field_name=""):
        self.prime = prime
        self.field_name = field_name
        where = f" in field {field_name}" if field_name else ""
        super().__init__(
            f"prime {prime} divides the polynomial index{where}; "
            "splitting data unavailable")


class ZeroTableError(PrimeLabError):
    """Zero-table parse failure or a query beyond the certified height."""
