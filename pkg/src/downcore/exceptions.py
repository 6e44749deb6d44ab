"""Exception types shared across the package."""


class DowncoreError(Exception):
    """Base class for all errors raised by this package."""


class PermutationParseError(DowncoreError, ValueError):
    """Text could not be read as a permutation."""


class PermutationValidationError(DowncoreError, ValueError):
    """A sequence of integers is not a bijection on {1, ..., n}."""


class DomainError(DowncoreError, ValueError):
    """An argument lies outside the domain of an operation."""


class ResourceLimitError(DowncoreError, RuntimeError):
    """A brute-force bound was exceeded; raised instead of truncating silently."""
