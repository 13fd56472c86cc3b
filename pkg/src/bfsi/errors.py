"""Exception types raised by the index and search layers."""


class IndexFormatError(Exception):
    """Raised when an index byte stream cannot be decoded."""


class BadMagicError(IndexFormatError):
    """Stream does not start with the BFSI magic bytes."""


class UnsupportedVersionError(IndexFormatError):
    """Stream declares a format version this library does not read."""


class TruncatedIndexError(IndexFormatError):
    """Stream ends before all declared fields or tables are present."""


class TextMismatchError(Exception):
    """Checksum of the supplied text does not match the one in the index."""


class PatternLengthError(ValueError):
    """Pattern length violates the bounds of the index parameters.

    ``required`` carries the minimum admissible length when the pattern is
    too short; ``limit`` carries the maximum when it is too long.
    """

    def __init__(self, message: str, required: int | None = None,
                 limit: int | None = None):
        super().__init__(message)
        self.required = required
        self.limit = limit
