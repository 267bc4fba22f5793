"""Exception types shared across the package."""

from __future__ import annotations


class TsixError(Exception):
    """Base class for all package errors."""


class DocumentParseError(TsixError):
    """Malformed or empty XML input."""

    def __init__(self, message: str, byte_offset: int = -1, line: int = -1, column: int = -1):
        super().__init__(message)
        self.byte_offset = byte_offset
        self.line = line
        self.column = column


class NodeNotFoundError(TsixError, KeyError):
    """An id, label path, or group that is not present in its collection."""


class ContractError(TsixError, ValueError):
    """A precondition violation: empty keyword list, mismatched keyword sets, ..."""


class OutOfRangeError(TsixError, ValueError):
    """Ancestor step past the root."""


class SizeGuardExceeded(TsixError):
    """A brute-force oracle was asked to enumerate more than its guard allows."""


class NoFurtherGeneralization(TsixError):
    """Feedback was requested on a group whose structure already sits at the root."""


class BundleError(TsixError):
    """Base class for index-bundle I/O failures."""


class BundleVersionError(BundleError):
    """The bundle was written with an unsupported format version."""


class BundleChecksumError(BundleError):
    """The bundle payload does not match its recorded checksum."""


class BundleTruncatedError(BundleError):
    """The bundle ends before its declared payload does."""
