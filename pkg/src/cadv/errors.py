"""Exception types shared across the package."""

from __future__ import annotations


class CadvError(Exception):
    """Base class for all errors raised by this package."""


class ParseGaveUp(CadvError):
    """Brace balance could not be restored while parsing a Java source file."""


class UnreadableFile(CadvError):
    """A source file could not be read from disk."""


class RootNotFound(CadvError):
    """The analysis root directory does not exist."""


class VersionMismatch(CadvError):
    """A model document declares an unsupported format version."""


class MalformedDocument(CadvError):
    """A model document is structurally invalid; the message names the field."""


class PackageNotFound(CadvError):
    """No package with the requested qualified name exists in the model."""


class ClassNotFound(CadvError):
    """No class with the requested qualified name exists in the model."""


class EmptyInput(CadvError):
    """An operation that needs at least one item received none."""


class OverrideConflict(CadvError):
    """A user color override collides with a reserved structural color."""
