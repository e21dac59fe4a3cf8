"""Exception taxonomy.

ValidationError covers bad inputs and broken preconditions (CLI exit code 1);
everything else raised by the library is a plain exception (exit code 2).
"""


class JrocError(Exception):
    """Base class for errors raised by this package."""


class ValidationError(JrocError, ValueError):
    """Invalid argument, configuration or file content."""


class RaggedRowsError(ValidationError):
    """A CSV data row has a different number of cells than the header."""


class EmptyDatasetError(ValidationError):
    """The source contains a header but no data rows."""


class MissingLabelError(ValidationError):
    """The requested label column does not exist."""


class SchemaMismatchError(ValidationError):
    """An instance, configuration or schema sidecar disagrees with the
    dataset schema."""


class LatticeTooLargeError(ValidationError):
    """Full enumeration refused; the backward or random searches scale to
    attribute counts where 2^m enumeration does not."""
