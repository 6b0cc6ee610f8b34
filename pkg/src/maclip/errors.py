"""Exception hierarchy shared across the package.

Two broad families matter to callers:

* :class:`FormatError` -- the bytes or text of an input file are malformed
  (bad magic, truncation, unparseable CSV).  The CLI maps these to exit
  code 3.
* :class:`ValidationError` -- the inputs parse fine but violate a semantic
  contract (dimension mismatch, too few samples, weights off the simplex).
  The CLI maps these to exit code 4.
"""


class MaclipError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(MaclipError):
    """An input file is structurally malformed."""


class BadMagicError(FormatError):
    """The embedding file does not start with the expected magic bytes."""


class VersionError(FormatError):
    """The embedding file declares an unsupported format version."""


class TruncatedFileError(FormatError):
    """The file ends before the declared content does."""


class TrailingBytesError(FormatError):
    """The file contains data past the declared content."""


class NonFiniteValueError(FormatError):
    """A stored float is NaN or infinite."""


class DuplicateIdError(FormatError):
    """The same identifier appears more than once."""


class InvalidIdError(FormatError):
    """An identifier is empty or not valid UTF-8."""


class HeaderError(FormatError):
    """A header field holds an unusable value (for example D == 0)."""


class CsvError(FormatError):
    """A CSV file has a malformed header or cell."""


class PromptFileError(FormatError):
    """A prompt embedding file does not contain exactly pos/neg rows."""


class ValidationError(MaclipError):
    """Inputs are well formed but semantically unacceptable."""


class DimensionMismatchError(ValidationError):
    """Two vectors or matrices that must share a dimension do not."""


class ZeroNormError(ValidationError):
    """A vector with (near) zero Euclidean norm reached a cosine."""


class NonFiniteInputError(ValidationError):
    """A computation received NaN or infinite values."""


class EmptyInputError(ValidationError):
    """A vector or collection that must be non-empty is empty."""


class SimplexError(ValidationError):
    """Fusion weights are negative or do not sum to one."""


class InsufficientSamplesError(ValidationError):
    """Fewer joined samples than the statistic requires."""


class ZeroVarianceError(ValidationError):
    """A correlation was requested against a constant vector."""


class ConfigError(ValidationError):
    """A configuration value is out of range."""
