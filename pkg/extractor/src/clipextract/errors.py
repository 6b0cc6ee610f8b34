"""Error hierarchy for the extractor.

ExtractError is the base.  UsageError maps to exit code 2,
InputError to 3, ValidationError to 4, mirroring the scorer's CLI
convention so pipelines can treat both tools uniformly.
"""


class ExtractError(Exception):
    """Base class for extractor failures."""


class UsageError(ExtractError):
    """Malformed invocation (exit code 2)."""


class InputError(ExtractError):
    """Unreadable or missing input (exit code 3)."""


class ValidationError(ExtractError):
    """Well-formed input with invalid content (exit code 4)."""


class UnknownBackboneError(ValidationError):
    """Backbone name outside the supported set."""


class EncoderUnavailableError(ValidationError):
    """The requested encoder cannot run in this environment."""


class PromptTooLongError(ValidationError):
    """Prompt exceeds the text encoder's context length."""


class EmptyPromptError(ValidationError):
    """Prompt string is empty or whitespace."""
