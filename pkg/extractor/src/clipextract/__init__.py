"""clipextract: raw CLIP-style embedding extraction to MAE1 files."""

__version__ = "0.1.0"

from .encoders import ClipEncoder, ProjectionEncoder, make_encoder
from .errors import (
    EmptyPromptError,
    EncoderUnavailableError,
    ExtractError,
    InputError,
    PromptTooLongError,
    UnknownBackboneError,
    UsageError,
    ValidationError,
)
from .extract import ExtractionJob, ExtractionResult, extract_images, extract_prompts
from .mae1 import write_mae1
from .preprocess import BACKBONES, get_backbone, preprocess_image

__all__ = [
    "BACKBONES",
    "ClipEncoder",
    "EmptyPromptError",
    "EncoderUnavailableError",
    "ExtractError",
    "ExtractionJob",
    "ExtractionResult",
    "InputError",
    "ProjectionEncoder",
    "PromptTooLongError",
    "UnknownBackboneError",
    "UsageError",
    "ValidationError",
    "extract_images",
    "extract_prompts",
    "get_backbone",
    "make_encoder",
    "preprocess_image",
    "write_mae1",
    "__version__",
]
