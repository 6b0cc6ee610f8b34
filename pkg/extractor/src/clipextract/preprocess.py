"""Backbone registry and image preprocessing.

All four supported backbones share the 224-pixel pipeline that ships
with their pretrained weights: resize the shorter side to 224 with
bicubic interpolation, center-crop 224x224, scale to [0, 1], normalize
per channel.
"""

from __future__ import annotations

from dataclasses import dataclass

import torch
from PIL import Image
from torchvision.transforms import functional as TF
from torchvision.transforms import InterpolationMode

from .errors import UnknownBackboneError

#: Channel statistics used by the pretrained weights.
IMAGE_MEAN = (0.48145466, 0.4578275, 0.40821073)
IMAGE_STD = (0.26862954, 0.26130258, 0.27577711)

#: Text context length (tokens, including the two special slots).
CONTEXT_LENGTH = 77


@dataclass(frozen=True)
class Backbone:
    name: str
    dim: int
    resolution: int = 224


BACKBONES = {
    "RN50": Backbone("RN50", 1024),
    "RN101": Backbone("RN101", 512),
    "ViT-B/32": Backbone("ViT-B/32", 512),
    "ViT-L/14": Backbone("ViT-L/14", 768),
}


def get_backbone(name: str) -> Backbone:
    try:
        return BACKBONES[name]
    except KeyError:
        known = ", ".join(sorted(BACKBONES))
        raise UnknownBackboneError(
            f"unknown backbone {name!r}; supported: {known}"
        ) from None


def preprocess_image(image: Image.Image, backbone: Backbone) -> torch.Tensor:
    """PIL image -> normalized float32 CHW tensor."""
    image = image.convert("RGB")
    size = backbone.resolution
    tensor = TF.resize(TF.pil_to_tensor(image), size,
                       interpolation=InterpolationMode.BICUBIC, antialias=True)
    tensor = TF.center_crop(tensor, [size, size])
    tensor = tensor.to(torch.float32) / 255.0
    return TF.normalize(tensor, IMAGE_MEAN, IMAGE_STD)


def preprocessing_description(backbone: Backbone) -> dict:
    """Recorded in output manifests for provenance."""
    return {
        "resize_shorter_side": backbone.resolution,
        "interpolation": "bicubic",
        "center_crop": backbone.resolution,
        "mean": list(IMAGE_MEAN),
        "std": list(IMAGE_STD),
    }
