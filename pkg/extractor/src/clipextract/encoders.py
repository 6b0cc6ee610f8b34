"""Image and text encoders.

Two implementations of the same small interface:

* ClipEncoder wraps pretrained CLIP weights.  ViT backbones load
  through ``transformers`` (weights must already be in the local cache
  unless CLIPEXTRACT_ALLOW_DOWNLOAD=1); the ResNet backbones exist only
  in the ``open_clip`` distribution and require that package.
* ProjectionEncoder is a deterministic, dependency-light stand-in:
  fixed random projections of the preprocessed pixels (and of text byte
  histograms), seeded by the backbone name.  It produces embeddings
  with content-dependent magnitudes and directions, which is everything
  the downstream scorer's contracts need, and it runs anywhere.  It is
  the encoder used by this package's own tests.

Both export RAW features: no l2 normalization is applied, because the
consumer treats the magnitude profile as signal.
"""

from __future__ import annotations

import os
import zlib

import numpy as np
import torch

from .errors import (
    EmptyPromptError,
    EncoderUnavailableError,
    PromptTooLongError,
)
from .preprocess import CONTEXT_LENGTH, Backbone, get_backbone, preprocess_image

_TEXT_FEATURES = 260  # 256 byte-histogram bins + 4 shape features


def _check_prompt(text: str) -> str:
    if not text or not text.strip():
        raise EmptyPromptError("prompt string is empty")
    return text


class ProjectionEncoder:
    """Deterministic random-projection encoder.

    The projection matrices are drawn once from a generator seeded by
    the backbone name, so the same (backbone, input) pair always maps
    to the same embedding, across processes and platforms that share a
    torch build.
    """

    def __init__(self, backbone: Backbone):
        self.backbone = backbone
        seed = zlib.crc32(backbone.name.encode("utf-8"))
        gen = torch.Generator().manual_seed(seed)
        pooled = 3 * 16 * 16
        self._w_img = torch.randn(pooled, backbone.dim, generator=gen) / pooled ** 0.5
        self._w_txt = torch.randn(_TEXT_FEATURES, backbone.dim, generator=gen) \
            / _TEXT_FEATURES ** 0.5

    @property
    def name(self) -> str:
        return "projection"

    def encode_images(self, images) -> torch.Tensor:
        """PIL images -> (N, D) float32 tensor of raw embeddings."""
        if not images:
            return torch.empty((0, self.backbone.dim), dtype=torch.float32)
        batch = torch.stack([preprocess_image(im, self.backbone) for im in images])
        pooled = torch.nn.functional.adaptive_avg_pool2d(batch, (16, 16))
        flat = pooled.reshape(batch.shape[0], -1)
        return flat @ self._w_img

    def encode_texts(self, texts) -> torch.Tensor:
        """Prompt strings -> (N, D) float32 tensor of raw embeddings."""
        rows = []
        for text in texts:
            _check_prompt(text)
            tokens = text.split()
            if len(tokens) + 2 > CONTEXT_LENGTH:
                raise PromptTooLongError(
                    f"prompt exceeds the {CONTEXT_LENGTH}-token context: "
                    f"{text[:60]!r}..."
                )
            raw = text.encode("utf-8")
            hist = np.bincount(np.frombuffer(raw, dtype=np.uint8), minlength=256)
            features = np.concatenate([
                hist.astype(np.float32),
                np.array([len(raw), len(tokens),
                          float(np.mean(np.frombuffer(raw, dtype=np.uint8))),
                          float(raw[0])], dtype=np.float32),
            ])
            rows.append(torch.from_numpy(features))
        return torch.stack(rows) @ self._w_txt


class ClipEncoder:
    """Pretrained CLIP weights behind the same interface.

    ViT-B/32 and ViT-L/14 load via ``transformers``; RN50 and RN101
    need ``open_clip`` (their checkpoints were never ported to
    ``transformers``).  Weights are looked up in the local cache only,
    unless the CLIPEXTRACT_ALLOW_DOWNLOAD environment variable is set,
    so offline machines fail fast with a clear message instead of
    retrying the network.
    """

    _HF_IDS = {
        "ViT-B/32": "openai/clip-vit-base-patch32",
        "ViT-L/14": "openai/clip-vit-large-patch14",
    }

    def __init__(self, backbone: Backbone):
        self.backbone = backbone
        if backbone.name in self._HF_IDS:
            self._impl = _TransformersClip(self._HF_IDS[backbone.name], backbone)
        else:
            self._impl = _OpenClip(backbone)

    @property
    def name(self) -> str:
        return "clip"

    def encode_images(self, images) -> torch.Tensor:
        if not images:
            return torch.empty((0, self.backbone.dim), dtype=torch.float32)
        return self._impl.encode_images(images)

    def encode_texts(self, texts) -> torch.Tensor:
        for text in texts:
            _check_prompt(text)
        return self._impl.encode_texts(texts)


class _TransformersClip:
    def __init__(self, model_id: str, backbone: Backbone):
        try:
            from transformers import CLIPModel, CLIPTokenizer
        except ImportError:
            raise EncoderUnavailableError(
                "the pretrained encoder needs the 'transformers' package; "
                "pip install clipextract[clip]"
            ) from None
        local_only = os.environ.get("CLIPEXTRACT_ALLOW_DOWNLOAD", "") != "1"
        try:
            self._model = CLIPModel.from_pretrained(
                model_id, local_files_only=local_only
            ).eval()
            self._tokenizer = CLIPTokenizer.from_pretrained(
                model_id, local_files_only=local_only
            )
        except OSError as exc:
            raise EncoderUnavailableError(
                f"pretrained weights for {model_id!r} are not in the local "
                f"cache; download them on a networked machine or set "
                f"CLIPEXTRACT_ALLOW_DOWNLOAD=1 ({exc})"
            ) from None
        self._backbone = backbone

    def encode_images(self, images) -> torch.Tensor:
        batch = torch.stack([
            preprocess_image(im, self._backbone) for im in images
        ])
        with torch.no_grad():
            return self._model.get_image_features(pixel_values=batch).float()

    def encode_texts(self, texts) -> torch.Tensor:
        for text in texts:
            ids = self._tokenizer(text, truncation=False)["input_ids"]
            if len(ids) > CONTEXT_LENGTH:
                raise PromptTooLongError(
                    f"prompt exceeds the {CONTEXT_LENGTH}-token context: "
                    f"{text[:60]!r}..."
                )
        tokens = self._tokenizer(list(texts), padding="max_length",
                                 max_length=CONTEXT_LENGTH, return_tensors="pt")
        with torch.no_grad():
            return self._model.get_text_features(**tokens).float()


class _OpenClip:
    def __init__(self, backbone: Backbone):
        try:
            import open_clip
        except ImportError:
            raise EncoderUnavailableError(
                f"backbone {backbone.name!r} is only distributed with the "
                f"'open_clip_torch' package, which is not installed"
            ) from None
        self._open_clip = open_clip
        self._model, _, _ = open_clip.create_model_and_transforms(
            backbone.name, pretrained="openai"
        )
        self._model.eval()
        self._tokenizer = open_clip.get_tokenizer(backbone.name)
        self._backbone = backbone

    def encode_images(self, images) -> torch.Tensor:
        batch = torch.stack([
            preprocess_image(im, self._backbone) for im in images
        ])
        with torch.no_grad():
            return self._model.encode_image(batch).float()

    def encode_texts(self, texts) -> torch.Tensor:
        tokens = []
        for text in texts:
            try:
                tokens.append(self._open_clip.tokenize(
                    [text], context_length=CONTEXT_LENGTH
                )[0])
            except RuntimeError:
                raise PromptTooLongError(
                    f"prompt exceeds the {CONTEXT_LENGTH}-token context: "
                    f"{text[:60]!r}..."
                ) from None
        with torch.no_grad():
            return self._model.encode_text(torch.stack(tokens)).float()


ENCODERS = {
    "clip": ClipEncoder,
    "projection": ProjectionEncoder,
}


def make_encoder(kind: str, backbone: str | Backbone):
    if isinstance(backbone, str):
        backbone = get_backbone(backbone)
    try:
        factory = ENCODERS[kind]
    except KeyError:
        known = ", ".join(sorted(ENCODERS))
        raise EncoderUnavailableError(
            f"unknown encoder {kind!r}; supported: {known}"
        ) from None
    return factory(backbone)
