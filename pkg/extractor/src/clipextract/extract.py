"""Extraction jobs: a directory of images (or a prompt pair) to MAE1.

Image ids are file paths relative to the scanned directory, POSIX
separators, sorted, so output row order never depends on filesystem
enumeration order.  Files that cannot be decoded as images are skipped
with a warning, listed in a ``<out>.skipped.txt`` sidecar, and counted
in the manifest.
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import torch
from PIL import Image, UnidentifiedImageError

from . import __version__
from .errors import InputError, ValidationError
from .mae1 import write_mae1
from .preprocess import get_backbone, preprocessing_description

log = logging.getLogger("clipextract")


@dataclass(frozen=True)
class ExtractionJob:
    """Everything one extraction run needs."""

    backbone: str
    out_path: str
    image_dir: str | None = None
    prompt_pos: str | None = None
    prompt_neg: str | None = None
    encoder: str = "clip"
    batch_size: int = 16

    def validate(self) -> "ExtractionJob":
        get_backbone(self.backbone)
        if self.batch_size < 1:
            raise ValidationError(f"batch size must be >= 1, got {self.batch_size}")
        return self


@dataclass
class ExtractionResult:
    ids: list[str]
    skipped: list[str] = field(default_factory=list)


def _scan_images(image_dir: Path) -> list[Path]:
    if not image_dir.is_dir():
        raise InputError(f"not a directory: {image_dir}")
    return sorted(p for p in image_dir.rglob("*") if p.is_file())


def _write_manifest(job: ExtractionJob, command: str, n: int,
                    skipped: list[str], started: float) -> None:
    backbone = get_backbone(job.backbone)
    manifest = {
        "command": command,
        "version": __version__,
        "backbone": backbone.name,
        "dim": backbone.dim,
        "encoder": job.encoder,
        "preprocessing": preprocessing_description(backbone),
        "rows": n,
        "skipped": skipped,
        "duration_seconds": round(time.monotonic() - started, 6),
    }
    with open(job.out_path + ".manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")


def extract_images(job: ExtractionJob, encoder) -> ExtractionResult:
    """Embed every decodable image under ``job.image_dir``.

    Returns the ids written and the relative paths skipped.  An empty
    directory produces a valid zero-row file.
    """
    started = time.monotonic()
    job.validate()
    root = Path(job.image_dir)
    files = _scan_images(root)

    ids: list[str] = []
    chunks: list[torch.Tensor] = []
    skipped: list[str] = []
    batch_imgs: list = []
    batch_ids: list[str] = []

    def flush():
        if batch_imgs:
            chunks.append(encoder.encode_images(batch_imgs))
            ids.extend(batch_ids)
            batch_imgs.clear()
            batch_ids.clear()

    for path in files:
        rel = path.relative_to(root).as_posix()
        try:
            with Image.open(path) as im:
                im.load()
                batch_imgs.append(im.copy())
        except (UnidentifiedImageError, OSError):
            log.warning("skipping undecodable file %s", rel)
            skipped.append(rel)
            continue
        batch_ids.append(rel)
        if len(batch_imgs) >= job.batch_size:
            flush()
    flush()

    dim = get_backbone(job.backbone).dim
    if chunks:
        data = torch.cat(chunks).numpy()
    else:
        data = np.empty((0, dim), dtype=np.float32)
    write_mae1(ids, data, job.out_path)

    if skipped:
        with open(job.out_path + ".skipped.txt", "w", encoding="utf-8") as fh:
            fh.write("\n".join(skipped) + "\n")
    _write_manifest(job, "extract", len(ids), skipped, started)
    log.info("wrote %d rows (%d skipped) to %s", len(ids), len(skipped),
             job.out_path)
    return ExtractionResult(ids=ids, skipped=skipped)


def extract_prompts(job: ExtractionJob, encoder) -> ExtractionResult:
    """Embed the positive/negative prompt pair into a 2-row file."""
    started = time.monotonic()
    job.validate()
    if job.prompt_pos is None or job.prompt_neg is None:
        raise ValidationError("both a positive and a negative prompt are required")
    data = encoder.encode_texts([job.prompt_pos, job.prompt_neg]).numpy()
    write_mae1(["pos", "neg"], data, job.out_path)
    _write_manifest(job, "extract-prompts", 2, [], started)
    log.info("wrote prompt embeddings to %s", job.out_path)
    return ExtractionResult(ids=["pos", "neg"])
