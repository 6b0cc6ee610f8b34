#!/usr/bin/env python3
"""Feed the scorer from the embedding extractor, end to end.

Requires the clipextract package (pip install -e ./extractor). The demo
runs on the deterministic projection encoder so it works offline; swap
encoder="clip" on a machine with cached weights to get embeddings whose
scores actually track perceptual quality.
"""

import json
import tempfile
from pathlib import Path

import numpy as np
from PIL import Image

from clipextract import ExtractionJob, extract_images, extract_prompts, make_encoder
from maclip import MosTable, write_mos
from maclip.cli import main as maclip

work = Path(tempfile.mkdtemp(prefix="extract_demo_"))
img_dir = work / "photos"
img_dir.mkdir()

# A dozen noise PNGs plus one deliberately corrupt file.
rng = np.random.default_rng(7)
for i in range(12):
    arr = rng.integers(0, 255, (60, 80, 3), dtype=np.uint8)
    Image.fromarray(arr).save(img_dir / f"photo{i:02d}.png")
(img_dir / "not_an_image.dat").write_bytes(b"\x00\xff junk")

backbone = "ViT-B/32"
encoder = make_encoder("projection", backbone)

emb_path = work / "emb.mae1"
result = extract_images(
    ExtractionJob(backbone=backbone, out_path=str(emb_path),
                  image_dir=str(img_dir), encoder="projection"),
    encoder,
)
print(f"extracted {len(result.ids)} images, skipped {result.skipped}")

pr_path = work / "prompts.mae1"
extract_prompts(
    ExtractionJob(backbone=backbone, out_path=str(pr_path),
                  prompt_pos="a sharp, well-exposed photograph",
                  prompt_neg="a blurry, noisy photograph",
                  encoder="projection"),
    encoder,
)

manifest = json.loads((work / "emb.mae1.manifest.json").read_text())
print(f"manifest: backbone={manifest['backbone']} dim={manifest['dim']} "
      f"rows={manifest['rows']}")
print(f"preprocessing: {manifest['preprocessing']}")

# Score the extracted embeddings and correlate against a made-up MOS.
# With the projection encoder the correlation is meaningless noise; the
# point here is the composition of the two tools on real files.
scores_path = work / "scores.csv"
assert maclip(["score", "--embeddings", str(emb_path),
               "--prompts", str(pr_path), "--out", str(scores_path)]) == 0

print("\nfirst score rows:")
for line in scores_path.read_text().splitlines()[:4]:
    print(" ", line)

write_mos(MosTable(entries={name: float(i) for i, name in
                            enumerate(result.ids)}), work / "mos.csv")
metrics_path = work / "metrics.json"
assert maclip(["eval", "--scores", str(scores_path),
               "--mos", str(work / "mos.csv"),
               "--out", str(metrics_path)]) == 0
metrics = json.loads(metrics_path.read_text())
print(f"\neval on {metrics['n']} pairs: srcc={metrics['srcc']:+.3f} "
      "(noise in, noise out: the projection encoder has no eye for quality)")

print(f"\nartifacts in {work}")
