#!/usr/bin/env python3
"""Round-trip the on-disk formats and drive every CLI subcommand.

Everything lands in a temporary directory that is printed at the end,
so you can poke at the artifacts afterwards.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import numpy as np

from maclip import (
    EmbeddingMatrix,
    MosTable,
    PromptPair,
    write_embeddings,
    write_mos,
    write_prompts,
)

work = Path(tempfile.mkdtemp(prefix="maclip_demo_"))
rng = np.random.default_rng(1)

# Build a 30-image synthetic set with a known quality ordering.
n, d = 30, 32
u = np.ones(d) / np.sqrt(d)
rows = np.stack([
    (1.0 + 0.2 * i) * np.sqrt(d) * u + rng.normal(0.0, 0.8, d)
    for i in range(n)
]).astype(np.float32)
ids = [f"img{i:03d}" for i in range(n)]

write_embeddings(EmbeddingMatrix(ids=ids, data=rows, dim=d),
                 work / "embeddings.mae1")

pos = np.zeros(d, dtype=np.float32)
neg = np.zeros(d, dtype=np.float32)
pos[:2] = (1.0, 0.4)
neg[:2] = (1.0, -0.4)
write_prompts(PromptPair(pos=pos, neg=neg), work / "prompts.mae1")

write_mos(MosTable(entries={name: float(i) for i, name in enumerate(ids)}),
          work / "mos.csv")


def cli(*args):
    cmd = [sys.executable, "-m", "maclip.cli", *map(str, args)]
    print("$ maclip " + " ".join(map(str, args)))
    subprocess.run(cmd, check=True)


# 1. score: embeddings -> per-image CSV (plus a .manifest.json sidecar).
cli("score", "--embeddings", work / "embeddings.mae1",
    "--prompts", work / "prompts.mae1", "--out", work / "scores.csv")

# 2. eval: scores + ground truth -> correlation report.
cli("eval", "--scores", work / "scores.csv", "--mos", work / "mos.csv",
    "--out", work / "report.json", "--logistic")
report = json.loads((work / "report.json").read_text())
print(f"  srcc={report['srcc']:.4f}  plcc_raw={report['plcc_raw']:.4f}")

# 3. sweep-lambda: how the rank correlation moves with the power parameter.
cli("sweep-lambda", "--embeddings", work / "embeddings.mae1",
    "--prompts", work / "prompts.mae1", "--mos", work / "mos.csv",
    "--out", work / "sweep.csv", "--grid", "0.1:2.0:0.1")

# 4. ablate: each cue alone, raw norms, and fixed weight mixes.
cli("ablate", "--embeddings", work / "embeddings.mae1",
    "--prompts", work / "prompts.mae1", "--mos", work / "mos.csv",
    "--out", work / "ablate.csv")
print((work / "ablate.csv").read_text())

# 5. plot-data: a joined table ready for any external plotting tool.
cli("plot-data", "--scores", work / "scores.csv", "--mos", work / "mos.csv",
    "--out", work / "plot.csv", "--sort", "mos")

manifest = json.loads((work / "scores.csv.manifest.json").read_text())
print(f"manifest records the command ({manifest['command']!r}), "
      f"the full config and the inputs")
print(f"\nartifacts in {work}")
