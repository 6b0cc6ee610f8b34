#!/usr/bin/env python3
"""How the Box-Cox power affects the magnitude cue and the fused score.

Small powers compress the upper tail of the normalized magnitude
profile, large powers amplify it.  On data whose tails carry noise
rather than quality, rank correlation holds steady across small powers
and falls off once the power starts amplifying tail noise; this script
reproduces that shape on a synthetic set.
"""

import numpy as np

from maclip import MosTable, PromptPair, QualityRecord, ScoreConfig, evaluate
from maclip import fuse, q_mag, q_sim

rng = np.random.default_rng(3)

# Synthetic images with increasing quality g along a common direction u.
# The Gaussian noise is projected out of the prompt plane so the
# similarity cue stays clean; a few coordinates per image get a
# heavy-tailed spike that only disturbs the magnitude profile's tail.
n, d = 120, 1024
root_d = np.sqrt(d)
u = np.ones(d) / root_d
e1 = np.tile([1.0, -1.0], d // 2) / root_d
e2 = np.tile([1.0, 1.0, -1.0, -1.0], d // 4) / root_d

theta = np.radians(60.0)
pos = np.cos(theta) * u + np.sin(theta) * e1
cos_neg = np.cos(theta) - 0.022
neg = cos_neg * u + np.sqrt(1.0 - cos_neg ** 2) * e2
prompts = PromptPair(pos=pos, neg=neg)

rows = np.empty((n, d))
for i in range(n):
    g = 1.0 + 7.0 * i / (n - 1)
    pert = 3.0 * rng.normal(0.0, 1.0, d)
    spikes = rng.choice(d, 8, replace=False)
    pert[spikes] += 12.0 * rng.lognormal(0.0, 0.35)
    pert -= (pert @ e1) * e1
    pert -= (pert @ e2) * e2
    rows[i] = g * root_d * u + pert

mos = MosTable(entries={f"i{k}": float(k) for k in range(n)})

# The similarity cue does not depend on the power: compute it once.
base = ScoreConfig()
sims = [q_sim(row, prompts, base) for row in rows]

print(f"{'lambda':>7s} {'srcc(q_mag)':>12s} {'srcc(fused)':>12s} {'mean w_sim':>11s}")
for lam in [0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0]:
    config = base.with_lam(lam)
    mag_records, fused_records, weights = [], [], []
    for k, row in enumerate(rows):
        breakdown = q_mag(row, config)
        w, fused_value = fuse(sims[k], breakdown.q_mag, config)
        mag_records.append(QualityRecord(f"i{k}", None, breakdown.q_mag,
                                         0.0, 1.0, breakdown.q_mag))
        fused_records.append(QualityRecord(f"i{k}", sims[k], breakdown.q_mag,
                                           w.w_sim, w.w_mag, fused_value))
        weights.append(w.w_sim)
    mag_srcc = evaluate(mag_records, mos).srcc
    fused_srcc = evaluate(fused_records, mos).srcc
    print(f"{lam:7.2f} {mag_srcc:12.4f} {fused_srcc:12.4f} "
          f"{np.mean(weights):11.4f}")

print("""
Reading the table: the fused correlation is flat across small powers.
At large powers the magnitude cue's scale explodes, the adaptive weight
collapses onto it (mean w_sim drops), and the fused correlation gives
back part of what the clean similarity cue was contributing.""")
