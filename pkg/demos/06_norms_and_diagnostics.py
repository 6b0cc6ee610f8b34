#!/usr/bin/env python3
"""Why the magnitude cue normalizes by sigma, and a distribution probe.

Raw embedding norms look like a quality signal until the encoder, a
preprocessing change, or plain exposure scales everything.  The
sigma-normalized Box-Cox score is invariant to that; the l1/l2 variants
are kept around precisely to demonstrate the failure.
"""

import numpy as np

from maclip import ScoreConfig, q_mag, q_mag_variant, wasserstein_1d

rng = np.random.default_rng(4)
row = rng.normal(0.0, 1.5, 256)
config = ScoreConfig()

print("scaling one embedding by c:")
print(f"{'c':>6s} {'q_mag':>10s} {'l1':>10s} {'l2':>10s}")
for c in [0.25, 1.0, 4.0, 16.0]:
    scaled = c * row
    print(f"{c:6.2f} {q_mag(scaled, config).q_mag:10.4f} "
          f"{q_mag_variant(scaled, 'l1'):10.4f} "
          f"{q_mag_variant(scaled, 'l2'):10.4f}")
print("q_mag holds still; the raw norms track the arbitrary scale.\n")

# What q_mag does respond to is the *shape* of the magnitude profile:
# a sharper profile (a few dominant coordinates) vs a flat one.
flat = np.ones(256) + rng.normal(0.0, 0.05, 256)
sharp = np.ones(256) * 0.2
sharp[:16] = 8.0
print(f"flat profile:  q_mag = {q_mag(flat, config).q_mag:.4f}")
print(f"sharp profile: q_mag = {q_mag(sharp, config).q_mag:.4f}")

# The first Wasserstein distance between sorted magnitude profiles is a
# handy diagnostic for how differently two sets of embeddings are
# distributed, e.g. before trusting scores across encoders.
a = np.abs(rng.normal(0.0, 1.0, 500))
b = np.abs(rng.normal(0.0, 1.0, 500))
c = np.abs(rng.normal(0.0, 2.5, 500))
print(f"\nwasserstein_1d(same law)      = {wasserstein_1d(a, b):.4f}")
print(f"wasserstein_1d(different law) = {wasserstein_1d(a, c):.4f}")

# The degenerate flag: a profile with (numerically) no spread is scored
# finitely but flagged, because its normalization ran on epsilon alone.
constant = np.full(64, 3.0)
breakdown = q_mag(constant, config)
print(f"\nconstant profile: q_mag={breakdown.q_mag:.3g}, "
      f"degenerate={breakdown.degenerate}")
