#!/usr/bin/env python3
"""The adaptive weight as a function of the cue gap.

w_sim = logistic((base_sim - base_mag) + 2 * alpha * (q_sim - q_mag))

At zero gap the similarity cue gets the benefit of the doubt (its base
trust is higher).  The gap shifts trust toward whichever cue claims
higher quality; alpha sets how aggressively.
"""

from maclip import ScoreConfig, fuse

print("weight response to the gap delta = q_sim - q_mag (alpha = 1):")
print(f"{'delta':>7s} {'w_sim':>8s} {'w_mag':>8s}")
for delta in [-2.0, -1.0, -0.5, -0.2, 0.0, 0.2, 0.5, 1.0, 2.0]:
    weights, _ = fuse(0.5 + delta, 0.5, ScoreConfig())
    print(f"{delta:7.2f} {weights.w_sim:8.4f} {weights.w_mag:8.4f}")

print("\nalpha controls the steepness (gap fixed at +0.5):")
print(f"{'alpha':>7s} {'w_sim':>8s}")
for alpha in [0.0, 0.5, 1.0, 2.0, 4.0]:
    weights, _ = fuse(1.0, 0.5, ScoreConfig(alpha=alpha))
    print(f"{alpha:7.2f} {weights.w_sim:8.4f}")
# alpha = 0 freezes the weights at the base-trust split for every image.

print("\nthe fused score never leaves the interval between the cues:")
for qs, qm in [(0.9, 0.1), (0.1, 0.9), (0.3, 2.5)]:
    _, q = fuse(qs, qm, ScoreConfig())
    print(f"  q_sim={qs:.1f} q_mag={qm:.1f} -> q={q:.4f} "
          f"(in [{min(qs, qm):.1f}, {max(qs, qm):.1f}])")

# Extreme gaps saturate the weight but stay strictly inside (0, 1), so
# neither cue is ever fully discarded.
weights, _ = fuse(1000.0, 0.0, ScoreConfig())
print(f"\nsaturated case: w_sim={weights.w_sim!r} (still < 1)")
