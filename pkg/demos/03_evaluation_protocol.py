#!/usr/bin/env python3
"""The evaluation protocol: SRCC, PLCC, and the logistic remapping.

Predicted scores rarely live on the same scale as human opinion scores.
Rank correlation (SRCC) ignores scale entirely; linear correlation
(PLCC) is conventionally computed after remapping predictions through a
fitted 4-parameter logistic, which removes any monotone scale mismatch
without rewarding non-monotone behaviour.
"""

import numpy as np

from maclip import (
    MosTable,
    QualityRecord,
    evaluate,
    four_param_logistic,
    logistic_fit,
    plcc,
    srcc,
)

rng = np.random.default_rng(2)

# Predictions on an arbitrary metric scale; ground truth on a 1..5
# opinion scale that saturates at both ends, so the relation between
# the two is monotone but far from linear.
n = 80
pred = np.sort(rng.uniform(0.0, 6.0, n))
mos = 1.0 + 4.0 / (1.0 + np.exp(-(pred - 3.0) * 2.0))
mos += rng.normal(0.0, 0.02, n)                     # light noise

print(f"srcc: {srcc(pred, mos):+.4f}   (rank agreement, scale-free)")
print(f"plcc, raw: {plcc(pred, mos):+.4f}   (punished by the scale mismatch)")

fit = logistic_fit(pred, mos)
print(f"plcc, after logistic remap: {plcc(fit.mapped, mos):+.4f}")
print(f"fitted parameters: " + ", ".join(f"{b:.3f}" for b in fit.params))

# The same protocol through evaluate(), which joins by image id, skips
# ids present on only one side, and reports the counts.
records = [
    QualityRecord(id=f"im{i}", q_sim=None, q_mag=float(p), w_sim=0.0,
                  w_mag=1.0, q=float(p))
    for i, p in enumerate(pred)
]
table = MosTable(entries={f"im{i}": float(m) for i, m in enumerate(mos)})
table.entries["only_in_mos"] = 3.0

report = evaluate(records, table, with_logistic=True)
print(f"\nevaluate(): n={report.n}, srcc={report.srcc:.4f}, "
      f"plcc_logistic={report.plcc_logistic:.4f}")
print(f"skipped: {report.skipped_scores} scored ids without ground truth, "
      f"{report.skipped_mos} ground-truth ids never scored")

# Sanity: the remap is monotone, so it cannot manufacture rank agreement.
grid = np.linspace(pred.min(), pred.max(), 200)
curve = four_param_logistic(grid, fit.params)
assert np.all(np.diff(curve) >= 0) or np.all(np.diff(curve) <= 0)
print("fitted curve is monotone over the prediction range")
