"""
Adding observational data when the individual's exposure may be confounded
==========================================================================

The trial is unconfounded by design, but the individual chose to take the
drug. An observational study of people who choose for themselves tells us
about that selection.
"""

# %%
from pathlib import Path

from pcbounds import InconsistentEvidence, ObservationalJoint, oracle_tian_pearl, tian_pearl_bounds
from pcbounds.ingest import load_table

DATA = Path(__file__).resolve().parents[1] / "data"

trial = load_table(DATA / "table1.csv", "xy")
observed = load_table(DATA / "table2.csv", "xy", observational=True)
print({k: round(v, 4) for k, v in observed.q.items()})

# %%
# Only 9% of the observational population is exposed and dies, while the
# unexposed die at 24%, above the 12% seen under randomization. Combined, the
# two sources pin the probability of causation at 1.
iv = tian_pearl_bounds(trial, observed)
print("bounds:", iv.as_tuple(), "raw:", (iv.raw_lo, iv.raw_hi))

# %%
# The oracle searches all joint laws of (X, Y(0), Y(1)) reproducing both data
# sources. Its witness is one such law.
res = oracle_tian_pearl(trial, observed)
print("oracle:", res.interval.as_tuple(), "residual:", res.residual)
print("witness joint c[x][y0][y1]:", res.argmax["joint"])

# %%
# If the exposed-and-died share exceeded what the trial allows, no joint law
# fits and the evidence is rejected.
try:
    oracle_tian_pearl(trial, ObservationalJoint.from_cells(0.4, 0.2, 0.1, 0.3))
except InconsistentEvidence as e:
    print("rejected:", e)
