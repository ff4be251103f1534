# # Seeded ratio tables
#
# The same seed always gives the same instances and the same bytes out.

# %%
import numpy as np

from starsearch import ADSCH
from starsearch.experiments import all_pass, sweep, write_rows

# %%
rows = sweep("random", ADSCH, seed=7, m=(2, 8), count=500)
ratios = np.array([r["ratio"] for r in rows])
slack = np.array([min(r["bound"], r["xi"]) - r["ratio"] for r in rows])
print(f"500 instances: mean ratio {ratios.mean():.3f}, max {ratios.max():.3f}, min slack {slack.min():.3f}")
print("all rows within bound:", all_pass(rows))

# %%
print(write_rows(rows[:3], "csv"))
assert write_rows(rows, "csv") == write_rows(sweep("random", ADSCH, seed=7, m=(2, 8), count=500), "csv")
