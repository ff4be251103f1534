# # Adaptive search on a star
#
# One searcher starts at the origin of m rays.  Each excursion walks down a
# ray to a planned depth and comes back unless it ends the search.  The
# adaptive strategy grows its depths by 1 + 1/(m - f), where f counts the
# targets found so far, so every find makes the remaining search more eager.

# %%
import numpy as np

from starsearch import ADSCH, ADSUB, Instance, closed_form_cost, cost_accounting, simulate
from starsearch.strategies import CLASSIC

# %%
# Two light targets close by, one heavy target far out.  W = 2 is met by the
# two light ones.
inst = Instance.from_pairs([(1, 1), (2, 1), (10, 5)], W=2)
trace = simulate(ADSCH, inst)
for e in trace.excursions:
    hit = "-" if e.found is None else f"d={e.found.distance:g}"
    print(f"ray {e.ray}  depth {e.depth:8.3f}  found {hit:7s} cost {e.cost:.3f}")
print("total", trace.total_cost)

# %%
# The cost splits into phases, one per number of found targets.  The closed
# form over the phase records reproduces the simulated cost.
records = cost_accounting(trace, inst.m)
for r in records:
    print(r)
print("closed form", closed_form_cost(records), "simulated", trace.total_cost)

# %%
# Against the classic fixed-base search on random instances.
rng = np.random.default_rng(0)
gaps = []
for _ in range(200):
    m = int(rng.integers(3, 8))
    pairs = [(float(d), 1.0) for d in rng.uniform(1, 100, size=m)]
    inst = Instance.from_pairs(pairs, W=m // 2)
    gaps.append(simulate(CLASSIC, inst).total_cost / simulate(ADSUB, inst).total_cost)
gaps = np.array(gaps)
print(f"classic / adaptive cost: median {np.median(gaps):.3f}, max {gaps.max():.3f}")
