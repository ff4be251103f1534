# # Adversarial instances
#
# Each generator watches a strategy run on an empty star and plants targets
# just past the depths it has already explored.

# %%
import numpy as np

from starsearch import ADSUB, opt, phi, simulate
from starsearch.adversary import adaptive_adversary, gen_all_targets, gen_naive_killer, gen_single_target, killer_ratio
from starsearch.strategies import NAIVE

# %%
# One target, three rays: the ratio climbs towards phi(2) = 14.5.
ratios = [simulate(ADSUB, inst).total_cost / opt(inst) for inst in (gen_single_target(3, i) for i in range(1, 31))]
print("single target, m=3:", np.round(ratios[-5:], 4), "limit", phi(2))

# %%
# Switching the base but keeping the step count makes the naive variant lose
# a constant factor per step, so its ratio grows without bound.
killer = [killer_ratio(NAIVE, gen_naive_killer(4, i)) for i in (10, 20, 30, 40)]
print("naive killer at i = 10, 20, 30, 40:", np.round(killer, 1))
print("adaptive on the same instance:", killer_ratio(ADSUB, gen_naive_killer(4, 40)))

# %%
# Every ray holds a target that is needed.
best = max(simulate(ADSUB, gen_all_targets(ADSUB, 3, snapshot=k)).total_cost
           / opt(gen_all_targets(ADSUB, 3, snapshot=k)) for k in range(20))
print("all targets, m=3, best snapshot ratio:", round(best, 4))

# %%
# The adaptive adversary tries every snapshot and reports the worst.
res = adaptive_adversary(ADSUB, 2, 1)
print("adaptive adversary, m=2:", res.ratio, "exhausted budget:", res.exhausted)
