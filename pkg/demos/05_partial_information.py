# # Partial information
#
# The searcher knows the multiset of (distance, weight) pairs but not which
# ray holds which.  The intrinsic cost is the best worst-case cost over all
# ways to place the pairs.  A weighted searcher reduces to a signed one that
# only learns whether a ray holds a target.

# %%
from starsearch.partialinfo import PartialMultiset, check_reduction, intrinsic_cost, presentations

# %%
lam = PartialMultiset([(1, 1), (5, 0)], W=1)
print("presentations:", [inst.to_dict()["targets"] for inst in presentations(lam)])
print("intrinsic cost:", intrinsic_cost(lam))

# %%
lam = PartialMultiset([(1, 0), (2, 1), (4, 1)], W=1)
for c in check_reduction(lam):
    print(sorted(c.F), "WS", c.ws_cost, "SS", c.ss_cost, "xi_w", c.xi_w, ">= xi_s", c.xi_s, c.ok)
