# # Offline optimum and the refined bound xi
#
# Knowing every target, the cheapest way to collect weight W visits some
# feasible subset S and stops at the farthest: d_S = 2 * sum(d) - max(d).
# s_I is the largest size of an optimal subset.  xi(I) weighs every feasible
# subset by how far it is from optimal.

# %%
from starsearch import ADSCH, Instance, phi, simulate, summarize

# %%
inst = Instance.from_pairs([(1, 1), (2, 1), (10, 5)], W=2)
s = summarize(inst)
print("opt", s.opt, "s_I", s.s_I, "optimal subsets", s.optimal_subsets)
print("phi(m - s_I)", phi(inst.m - s.s_I), "xi", s.xi)
print("measured ratio", simulate(ADSCH, inst).total_cost / s.opt)

# %%
# A crowd of cheap light targets pulls xi far below phi(m - s_I).
m, D = 10, 1000.0
pairs = [(D, 1.0), (D, 1.0)] + [(D / (m - 2) + 1e-3, 1.0 / (m - 2))] * (m - 2)
crowd = Instance.from_pairs(pairs, W=2.0)
s = summarize(crowd)
print(f"s_I={s.s_I}  phi(m - s_I)={phi(m - s.s_I):.1f}  xi={s.xi:.3f}")
print("measured ratio", simulate(ADSCH, crowd).total_cost / s.opt)
