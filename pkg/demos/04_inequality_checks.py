# # Numeric checks of the supporting inequalities
#
# phi(q) - phi(q - 1) stays above 2e, with the increment tending to 2e from
# above, and the auxiliary h_{q,l} never exceeds 1.

# %%
import numpy as np

from starsearch import h_q_ell, phi, verify_h_bound, verify_phi_gap
from starsearch.analysis import phi_increment

# %%
q = np.array([1, 2, 10, 100, 1_000, 10_000], dtype=float)
print("increment - 2e:", phi_increment(q) - 2 * np.e)
print("plain difference at 1e4:", phi(1e4) - phi(1e4 - 1) - 2 * np.e, "(cancellation)")

# %%
rep = verify_phi_gap(10_000)
print("gap holds:", rep.passed, "min slack", rep.min_slack)

# %%
ell = np.arange(1, 12, dtype=float)
print("h_{10,l}:", np.round(h_q_ell(10.0, ell), 6))
rep = verify_h_bound(500)
print("bound holds:", rep.passed, "max", rep.max_value, "at", rep.argmax)
