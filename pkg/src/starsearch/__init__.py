"""Weighted search on a star of ``m`` rays.

Targets sit on rays at distances unknown to the searcher and carry weights; a
single searcher starting at the origin must collect total weight ``W``.  The
package provides the adaptive search strategy and baselines, exact offline
optima, adversarial instance families, numeric checks of the supporting
inequalities, and the partial-information reduction to signed search.
"""
from .analysis import ALL_TARGETS_BOUND, b, b_mt, h, h_q_ell, phi, ratio_bound, verify_h_bound, verify_phi_gap
from .core import (
    Excursion,
    Instance,
    SubsetInstance,
    Target,
    Trace,
    closed_form_cost,
    cost_accounting,
    load_instance,
    save_instance,
    simulate,
    simulate_subset,
)
from .errors import StarSearchError
from .offline import d_S, opt, s_of, summarize, xi, xi_guarantee
from .strategies import (
    ADSCH,
    ADSUB,
    AdSub,
    StrategySpec,
    adsch,
    classic_single,
    fixed_base_cyclic,
    multi_target_known_t,
    naive_adaptive,
)

__version__ = "0.1.0"
