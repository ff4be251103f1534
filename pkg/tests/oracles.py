"""Independent reference implementations used only by the tests.

Each one is written from the definitions with no code shared with the
package: plain loops, itertools and mpmath instead of the numpy paths.
"""
import itertools
import math
from functools import lru_cache

import mpmath

mpmath.mp.dps = 50


def phi_mp(x):
    """1 + 2 (1 + x) (1 + 1/x)^x at 50 digits, phi(0) = 3."""
    x = mpmath.mpf(x)
    if x == 0:
        return mpmath.mpf(3)
    return 1 + 2 * (1 + x) * (1 + 1 / x) ** x


def h_q_ell_mp(q, ell):
    q = mpmath.mpf(q)
    bq = 1 + 1 / q
    bq1 = 1 + 1 / (q + 1)
    return bq1 ** (-ell - 1) * (bq ** ell / (bq - 1) + 1 + bq1) * (bq1 - 1)


def opt_brute(pairs, W):
    """(opt, s_I, optimal subsets) by listing every subset with itertools.

    ``pairs`` has one entry per ray: ``(d, w)`` or ``None``.
    """
    rays = [i for i, p in enumerate(pairs) if p is not None]
    if W == 0:
        return 0.0, 0, [()]
    costs = {}
    for k in range(1, len(rays) + 1):
        for S in itertools.combinations(rays, k):
            if math.fsum(pairs[i][1] for i in S) >= W:
                ds = [pairs[i][0] for i in S]
                costs[S] = math.fsum([2 * d for d in ds] + [-max(ds)])
    best = min(costs.values())
    optimal = sorted((S for S, c in costs.items() if c == best), key=lambda S: sum(1 << i for i in S))
    return best, max(len(S) for S in optimal), optimal


def xi_brute(pairs, W, full=3.0):
    m = len(pairs)
    best, _, _ = opt_brute(pairs, W)
    rays = [i for i, p in enumerate(pairs) if p is not None]
    out = math.inf
    for k in range(1, len(rays) + 1):
        for S in itertools.combinations(rays, k):
            if math.fsum(pairs[i][1] for i in S) >= W:
                ds = [pairs[i][0] for i in S]
                d = math.fsum([2 * x for x in ds] + [-max(ds)])
                factor = full if k == m else float(phi_mp(m - k))
                out = min(out, factor * d / best)
    return out


def adsub_cost(m, pairs, done):
    """Cost of the adaptive strategy by a direct loop over its update rules.

    ``done(found_rays)`` says whether the run has met its goal.
    """
    live = list(range(m))
    f, r, D = 1, 0, 1.0
    cost = 0.0
    found = []
    while True:
        if len(live) == 1:
            ray = live[0]
            cost += pairs[ray][0]
            return cost
        b = 1 + 1 / (m - f)
        ray, depth = live[r], D * b
        p = pairs[ray]
        if p is not None and p[0] <= depth:
            found.append(ray)
            if done(found):
                return cost + p[0]
            cost += 2 * p[0]
            live.pop(r)
            f += 1
            r %= len(live)
        else:
            cost += 2 * depth
            D = depth
            r = (r + 1) % len(live)


def minimax_by_presentations(pairs, W):
    """Intrinsic cost with the searcher's knowledge kept as the explicit set
    of presentations still consistent with what it has seen.

    Rays are labelled; a move is (ray, depth) with the depth one of the
    distances; the adversary answers with any outcome that some remaining
    presentation produces.
    """
    m = len(pairs)
    if W == 0:
        return 0.0
    perms = frozenset(itertools.permutations(pairs))
    depths = sorted({d for d, _ in pairs})

    @lru_cache(maxsize=None)
    def value(cands, explored, found):
        best = math.inf
        got = math.fsum(next(iter(cands))[i][1] for i in found)
        for ray in range(m):
            if ray in found:
                continue
            for x in depths:
                if x <= explored[ray]:
                    continue
                groups = {}
                for p in cands:
                    d, w = p[ray]
                    groups.setdefault((d, w) if d <= x else None, set()).add(p)
                worst = -math.inf
                for outcome, ps in groups.items():
                    ps = frozenset(ps)
                    if outcome is None:
                        ex = explored[:ray] + (x,) + explored[ray + 1:]
                        c = 2 * x + value(ps, ex, found)
                    else:
                        d, w = outcome
                        if got + w >= W:
                            c = d
                        else:
                            ex = explored[:ray] + (d,) + explored[ray + 1:]
                            c = 2 * d + value(ps, ex, tuple(sorted(found + (ray,))))
                    worst = max(worst, c)
                best = min(best, worst)
        return best

    return value(perms, (0.0,) * m, ())
