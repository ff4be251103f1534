"""Exact offline oracles by subset enumeration.

With full information the cheapest way to collect a subset ``S`` of targets is
to visit the farthest one last: ``d_S = 2 * sum(d_i) - max(d_i)``.  The
optimum of a weighted instance is the cheapest ``d_S`` over all subsets that
reach the goal, found here by enumerating all ``2**m`` subsets.

The enumeration runs on numpy arrays indexed by bitmask; subsets whose weight
or cost lies within a hair of the decision threshold are re-evaluated with
``math.fsum`` so that ties and feasibility never depend on summation order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analysis import ALL_TARGETS_BOUND, phi
from .core import Instance, SubsetInstance
from .errors import CapacityError, DegenerateInstanceError, DomainError

MAX_ENUM_RAYS = 24
_NEAR = 1e-9


def _distances(instance):
    if isinstance(instance, SubsetInstance):
        return instance.distances
    return instance.distances()


def d_S(instance, S) -> float:
    """Optimal cost of visiting every target of ``S``."""
    S = sorted(set(S))
    if not S:
        raise DomainError("S must be nonempty")
    dist = _distances(instance)
    picked = []
    for i in S:
        if not 0 <= i < len(dist) or dist[i] is None:
            raise DomainError(f"ray {i} carries no target")
        picked.append(dist[i])
    return math.fsum([2.0 * d for d in picked] + [-max(picked)])


def w_S(instance: Instance, S) -> float:
    return math.fsum(instance.targets[i].weight for i in S)


@dataclass(frozen=True)
class SubsetCost:
    subset: tuple
    d_S: float
    w_S: float


def subset_cost(instance: Instance, S) -> SubsetCost:
    S = tuple(sorted(set(S)))
    return SubsetCost(S, d_S(instance, S), w_S(instance, S))


def _members(mask: int) -> tuple:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


class _Table:
    """Per-bitmask sums over the present targets of an instance."""

    def __init__(self, instance: Instance):
        m = instance.m
        if m > MAX_ENUM_RAYS:
            raise CapacityError(f"subset enumeration is limited to m <= {MAX_ENUM_RAYS}, got {m}")
        n = 1 << m
        total = np.zeros(n)
        dmax = np.zeros(n)
        wsum = np.zeros(n)
        card = np.zeros(n, dtype=np.int64)
        valid = np.ones(n, dtype=bool)
        for k, t in enumerate(instance.targets):
            lo = 1 << k
            if t is None:
                valid[lo:2 * lo] = False
                continue
            valid[lo:2 * lo] = valid[:lo]
            total[lo:2 * lo] = total[:lo] + t.distance
            dmax[lo:2 * lo] = np.maximum(dmax[:lo], t.distance)
            wsum[lo:2 * lo] = wsum[:lo] + t.weight
            card[lo:2 * lo] = card[:lo] + 1
        self.instance = instance
        self.card = card
        self.cost = np.where(valid, 2.0 * total - dmax, np.inf)
        self.feasible = self._feasible(valid, wsum)

    def _feasible(self, valid, wsum):
        W = self.instance.W
        feasible = valid & (wsum >= W)
        close = np.flatnonzero(valid & (np.abs(wsum - W) <= _NEAR * max(1.0, W)))
        for mask in close:
            feasible[mask] = w_S(self.instance, _members(int(mask))) >= W
        return feasible

    def exact_cost(self, mask: int) -> float:
        members = _members(mask)
        return d_S(self.instance, members) if members else 0.0


def _optimum(table: _Table):
    costs = np.where(table.feasible, table.cost, np.inf)
    approx = costs.min()
    if not np.isfinite(approx):
        raise DomainError("instance has no feasible subset")
    near = np.flatnonzero(costs <= approx * (1.0 + _NEAR) + _NEAR)
    exact = {int(mask): table.exact_cost(int(mask)) for mask in near}
    best = min(exact.values())
    optimal = sorted(mask for mask, c in exact.items() if c == best)
    return best, optimal


def opt(instance: Instance) -> float:
    """Cheapest full-information cost of collecting weight ``W``."""
    instance.check_feasible()
    if instance.W == 0:
        return 0.0
    return _optimum(_Table(instance))[0]


def s_of(instance: Instance):
    """``(s_I, optimal_subsets)``: largest cardinality among optimal subsets.

    Subsets are returned as sorted tuples of ray indices, in bitmask order.
    For ``W = 0`` the empty set is the only optimum and ``s_I = 0``.
    """
    instance.check_feasible()
    if instance.W == 0:
        return 0, [()]
    _, masks = _optimum(_Table(instance))
    subsets = [_members(mask) for mask in masks]
    return max(len(s) for s in subsets), subsets


def _xi(table: _Table, best: float, full_bound: float) -> float:
    m = table.instance.m
    factors = phi(np.arange(m + 1, dtype=float)[::-1])  # indexed by |S|: phi(m - |S|)
    factors[m] = full_bound
    scores = np.where(table.feasible, factors[table.card] * table.cost / best, np.inf)
    return float(scores.min())


def xi(instance: Instance) -> float:
    """Refined parameter ``min over feasible S of phi(m - |S|) * d_S / opt``.

    ``phi(0) = 3`` is used for ``|S| = m``.  Undefined (error) when ``opt = 0``.
    """
    instance.check_feasible()
    if instance.W == 0:
        raise DegenerateInstanceError("xi is undefined when opt = 0 (W = 0)")
    table = _Table(instance)
    best, _ = _optimum(table)
    return _xi(table, best, 3.0)


def xi_guarantee(instance: Instance) -> float:
    """Same minimum, with ``3 + 2e`` in place of ``phi(0)`` for ``|S| = m``.

    This is the ratio the adaptive strategy actually guarantees: it is no
    worse than its subset-search bound for any feasible subset.
    """
    instance.check_feasible()
    if instance.W == 0:
        raise DegenerateInstanceError("xi is undefined when opt = 0 (W = 0)")
    table = _Table(instance)
    best, _ = _optimum(table)
    return _xi(table, best, ALL_TARGETS_BOUND)


@dataclass(frozen=True)
class OfflineSummary:
    opt: float
    s_I: int
    optimal_subsets: tuple
    xi: float | None
    xi_guarantee: float | None

    def to_dict(self) -> dict:
        return {
            "opt": self.opt,
            "s_I": self.s_I,
            "xi": self.xi,
            "xi_guarantee": self.xi_guarantee,
            "optimal_subsets": [list(s) for s in self.optimal_subsets],
        }


def summarize(instance: Instance) -> OfflineSummary:
    """All offline quantities from a single enumeration."""
    instance.check_feasible()
    if instance.W == 0:
        return OfflineSummary(0.0, 0, ((),), None, None)
    table = _Table(instance)
    best, masks = _optimum(table)
    subsets = tuple(_members(mask) for mask in masks)
    return OfflineSummary(
        opt=best,
        s_I=max(len(s) for s in subsets),
        optimal_subsets=subsets,
        xi=_xi(table, best, 3.0),
        xi_guarantee=_xi(table, best, ALL_TARGETS_BOUND),
    )
