"""Weighted search when the offline benchmark only knows the multiset of
``(distance, weight)`` pairs, not which ray holds which pair.

The benchmark cost ("intrinsic cost") is the value of a game: the offline
searcher picks excursions, an adversary picks the presentation as late as
possible, consistent with everything observed so far.  The online side is
reduced to signed search (find one 1-target among 0/1 targets): a signed
strategy is run as is, every discovery reported to it as a 0-target, until
the true weight reaches ``W``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .core import Instance, Target, Trace, simulate
from .errors import CapacityError, DomainError
from .strategies import Cyclic

MAX_PRESENTATION_RAYS = 8
MAX_ORACLE_RAYS = 4


@dataclass(frozen=True)
class PartialMultiset:
    """The ``m`` pairs ``(d, w)`` of an instance without their ray labels."""

    pairs: tuple
    W: float

    def __post_init__(self):
        pairs = tuple(sorted((float(d), float(w)) for d, w in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "W", float(self.W))
        if not pairs:
            raise DomainError("a multiset needs at least one pair")
        for d, w in pairs:
            Target(d, w)  # validates ranges
        if math.fsum(w for _, w in pairs) < self.W:
            raise DomainError("pairs cannot reach the goal W")

    @property
    def m(self) -> int:
        return len(self.pairs)

    @classmethod
    def of(cls, instance: Instance) -> "PartialMultiset":
        if any(t is None for t in instance.targets):
            raise DomainError("every ray needs a target to form a multiset")
        return cls(tuple((t.distance, t.weight) for t in instance.targets), instance.W)

    @classmethod
    def from_dict(cls, data: dict) -> "PartialMultiset":
        return cls(tuple(tuple(p) for p in data["pairs"]), data["W"])

    def to_dict(self) -> dict:
        return {"W": self.W, "pairs": [list(p) for p in self.pairs]}


def presentations(lam: PartialMultiset):
    """Every distinct assignment of the pairs to rays, as instances."""
    if lam.m > MAX_PRESENTATION_RAYS:
        raise CapacityError(f"presentations are enumerated for m <= {MAX_PRESENTATION_RAYS}")
    for order in sorted(set(itertools.permutations(lam.pairs))):
        yield Instance(lam.m, tuple(Target(d, w) for d, w in order), lam.W)


def _consistent(explored: tuple, remaining: tuple) -> bool:
    # every unresolved ray needs its own pair lying beyond its explored depth;
    # the sets are nested, so Hall's condition reduces to a sorted count
    ds = sorted(d for d, _ in remaining)
    for k, e in enumerate(sorted(explored, reverse=True), start=1):
        if sum(1 for d in ds if d > e) < k:
            return False
    return True


def intrinsic_cost(lam: PartialMultiset) -> float:
    """Best worst-case cost of an offline searcher who knows only ``lam``.

    Exact minimax over excursion depths drawn from the distances in ``lam``:
    probing between two distances reveals nothing new and only costs more.
    States are (explored depth of every unresolved ray, unassigned pairs);
    rays with equal explored depth are interchangeable, so both parts are
    kept sorted.
    """
    if lam.m > MAX_ORACLE_RAYS:
        raise CapacityError(f"the minimax oracle handles m <= {MAX_ORACLE_RAYS}")
    W = lam.W
    if W == 0:
        return 0.0
    depths = sorted({d for d, _ in lam.pairs})

    @lru_cache(maxsize=None)
    def value(explored: tuple, remaining: tuple) -> float:
        best = math.inf
        for idx, e in enumerate(explored):
            if idx and explored[idx - 1] == e:
                continue
            others = explored[:idx] + explored[idx + 1:]
            for x in depths:
                if x <= e:
                    continue
                worst = -math.inf
                missed = tuple(sorted(others + (x,)))
                if _consistent(missed, remaining):
                    worst = 2.0 * x + value(missed, remaining)
                for k, (d, w) in enumerate(remaining):
                    if not e < d <= x or (k and remaining[k - 1] == (d, w)):
                        continue
                    rest = remaining[:k] + remaining[k + 1:]
                    if not _consistent(others, rest):
                        continue
                    if _reached(lam, rest):
                        cost = d
                    else:
                        cost = 2.0 * d + value(others, rest)
                    worst = max(worst, cost)
                best = min(best, worst)
        return best

    return value(tuple([0.0] * lam.m), lam.pairs)


def _reached(lam: PartialMultiset, remaining: tuple) -> bool:
    found = list(lam.pairs)
    for p in remaining:
        found.remove(p)
    return math.fsum(w for _, w in found) >= lam.W


@dataclass(frozen=True)
class SignedInstance:
    """Per-ray ``(distance, sign)`` with sign in {0, 1}; goal: one 1-target."""

    distances: tuple
    signs: tuple

    def __post_init__(self):
        object.__setattr__(self, "distances", tuple(float(d) for d in self.distances))
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        if len(self.distances) != len(self.signs) or not self.distances:
            raise DomainError("need one (distance, sign) per ray")
        if any(s not in (0, 1) for s in self.signs):
            raise DomainError("signs must be 0 or 1")
        if 1 not in self.signs:
            raise DomainError("a signed instance needs at least one 1-target")

    @property
    def m(self) -> int:
        return len(self.distances)

    def as_instance(self) -> Instance:
        return Instance(self.m, tuple(Target(d, s) for d, s in zip(self.distances, self.signs)), 1.0)

    def multiset(self) -> PartialMultiset:
        return PartialMultiset(tuple(zip(self.distances, map(float, self.signs))), 1.0)


def reduce_ws_instance(instance: Instance, found_set) -> tuple:
    """Split an instance around the rays ``found_set`` (the set ``F``).

    ``F`` holds the targets located *before* the run's final discovery.  In
    the weighted image ``I_W`` those weigh 0 and every other target weighs
    ``W``; the signed image ``I_s`` marks the same split with signs 0 and 1.
    """
    F = set(found_set)
    W = instance.W
    weighted, signs = [], []
    for i, t in enumerate(instance.targets):
        if t is None:
            raise DomainError("every ray needs a target for the reduction")
        heavy = i not in F
        weighted.append(Target(t.distance, W if heavy else 0.0))
        signs.append(1 if heavy else 0)
    I_W = Instance(instance.m, tuple(weighted), W)
    return I_W, SignedInstance(instance.distances(), tuple(signs))


class _ZeroFeedback:
    def __init__(self, inner):
        self.inner = inner

    def propose(self):
        return self.inner.propose()

    def observe(self, ray, target):
        self.inner.observe(ray, None if target is None else Target(target.distance, 0.0))


@dataclass(frozen=True)
class WeightedFromSigned:
    """Weighted strategy that runs a signed strategy blind to weights."""

    signed: object

    def build(self, m: int):
        return _ZeroFeedback(self.signed.build(m))

    def __str__(self):
        return f"ws({self.signed})"


def ws_from_signed(signed_strategy) -> WeightedFromSigned:
    return WeightedFromSigned(signed_strategy)


class _SignedBaseline(Cyclic):
    def __init__(self, m: int):
        super().__init__(m, lambda f: math.inf if m == 1 else 1.0 + 1.0 / (m - 1))

    def propose(self):
        if len(self.live) == 1:
            self.step += 1
            return self.live[0], math.inf
        return super().propose()


@dataclass(frozen=True)
class SignedBaseline:
    """Round-robin with base ``b_{m,1}`` over rays not yet cleared; the last
    remaining ray is searched to the end.  Stands in for a real signed-search
    algorithm behind the same interface."""

    def build(self, m: int):
        return _SignedBaseline(m)

    def __str__(self):
        return "signed-baseline"


def signed_baseline() -> SignedBaseline:
    return SignedBaseline()


def run_ws(signed_strategy, instance: Instance) -> tuple:
    """Run the wrapped strategy; return ``(trace, F)`` with ``F`` the rays
    found before the final discovery."""
    trace = simulate(ws_from_signed(signed_strategy), instance)
    F = frozenset(r for r, _ in trace.found[:-1])
    return trace, F


def run_ss(signed_strategy, signed: SignedInstance) -> Trace:
    return simulate(signed_strategy, signed.as_instance())


@dataclass(frozen=True)
class ReductionCheck:
    presentation: Instance
    F: frozenset
    ws_cost: float
    ss_cost: float
    same_moves: bool
    xi_w: float
    xi_s: float

    @property
    def ok(self) -> bool:
        return self.same_moves and self.ws_cost == self.ss_cost and self.xi_w >= self.xi_s


def check_reduction(lam: PartialMultiset, signed_strategy=None) -> list:
    """Run the reduction on every presentation of ``lam``."""
    signed_strategy = signed_strategy or signed_baseline()
    xi_w = intrinsic_cost(lam)
    out = []
    for inst in presentations(lam):
        trace, F = run_ws(signed_strategy, inst)
        _, I_s = reduce_ws_instance(inst, F)
        ss = run_ss(signed_strategy, I_s)
        same = [(e.ray, e.depth, e.cost) for e in trace.excursions] == [
            (e.ray, e.depth, e.cost) for e in ss.excursions
        ]
        out.append(ReductionCheck(inst, F, trace.total_cost, ss.total_cost, same,
                                  xi_w, intrinsic_cost(I_s.multiset())))
    return out
