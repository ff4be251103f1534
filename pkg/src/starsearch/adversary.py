"""Instances on which a deterministic strategy does badly.

All constructions share one move: run the strategy on a star with no (or
only some) targets, look at how deep it has gone on each ray, and plant the
next target just beyond that depth.  Because the strategy is deterministic
it repeats the same moves on the planted instance until it first reaches a
planted target, so it has to come back to that ray a full round later.

"Just beyond" is ``l * (1 + epsilon)``: an absolute offset would vanish in
floating point once depths exceed about ``1e10``.  Cheap targets that should
cost "almost nothing" sit at distance 1, the smallest legal distance.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .core import (
    Instance,
    SubsetInstance,
    Target,
    explored_depths,
    probe,
    simulate,
    simulate_subset,
)
from .errors import DomainError, GenerationError
from .offline import opt
from .strategies import ADSCH, ADSUB, NAIVE

DEFAULT_EPSILON = 1e-6


def beyond(depth: float, epsilon: float = DEFAULT_EPSILON) -> float:
    """A distance that an excursion to ``depth`` just fails to reach."""
    if epsilon <= 0:
        raise DomainError(f"epsilon must be > 0, got {epsilon!r}")
    return max(depth, 1.0) * (1.0 + epsilon)


def _cheap_prefix(strategy, m: int, count: int, weight: float = 1.0) -> list:
    """Put ``count`` targets at distance 1 on the first rays the strategy visits."""
    targets = [None] * m
    for k in range(count):
        trace = probe(strategy, m, targets, k + 1)
        if len(trace.excursions) <= k:
            raise GenerationError("strategy stopped before visiting enough rays")
        e = trace.excursions[k]
        if e.found is not None or e.depth < 1.0:
            raise GenerationError("strategy does not pick up a distance-1 target at once")
        targets[e.ray] = Target(1.0, weight)
    check = probe(strategy, m, targets, count)
    if any(e.found is None for e in check.excursions):
        raise GenerationError("cheap targets are not found in the first excursions")
    return targets


def _plant_after(strategy, m: int, targets: list, skip: int, i: int, epsilon: float):
    """Plant beyond the ``i``-th excursion after the first ``skip`` ones."""
    if i < 1:
        raise DomainError(f"i must be >= 1, got {i}")
    trace = probe(strategy, m, targets, skip + i)
    if len(trace.excursions) < skip + i:
        raise GenerationError("strategy stopped before the requested excursion")
    e = trace.excursions[skip + i - 1]
    if math.isinf(e.depth):
        raise GenerationError("strategy never returns from that excursion")
    if e.found is not None or targets[e.ray] is not None:
        raise GenerationError("requested excursion already meets a target")
    return e.ray, beyond(e.depth, epsilon)


def _fill_far(strategy, instance: Instance, filler: Target) -> Instance:
    """Put ``filler``-weight targets on empty rays, beyond anything the run reaches."""
    trace = simulate(strategy, instance)
    reach = max(
        [1.0] + [e.depth for e in trace.excursions if math.isfinite(e.depth)]
        + [e.found.distance for e in trace.excursions if e.found is not None]
    )
    far = 2.0 * reach
    targets = tuple(
        Target(far, filler.weight) if t is None else t for t in instance.targets
    )
    filled = Instance(instance.m, targets, instance.W)
    if simulate(strategy, filled).excursions != trace.excursions:
        raise GenerationError("far targets changed the run")
    return filled


def gen_single_target(m: int, i: int, epsilon: float = DEFAULT_EPSILON, strategy=ADSUB) -> Instance:
    """One unit target just beyond the depth of the strategy's ``i``-th excursion.

    Against the adaptive strategy the ratio tends to ``phi(m - 1)`` as ``i``
    grows.
    """
    targets = [None] * m
    ray, d = _plant_after(strategy, m, targets, 0, i, epsilon)
    targets[ray] = Target(d, 1.0)
    return Instance(m, tuple(targets), 1.0)


def gen_subsets_lb(m: int, s: int, i: int = 30, epsilon: float = DEFAULT_EPSILON,
                   w: float = 1.0) -> Instance:
    """``s - 1`` cheap weight-``w`` targets, one hidden weight-``w`` target, ``W = s w``.

    The hidden target goes just beyond the ``i``-th excursion that follows the
    cheap discoveries; the other rays hold weight-0 targets out of reach.
    The adaptive strategy's ratio tends to ``phi(m - s)``.
    """
    if not 1 <= s <= m - 1:
        raise DomainError(f"need 1 <= s <= m - 1, got m={m}, s={s}")
    targets = _cheap_prefix(ADSCH, m, s - 1, w)
    ray, d = _plant_after(ADSCH, m, targets, s - 1, i, epsilon)
    targets[ray] = Target(d, w)
    return _fill_far(ADSCH, Instance(m, tuple(targets), s * w), Target(1.0, 0.0))


def gen_weights_lb(m: int, t_real: float, i: int = 30, epsilon: float = DEFAULT_EPSILON,
                   w: float = 1.0) -> Instance:
    """All ``m`` targets weigh ``w`` and ``W = t_real * w``.

    ``ceil(t_real) - 1`` targets are cheap, one is hidden as in
    :func:`gen_subsets_lb`, the rest are out of reach.  When ``ceil(t_real)``
    is ``m`` every target is needed and :func:`gen_all_targets` builds the
    instance instead (snapshot ``i``).
    """
    if not 0 < t_real < m:
        raise DomainError(f"need 0 < t_real < m, got m={m}, t_real={t_real}")
    k = math.ceil(t_real)
    if k == m:
        inst = gen_all_targets(ADSCH, m, epsilon, snapshot=i)
        targets = tuple(Target(t.distance, w) for t in inst.targets)
        return Instance(m, targets, t_real * w)
    targets = _cheap_prefix(ADSCH, m, k - 1, w)
    ray, d = _plant_after(ADSCH, m, targets, k - 1, i, epsilon)
    targets[ray] = Target(d, w)
    return _fill_far(ADSCH, Instance(m, tuple(targets), t_real * w), Target(1.0, w))


def gen_all_targets(strategy, m: int, epsilon: float = DEFAULT_EPSILON, snapshot: int = 0) -> Instance:
    """Unit targets on every ray just beyond the depths reached after
    ``snapshot`` excursions; ``W = m``."""
    if snapshot < 0:
        raise DomainError(f"snapshot must be >= 0, got {snapshot}")
    trace = probe(strategy, m, None, snapshot)
    if len(trace.excursions) < snapshot or any(math.isinf(e.depth) for e in trace.excursions):
        raise GenerationError("strategy does not return to the origin by the snapshot")
    depth = explored_depths(trace.excursions, m)
    return Instance(m, tuple(Target(beyond(l, epsilon), 1.0) for l in depth), float(m))


def gen_naive_killer(m: int, i: int, epsilon: float = DEFAULT_EPSILON) -> SubsetInstance:
    """Subset instance that defeats the base-switching cyclic strategy.

    At excursion ``i`` the strategy finds a target outside ``S`` on ray ``r``;
    the single member of ``S`` sits on ray ``r - 1`` just beyond its last
    search.  The switch to a larger base keeps the old exponent, so reaching
    ``r - 1`` again costs about ``(b_{m,2} / b_{m,1}) ** i`` times the optimum.
    """
    if m < 3:
        raise DomainError(f"need m >= 3, got {m}")
    if i < 1:
        raise DomainError(f"need i >= 1, got {i}")
    trace = probe(NAIVE, m, None, i)
    step = trace.excursions[i - 1]
    r = step.ray
    prev = (r - 1) % m
    reach = explored_depths(trace.excursions[: i - 1], m)[prev]
    distances = [None] * m
    distances[r] = step.depth
    distances[prev] = beyond(reach, epsilon)
    return SubsetInstance(m, tuple(distances), frozenset({prev}))


@dataclass(frozen=True)
class AdversaryResult:
    instance: Instance
    ratio: float
    cost: float
    opt: float
    cheap: int
    snapshot: int
    exhausted: bool


def adaptive_adversary(strategy, m: int, objective: int, epsilon: float = DEFAULT_EPSILON,
                       budget: int = 60) -> AdversaryResult:
    """Worst instance over a bounded placement schedule.

    ``objective`` unit targets must be found (``W = objective``).  For each
    number ``c`` of cheap targets, each snapshot ``T`` of the strategy's run
    after the cheap ones, and each choice of ``objective - c`` free rays, the
    targets go just beyond the depths reached at ``T``; every candidate is
    simulated and the largest measured ratio wins.  ``exhausted`` is set when
    the strategy was still running at the end of the ``budget`` excursions,
    i.e. later snapshots might have done better.
    """
    if not 1 <= objective <= m:
        raise DomainError(f"objective must be in [1, m], got {objective}")
    best = None
    exhausted = False
    for cheap in range(objective):
        try:
            base = _cheap_prefix(strategy, m, cheap)
        except GenerationError:
            continue
        run = probe(strategy, m, base, cheap + budget)
        exhausted |= len(run.excursions) == cheap + budget and not any(
            math.isinf(e.depth) for e in run.excursions
        )
        free = [r for r in range(m) if base[r] is None]
        for T in range(cheap, len(run.excursions) + 1):
            seen = run.excursions[:T]
            if any(math.isinf(e.depth) for e in seen):
                break
            depth = explored_depths(seen, m)
            for rays in itertools.combinations(free, objective - cheap):
                targets = list(base)
                for r in rays:
                    targets[r] = Target(beyond(depth[r], epsilon), 1.0)
                inst = Instance(m, tuple(targets), float(objective))
                cost = simulate(strategy, inst).total_cost
                o = opt(inst)
                measured = cost / o
                if best is None or measured > best.ratio:
                    best = AdversaryResult(inst, measured, cost, o, cheap, T, False)
    if best is None:
        raise GenerationError("no placement could be generated")
    return AdversaryResult(best.instance, best.ratio, best.cost, best.opt,
                           best.cheap, best.snapshot, exhausted)


def killer_ratio(strategy, instance: SubsetInstance) -> float:
    """Measured ratio of a strategy on a subset instance."""
    from .offline import d_S

    return simulate_subset(strategy, instance).total_cost / d_S(instance, instance.S)
