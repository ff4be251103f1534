"""Domain types and the excursion engine.

A run alternates between the engine and a strategy object.  The strategy
proposes ``(ray, depth)`` while the searcher is at the origin; the engine
walks the ray, charges the distance and reports back whether a target was
met.  A strategy is anything with

* ``propose() -> (ray, depth)``; ``depth`` may be ``math.inf`` when the
  strategy commits to a ray until its target turns up,
* ``observe(ray, target)`` where ``target`` is a :class:`Target` or ``None``.

``simulate`` takes a *factory*: any object with ``build(m)`` returning a fresh
strategy (:class:`~starsearch.strategies.StrategySpec` is one).
"""
from __future__ import annotations

import json
import math
import numbers
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .analysis import b_mt
from .errors import DomainError, InfeasibleInstanceError, ProtocolError, ShapeError

#: relative tolerance for the phase cost identity
COST_RTOL = 1e-9


@dataclass(frozen=True)
class Target:
    distance: float
    weight: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "distance", float(self.distance))
        object.__setattr__(self, "weight", float(self.weight))
        if not (math.isfinite(self.distance) and self.distance >= 1.0):
            raise DomainError(f"target distance must be finite and >= 1, got {self.distance!r}")
        if not (math.isfinite(self.weight) and self.weight >= 0.0):
            raise DomainError(f"target weight must be finite and >= 0, got {self.weight!r}")


@dataclass(frozen=True)
class Instance:
    """``m`` rays, at most one target per ray (``None`` = no target), goal ``W``."""

    m: int
    targets: tuple
    W: float

    def __post_init__(self):
        if self.m < 1:
            raise DomainError(f"need at least one ray, got m={self.m}")
        object.__setattr__(self, "W", float(self.W))
        object.__setattr__(self, "targets", tuple(self.targets))
        if len(self.targets) != self.m:
            raise DomainError(f"expected {self.m} ray entries, got {len(self.targets)}")
        for t in self.targets:
            if t is not None and not isinstance(t, Target):
                raise DomainError(f"ray entries must be Target or None, got {t!r}")
        if not (math.isfinite(self.W) and self.W >= 0):
            raise DomainError(f"goal W must be finite and >= 0, got {self.W!r}")

    @classmethod
    def from_pairs(cls, pairs, W) -> "Instance":
        """Build from a per-ray list of ``(d, w)`` pairs or ``None``."""
        return cls(len(pairs), tuple(None if p is None else Target(*p) for p in pairs), W)

    @property
    def total_weight(self) -> float:
        return math.fsum(t.weight for t in self.targets if t is not None)

    @property
    def feasible(self) -> bool:
        return self.total_weight >= self.W

    def check_feasible(self) -> None:
        if not self.feasible:
            raise InfeasibleInstanceError(
                f"targets carry total weight {self.total_weight!r} < W={self.W!r}"
            )

    def distances(self) -> tuple:
        return tuple(None if t is None else t.distance for t in self.targets)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "W": self.W,
            "targets": [
                {"ray": i, "d": t.distance, "w": t.weight}
                for i, t in enumerate(self.targets) if t is not None
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Instance":
        m = int(data["m"])
        targets = [None] * m
        for entry in data["targets"]:
            ray = int(entry["ray"])
            if not 0 <= ray < m:
                raise DomainError(f"ray {ray} out of range for m={m}")
            if targets[ray] is not None:
                raise DomainError(f"ray {ray} listed twice")
            targets[ray] = Target(float(entry["d"]), float(entry.get("w", 1.0)))
        return cls(m, tuple(targets), float(data["W"]))


@dataclass(frozen=True)
class SubsetInstance:
    """Unweighted targets plus a hidden subset ``S`` that must all be found."""

    m: int
    distances: tuple
    S: frozenset

    def __post_init__(self):
        object.__setattr__(
            self, "distances", tuple(None if d is None else float(d) for d in self.distances)
        )
        object.__setattr__(self, "S", frozenset(self.S))
        if self.m < 1 or len(self.distances) != self.m:
            raise DomainError("distances must have one entry per ray")
        for d in self.distances:
            if d is not None and not (math.isfinite(d) and d >= 1.0):
                raise DomainError(f"distance must be finite and >= 1, got {d!r}")
        if not self.S:
            raise DomainError("S must be nonempty")
        for i in self.S:
            if not 0 <= i < self.m or self.distances[i] is None:
                raise DomainError(f"S member {i} does not hold a target")

    def as_instance(self) -> Instance:
        """Targets of ``S`` get weight 1, others weight 0, ``W = |S|``."""
        targets = tuple(
            None if d is None else Target(d, 1.0 if i in self.S else 0.0)
            for i, d in enumerate(self.distances)
        )
        return Instance(self.m, targets, float(len(self.S)))

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "S": sorted(self.S),
            "targets": [{"ray": i, "d": d} for i, d in enumerate(self.distances) if d is not None],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SubsetInstance":
        m = int(data["m"])
        distances = [None] * m
        for entry in data["targets"]:
            distances[int(entry["ray"])] = float(entry["d"])
        return cls(m, tuple(distances), frozenset(int(i) for i in data["S"]))


def load_instance(path):
    """Read an instance file; a top-level ``"S"`` key marks a subset instance."""
    with open(path) as fh:
        data = json.load(fh)
    return SubsetInstance.from_dict(data) if "S" in data else Instance.from_dict(data)


def save_instance(instance, path) -> None:
    with open(path, "w") as fh:
        json.dump(instance.to_dict(), fh, indent=2)
        fh.write("\n")


@dataclass(frozen=True)
class Excursion:
    ray: int
    depth: float
    found: Target | None
    terminal: bool
    cost: float


@dataclass
class Trace:
    m: int
    excursions: list = field(default_factory=list)
    found: list = field(default_factory=list)  # (ray, Target) in discovery order
    complete: bool = True

    @property
    def total_cost(self) -> float:
        return math.fsum(e.cost for e in self.excursions)

    @property
    def found_weight(self) -> float:
        return math.fsum(t.weight for _, t in self.found)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "total_cost": self.total_cost,
            "complete": self.complete,
            "excursions": [
                {
                    "ray": e.ray,
                    "depth": None if math.isinf(e.depth) else e.depth,
                    "found": None if e.found is None else {"d": e.found.distance, "w": e.found.weight},
                    "terminal": e.terminal,
                    "cost": e.cost,
                }
                for e in self.excursions
            ],
            "found": [{"ray": r, "d": t.distance, "w": t.weight} for r, t in self.found],
        }


def run(strategy, m: int, targets, done: Callable[[list], bool], max_excursions=None,
        stop_unbounded: bool = False) -> Trace:
    """Drive ``strategy`` over a star with the given per-ray targets.

    ``done(found)`` decides termination after each discovery; it is also asked
    once before the first move.  With ``max_excursions`` the run may stop early
    and the returned trace has ``complete = False``.  An unbounded excursion on
    a ray without a target is a protocol error, unless ``stop_unbounded`` is
    set: then it is recorded (infinite cost) and ends the run.
    """
    trace = Trace(m)
    if done(trace.found):
        return trace
    cleared = set()
    while max_excursions is None or len(trace.excursions) < max_excursions:
        if len(cleared) == m:
            trace.complete = False
            return trace
        ray, depth = strategy.propose()
        if not (isinstance(ray, numbers.Integral) and 0 <= ray < m):
            raise ProtocolError(f"strategy proposed invalid ray {ray!r}")
        if ray in cleared:
            raise ProtocolError(f"strategy proposed cleared ray {ray}")
        if not depth > 0:
            raise ProtocolError(f"strategy proposed non-positive depth {depth!r}")
        target = targets[ray]
        if target is not None and target.distance <= depth:
            cleared.add(ray)
            trace.found.append((ray, target))
            terminal = done(trace.found)
            cost = target.distance if terminal else 2.0 * target.distance
            trace.excursions.append(Excursion(ray, depth, target, terminal, cost))
            if terminal:
                return trace
            strategy.observe(ray, target)
        else:
            if math.isinf(depth):
                if stop_unbounded:
                    trace.excursions.append(Excursion(ray, depth, None, False, math.inf))
                    trace.complete = False
                    return trace
                raise ProtocolError(f"unbounded excursion on ray {ray} never meets a target")
            trace.excursions.append(Excursion(ray, depth, None, False, 2.0 * depth))
            strategy.observe(ray, None)
    trace.complete = False
    return trace


def simulate(strategy, instance: Instance, max_excursions=None) -> Trace:
    """Run a strategy until the discovered weight first reaches ``W``."""
    instance.check_feasible()
    W = instance.W
    return run(
        strategy.build(instance.m),
        instance.m,
        instance.targets,
        lambda found: math.fsum(t.weight for _, t in found) >= W,
        max_excursions,
    )


def simulate_subset(strategy, instance: SubsetInstance, max_excursions=None) -> Trace:
    """Run a strategy until every ray of ``S`` has been cleared."""
    targets = tuple(None if d is None else Target(d, 0.0) for d in instance.distances)
    S = instance.S
    return run(
        strategy.build(instance.m),
        instance.m,
        targets,
        lambda found: S <= {r for r, _ in found},
        max_excursions,
    )


def probe(strategy, m: int, targets=None, n: int = 1) -> Trace:
    """First ``n`` excursions of a strategy on a partially populated star.

    Never terminates on weight; used by adversaries to learn which depths a
    deterministic strategy reaches before any target is planted.  A probe also
    ends at an unbounded excursion that meets nothing (last element, infinite
    depth).
    """
    targets = tuple(targets) if targets is not None else (None,) * m
    return run(strategy.build(m), m, targets, lambda found: False, n, stop_unbounded=True)


def explored_depths(excursions: Iterable[Excursion], m: int) -> list:
    """Deepest point reached on every ray by the given excursions (0 if none)."""
    depth = [0.0] * m
    for e in excursions:
        reach = e.found.distance if e.found is not None else e.depth
        depth[e.ray] = max(depth[e.ray], reach)
    return depth


def ratio(cost: float, opt: float) -> float:
    """Competitive ratio of one run; ``0/0`` counts as 1."""
    if opt == 0:
        return 1.0 if cost == 0 else math.inf
    return cost / opt


# -- phase bookkeeping for the adaptive strategy ---------------------------------

@dataclass(frozen=True)
class PhaseRecord:
    """Phase ``j`` of an adaptive run: ``ell`` excursions, the last one finding a
    target at distance ``D``; ``Y`` is the product of earlier growth factors.
    ``base`` is ``None`` when the phase searched the only remaining ray."""

    j: int
    ell: int
    D: float
    Y: float
    base: float | None

    @property
    def next_Y(self) -> float:
        return self.Y if self.base is None else self.Y * self.base ** (self.ell - 1)


def cost_accounting(trace: Trace, m: int) -> list:
    """Split an adaptive-strategy trace into phases.

    The trace is replayed against the adaptive strategy's own schedule; any
    mismatch in rays or (to ``COST_RTOL``) depths raises :class:`ShapeError`.
    """
    from .strategies import AdSubState, adsub_next

    if not trace.excursions:
        return []
    if trace.excursions[-1].found is None:
        raise ShapeError("an adaptive trace must end with a discovery")

    state = AdSubState.fresh(m)
    last = None
    records = []
    Y, ell = 1.0, 0
    for e in trace.excursions:
        (ray, depth), state = adsub_next(state, last)
        if ray != e.ray or not (
            depth == e.depth or abs(depth - e.depth) <= COST_RTOL * max(depth, e.depth)
        ):
            raise ShapeError(f"expected ({ray}, {depth}), trace has ({e.ray}, {e.depth})")
        ell += 1
        last = e.found is not None
        if last:
            j = len(records) + 1
            base = None if m - j + 1 == 1 else b_mt(m, j)
            rec = PhaseRecord(j, ell, e.found.distance, Y, base)
            records.append(rec)
            Y, ell = rec.next_Y, 0
    return records


def closed_form_cost(records) -> float:
    """Cost predicted by the phase decomposition.

    ``2 sum_j Y_j (b_j^l_j - b_j) / (b_j - 1) + 2 sum_{j<t} D_j + D_t``; a
    single-ray phase has ``l = 1`` and contributes only its discovery.
    """
    if not records:
        return 0.0
    parts = []
    for rec in records:
        if rec.base is not None:
            bj = rec.base
            parts.append(2.0 * rec.Y * (bj ** rec.ell - bj) / (bj - 1.0))
        parts.append(2.0 * rec.D)
    parts[-1] = records[-1].D
    return math.fsum(parts)
