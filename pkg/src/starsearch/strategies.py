"""Search strategies.

The adaptive strategy grows its search lengths by ``b_{m,f}`` where ``f - 1``
targets have been found so far, always multiplying the *last unsuccessful*
length; after a discovery the ray is dropped and the round-robin resumes at
the ray that followed it.  With one ray left it searches that ray until its
target appears.

The remaining strategies are round-robin schedules over the live rays with
depth ``base ** i`` at the ``i``-th excursion:

=================  ==========================================
classic            ``b_{m,1}`` (optimal for one target)
multi:t            ``b_{m-t+1,1} = b_{m-t}`` (t known targets)
fixed:b            a fixed ``b``
naive              ``b_{m,f}``, switching base but not length
=================  ==========================================
"""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass, replace

from .core import Instance, Trace, simulate
from .errors import DomainError, ExhaustionError


@dataclass(frozen=True)
class AdSubState:
    """Counter ``f`` (targets found + 1), round-robin index ``r`` into
    ``live``, and ``D``, the last unsuccessful planned depth (1 at start)."""

    m: int
    f: int
    r: int
    D: float
    live: tuple

    @classmethod
    def fresh(cls, m: int) -> "AdSubState":
        if m < 1:
            raise DomainError(f"need at least one ray, got m={m}")
        return cls(m, 1, 0, 1.0, tuple(range(m)))

    @property
    def base(self) -> float:
        """``b_{m,f}``; infinite once a single ray is left."""
        k = self.m - self.f
        return math.inf if k == 0 else 1.0 + 1.0 / k

    def proposal(self) -> tuple:
        if not self.live:
            raise ExhaustionError("every ray has been cleared")
        if len(self.live) == 1:
            return self.live[0], math.inf
        return self.live[self.r], self.D * self.base


def adsub_next(state: AdSubState, found=None) -> tuple:
    """One step of the adaptive strategy.

    ``found`` reports the outcome of the previous proposal: ``None`` before
    the first move, otherwise ``True``/``False``.  Returns
    ``((ray, depth), new_state)``.
    """
    if found is True:
        live = state.live[:state.r] + state.live[state.r + 1:]
        f = state.f + 1
        r = state.r % len(live) if live else 0
        state = replace(state, f=f, r=r, live=live)
    elif found is False:
        n = len(state.live)
        state = replace(state, r=(state.r + 1) % n, D=state.D * state.base)
    return state.proposal(), state


class AdSub:
    def __init__(self, m: int):
        self.state = AdSubState.fresh(m)
        self._pending = None

    def propose(self):
        move, self.state = adsub_next(self.state, self._pending)
        self._pending = None
        return move

    def observe(self, ray, target):
        self._pending = target is not None


class Cyclic:
    """Round-robin over live rays, excursion ``i`` (1-based) to ``base(f) ** i``.

    ``base_of(f)`` returns the base while ``f - 1`` targets are found; an
    infinite base means "search the ray to the end".
    """

    def __init__(self, m: int, base_of):
        self.live = list(range(m))
        self.base_of = base_of
        self.pos = 0
        self.step = 0
        self.found = 0

    def propose(self):
        if not self.live:
            raise ExhaustionError("every ray has been cleared")
        self.step += 1
        base = self.base_of(self.found + 1)
        depth = math.inf if math.isinf(base) else base ** self.step
        return self.live[self.pos], depth

    def observe(self, ray, target):
        if target is None:
            self.pos = (self.pos + 1) % len(self.live)
        else:
            del self.live[self.pos]
            self.found += 1
            if self.live:
                self.pos %= len(self.live)


def _base(x: int) -> float:
    return math.inf if x == 0 else 1.0 + 1.0 / x


KINDS = ("adsub", "adsch", "fixed", "naive", "classic", "multi")


@dataclass(frozen=True)
class StrategySpec:
    """Immutable description of a strategy; ``build(m)`` makes a fresh runner.

    ``adsub`` and ``adsch`` build the same adaptive strategy; they differ only
    in the termination rule of the run they are used in.
    """

    kind: str
    base: float | None = None
    t: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown strategy kind {self.kind!r}")
        if self.kind == "fixed" and not (self.base is not None and self.base > 1):
            raise DomainError(f"fixed-base strategy needs base > 1, got {self.base!r}")
        if self.kind == "multi" and not (isinstance(self.t, numbers.Integral) and self.t >= 1):
            raise DomainError(f"multi-target strategy needs integer t >= 1, got {self.t!r}")

    @classmethod
    def parse(cls, text: str) -> "StrategySpec":
        """``adsub``, ``adsch``, ``naive``, ``classic``, ``fixed:<b>``, ``multi:<t>``."""
        kind, _, arg = text.strip().lower().partition(":")
        if kind == "fixed":
            if not arg:
                raise DomainError("fixed strategy needs a base, e.g. 'fixed:1.5'")
            return cls(kind, base=float(arg))
        if kind == "multi":
            if not arg:
                raise DomainError("multi strategy needs t, e.g. 'multi:3'")
            return cls(kind, t=int(arg))
        if arg:
            raise DomainError(f"strategy {kind!r} takes no parameter")
        return cls(kind)

    def __str__(self):
        if self.kind == "fixed":
            return f"fixed:{self.base!r}"
        if self.kind == "multi":
            return f"multi:{self.t}"
        return self.kind

    def build(self, m: int):
        if self.kind in ("adsub", "adsch"):
            return AdSub(m)
        if self.kind == "fixed":
            return Cyclic(m, lambda f: self.base)
        if self.kind == "classic":
            return Cyclic(m, lambda f: _base(m - 1))
        if self.kind == "naive":
            return Cyclic(m, lambda f: _base(m - f))
        if self.t > m:
            raise DomainError(f"multi-target strategy needs t <= m, got t={self.t}, m={m}")
        return Cyclic(m, lambda f: _base(m - self.t))


ADSUB = StrategySpec("adsub")
ADSCH = StrategySpec("adsch")
NAIVE = StrategySpec("naive")
CLASSIC = StrategySpec("classic")


def fixed_base_cyclic(base: float) -> StrategySpec:
    return StrategySpec("fixed", base=base)


def naive_adaptive() -> StrategySpec:
    return NAIVE


def classic_single() -> StrategySpec:
    return CLASSIC


def multi_target_known_t(t: int) -> StrategySpec:
    return StrategySpec("multi", t=t)


def adsch(instance: Instance) -> Trace:
    """Weighted search with the adaptive strategy: stop once weight ``W`` is found."""
    return simulate(ADSCH, instance)
