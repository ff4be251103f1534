"""Seeded instance streams and ratio tables.

Every random draw comes from ``numpy.random.default_rng(seed)`` (PCG64), so a
seed fixes the whole stream.  Tables are lists of rows with the columns in
``COLUMNS``; ``write_rows`` serializes them the same way every time.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from . import adversary
from .analysis import ratio_bound
from .core import Instance, SubsetInstance, Target, ratio, simulate, simulate_subset
from .errors import DomainError, GenerationError
from .offline import d_S, summarize
from .strategies import StrategySpec

COLUMNS = ("id", "m", "W", "s_I", "opt", "xi", "cost", "ratio", "bound", "pass")
RESAMPLE_CAP = 1000
TOL = 1e-9
GUARANTEED = ("adsub", "adsch")


@dataclass(frozen=True)
class WRule:
    """``fraction:p`` sets ``W = p * total weight``; ``fixed:W`` sets it outright."""

    kind: str
    value: float

    @classmethod
    def parse(cls, text: str) -> "WRule":
        kind, _, arg = text.partition(":")
        if kind not in ("fraction", "fixed") or not arg:
            raise DomainError(f"W rule must be 'fraction:<p>' or 'fixed:<W>', got {text!r}")
        value = float(arg)
        if value < 0 or (kind == "fraction" and value > 1):
            raise DomainError(f"bad W rule value in {text!r}")
        return cls(kind, value)

    def goal(self, total: float) -> float:
        return self.value * total if self.kind == "fraction" else self.value


def _m_values(rng, m, count):
    if isinstance(m, (tuple, list)):
        lo, hi = m
        return rng.integers(lo, hi + 1, size=count)
    return np.full(count, m)


def _check_range(name, rng_range, floor):
    lo, hi = rng_range
    if not floor <= lo <= hi:
        raise DomainError(f"{name} range must satisfy {floor} <= lo <= hi, got {rng_range}")


def random_instances(seed: int, m, count: int, distance_range=(1.0, 100.0),
                     weight_range=(0.0, 1.0), W_rule="fraction:0.5",
                     absent_prob: float = 0.0) -> list:
    """``count`` weighted instances; ``m`` is an int or an inclusive ``(lo, hi)``.

    Draws that cannot reach the goal are redrawn, at most ``RESAMPLE_CAP``
    times per instance.
    """
    _check_range("distance", distance_range, 1.0)
    _check_range("weight", weight_range, 0.0)
    rule = WRule.parse(W_rule) if isinstance(W_rule, str) else W_rule
    rng = np.random.default_rng(seed)
    out = []
    for mm in _m_values(rng, m, count):
        mm = int(mm)
        for _ in range(RESAMPLE_CAP):
            d = rng.uniform(*distance_range, size=mm)
            w = rng.uniform(*weight_range, size=mm)
            present = rng.random(mm) >= absent_prob
            targets = tuple(
                Target(float(di), float(wi)) if p else None for di, wi, p in zip(d, w, present)
            )
            total = math.fsum(t.weight for t in targets if t is not None)
            inst = Instance(mm, targets, rule.goal(total))
            if any(targets) and inst.feasible:
                out.append(inst)
                break
        else:
            raise GenerationError(f"no feasible instance after {RESAMPLE_CAP} draws")
    return out


def random_subset_instances(seed: int, m, count: int, distance_range=(1.0, 100.0),
                            absent_prob: float = 0.0) -> list:
    """Subset instances with ``S`` a uniformly random nonempty set of present rays."""
    _check_range("distance", distance_range, 1.0)
    rng = np.random.default_rng(seed)
    out = []
    for mm in _m_values(rng, m, count):
        mm = int(mm)
        while True:
            d = rng.uniform(*distance_range, size=mm)
            present = np.flatnonzero(rng.random(mm) >= absent_prob)
            if present.size:
                break
        size = int(rng.integers(1, present.size + 1))
        S = frozenset(int(i) for i in rng.choice(present, size=size, replace=False))
        distances = tuple(float(d[i]) if i in set(present.tolist()) else None for i in range(mm))
        out.append(SubsetInstance(mm, distances, S))
    return out


def _row(ident, inst, s, o, xi, cost, strategy):
    r = ratio(cost, o)
    bound = ratio_bound(inst.m, s) if s >= 1 else None
    limit = None
    if strategy.kind in GUARANTEED and bound is not None:
        limit = bound if xi is None else min(bound, xi)
    return {
        "id": ident,
        "m": inst.m,
        "W": inst.W if isinstance(inst, Instance) else float(len(inst.S)),
        "s_I": s,
        "opt": o,
        "xi": xi,
        "cost": cost,
        "ratio": r,
        "bound": bound,
        "pass": None if limit is None else bool(r <= limit + TOL),
    }


def weighted_row(ident: str, instance: Instance, strategy: StrategySpec) -> dict:
    """One row for a weighted instance.

    ``pass`` is only judged for the adaptive strategy: it compares the ratio
    with ``min(bound, xi)``.  Other strategies carry no guarantee.
    """
    summary = summarize(instance)
    cost = simulate(strategy, instance).total_cost
    return _row(ident, instance, summary.s_I, summary.opt, summary.xi, cost, strategy)


def subset_row(ident: str, instance: SubsetInstance, strategy: StrategySpec) -> dict:
    cost = simulate_subset(strategy, instance).total_cost
    return _row(ident, instance, len(instance.S), d_S(instance, instance.S), None, cost, strategy)


FAMILIES = ("random", "subsets-random", "single", "subsets", "weights", "killer", "all-targets")


def sweep(family: str, strategy: StrategySpec, seed: int = 0, m=5, count: int = 100,
          i_max: int = 30, s: int = 1, t: float = 1.0, epsilon: float = adversary.DEFAULT_EPSILON,
          W_rule="fraction:0.5") -> list:
    """Rows for one family; ids are zero-padded so sorting by id keeps order."""
    rows = []
    if family == "random":
        for k, inst in enumerate(random_instances(seed, m, count, W_rule=W_rule)):
            rows.append(weighted_row(f"random-{k:06d}", inst, strategy))
    elif family == "subsets-random":
        for k, inst in enumerate(random_subset_instances(seed, m, count)):
            rows.append(subset_row(f"subset-{k:06d}", inst, strategy))
    elif family == "killer":
        for i in range(1, i_max + 1):
            rows.append(subset_row(f"killer-{i:04d}", adversary.gen_naive_killer(m, i, epsilon), strategy))
    elif family == "all-targets":
        for i in range(0, i_max + 1):
            inst = adversary.gen_all_targets(strategy, m, epsilon, snapshot=i)
            rows.append(weighted_row(f"all-{i:04d}", inst, strategy))
    elif family in ("single", "subsets", "weights"):
        for i in range(1, i_max + 1):
            if family == "single":
                inst = adversary.gen_single_target(m, i, epsilon, strategy)
            elif family == "subsets":
                inst = adversary.gen_subsets_lb(m, s, i, epsilon)
            else:
                inst = adversary.gen_weights_lb(m, t, i, epsilon)
            rows.append(weighted_row(f"{family}-{i:04d}", inst, strategy))
    else:
        raise DomainError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    rows.sort(key=lambda r: r["id"])
    return rows


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_rows(rows, fmt: str = "csv") -> str:
    """Serialize rows with the fixed column order ``COLUMNS``."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(COLUMNS)
        for row in rows:
            writer.writerow([_cell(row[c]) for c in COLUMNS])
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([{c: row[c] for c in COLUMNS} for row in rows], indent=2) + "\n"
    raise DomainError(f"format must be csv or json, got {fmt!r}")


def all_pass(rows) -> bool:
    return all(row["pass"] is not False for row in rows)
