"""The ratio function phi, the growth bases b, and numeric checks of the two
technical inequalities the adaptive strategy's analysis rests on.

Every function accepts a scalar or a numpy array.  Powers of the form
``(1 + 1/x) ** x`` are always evaluated as ``exp(x * log1p(1/x))``, which stays
accurate for arbitrarily large ``x``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

E = math.e
#: Guarantee for the case where every target of an instance is needed.
ALL_TARGETS_BOUND = 3.0 + 2.0 * math.e
#: Absolute slack used by the verifiers.
SLACK = 1e-12

# below this q the direct difference h(q) - h(q-1) is accurate to ~1e-16 * q**2
_SERIES_FROM = 64
_SERIES_TERMS = 16


def _out(x, scalar):
    return float(x) if scalar else x


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def b(x):
    """Growth base ``1 + 1/x`` for ``x > 0``."""
    arr, scalar = _as_array(x)
    if np.any(~(arr > 0)):
        raise DomainError(f"b(x) needs x > 0, got {x!r}")
    return _out(1.0 + 1.0 / arr, scalar)


def b_mt(m: int, t: int) -> float:
    """Base used by the adaptive strategy in phase ``t`` on ``m`` rays.

    Only defined for ``1 <= t < m``; with ``t == m`` a single ray is left and
    the strategy searches it without bound instead.
    """
    if not 1 <= t < m:
        raise DomainError(
            f"b_mt needs 1 <= t < m (t = m is the single-ray regime), got m={m}, t={t}"
        )
    return 1.0 + 1.0 / (m - t)


def _growth(arr):
    # (1 + 1/x)^x, with the x -> 0 limit 1
    safe = np.where(arr > 0, arr, 1.0)
    return np.where(arr > 0, np.exp(safe * np.log1p(1.0 / safe)), 1.0)


def h(x):
    """``(x + 1) * (1 + 1/x) ** x`` with ``h(0) = 1``."""
    arr, scalar = _as_array(x)
    if np.any(~(arr >= 0)):
        raise DomainError(f"h(x) needs x >= 0, got {x!r}")
    return _out((arr + 1.0) * _growth(arr), scalar)


def phi(x):
    """Competitive-ratio function ``1 + 2 (1 + x) (1 + 1/x) ** x``.

    ``phi(0)`` is the limit value 3.  ``phi(m - 1)`` is the optimal ratio of
    classic single-target search on ``m`` rays.
    """
    arr, scalar = _as_array(x)
    if np.any(~(arr >= 0)):
        raise DomainError(f"phi(x) needs x >= 0, got {x!r}")
    return _out(1.0 + 2.0 * h(arr), scalar)


def phi_from_base(x):
    """Second closed form ``1 + 2 b_x^(x+1) / (b_x - 1)``, for ``x > 0``.

    Uses plain floating-point powers and serves as a cross-check on ``phi``.
    """
    arr, scalar = _as_array(x)
    if np.any(~(arr > 0)):
        raise DomainError(f"phi_from_base(x) needs x > 0, got {x!r}")
    base = 1.0 + 1.0 / arr
    return _out(1.0 + 2.0 * base ** (arr + 1.0) / (base - 1.0), scalar)


def ratio_bound(m: int, s: int) -> float:
    """Guarantee of the adaptive strategy when ``s`` of ``m`` targets are needed."""
    if not 1 <= s <= m:
        raise DomainError(f"ratio_bound needs 1 <= s <= m, got m={m}, s={s}")
    return ALL_TARGETS_BOUND if s == m else phi(m - s)


def _log_increment_series(q):
    # g(x) = x log1p(1/x);  g(q) - g(q-1) = sum_{n>=2} c_n q^-n
    # c_n = 1/n for even n, 1/n - 2/(n+1) for odd n
    total = np.zeros_like(q)
    inv = 1.0 / q
    power = inv * inv
    for n in range(2, 2 + _SERIES_TERMS):
        c = 1.0 / n if n % 2 == 0 else 1.0 / n - 2.0 / (n + 1)
        total += c * power
        power = power * inv
    return total


def h_increment(q):
    """``H(q) = h(q) - h(q - 1)`` for integer ``q >= 1``, free of cancellation.

    The direct difference of two numbers of size ``e*q`` loses about
    ``log10(q)`` digits; for larger ``q`` the increment is assembled from a
    convergent series for ``g(q) - g(q-1)`` with ``g(x) = x log1p(1/x)``.
    """
    arr, scalar = _as_array(q)
    if np.any(arr < 1) or np.any(arr != np.round(arr)):
        raise DomainError(f"h_increment needs integers q >= 1, got {q!r}")
    direct = h(arr) - h(arr - 1.0)
    big = np.maximum(arr, _SERIES_FROM)
    delta = _log_increment_series(big)
    prev = big - 1.0
    g_prev = prev * np.log1p(1.0 / prev)
    series = np.exp(g_prev) * (1.0 + (big + 1.0) * np.expm1(delta))
    return _out(np.where(arr >= _SERIES_FROM, series, direct), scalar)


def phi_increment(q):
    """``phi(q) - phi(q - 1) = 2 H(q)``, computed without cancellation."""
    return 2.0 * h_increment(q)


def h_q_ell(q, ell):
    """Technical quantity ``h_{q,l}`` bounded by 1 in the subset-search analysis.

    ``h_{q,l} = b_{q+1}^(-l-1) (b_q^l / (b_q - 1) + 1 + b_{q+1}) (b_{q+1} - 1)``
    for integers ``q >= 1`` and ``1 <= l <= q + 1``.
    """
    q_arr, q_scalar = _as_array(q)
    l_arr, l_scalar = _as_array(ell)
    q_arr, l_arr = np.broadcast_arrays(q_arr, l_arr)
    if np.any(q_arr < 1) or np.any(q_arr != np.round(q_arr)):
        raise DomainError(f"h_q_ell needs integer q >= 1, got {q!r}")
    if np.any(l_arr < 1) or np.any(l_arr > q_arr + 1) or np.any(l_arr != np.round(l_arr)):
        raise DomainError(f"h_q_ell needs integer 1 <= ell <= q + 1, got q={q!r}, ell={ell!r}")
    log_bq = np.log1p(1.0 / q_arr)
    log_bq1 = np.log1p(1.0 / (q_arr + 1.0))
    # b_q - 1 = 1/q and b_{q+1} - 1 = 1/(q+1), used exactly
    bracket = q_arr * np.exp(l_arr * log_bq) + 1.0 + (1.0 + 1.0 / (q_arr + 1.0))
    value = np.exp(-(l_arr + 1.0) * log_bq1) * bracket / (q_arr + 1.0)
    return _out(value, q_scalar and l_scalar)


def h_q_ell_simplified(q, ell):
    """Equivalent form ``(q X^l + (2q+3)/(q+1) Y^l) / (q+2)``.

    ``X = 1 + 1/(q(q+2))`` and ``Y = 1 - 1/(q+2)``; both weights are positive,
    which is what makes ``h_{q,l}`` convex in ``l``.
    """
    q_arr, q_scalar = _as_array(q)
    l_arr, l_scalar = _as_array(ell)
    x = np.log1p(1.0 / (q_arr * (q_arr + 2.0)))
    y = np.log1p(-1.0 / (q_arr + 2.0))
    value = (q_arr * np.exp(l_arr * x)
             + (2.0 * q_arr + 3.0) / (q_arr + 1.0) * np.exp(l_arr * y)) / (q_arr + 2.0)
    return _out(value, q_scalar and l_scalar)


@dataclass
class PhiGapReport:
    q_max: int
    passed: bool
    gap_ok: bool
    monotone_ok: bool
    increment_decreasing_ok: bool
    min_slack: float
    argmin_slack: int
    increment_at_q_max: float
    failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "check": "phi_gap",
            "q_max": self.q_max,
            "passed": self.passed,
            "gap_ok": self.gap_ok,
            "monotone_ok": self.monotone_ok,
            "increment_decreasing_ok": self.increment_decreasing_ok,
            "min_slack": self.min_slack,
            "argmin_slack": self.argmin_slack,
            "increment_at_q_max": self.increment_at_q_max,
            "failures": self.failures,
        }


def verify_phi_gap(q_max: int) -> PhiGapReport:
    """Check ``phi(q) - phi(q-1) >= 2e`` for ``q = 1..q_max``.

    Also checks that phi is increasing on the integers and that the increment
    ``H(q)`` is non-increasing from ``q = 3`` on (its limit is ``e``).  The gap
    is evaluated both from the cancellation-free increment and as the plain
    difference of two phi values; both must clear ``2e - SLACK``.
    """
    if q_max < 1:
        raise DomainError(f"q_max must be >= 1, got {q_max}")
    q = np.arange(1, q_max + 1, dtype=float)
    inc = phi_increment(q)
    naive = phi(q) - phi(q - 1.0)
    slack = inc - 2.0 * E
    failures = []

    gap_ok = bool(np.all(slack >= -SLACK) and np.all(naive - 2.0 * E >= -SLACK))
    if not gap_ok:
        bad = np.flatnonzero((slack < -SLACK) | (naive - 2.0 * E < -SLACK))
        failures.append({"check": "gap", "q": [int(q[i]) for i in bad[:10]]})

    values = phi(np.arange(0, q_max + 1, dtype=float))
    monotone_ok = bool(np.all(np.diff(values) > 0))
    if not monotone_ok:
        failures.append({"check": "phi_increasing"})

    H = inc[2:] / 2.0  # q >= 3
    decreasing_ok = bool(H.size < 2 or np.all(np.diff(H) <= SLACK))
    if not decreasing_ok:
        failures.append({"check": "H_decreasing"})

    k = int(np.argmin(slack))
    return PhiGapReport(
        q_max=q_max,
        passed=gap_ok and monotone_ok and decreasing_ok,
        gap_ok=gap_ok,
        monotone_ok=monotone_ok,
        increment_decreasing_ok=decreasing_ok,
        min_slack=float(slack[k]),
        argmin_slack=int(q[k]),
        increment_at_q_max=float(inc[-1] / 2.0),
        failures=failures,
    )


@dataclass
class HBoundReport:
    q_max: int
    passed: bool
    bound_ok: bool
    boundary_ok: bool
    convex_ok: bool
    max_value: float
    argmax: tuple
    max_boundary_error: float
    failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "check": "h_bound",
            "q_max": self.q_max,
            "passed": self.passed,
            "bound_ok": self.bound_ok,
            "boundary_ok": self.boundary_ok,
            "convex_ok": self.convex_ok,
            "max_value": self.max_value,
            "argmax": list(self.argmax),
            "max_boundary_error": self.max_boundary_error,
            "failures": self.failures,
        }


def verify_h_bound(q_max: int) -> HBoundReport:
    """Check ``h_{q,l} <= 1`` for every ``q <= q_max`` and ``1 <= l <= q+1``.

    Alongside the bound: ``h_{q,1} == 1`` up to SLACK, second differences in
    ``l`` are non-negative (convexity), and the interior never exceeds the
    larger endpoint.
    """
    if q_max < 1:
        raise DomainError(f"q_max must be >= 1, got {q_max}")
    bound_ok = boundary_ok = convex_ok = True
    max_value, argmax, max_boundary_error = -np.inf, (0, 0), 0.0
    failures = []
    for q in range(1, q_max + 1):
        ell = np.arange(1, q + 2, dtype=float)
        vals = h_q_ell(float(q), ell)
        i = int(np.argmax(vals))
        if vals[i] > max_value:
            max_value, argmax = float(vals[i]), (q, int(ell[i]))
        if vals[i] > 1.0 + SLACK:
            bound_ok = False
            failures.append({"check": "bound", "q": q, "ell": int(ell[i]), "value": float(vals[i])})
        err = abs(vals[0] - 1.0)
        max_boundary_error = max(max_boundary_error, float(err))
        if err > SLACK:
            boundary_ok = False
            failures.append({"check": "boundary", "q": q, "value": float(vals[0])})
        ends = max(vals[0], vals[-1])
        second = np.diff(vals, 2)
        if np.any(vals > ends + SLACK) or np.any(second < -SLACK):
            convex_ok = False
            failures.append({"check": "convexity", "q": q})
    return HBoundReport(
        q_max=q_max,
        passed=bound_ok and boundary_ok and convex_ok,
        bound_ok=bound_ok,
        boundary_ok=boundary_ok,
        convex_ok=convex_ok,
        max_value=max_value,
        argmax=argmax,
        max_boundary_error=max_boundary_error,
        failures=failures[:20],
    )
