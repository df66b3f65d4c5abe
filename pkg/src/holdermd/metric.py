"""Weighted window metrics on the unit ball of l^p(G) and their dynamical versions.

For windows ``F_1 ⊆ F_2 ⊆ ...`` and positive weights ``a_i`` with
``sum a_i = 1`` the metric is

    d(x, y) = ( sum_i a_i / |F_i| * sum_{g in F_i} |x(g) - y(g)|^r )^(1/r)

for ``1 <= r < inf`` and ``d(x, y) = sum_i a_i * max_{g in F_i} |x(g) - y(g)|``
for ``r = inf``.

Evaluation swaps the two sums: an element of word length ``l`` lies in every
``F_i`` with ``i >= i0(l)``, so for finite ``r``

    d(x, y)^r = sum_g |x(g) - y(g)|^r * W(l(g)),   W(l) = sum_{i >= i0(l)} a_i / |F_i|.

Each ``W(l)`` is a positive series truncated with the certified tail bound
``sigma_{K+1} / |F_{K+1}|`` and cached on the spec. For ``r = inf`` the series
is summed exactly: once ``F_K`` covers the support the tail is
``sigma_{K+1} * ||x - y||_inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple

from .errors import EmptyWindowError, ToleranceNotReachableError
from .groups import BallRule, Element, GroupModel, Window
from .space import LpPoint

DEFAULT_TAU = 1e-9
MAX_TERMS = 10**6


@dataclass(frozen=True)
class WeightScheme:
    """Geometric weights ``a_i = (1 - ratio) * ratio^(i-1)``, normalized so that ``sigma_1 = 1``.

    ``ratio = 1/2`` (the default) gives ``a_i = 2^-i`` and ``sigma_k = 2^(1-k)``,
    both exact in binary floating point.
    """

    ratio: float = 0.5

    def __post_init__(self):
        if not 0 < self.ratio < 1:
            raise ValueError("weight ratio must lie in (0, 1)")

    def a(self, i: int) -> float:
        if i < 1:
            raise ValueError("weight indices start at 1")
        return (1 - self.ratio) * self.ratio ** (i - 1)

    def sigma(self, k: int) -> float:
        """Tail sum ``sigma_k = sum_{i >= k} a_i`` (closed form)."""
        if k < 1:
            raise ValueError("tail indices start at 1")
        return self.ratio ** (k - 1)

    def smallest_k(self, eps: float) -> int:
        """Smallest ``k >= 1`` with ``sigma_{k+1} < eps``."""
        if eps <= 0:
            raise ValueError("eps must be positive")
        k = max(1, int(math.floor(math.log(eps) / math.log(self.ratio))))
        while k > 1 and self.sigma(k) < eps:
            k -= 1
        while self.sigma(k + 1) >= eps:
            k += 1
        return k


class MetricValue(NamedTuple):
    value: float
    error_bound: float


def _ratio(num: float, den: int) -> float:
    # ball sizes of free groups overflow float long before the weights matter
    if den.bit_length() > 1000:
        return 0.0
    return num / den


@dataclass(frozen=True)
class MetricSpec:
    """Window sequence, weights, exponent ``r`` (``math.inf`` allowed) and tolerance ``tau``."""

    windows: BallRule
    weights: WeightScheme = WeightScheme()
    r: float = math.inf
    tau: float = DEFAULT_TAU
    _tails: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.r >= 1:
            raise ValueError("metric exponent r must be in [1, inf]")
        if not self.tau > 0:
            raise ValueError("tau must be positive")

    @property
    def model(self) -> GroupModel:
        return self.windows.model

    def window(self, i: int) -> Window:
        return self.windows.window(i)

    def tail_weight(self, length: int) -> MetricValue:
        """``W(length)`` with its certified truncation bound (cached).

        Summation stops at the first ``K`` with
        ``sigma_{K+1} / |F_{K+1}| <= (tau / 10) * partial_sum``.
        """
        hit = self._tails.get(length)
        if hit is not None:
            return hit
        w, rule = self.weights, self.windows
        i = rule.first_index_containing(length)
        total = 0.0
        for _ in range(MAX_TERMS):
            total += _ratio(w.a(i), rule.size(i))
            tail = _ratio(w.sigma(i + 1), rule.size(i + 1))
            if tail <= 0.1 * self.tau * total:
                break
            i += 1
        else:
            raise ToleranceNotReachableError(
                f"tail bound still above tolerance after {MAX_TERMS} terms"
            )
        res = MetricValue(total, tail)
        self._tails[length] = res
        return res

    @property
    def sigma_prime(self) -> float:
        """``sum_i a_i / |F_i|`` for finite ``r``; 1 when ``r = inf``."""
        if math.isinf(self.r):
            return 1.0
        return self.tail_weight(0).value


def _difference(x: LpPoint, y: LpPoint) -> dict:
    keys = set(x.values) | set(y.values)
    z = {}
    for g in keys:
        v = x(g) - y(g)
        if v != 0:
            z[g] = v
    return z


def _metric_of_difference(spec: MetricSpec, z: Mapping[Element, float]) -> MetricValue:
    if not z:
        return MetricValue(0.0, 0.0)
    length = spec.model.length
    if math.isinf(spec.r):
        first = spec.windows.first_index_containing
        by_index: dict[int, float] = {}
        for g, v in z.items():
            i0 = first(length(g))
            by_index[i0] = max(by_index.get(i0, 0.0), abs(v))
        w = spec.weights
        last = max(by_index)
        total, running = 0.0, 0.0
        for i in range(1, last):
            running = max(running, by_index.get(i, 0.0))
            total += w.a(i) * running
        running = max(running, by_index[last])
        return MetricValue(total + w.sigma(last) * running, 0.0)
    r = spec.r
    s, err = 0.0, 0.0
    for g, v in z.items():
        tw = spec.tail_weight(length(g))
        av = abs(v) ** r
        s += av * tw.value
        err += av * tw.error_bound
    value = s ** (1.0 / r)
    return MetricValue(value, (s + err) ** (1.0 / r) - value)


def base_metric(spec: MetricSpec, x: LpPoint, y: LpPoint) -> float:
    """Weighted window distance between two finitely supported points (within ``spec.tau``)."""
    return _metric_of_difference(spec, _difference(x, y)).value


def base_metric_certified(spec: MetricSpec, x: LpPoint, y: LpPoint) -> MetricValue:
    """Like :func:`base_metric` but also returns the certified truncation bound."""
    return _metric_of_difference(spec, _difference(x, y))


def dynamical_metric(spec: MetricSpec, omega: Window, x: LpPoint, y: LpPoint) -> float:
    """``d_Omega(x, y) = max_{gamma in Omega} d(gamma x, gamma y)``."""
    if len(omega) == 0:
        raise EmptyWindowError("dynamical metric needs a nonempty window")
    z = _difference(x, y)
    mul = spec.model.multiply
    best = 0.0
    for gamma in omega:
        moved = {mul(gamma, g): v for g, v in z.items()}
        best = max(best, _metric_of_difference(spec, moved).value)
    return best


def separation_bound(spec: MetricSpec, k: int) -> float:
    """Upper bound on ``d(x, y)`` when ``x = y`` on ``F_1, ..., F_k``.

    ``2 sigma_{k+1}`` for ``r = inf`` and ``2 sigma_{k+1}^(1/r)`` otherwise;
    ``k = 0`` gives the diameter bound 2.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    sig = spec.weights.sigma(k + 1)
    if math.isinf(spec.r):
        return 2 * sig
    return 2 * sig ** (1.0 / spec.r)
