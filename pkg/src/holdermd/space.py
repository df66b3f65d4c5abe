"""Finitely supported points of the unit ball of l^p(G), norms and the left action."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from .errors import DomainError
from .groups import Element, GroupModel, Window

BALL_TOL = 1e-12


def _norm(values, p: float) -> float:
    a = np.abs(np.fromiter(values, dtype=float))
    if a.size == 0:
        return 0.0
    if math.isinf(p):
        return float(a.max())
    if p == 1:
        return float(a.sum())
    return float(np.sum(a**p) ** (1.0 / p))


@dataclass(frozen=True)
class LpPoint:
    """A finitely supported function ``G -> R`` in the closed unit ball of l^p.

    Zeros are never stored. Construction checks ``||x||_p <= 1 + tol``
    unless ``check=False``.
    """

    model: GroupModel
    values: Mapping[Element, float]
    p: float
    tol: float = BALL_TOL
    check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        if not (self.p >= 1):
            raise DomainError(f"exponent p must be >= 1, got {self.p}")
        clean = {g: float(v) for g, v in self.values.items() if v != 0}
        object.__setattr__(self, "values", clean)
        if self.check and _norm(clean.values(), self.p) > 1 + self.tol:
            raise DomainError("point lies outside the unit l^p ball")

    @classmethod
    def atom(cls, model: GroupModel, g: Element, value: float, p: float) -> "LpPoint":
        return cls(model, {g: value}, p)

    @classmethod
    def zero(cls, model: GroupModel, p: float) -> "LpPoint":
        return cls(model, {}, p)

    @property
    def support(self) -> list[Element]:
        return sorted(self.values, key=self.model.sort_key)

    def __call__(self, g: Element) -> float:
        return self.values.get(g, 0.0)

    def norm(self, p: Optional[float] = None, window: Optional[Window] = None) -> float:
        return lp_norm(self, self.p if p is None else p, window)

    def to_json(self) -> str:
        fmt = self.model.format
        payload = {
            "group": self.model.name,
            "p": self.p,
            "values": {fmt(g): self.values[g] for g in self.support},
        }
        return json.dumps(payload, sort_keys=False)

    @classmethod
    def from_json(cls, text: str) -> "LpPoint":
        d = json.loads(text)
        model = GroupModel.parse(d["group"])
        return cls(model, {model.parse_element(k): v for k, v in d["values"].items()}, d["p"])


def lp_norm(x: LpPoint, p: float, window: Optional[Window] = None) -> float:
    """``(sum_{g in W} |x(g)|^p)^(1/p)``, over the whole support when ``window`` is None.

    ``p = inf`` gives the sup norm.
    """
    if window is None:
        vals = x.values.values()
    else:
        vals = [v for g, v in x.values.items() if g in window]
    return _norm(vals, p)


def act(gamma: Element, x: LpPoint) -> LpPoint:
    """Left translation ``(gamma x)(g) = x(gamma^-1 g)``; moves the support to ``gamma * supp(x)``."""
    mul = x.model.multiply
    return LpPoint(
        x.model, {mul(gamma, g): v for g, v in x.values.items()}, x.p, x.tol, check=False
    )


def sample_point(
    rng: np.random.Generator, window: Window, p: float, support_fraction: float = 1.0
) -> LpPoint:
    """Random point of the unit l^p ball supported in ``window``.

    Each element of the window enters the support with probability
    ``support_fraction``; coordinates are i.i.d. uniform on [-1, 1] and the
    vector is rescaled so that its norm is uniform on [0, 1].
    """
    elems = list(window)
    keep = rng.random(len(elems)) < support_fraction
    coords = rng.uniform(-1.0, 1.0, size=len(elems))
    coords[~keep] = 0.0
    nrm = _norm(coords, p)
    if nrm > 0:
        coords *= rng.random() / nrm
    return LpPoint(window.model, dict(zip(elems, coords.tolist())), p)
