"""End-to-end check of the exponent obstruction for equivariant Hölder maps
``B^{l^p} -> B^{l^q}``.

A Hölder map with modulus ``c' eps^alpha`` gives

    meas_{f_{c' c^alpha, r/alpha}}(B^{l^q}) <= meas_{f_{c, r}}(B^{l^p})

for every profile index ``r``. Choose ``r = alpha q``. The target side then has
ball exponent equal to profile index, so its lower bound is a positive
constant. The source side has upper first component
``(2/c)^p |Omega|^(p/r - 1)``, which tends to 0 exactly when ``alpha q > p``.
Both cannot hold, so no such map exists. At ``alpha q = p`` (the Mazur map)
the source component is constant and there is no contradiction.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .groups import BallRule, GroupModel
from .metric import MetricSpec
from .profiles import (
    ModulusBound,
    Profile,
    Verdict,
    lower_bound_sequence,
    lower_floor,
    pushforward_profile,
    to_fraction,
    upper_bound_sequence,
)


def _num(x) -> float:
    return float(f"{float(x):.12g}")


@dataclass
class VerdictReport:
    p: Fraction
    q: Fraction
    alpha: Fraction
    c: float
    c_prime: float
    witness_index: Fraction
    pushed_c: float
    pushed_index: Fraction
    threshold_index: Fraction
    decay_exponent: Fraction
    source_upper_component1: np.ndarray
    source_upper: np.ndarray
    target_lower: np.ndarray
    target_floor: float
    omega_size: np.ndarray
    verdict: Verdict

    @property
    def boundary(self) -> bool:
        return self.decay_exponent == 0

    @property
    def source_limit(self) -> float:
        """Closed-form limit of the source upper first component as ``|Omega| -> inf``."""
        if self.decay_exponent < 0:
            return 0.0
        if self.decay_exponent == 0:
            return float(self.source_upper_component1[0]) if len(self.omega_size) else math.nan
        return math.inf

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "inputs": {
                "p": str(self.p), "q": str(self.q), "alpha": str(self.alpha),
                "c": _num(self.c), "c_prime": _num(self.c_prime),
            },
            "witness_profile": {"c": _num(self.c), "index": str(self.witness_index)},
            "pushed_profile": {"c": _num(self.pushed_c), "index": str(self.pushed_index)},
            "threshold_index": str(self.threshold_index),
            "source_decay_exponent": str(self.decay_exponent),
            "source_upper_limit": _num(self.source_limit),
            "target_lower_floor": _num(self.target_floor),
            "boundary": self.boundary,
            "note": "c and c_prime change only constants, never the verdict",
            "sequence": [
                {
                    "i": i + 1,
                    "omega_size": int(self.omega_size[i]),
                    "source_upper_component1": _num(self.source_upper_component1[i]),
                    "source_upper": _num(self.source_upper[i]),
                    "target_lower": _num(self.target_lower[i]),
                }
                for i in range(len(self.omega_size))
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def run_obstruction(
    p,
    q,
    alpha,
    c: float = 1.0,
    c_prime: float = 1.0,
    spec: Optional[MetricSpec] = None,
    omega_rule: Optional[BallRule] = None,
    i_max: int = 50,
) -> VerdictReport:
    """Build both bound sequences for the witness profile and decide the verdict.

    The decision is the sign of ``p / r - 1`` with ``r = alpha q``, in exact
    rationals; the sequences are the numerical evidence.
    """
    p, q, alpha = to_fraction(p), to_fraction(q), to_fraction(alpha)
    if p < 1 or q < 1:
        raise ValueError("p and q must lie in [1, inf)")
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    if spec is None:
        spec = MetricSpec(BallRule(GroupModel.lattice(1)))
    if omega_rule is None:
        omega_rule = BallRule(spec.model)

    # profile indices live in [1, inf); below 1 nothing can vanish on the source side
    r = max(alpha * q, Fraction(1))
    source = Profile(c, r)
    pushed = pushforward_profile(ModulusBound(c_prime, alpha), source)
    decay = p / r - 1

    up = upper_bound_sequence(float(p), source, spec, omega_rule, i_max)
    lo = lower_bound_sequence(float(q), pushed, omega_rule, spec.sigma_prime, i_max)
    verdict = Verdict.OBSTRUCTED if decay < 0 else Verdict.NO_OBSTRUCTION
    return VerdictReport(
        p=p, q=q, alpha=alpha, c=c, c_prime=c_prime,
        witness_index=r,
        pushed_c=float(pushed.c),
        pushed_index=Fraction(pushed.q),
        threshold_index=p / alpha,
        decay_exponent=decay,
        source_upper_component1=up.upper_component1,
        source_upper=up.upper,
        target_lower=lo.lower,
        target_floor=lower_floor(float(q), pushed, spec.sigma_prime),
        omega_size=up.omega_size,
        verdict=verdict,
    )
