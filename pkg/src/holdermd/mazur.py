"""The Mazur map ``x -> sign(x) |x|^(p/q)`` from the l^p ball onto the l^q ball,
its Hölder certificate, and an empirical probe of its Hölder ratios under
window metrics.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainError
from .groups import Window, word_ball
from .metric import MetricSpec, base_metric
from .space import BALL_TOL, LpPoint, lp_norm, sample_point


def mazur_map(x: LpPoint, p: float, q: float, tol: float = BALL_TOL) -> LpPoint:
    """Sign-preserving power map sending the unit l^p ball onto the unit l^q ball.

    ``||phi(x)||_q^q = ||x||_p^p`` and ``phi`` commutes with translations.
    """
    if lp_norm(x, p) > 1 + tol:
        raise DomainError("point lies outside the unit l^p ball")
    e = p / q
    return LpPoint(
        x.model, {g: math.copysign(abs(v) ** e, v) for g, v in x.values.items()}, q, tol
    )


def power_holder_certificate(p: float, q: float) -> float:
    """Hölder constant ``2^(1 - p/q)`` of ``t -> sign(t)|t|^(p/q)`` on the reals.

    Same-sign pairs satisfy the bound with constant 1; opposite signs use
    concavity, ``a^θ + b^θ <= 2^(1-θ) (a + b)^θ``. For sup-type window metrics
    (r = inf) sharing windows and weights, the same constant bounds
    ``d_target(phi x, phi y) / d_source(x, y)^(p/q)``, since the weights sum to 1.
    """
    if not 1 <= p <= q:
        raise ValueError("need 1 <= p <= q")
    return 2.0 ** (1.0 - p / q)


@dataclass
class HolderProbeReport:
    """Hölder ratios ``d_target(phi x, phi y) / d_source(x, y)^beta`` bucketed by octave.

    ``buckets`` maps ``e`` to ``(count, max_ratio)`` for source distances in
    ``[2^e, 2^(e+1))``.
    """

    p: float
    q: float
    beta: float
    seed: int
    samples: int
    buckets: dict = field(default_factory=dict)

    @property
    def overall_max(self) -> Optional[float]:
        if not self.buckets:
            return None
        return max(m for _, m in self.buckets.values())

    @property
    def empty_decades(self) -> list[int]:
        if not self.buckets:
            return []
        lo, hi = min(self.buckets), max(self.buckets)
        return [e for e in range(lo, hi + 1) if e not in self.buckets]

    @property
    def degenerate(self) -> bool:
        return not self.buckets or bool(self.empty_decades)

    def decades(self) -> list[tuple[int, int, float]]:
        """``(decade, count, max_ratio)`` from the largest distances down."""
        return [(e, *self.buckets[e]) for e in sorted(self.buckets, reverse=True)]

    def merge(self, other: "HolderProbeReport") -> None:
        for e, (n, m) in other.buckets.items():
            n0, m0 = self.buckets.get(e, (0, -math.inf))
            self.buckets[e] = (n0 + n, max(m0, m))

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "beta": self.beta,
            "seed": self.seed,
            "samples": self.samples,
            "overall_max_ratio": self.overall_max,
            "degenerate": self.degenerate,
            "empty_decades": self.empty_decades,
            "decades": [
                {"decade": e, "count": n, "max_ratio": m} for e, n, m in self.decades()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def longest_increasing_run(report: HolderProbeReport) -> int:
    """Length of the longest run of adjacent octaves (moving to smaller distances)
    over which the maximal ratio strictly increases."""
    rows = report.decades()
    best = run = 1 if rows else 0
    for (e0, _, m0), (e1, _, m1) in zip(rows, rows[1:]):
        run = run + 1 if (e1 == e0 - 1 and m1 > m0) else 1
        best = max(best, run)
    return best


def _rescale_into_ball(vals: dict, p: float) -> dict:
    nrm = sum(abs(v) ** p for v in vals.values()) ** (1.0 / p)
    if nrm > 1:
        return {g: v / nrm for g, v in vals.items()}
    return vals


def sample_pair(
    rng: np.random.Generator, window: Window, core: Window, p: float, max_scale_exp: int = 40
) -> tuple[LpPoint, LpPoint]:
    """Draw a pair from one of three regimes, chosen uniformly.

    0. two independent points;
    1. a point and a sparse perturbation of it at scale ``2^-j``, ``j`` uniform
       in ``[1, max_scale_exp]`` (the small distances);
    2. two points that agree on ``core`` and differ outside it.
    """
    model = window.model
    regime = int(rng.integers(3))
    outside = [g for g in window if g not in core]
    if regime == 2 and not outside:
        regime = 0
    if regime == 0:
        return sample_point(rng, window, p), sample_point(rng, window, p)
    x = sample_point(rng, window, p, support_fraction=0.5)
    vals = dict(x.values)
    if regime == 1:
        elems = list(window)
        m = int(rng.integers(1, min(3, len(elems)) + 1))
        scale = 2.0 ** -int(rng.integers(1, max_scale_exp + 1))
        for j in rng.choice(len(elems), size=m, replace=False):
            g = elems[int(j)]
            vals[g] = vals.get(g, 0.0) + scale * rng.uniform(-1.0, 1.0)
    else:
        for g in outside:
            vals[g] = rng.uniform(-1.0, 1.0) * rng.random()
    return x, LpPoint(model, _rescale_into_ball(vals, p), p)


def _probe_batch(args) -> HolderProbeReport:
    p, q, src, tgt, beta, count, seed_seq, window, core = args
    rng = np.random.default_rng(seed_seq)
    rep = HolderProbeReport(p, q, beta, 0, count)
    for _ in range(count):
        while True:
            x, y = sample_pair(rng, window, core, p)
            ds = base_metric(src, x, y)
            if ds > 0:
                break
        dt = base_metric(tgt, mazur_map(x, p, q), mazur_map(y, p, q))
        ratio = dt / ds**beta
        e = math.frexp(ds)[1] - 1
        n0, m0 = rep.buckets.get(e, (0, -math.inf))
        rep.buckets[e] = (n0 + 1, max(m0, ratio))
    return rep


def holder_probe(
    p: float,
    q: float,
    source_spec: MetricSpec,
    target_spec: MetricSpec,
    beta: float,
    n_samples: int,
    seed: int = 0,
    support_radius: int = 2,
    batch_size: int = 512,
    workers: Optional[int] = None,
) -> HolderProbeReport:
    """Sample pairs in the l^p ball and bucket Hölder ratios of the Mazur map.

    Points are supported in the word ball of radius ``support_radius``. The
    stream is split into fixed-size batches with independent child seeds, so
    the report does not depend on ``workers``.
    """
    if source_spec.windows != target_spec.windows or source_spec.weights != target_spec.weights:
        raise ValueError("source and target metrics must share windows and weights")
    if n_samples < 0:
        raise ValueError("n_samples must be nonnegative")
    window = word_ball(source_spec.model, support_radius)
    core = source_spec.window(1)
    n_batches = -(-n_samples // batch_size)
    children = np.random.SeedSequence(seed).spawn(n_batches)
    jobs = [
        (p, q, source_spec, target_spec, beta,
         min(batch_size, n_samples - b * batch_size), children[b], window, core)
        for b in range(n_batches)
    ]
    report = HolderProbeReport(p, q, beta, seed, n_samples)
    if workers and workers > 1 and n_batches > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_probe_batch, jobs))
    else:
        parts = [_probe_batch(job) for job in jobs]
    for part in parts:
        report.merge(part)
    return report
