"""Profiles ``f_{c,q}(Omega) = c |Omega|^(-1/q)``, the two-sided bound sequences for the
asymptotic measure of the l^p ball, Hölder pushforward of profiles, and the
obstruction verdict for equivariant Hölder maps.

Profile and modulus evaluations are carried out at 256 bits and rounded
once, so algebraically equal expressions (``psi(f(Omega))`` and the pushed
forward profile at ``Omega``) give identical floats.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Optional, Union

import mpmath
import numpy as np

from .errors import EmptyWindowError
from .groups import BallRule, Window, invert_window, multiply_windows
from .metric import MetricSpec

_PREC = 256

Number = Union[int, float, Fraction, mpmath.mpf]


def _mp(x) -> mpmath.mpf:
    if isinstance(x, Rational):
        x = Fraction(x)
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def _size(omega) -> int:
    n = len(omega) if isinstance(omega, Window) else int(omega)
    if n < 1:
        raise EmptyWindowError("profiles are evaluated on nonempty windows")
    return n


@dataclass(frozen=True)
class Profile:
    """The decreasing set function ``Omega -> c |Omega|^(-1/q)``.

    ``c`` and ``q`` may be floats, ints, Fractions or mpmath numbers; they are
    used at full precision.
    """

    c: Number
    q: Number

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError("profile constant c must be positive")
        if not self.q >= 1:
            raise ValueError("profile index q must be >= 1")

    def exact(self, omega) -> mpmath.mpf:
        """High-precision value (256-bit mpf)."""
        n = _size(omega)
        with mpmath.workprec(_PREC):
            return _mp(self.c) * mpmath.mpf(n) ** (-1 / _mp(self.q))

    def __call__(self, omega) -> float:
        with mpmath.workprec(_PREC):
            return float(self.exact(omega))


@dataclass(frozen=True)
class ModulusBound:
    """Hölder modulus ``psi(eps) = c_prime * eps^alpha`` with ``0 < alpha <= 1``."""

    c_prime: Number
    alpha: Number

    def __post_init__(self):
        if not self.c_prime > 0:
            raise ValueError("c_prime must be positive")
        if not 0 < self.alpha <= 1:
            raise ValueError("alpha must lie in (0, 1]")

    def exact(self, eps) -> mpmath.mpf:
        with mpmath.workprec(_PREC):
            return _mp(self.c_prime) * _mp(eps) ** _mp(self.alpha)

    def __call__(self, eps) -> float:
        with mpmath.workprec(_PREC):
            return float(self.exact(eps))


def profile_eval(f: Profile, omega) -> float:
    return f(omega)


def pushforward_profile(psi: ModulusBound, f: Profile) -> Profile:
    """``psi o f_{c,q} = f_{c' c^alpha, q / alpha}``.

    Rational parameters stay rational when the result is rational
    (``alpha`` rational and ``c`` a perfect power are not required: the
    constant falls back to a 256-bit mpf).
    """
    alpha = psi.alpha
    if all(isinstance(v, Rational) for v in (f.q, alpha)):
        q_new = Fraction(f.q) / Fraction(alpha)
    else:
        with mpmath.workprec(_PREC):
            q_new = _mp(f.q) / _mp(alpha)
    if alpha == 1 and isinstance(f.c, Rational) and isinstance(psi.c_prime, Rational):
        c_new = Fraction(psi.c_prime) * Fraction(f.c)
    else:
        with mpmath.workprec(_PREC):
            c_new = _mp(psi.c_prime) * _mp(f.c) ** _mp(alpha)
    return Profile(c_new, q_new)


# -- bound sequences ----------------------------------------------------------


@dataclass
class BoundSequence:
    """Per-index columns of the two bounds; lower-only or upper-only sequences leave the other side ``None``."""

    index: np.ndarray
    omega_size: np.ndarray
    eps: np.ndarray
    k: Optional[np.ndarray] = None
    lower: Optional[np.ndarray] = None
    upper_component1: Optional[np.ndarray] = None
    upper_component2: Optional[np.ndarray] = None
    upper: Optional[np.ndarray] = None

    def __len__(self) -> int:
        return len(self.index)

    def rows(self):
        cols = [
            self.index, self.omega_size, self.eps, self.k, self.lower,
            self.upper_component1, self.upper_component2, self.upper,
        ]
        for j in range(len(self)):
            yield tuple(None if c is None else c[j].item() for c in cols)


CSV_COLUMNS = (
    "i", "omega_size", "eps_i", "k_i", "lower",
    "upper_component1", "upper_component2", "upper",
)


def _power_law(const, exponent, sizes: np.ndarray) -> np.ndarray:
    """``const * sizes^exponent`` with both parameters rounded once from high precision."""
    with mpmath.workprec(_PREC):
        cst, ex = float(const), float(exponent)
    return cst * sizes.astype(float) ** ex


def _sizes(rule: BallRule, i_max: int):
    index = np.arange(1, i_max + 1, dtype=np.int64)
    sizes = np.array([rule.size(int(i)) for i in index], dtype=np.int64)
    return index, sizes


def lower_bound_sequence(
    p: float, f: Profile, omega_rule: BallRule, sigma_prime: float, i_max: int
) -> BoundSequence:
    """``L_i = min((2 sigma'/c)^p |Omega_i|^(p/q - 1), 1)``.

    Comes from zero-extending points of the ball of radius ``sigma'`` on
    ``Omega_i^-1 g`` into the infinite-dimensional ball. For ``p >= q`` every
    term is at least ``min((2 sigma'/c)^p, 1)``; for ``p = q`` the sequence is
    constant.
    """
    index, sizes = _sizes(omega_rule, i_max)
    eps = np.array([f(int(n)) for n in sizes], dtype=float)
    with mpmath.workprec(_PREC):
        const = (2 * _mp(sigma_prime) / _mp(f.c)) ** _mp(p)
        exponent = _mp(p) / _mp(f.q) - 1
    lower = np.minimum(_power_law(const, exponent, sizes), 1.0)
    return BoundSequence(index, sizes, eps, lower=lower)


def lower_floor(p: float, f: Profile, sigma_prime: float) -> float:
    """``min((2 sigma'/c)^p, 1)``, the positive floor of the lower sequence when ``p >= q``."""
    with mpmath.workprec(_PREC):
        return min(float((2 * _mp(sigma_prime) / _mp(f.c)) ** _mp(p)), 1.0)


def upper_first_component(p: float, f: Profile, sizes) -> np.ndarray:
    """``(2/c)^p |Omega|^(p/q - 1)``."""
    with mpmath.workprec(_PREC):
        const = (2 / _mp(f.c)) ** _mp(p)
        exponent = _mp(p) / _mp(f.q) - 1
    return _power_law(const, exponent, np.asarray(sizes))


def upper_bound_sequence(
    p: float,
    f: Profile,
    spec: MetricSpec,
    omega_rule: BallRule,
    i_max: int,
    explicit: bool = False,
) -> BoundSequence:
    """``U_i = min((2/c)^p |Omega_i|^(p/q - 1), |Omega_i^-1 F_{k_i}| / |Omega_i|)``.

    ``k_i`` is the smallest ``k`` with ``sigma_{k+1} < eps_i``: restricting to
    ``Omega_i^-1 F_{k_i}`` then loses at most ``eps_i`` in the dynamical metric.
    The product size uses the ball identity ``B_s B_t = B_{s+t}`` unless
    ``explicit`` is set, in which case windows are multiplied element by element.
    """
    index, sizes = _sizes(omega_rule, i_max)
    eps = np.array([f(int(n)) for n in sizes], dtype=float)
    k = np.array([spec.weights.smallest_k(float(e)) for e in eps], dtype=np.int64)
    if explicit:
        prod = np.array(
            [
                len(multiply_windows(invert_window(omega_rule.window(int(i))), spec.window(int(kk))))
                for i, kk in zip(index, k)
            ],
            dtype=np.int64,
        )
    else:
        prod = np.array(
            [omega_rule.product_size(int(i), spec.windows, int(kk)) for i, kk in zip(index, k)],
            dtype=np.int64,
        )
    u1 = upper_first_component(p, f, sizes)
    u2 = prod / sizes
    return BoundSequence(
        index, sizes, eps, k=k, upper_component1=u1, upper_component2=u2, upper=np.minimum(u1, u2)
    )


def bound_sequence(
    p: float, f: Profile, spec: MetricSpec, omega_rule: BallRule, i_max: int
) -> BoundSequence:
    """Both sides at once (lower side uses ``spec.sigma_prime``)."""
    up = upper_bound_sequence(p, f, spec, omega_rule, i_max)
    lo = lower_bound_sequence(p, f, omega_rule, spec.sigma_prime, i_max)
    up.lower = lo.lower
    return up


# -- verdict -------------------------------------------------------------------


class Verdict(str, enum.Enum):
    OBSTRUCTED = "Obstructed"
    NO_OBSTRUCTION = "NoObstruction"


def to_fraction(x) -> Fraction:
    """Exact rational from ints, Fractions, strings like ``"2/3"`` or floats (via their shortest repr)."""
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError("parameters must be finite")
        return Fraction(repr(x))
    return Fraction(str(x).strip())


@dataclass(frozen=True)
class VerdictRecord:
    """Outcome of the exponent test plus the profile indices that witness it.

    ``witness_index`` is the profile index ``r = alpha q`` put on the source
    ball: its measure vanishes when ``p < r``, while the pushed-forward index
    ``r / alpha = q`` keeps the target measure positive.
    """

    verdict: Verdict
    p: Fraction
    q: Fraction
    alpha: Fraction
    alpha_q: Fraction
    threshold_index: Fraction
    witness_index: Fraction
    boundary: bool

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "p": str(self.p),
            "q": str(self.q),
            "alpha": str(self.alpha),
            "alpha_q": str(self.alpha_q),
            "threshold_index": str(self.threshold_index),
            "witness_index": str(self.witness_index),
            "boundary": self.boundary,
        }


def theorem_verdict(p, q, alpha) -> VerdictRecord:
    """Obstructed iff ``alpha * q > p``, decided in exact rational arithmetic."""
    p, q, alpha = to_fraction(p), to_fraction(q), to_fraction(alpha)
    if p < 1 or q < 1:
        raise ValueError("p and q must lie in [1, inf)")
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    aq = alpha * q
    verdict = Verdict.OBSTRUCTED if aq > p else Verdict.NO_OBSTRUCTION
    return VerdictRecord(verdict, p, q, alpha, aq, p / alpha, aq, aq == p)
