import functools
import math

import numpy as np
import pytest

from holdermd import (
    BallRule,
    GroupModel,
    LpPoint,
    MetricSpec,
    WeightScheme,
    act,
    base_metric,
    base_metric_certified,
    dynamical_metric,
    lp_norm,
    sample_point,
    separation_bound,
    word_ball,
)
from holdermd.errors import EmptyWindowError
from holdermd.groups import Window

from conftest import make_spec

Z = GroupModel.lattice(1)

# sum_{i <= 10^4} 2^-i / (2i + 1), summed term by term in double precision
Z_DELTA_R2_SQUARED = 0.24645048028046102


@functools.lru_cache(maxsize=None)
def _ball(model, radius):
    return word_ball(model, radius)


def naive_metric(model, r, x, y, n_terms=200, explicit_upto=5):
    """The series summed window by window over explicit word balls."""
    w = WeightScheme()
    support = set(x.values) | set(y.values)
    assert all(g in _ball(model, explicit_upto) for g in support)
    total = 0.0
    for i in range(1, n_terms + 1):
        elems = _ball(model, i) if i <= explicit_upto else support
        diffs = [abs(x(g) - y(g)) for g in elems]
        if math.isinf(r):
            total += w.a(i) * max(diffs, default=0.0)
        else:
            total += w.a(i) / model.ball_size(i) * sum(d**r for d in diffs)
    return total if math.isinf(r) else total ** (1 / r)


def test_weights():
    w = WeightScheme()
    assert w.sigma(1) == 1.0
    assert w.a(1) == 0.5 and w.a(3) == 0.125
    assert sum(w.a(i) for i in range(1, 80)) == pytest.approx(1.0, abs=1e-15)
    assert all(w.sigma(k) > w.sigma(k + 1) for k in range(1, 60))
    assert w.smallest_k(0.3) == 2
    assert w.smallest_k(0.25) == 3  # sigma_3 = 0.25 is not < 0.25
    for eps in np.geomspace(1e-6, 0.99, 200):
        k = w.smallest_k(eps)
        assert w.sigma(k + 1) < eps and (k == 1 or w.sigma(k) >= eps)


def test_identical_points_distance_zero(model):
    x = sample_point(np.random.default_rng(0), word_ball(model, 2), 2.0)
    for r in (1.0, 2.0, math.inf):
        assert base_metric(make_spec(model, r), x, x) == 0.0


def test_r_inf_atom_at_identity():
    spec = make_spec(Z, math.inf)
    x = LpPoint.atom(Z, (0,), 1.0, 2)
    assert base_metric(spec, x, LpPoint.zero(Z, 2)) == 1.0


def test_r2_atom_on_z_matches_long_series():
    spec = make_spec(Z, 2.0)
    x = LpPoint.atom(Z, (0,), 1.0, 2)
    d = base_metric(spec, x, LpPoint.zero(Z, 2))
    assert abs(d - math.sqrt(Z_DELTA_R2_SQUARED)) <= spec.tau
    assert round(d, 4) == 0.4964


def test_certificate_bounds_the_error():
    spec = make_spec(Z, 2.0)
    x = LpPoint.atom(Z, (0,), 1.0, 2)
    value, err = base_metric_certified(spec, x, LpPoint.zero(Z, 2))
    assert 0 <= err <= spec.tau
    assert value <= math.sqrt(Z_DELTA_R2_SQUARED) + 1e-15 <= value + err + 1e-15


@pytest.mark.parametrize("r", [1.0, 2.0, 3.0, math.inf])
def test_against_naive_series(model, r, rng):
    spec = make_spec(model, r)
    window = word_ball(model, 2)
    for _ in range(10):
        x, y = sample_point(rng, window, 2.0), sample_point(rng, window, 2.0)
        assert base_metric(spec, x, y) == pytest.approx(naive_metric(model, r, x, y), abs=spec.tau)


def test_sigma_prime():
    spec = make_spec(Z, 2.0)
    assert spec.sigma_prime == pytest.approx(Z_DELTA_R2_SQUARED, abs=spec.tau / 10)
    assert make_spec(Z, math.inf).sigma_prime == 1.0


def test_r_inf_first_term_lower_bound(model, rng):
    spec = make_spec(model, math.inf)
    window, f1 = word_ball(model, 2), word_ball(model, 1)
    for _ in range(50):
        x, y = sample_point(rng, window, 1.5), sample_point(rng, window, 1.5)
        z = LpPoint(model, {g: x(g) - y(g) for g in window}, 1.5, check=False)
        assert base_metric(spec, x, y) >= spec.weights.a(1) * lp_norm(z, math.inf, f1)


def test_dynamical_identity_window(model, rng):
    spec = make_spec(model, 2.0)
    e = Window.from_elements(model, [model.identity])
    x, y = sample_point(rng, word_ball(model, 2), 2.0), sample_point(rng, word_ball(model, 2), 2.0)
    assert dynamical_metric(spec, e, x, y) == base_metric(spec, x, y)


def test_dynamical_monotone_in_window(model, rng):
    spec = make_spec(model, math.inf)
    small, large = word_ball(model, 1), word_ball(model, 2)
    window = word_ball(model, 2)
    for _ in range(100):
        x, y = sample_point(rng, window, 2.0), sample_point(rng, window, 2.0)
        assert dynamical_metric(spec, small, x, y) <= dynamical_metric(spec, large, x, y)


def test_dynamical_brute_force_on_z(rng):
    # hand-rolled double loop: shift, then sum a_i * max over [-i, i] until stabilized
    spec = make_spec(Z, math.inf)
    w = WeightScheme()
    for omega_elems in ([(0,), (1,), (2,), (3,)], [(2,), (3,), (4,), (5,)], [(-3,), (4,)]):
        omega = Window.from_elements(Z, omega_elems)
        x = sample_point(rng, word_ball(Z, 2), 2.0)
        y = LpPoint.zero(Z, 2) if omega_elems[0] == (0,) else sample_point(rng, word_ball(Z, 2), 2.0)
        best = 0.0
        for (gamma,) in omega:
            total = 0.0
            for i in range(1, 80):
                total += w.a(i) * max(
                    abs(x((g - gamma,)) - y((g - gamma,))) for g in range(-i, i + 1)
                )
            best = max(best, total)
        assert dynamical_metric(spec, omega, x, y) == pytest.approx(best, abs=1e-15)


def test_dynamical_atom_shift_values():
    spec = make_spec(Z, math.inf)
    x, y = LpPoint.atom(Z, (0,), 1.0, 2), LpPoint.zero(Z, 2)
    omega = Window.from_elements(Z, [(m,) for m in range(2, 6)])
    # best shift is gamma = 2: the atom enters F_2 first, contributing sigma_2
    assert dynamical_metric(spec, omega, x, y) == 0.5


def test_dynamical_empty_window():
    with pytest.raises(EmptyWindowError):
        dynamical_metric(make_spec(Z, 2.0), Window.from_elements(Z, []), LpPoint.zero(Z, 2), LpPoint.zero(Z, 2))


def test_separation_bound_values():
    assert separation_bound(make_spec(Z, math.inf), 3) == 0.25
    assert separation_bound(make_spec(Z, math.inf), 0) == 2.0
    assert separation_bound(make_spec(Z, 2.0), 3) == pytest.approx(2 * 0.125**0.5, abs=1e-15)
    assert separation_bound(make_spec(Z, 2.0), 0) == 2.0


@pytest.mark.parametrize("r", [1.0, 2.0, math.inf])
def test_separation_bound_random_pairs(model, r, rng):
    spec = make_spec(model, r)
    k = 2 if model.kind == "free" else 3
    inner = word_ball(model, k)
    outer = word_ball(model, k + 2)
    shell = [g for g in outer if g not in inner]
    bound = separation_bound(spec, k)
    for _ in range(200):
        x = sample_point(rng, inner, 2.0)
        vals = dict(x.values)
        # change only coordinates outside F_1..F_k, keeping both in the ball
        y_vals = {g: v * 0.5 for g, v in vals.items()}
        x_vals = dict(y_vals)
        for g in shell[: 6]:
            x_vals[g] = rng.uniform(-0.5, 0.5)
            y_vals[g] = rng.uniform(-0.5, 0.5)
        xx = LpPoint(model, x_vals, 2.0, check=False)
        yy = LpPoint(model, y_vals, 2.0, check=False)
        if lp_norm(xx, 2.0) > 1 or lp_norm(yy, 2.0) > 1:
            continue
        assert base_metric(spec, xx, yy) <= bound + spec.tau


@pytest.mark.parametrize("r", [1.0, 2.0, math.inf])
def test_metric_axioms_sampled(model, r, rng):
    spec = make_spec(model, r)
    window = word_ball(model, 2)
    for _ in range(100):
        x, y, z = (sample_point(rng, window, 2.0) for _ in range(3))
        dxy, dyz, dxz = base_metric(spec, x, y), base_metric(spec, y, z), base_metric(spec, x, z)
        assert dxy == base_metric(spec, y, x)
        assert dxz <= dxy + dyz + 3 * spec.tau
        assert dxy <= 2 + spec.tau


def test_diameter_attained_for_r_inf():
    spec = make_spec(Z, math.inf)
    x, y = LpPoint.atom(Z, (0,), 1.0, 1), LpPoint.atom(Z, (0,), -1.0, 1)
    assert base_metric(spec, x, y) == 2.0


def test_translation_changes_distance():
    # the action is not isometric for window metrics
    spec = make_spec(Z, math.inf)
    x, y = LpPoint.atom(Z, (0,), 1.0, 2), LpPoint.zero(Z, 2)
    assert base_metric(spec, act((3,), x), act((3,), y)) < base_metric(spec, x, y)


def test_other_weight_ratio_and_free_overflow_guard():
    spec = MetricSpec(BallRule(GroupModel.free(2)), WeightScheme(0.99), r=2.0)
    x = LpPoint.atom(GroupModel.free(2), (), 1.0, 2)
    d = base_metric(spec, x, LpPoint.zero(GroupModel.free(2), 2))
    assert 0 < d < 1
