import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from circlelab import (
    TWO_PI,
    CircleInterval,
    PiecewiseLinearFunction,
    eval_pl,
    pl_sum,
    sample,
    simplify,
    total_variation,
    triangle,
)


def test_triangle_center_and_endpoints():
    tri = triangle(CircleInterval(1.0, 2.0))
    assert tri(1.5) == 1.0
    assert tri(1.0) == 0.0
    assert tri(2.0) == 0.0
    assert tri(1.25) == 0.5
    assert tri(1.75) == 0.5


def test_triangle_rejects_boundary_touch():
    with pytest.raises(ValueError):
        triangle(CircleInterval(0.0, 1.0))
    with pytest.raises(ValueError):
        triangle(CircleInterval(1.0, TWO_PI))


def test_interval_validation():
    with pytest.raises(ValueError):
        CircleInterval(2.0, 1.0)
    with pytest.raises(ValueError):
        CircleInterval(-0.1, 1.0)


def test_eval_constant_and_gap():
    const = PiecewiseLinearFunction(np.array([0.0]), np.array([3.5 + 1j]))
    for t in (0.0, 1.0, 6.0):
        assert eval_pl(const, t) == 3.5 + 1j
    two = pl_sum([triangle(CircleInterval(1.0, 2.0)), triangle(CircleInterval(3.0, 4.0))])
    assert eval_pl(two, 2.5) == 0.0
    assert eval_pl(two, 5.0) == 0.0


def test_sample_knots_on_grid_exact():
    tri = triangle(CircleInterval(np.pi / 2, 3 * np.pi / 2))
    g = sample(tri, 4)
    assert g.samples.tolist() == [0.0, 0.0, 1.0, 0.0]


def test_sample_matches_eval_everywhere():
    tri = triangle(CircleInterval(0.7, 2.9))
    for n in (2, 64):
        g = sample(tri, n)
        t = np.arange(n) * (TWO_PI / n)
        assert np.array_equal(g.samples, tri(t))


def test_sample_rejects_bad_counts():
    tri = triangle(CircleInterval(1.0, 2.0))
    for bad in (0, 1, 3, 24):
        with pytest.raises(ValueError):
            sample(tri, bad)


def test_total_variation_triangle_and_constant():
    assert total_variation(triangle(CircleInterval(1.0, 2.0))) == 2.0
    const = PiecewiseLinearFunction(np.array([0.0]), np.array([2.0 + 0j]))
    assert total_variation(const) == 0.0


def test_total_variation_weighted_tents():
    # disjoint supports: variation is the sum of per-tent rises and falls
    weights = [0.5, 0.3, 0.2]
    tents = [
        triangle(CircleInterval(0.5, 1.0)),
        triangle(CircleInterval(2.0, 3.0)),
        triangle(CircleInterval(4.0, 5.5)),
    ]
    u = pl_sum(tents, weights)
    assert abs(total_variation(u) - 2.0 * sum(weights)) < 1e-15


def test_total_variation_rejects_complex():
    f = PiecewiseLinearFunction(np.array([0.0, 1.0]), np.array([0.0, 1j]))
    with pytest.raises(ValueError):
        total_variation(f)


def test_eval_exact_at_knots():
    rng = np.random.default_rng(11)
    knots = np.sort(rng.uniform(0.0, TWO_PI, 17))
    values = rng.normal(size=17) + 1j * rng.normal(size=17)
    f = PiecewiseLinearFunction(knots, values)
    out = f(knots)
    assert np.array_equal(out, values)


def test_collinear_knot_is_invisible():
    tri = triangle(CircleInterval(1.0, 2.0))
    # insert a redundant knot in the middle of the rising edge
    knots = np.sort(np.append(tri.knots, 1.25))
    f2 = PiecewiseLinearFunction(knots, tri(knots))
    assert abs(total_variation(f2) - total_variation(tri)) < 1e-12
    f3 = simplify(f2)
    # the inserted knot goes, and so does the knot at 0 (flat through the wrap)
    assert f3.n_knots == 3
    assert np.max(np.abs(f3(np.linspace(0, 6.2, 100)) - tri(np.linspace(0, 6.2, 100)))) < 1e-14


def test_validation_rejects_bad_knots():
    with pytest.raises(ValueError):
        PiecewiseLinearFunction(np.array([0.0, 0.0]), np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        PiecewiseLinearFunction(np.array([0.0, TWO_PI]), np.array([1.0, 2.0]))
    with pytest.raises(ValueError):
        PiecewiseLinearFunction(np.array([0.0, 1.0]), np.array([np.nan, 2.0]))


def test_json_round_trip():
    tri = triangle(CircleInterval(1.0, 2.5))
    back = PiecewiseLinearFunction.from_dict(tri.to_dict())
    assert np.array_equal(back.knots, tri.knots)
    assert np.array_equal(back.values, tri.values)


@given(
    a=st.floats(min_value=1e-3, max_value=5.0),
    width=st.floats(min_value=1e-3, max_value=1.2),
    t1=st.floats(min_value=0.0, max_value=TWO_PI),
    t2=st.floats(min_value=0.0, max_value=TWO_PI),
)
@settings(max_examples=200, deadline=None)
def test_tent_slope_bound_property(a, width, t1, t2):
    b = min(a + width, TWO_PI - 1e-6)
    tent = triangle(CircleInterval(a, b))
    lhs = abs(tent(t1) - tent(t2))
    assert lhs <= (2.0 / (b - a)) * abs(t1 - t2) + 1e-12


@given(st.floats(min_value=-10.0, max_value=20.0))
@settings(max_examples=200, deadline=None)
def test_reduce_angle_range(t):
    from circlelab import reduce_angle

    r = reduce_angle(t)
    assert 0.0 <= r < TWO_PI
    assert abs((r - t) % TWO_PI) < 1e-9 or abs(((r - t) % TWO_PI) - TWO_PI) < 1e-9
