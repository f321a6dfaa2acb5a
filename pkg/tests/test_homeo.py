import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from circlelab import (
    TWO_PI,
    CircleInterval,
    PLHomeomorphism,
    build_delta_sequence,
    build_u,
    compose_homeo,
    from_increments,
    ModulusSpec,
    place_intervals,
    random_homeomorphism,
    simplify,
    superpose,
    total_variation,
    triangle,
    truncate_un,
)
from circlelab.experiments import _random_pl


def test_equal_increments_give_identity():
    h = from_increments(np.zeros(8))
    ident = PLHomeomorphism.identity(8)
    assert np.max(np.abs(h.knots_in - ident.knots_in)) < 1e-12
    assert np.max(np.abs(h.knots_out - ident.knots_out)) < 1e-12
    t = np.linspace(0.0, TWO_PI, 100, endpoint=False)
    assert np.max(np.abs(h.apply(t) - t)) < 1e-12


def test_increment_prefix_sums():
    raw = np.array([math.log(3.0), 0.0, 0.0, 0.0])
    h = from_increments(raw)
    # independent recomputation of the softmax prefix sums
    w = np.exp(raw - np.mean(raw))
    p = w / w.sum() * TWO_PI
    expected = np.array([0.0, p[0], p[0] + p[1], p[0] + p[1] + p[2]])
    assert np.max(np.abs(h.knots_out - expected)) < 1e-12
    assert h.knots_out[1] == pytest.approx(TWO_PI / 2.0, rel=1e-12)


def test_any_raw_vector_is_valid():
    rng = np.random.default_rng(6)
    for scale in (0.1, 5.0, 100.0, 1e6):
        h = from_increments(rng.normal(size=16) * scale)
        assert np.all(np.diff(h.knots_out) > 0.0)
        assert h.knots_out[-1] < TWO_PI


def test_invert_is_involutive():
    h = random_homeomorphism(12, rng=3)
    back = h.invert().invert()
    assert np.array_equal(back.knots_in, h.knots_in)
    assert np.array_equal(back.knots_out, h.knots_out)


def test_compose_with_inverse_is_identity():
    h = random_homeomorphism(12, rng=4)
    ident = compose_homeo(h, h.invert())
    assert np.max(np.abs(ident.apply(ident.knots_in) - ident.knots_in)) < 1e-12
    t = np.linspace(0.0, TWO_PI, 64, endpoint=False)
    assert np.max(np.abs(ident.apply(t) - t)) < 1e-12


def test_compose_matches_pointwise():
    h1 = random_homeomorphism(9, rng=8)
    h2 = random_homeomorphism(13, rng=9)
    h = compose_homeo(h1, h2)
    t = np.linspace(0.0, TWO_PI, 200, endpoint=False)
    assert np.max(np.abs(h.apply(t) - h1.apply(h2.apply(t)))) < 1e-12


def test_apply_exact_at_knots():
    h = random_homeomorphism(10, rng=5)
    assert np.array_equal(h.apply(h.knots_in), h.knots_out)


def test_identity_superpose_returns_function():
    tri = triangle(CircleInterval(1.0, 2.0))
    fh = simplify(superpose(tri, PLHomeomorphism.identity(4)))
    t = np.linspace(0.0, TWO_PI, 300, endpoint=False)
    assert np.max(np.abs(fh(t) - tri(t))) < 1e-12


def test_superpose_preserves_variation_and_range():
    seq = build_delta_sequence(ModulusSpec.power(1.0 / 3.0), 3)
    sys3 = place_intervals(seq, seq.deltas.size)
    u = build_u(sys3)
    un = truncate_un(u, 12)
    for seed in (1, 2, 3, 4):
        h = random_homeomorphism(24, roughness=1.5, rng=seed)
        uh = superpose(un, h)
        assert abs(total_variation(uh) - total_variation(un)) < 1e-10
        assert np.max(uh.values.real) == np.max(un.values.real)
        assert np.min(uh.values.real) == np.min(un.values.real)


def test_superpose_round_trip():
    rng = np.random.default_rng(11)
    for _ in range(10):
        f = _random_pl(rng, 48, complex_values=True)
        h = random_homeomorphism(16, rng=rng)
        back = superpose(superpose(f, h), h.invert())
        assert np.max(np.abs(back(f.knots) - f.values)) < 1e-10


def test_homeo_validation():
    with pytest.raises(ValueError):
        PLHomeomorphism(np.array([0.1, 1.0]), np.array([0.0, 1.0]))  # must start at 0
    with pytest.raises(ValueError):
        PLHomeomorphism(np.array([0.0, 1.0]), np.array([0.0, TWO_PI]))  # < 2*pi
    with pytest.raises(ValueError):
        from_increments(np.array([1.0]))  # need at least 2


def test_homeo_serialization():
    h = random_homeomorphism(7, rng=2)
    back = PLHomeomorphism.from_dict(h.to_dict())
    assert np.array_equal(back.knots_in, h.knots_in)
    assert np.array_equal(back.knots_out, h.knots_out)


@given(st.lists(st.floats(min_value=-3.0, max_value=3.0), min_size=2, max_size=24))
@settings(max_examples=150, deadline=None)
def test_from_increments_always_valid(raw):
    h = from_increments(np.asarray(raw))
    assert h.knots_in[0] == 0.0 and h.knots_out[0] == 0.0
    assert np.all(np.diff(h.knots_out) > 0.0)
    t = np.linspace(0.0, TWO_PI, 21, endpoint=False)
    s = h.apply(t)
    assert np.all(np.diff(s) > 0.0)  # strictly increasing on [0, 2*pi)
