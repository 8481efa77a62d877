import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvtopo import (
    RadiusFunction,
    SpaceHandle,
    distance_radius_function,
    extremal_minorant,
    is_admissible,
    is_extremal,
)
from curvtopo.errors import DomainMismatch, NoConvergence, NotAdmissible

from helpers import random_metric

TWO = SpaceHandle.finite([[0, 1], [1, 0]])
RIGHT = SpaceHandle.finite([[0, 3, 4], [3, 0, 5], [4, 5, 0]])


def test_admissible_equality_case():
    assert is_admissible(TWO, RadiusFunction.on(TWO, [0.5, 0.5])) == (True, None)


def test_admissible_violation_pair():
    assert is_admissible(TWO, RadiusFunction.on(TWO, [0.4, 0.5])) == (False, (0, 1))


def test_gromov_radii_admissible_and_extremal():
    r = RadiusFunction.on(RIGHT, [1, 2, 3])
    assert is_admissible(RIGHT, r)[0]
    assert is_extremal(RIGHT, r)


def test_reducible_coordinate_not_extremal():
    assert not is_extremal(RIGHT, RadiusFunction.on(RIGHT, [2, 2, 3]))


def test_is_extremal_requires_admissible():
    with pytest.raises(NotAdmissible):
        is_extremal(RIGHT, RadiusFunction.on(RIGHT, [0, 0, 0]))


def test_distance_function_extremal():
    rng = np.random.default_rng(1)
    s = SpaceHandle.finite(random_metric(rng, 9))
    for x in range(9):
        assert is_extremal(s, distance_radius_function(s, x))


def test_distance_function_values():
    assert distance_radius_function(TWO, 0).values.tolist() == [0, 1]
    assert distance_radius_function(RIGHT, 2).values.tolist() == [4, 5, 0]
    circle = SpaceHandle.circle([0.0, 1 / 3, 2 / 3])
    assert distance_radius_function(circle, 0).values == pytest.approx([0, 1 / 3, 1 / 3])


def test_minorant_two_points():
    r = extremal_minorant(TWO, RadiusFunction.on(TWO, [1, 1]), [0, 1])
    assert r.values.tolist() == [0, 1]


def test_minorant_right_triangle():
    r = extremal_minorant(RIGHT, RadiusFunction.constant(RIGHT, 5), [0, 1, 2])
    assert r.values.tolist() == [0, 3, 4]
    assert is_extremal(RIGHT, r)


def test_minorant_keeps_extremal_input():
    r = RadiusFunction.on(RIGHT, [1, 2, 3])
    assert extremal_minorant(RIGHT, r).values.tolist() == [1, 2, 3]


def test_minorant_order_matters():
    a = extremal_minorant(TWO, RadiusFunction.on(TWO, [1, 1]), [0, 1])
    b = extremal_minorant(TWO, RadiusFunction.on(TWO, [1, 1]), [1, 0])
    assert a.values.tolist() == [0, 1] and b.values.tolist() == [1, 0]


def test_minorant_rejects_inadmissible_start():
    with pytest.raises(NotAdmissible):
        extremal_minorant(RIGHT, RadiusFunction.constant(RIGHT, 1))


def test_bad_order():
    with pytest.raises(DomainMismatch):
        extremal_minorant(RIGHT, RadiusFunction.constant(RIGHT, 5), [0, 0, 1])


def test_zero_budget_reports_best():
    with pytest.raises(NoConvergence) as info:
        extremal_minorant(RIGHT, RadiusFunction.constant(RIGHT, 5), max_sweeps=0, tol=-1)
    assert info.value.best is not None


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 10))
def test_minorant_properties(seed, n):
    rng = np.random.default_rng(seed)
    D = random_metric(rng, n)
    s = SpaceHandle.finite(D)
    start = RadiusFunction.half_max(s)
    r = extremal_minorant(s, start, rng.permutation(n))
    assert is_extremal(s, r)
    assert np.all(r.values <= start.values + 1e-15)
    assert np.all(np.abs(r.values[:, None] - r.values[None]) <= D + 1e-10)
