from math import sqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvtopo import (
    FilteredComplex,
    SpaceHandle,
    cech_filtration,
    cech_slice,
    check_inclusions,
    compute_persistence,
    rho_triple,
    vr_filtration,
    vr_filtration_of,
    vr_slice,
)
from curvtopo.errors import DomainMismatch, MismatchedBases

EQUILATERAL = SpaceHandle.euclidean([[0.0, 0.0], [1.0, 0.0], [0.5, sqrt(3) / 2]])
THIRDS = SpaceHandle.circle([0.0, 1 / 3, 2 / 3])
QUARTERS = SpaceHandle.circle([0.0, 0.25, 0.5, 0.75])
DIAMOND = SpaceHandle.linf([[1, 0], [0, 1], [-1, 0], [0, -1]])


class TestSlices:
    def test_equilateral_edges_without_triangle(self):
        sl = cech_slice(EQUILATERAL, [0, 1, 2], 0.55)
        assert sl.by_dim(1) == [(0, 1), (0, 2), (1, 2)]
        assert sl.by_dim(2) == []

    def test_vr_fills_the_triangle(self):
        vr = vr_slice([0, 1, 2], EQUILATERAL.matrix, 0.55)
        assert vr.by_dim(2) == [(0, 1, 2)]
        cech = cech_slice(EQUILATERAL, [0, 1, 2], 0.55)
        assert cech.simplices < vr.simplices

    def test_circle_third_radius_full_simplex(self):
        assert (0, 1, 2) in cech_slice(THIRDS, [0, 1, 2], 1 / 3).simplices

    def test_zero_radius_vertices_only(self):
        sl = cech_slice(EQUILATERAL, [0, 1, 2], 0.0)
        assert sorted(sl.simplices) == [(0,), (1,), (2,)]

    def test_linf_slices_agree(self):
        rng = np.random.default_rng(2)
        s = SpaceHandle.linf(rng.random((9, 2)))
        for _ in range(5):
            r = rng.uniform(0.05, 0.4, 9)
            assert cech_slice(s, range(9), r).simplices == vr_slice(list(range(9)), s.matrix, r).simplices

    def test_radius_length_mismatch(self):
        with pytest.raises(DomainMismatch):
            cech_slice(EQUILATERAL, [0, 1, 2], [0.5, 0.5])


class TestCech:
    def test_circle_births(self):
        b = cech_filtration(THIRDS, [0, 1, 2]).births()
        assert b[(0, 1)] == pytest.approx(1 / 6, abs=1e-15)
        assert b[(0, 1, 2)] == pytest.approx(1 / 3, abs=1e-15)

    @pytest.mark.parametrize("a", [1.0, 2.5])
    def test_equilateral_scaled(self, a):
        s = SpaceHandle.euclidean(a * np.array([[0.0, 0.0], [1.0, 0.0], [0.5, sqrt(3) / 2]]))
        b = cech_filtration(s, [0, 1, 2]).births()
        assert b[(0, 2)] == pytest.approx(a / 2, abs=1e-12)
        assert b[(0, 1, 2)] == pytest.approx(a / sqrt(3), abs=1e-12)

    def test_weighted_gromov_schedule(self):
        s = SpaceHandle.euclidean([[0.0, 0.0], [3.0, 0.0], [0.0, 4.0]])
        rho = rho_triple(s, 0, 1, 2)
        b = cech_filtration(s, [0, 1, 2], schedule=rho.radii.as_tuple()).births()
        for e in [(0, 1), (0, 2), (1, 2)]:
            assert b[e] == pytest.approx(1.0, abs=1e-12)
        assert b[(0, 1, 2)] == pytest.approx(rho.rho, abs=1e-12)

    def test_t_max_truncates(self):
        f = cech_filtration(THIRDS, [0, 1, 2], t_max=0.2)
        assert (0, 1, 2) not in f.births()

    def test_ordering_and_monotone(self):
        rng = np.random.default_rng(1)
        f = cech_filtration(SpaceHandle.euclidean(rng.random((7, 2))), range(7), dim_cap=3)
        keys = [(b, len(s), s) for s, b in f.entries]
        assert keys == sorted(keys)
        assert f.is_monotone()


class TestVR:
    def test_three_equidistant(self):
        b = vr_filtration_of(THIRDS, [0, 1, 2]).births()
        assert b[(0, 1, 2)] == pytest.approx(1 / 6)
        assert all(b[e] == pytest.approx(1 / 6) for e in [(0, 1), (0, 2), (1, 2)])

    def test_four_equidistant(self):
        b = vr_filtration_of(QUARTERS, range(4)).births()
        assert b[(0, 1)] == b[(1, 2)] == b[(2, 3)] == b[(0, 3)] == 0.125
        assert b[(0, 2)] == b[(1, 3)] == 0.25
        assert all(b[t] == 0.25 for t in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])

    def test_weighted_gromov_edges_at_one(self):
        D = np.array([[0, 3, 4], [3, 0, 5], [4, 5, 0]], dtype=float)
        b = vr_filtration([0, 1, 2], D, schedule=[1, 2, 3]).births()
        assert b[(0, 1)] == b[(0, 2)] == b[(1, 2)] == 1.0

    def test_unsorted_base_points(self):
        D = np.array([[0, 3, 4], [3, 0, 5], [4, 5, 0]], dtype=float)
        a = vr_filtration([5, 2, 9], D).births()
        assert a[(2, 5)] == 1.5 and a[(5, 9)] == 2.0 and a[(2, 9)] == 2.5

    def test_backends_agree(self):
        rng = np.random.default_rng(3)
        s = SpaceHandle.euclidean(rng.random((15, 3)))
        a = vr_filtration_of(s, range(15), dim_cap=3, backend="python")
        b = vr_filtration_of(s, range(15), dim_cap=3)
        assert a.entries == b.entries


class TestInclusions:
    def test_euclidean_two_over_root_three(self):
        rng = np.random.default_rng(4)
        s = SpaceHandle.euclidean(rng.random((8, 2)))
        cech, vr = cech_filtration(s, range(8)), vr_filtration_of(s, range(8))
        assert check_inclusions(cech, vr, 2 / sqrt(3) + 1e-9).ok

    def test_linf_mu_one(self):
        rng = np.random.default_rng(5)
        s = SpaceHandle.linf(rng.random((8, 2)))
        assert check_inclusions(cech_filtration(s, range(8)), vr_filtration_of(s, range(8)), 1.0).ok

    def test_circle_needs_two(self):
        cech, vr = cech_filtration(THIRDS, range(3)), vr_filtration_of(THIRDS, range(3))
        report = check_inclusions(cech, vr, 1.5)
        assert not report.ok
        assert report.violations[0]["simplex"] == [0, 1, 2]
        assert check_inclusions(cech, vr, 2.0 + 1e-9).ok

    def test_mismatched_bases(self):
        with pytest.raises(MismatchedBases):
            check_inclusions(cech_filtration(QUARTERS, [0, 1, 2]), vr_filtration_of(QUARTERS, [0, 1, 3]), 2)


class TestLinfDiamond:
    """A finite l-infinity sample can carry homology even though Cech == VR."""

    def test_h1_bar(self):
        cech = cech_filtration(DIAMOND, range(4))
        assert cech.births() == vr_filtration_of(DIAMOND, range(4)).births()
        (bar,) = compute_persistence(cech).bars(dim=1, positive_only=True)
        assert (bar.birth, bar.death) == (0.5, 1.0)

    def test_union_of_balls_misses_the_centre(self):
        # at t = 0.75 the origin is 1 away from every point: the four boxes form a ring
        P = np.array([[1, 0], [0, 1], [-1, 0], [0, -1]])
        assert np.abs(P).max(axis=1).min() > 0.75


class TestCsv:
    def test_round_trip(self, tmp_path):
        f = cech_filtration(QUARTERS, range(4))
        path = tmp_path / "f.csv"
        f.to_csv(path)
        g = FilteredComplex.from_csv(path, dim_cap=2)
        assert g.entries == f.entries
        assert path.read_text().splitlines()[4] == "1,0.125,0,1"


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_linf_cech_equals_vr(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 9))
    s = SpaceHandle.linf(rng.uniform(-1, 1, (n, 2)))
    assert cech_filtration(s, range(n), dim_cap=3).births() == vr_filtration_of(s, range(n), dim_cap=3).births()


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_cech_birth_bounds(seed):
    """VR birth <= Cech birth <= 2/sqrt(3) * VR birth for planar triangles."""
    rng = np.random.default_rng(seed)
    s = SpaceHandle.euclidean(rng.random((6, 2)))
    cech, vr = cech_filtration(s, range(6)), vr_filtration_of(s, range(6))
    assert check_inclusions(cech, vr, 2 / sqrt(3), tol=1e-9).ok
    assert cech.is_monotone()
