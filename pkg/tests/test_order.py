"""
Tests for the convolution order.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from convolution import meet_min
from interval_cuts import GridMismatch, cuts_of, uniform_grid
from order import OrderException, leq_by_cuts, leq_convolution, leq_cutwise, order_grid
from truth_value import (interval_tv, point_tv, pointwise_max, trapezoid_tv,
                         triangle_tv)

from conftest import lu_members


HALF = Fraction(1, 2)


class TestLeqConvolution:

    def test_points_follow_the_unit_interval(self):
        low, high = point_tv(Fraction(1, 4)), point_tv(HALF)
        assert leq_convolution(low, high)
        assert not leq_convolution(high, low)

    def test_intervals(self):
        a = interval_tv(0.125, 0.375)
        b = interval_tv(0.25, 0.5)
        assert leq_convolution(a, b)
        assert not leq_convolution(b, a)

    def test_incomparable(self):
        wide = trapezoid_tv(0, 0.25, 0.75, 1)
        narrow = point_tv(HALF)
        assert not leq_convolution(wide, narrow)
        assert not leq_convolution(narrow, wide)

    @given(lu_members())
    @settings(max_examples=30, deadline=None)
    def test_reflexive(self, f):
        assert leq_convolution(f, f)

    @given(lu_members(), lu_members())
    @settings(max_examples=40, deadline=None)
    def test_meet_is_below_both(self, f, g):
        meet = meet_min(f, g)
        assert leq_convolution(meet, f)
        assert leq_convolution(meet, g)

    @given(lu_members(), lu_members())
    @settings(max_examples=40, deadline=None)
    def test_antisymmetric(self, f, g):
        meet = meet_min(f, g)
        assert leq_convolution(meet, meet_min(g, f)) and leq_convolution(meet_min(g, f), meet)
        assert meet == meet_min(g, f)
        if leq_convolution(f, g) and leq_convolution(g, f):
            assert f == g

    @given(lu_members(), lu_members(), lu_members())
    @settings(max_examples=40, deadline=None)
    def test_transitive(self, f, g, h):
        low = meet_min(meet_min(f, g), h)
        mid = meet_min(f, g)
        assert leq_convolution(low, mid) and leq_convolution(mid, f)
        assert leq_convolution(low, f)
        if leq_convolution(f, g) and leq_convolution(g, h):
            assert leq_convolution(f, h)


class TestCutwise:

    @given(lu_members(), lu_members())
    @settings(max_examples=60, deadline=None)
    def test_cutwise_agrees_with_meet(self, f, g):
        assert leq_by_cuts(f, g, m=16) == leq_convolution(f, g)

    @given(lu_members(), lu_members())
    @settings(max_examples=30, deadline=None)
    def test_cutwise_agrees_on_comparable_pairs(self, f, g):
        meet = meet_min(f, g)
        assert leq_by_cuts(meet, g, m=16)
        assert leq_by_cuts(meet, f, m=16) == leq_convolution(meet, f)

    def test_sign_change_inside_a_gap_is_caught(self):
        # left endpoints cross at alpha = 1/2; f is only ahead below it
        f = triangle_tv(0.125, 0.375, 1)
        g = triangle_tv(0, 0.5, 1)
        assert leq_cutwise(cuts_of(f, [1]), cuts_of(g, [1]))
        assert not leq_by_cuts(f, g, m=1)
        assert not leq_convolution(f, g)

    def test_grid_mismatch(self):
        f = triangle_tv(0, HALF, 1)
        with pytest.raises(GridMismatch):
            leq_cutwise(cuts_of(f, uniform_grid(8)), cuts_of(f, uniform_grid(16)))

    def test_order_grid_contains_critical_levels(self):
        f = pointwise_max(triangle_tv(0, HALF, 1), interval_tv(0.25, 0.75))
        g = point_tv(HALF)
        grid = order_grid(f, g, m=4)
        assert f.critical_levels() == [Fraction(1, 2), 1]
        assert grid[-1] == 1
        assert all(low < high for low, high in zip(grid, grid[1:]))
        assert set(uniform_grid(4)) <= set(grid)

    def test_non_lu_input(self):
        bimodal = pointwise_max(triangle_tv(0, 0.25, 0.5), triangle_tv(0.5, 0.75, 1))
        with pytest.raises(OrderException):
            leq_by_cuts(bimodal, point_tv(HALF), m=8)
