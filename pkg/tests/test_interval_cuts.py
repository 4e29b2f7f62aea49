"""
Tests for intervals, interval images and cut families.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from interval_cuts import (
    CutException,
    CutFamily,
    Interval,
    NotContinuous,
    NotInLu,
    NotNested,
    cuts_of,
    interval_image,
    interval_intersection,
    interval_leq,
    interval_meet,
    interval_union,
    tv_from_cuts,
    uniform_grid,
)
from tnorms import TnormSpec, ordinal_sum, tnorm_eval
from truth_value import point_tv, pointwise_max, triangle_tv

from conftest import CONTINUOUS, lu_members, spec_id, staircases, unit_dyadics


HALF = Fraction(1, 2)


@st.composite
def intervals(draw):
    lo, hi = sorted(draw(st.lists(unit_dyadics, min_size=2, max_size=2)))
    return Interval(lo, hi)


@st.composite
def ordered_pairs(draw):
    """Two intervals A, B with A preceding B."""
    a_lo, b_lo = sorted(draw(st.lists(unit_dyadics, min_size=2, max_size=2)))
    a_hi = max(a_lo, draw(unit_dyadics))
    b_hi = max(a_hi, b_lo, draw(unit_dyadics))
    return Interval(a_lo, a_hi), Interval(b_lo, b_hi)


class TestInterval:

    def test_validation(self):
        with pytest.raises(CutException):
            Interval(0.6, 0.4)
        with pytest.raises(CutException):
            Interval(-0.1, 0.4)
        with pytest.raises(CutException):
            Interval(0.5, 1.1)

    def test_image_under_continuous(self):
        a = Interval(0.5, 1.0)
        b = Interval(0.25, 0.5)
        assert interval_image(a, b, TnormSpec('product')) == Interval(0.125, 0.5)
        assert interval_image(a, b, TnormSpec('minimum')) == Interval(0.25, 0.5)
        assert interval_image(a, b, TnormSpec('lukasiewicz')) == Interval(0.0, 0.5)

    def test_image_under_ordinal_sum_is_exact(self):
        star = ordinal_sum([('1/5', '4/5', 'product')])
        a = Interval(Fraction(7, 10), Fraction(7, 10))
        image = interval_image(a, a, star)
        assert image.lo == image.hi == Fraction(1, 5) + Fraction(3, 5) * Fraction(25, 36)

    @pytest.mark.parametrize('kind', ['drastic', 'nilpotent_minimum'])
    def test_image_needs_continuity(self, kind):
        with pytest.raises(NotContinuous):
            interval_image(Interval(0, 1), Interval(0, 1), TnormSpec(kind))

    def test_meet_and_order(self):
        a = Interval(0.1, 0.6)
        b = Interval(0.3, 0.4)
        assert interval_meet(a, b) == Interval(0.1, 0.4)
        assert interval_leq(interval_meet(a, b), a)
        assert interval_leq(interval_meet(a, b), b)
        assert not interval_leq(a, b)
        assert not interval_leq(b, a)

    def test_intersection(self):
        assert interval_intersection([Interval(0, 0.5), Interval(0.25, 1)]) == Interval(0.25, 0.5)
        assert interval_intersection([Interval(0, 0.25), Interval(0.5, 1)]) is None
        with pytest.raises(CutException):
            interval_intersection([])

    def test_union(self):
        assert interval_union([Interval(0.5, 1), Interval(0, 0.5)]) == Interval(0, 1)
        assert interval_union([Interval(0, 0.25), Interval(0.5, 1)]) is None

    def test_uniform_grid(self):
        assert uniform_grid(4) == [Fraction(1, 4), HALF, Fraction(3, 4), Fraction(1)]
        with pytest.raises(CutException):
            uniform_grid(0)


class TestIntervalLaws:

    @given(intervals(), intervals(), intervals())
    @settings(max_examples=300, deadline=None)
    def test_leq_is_a_partial_order(self, a, b, c):
        assert interval_leq(a, a)
        if interval_leq(a, b) and interval_leq(b, a):
            assert a == b
        if interval_leq(a, b) and interval_leq(b, c):
            assert interval_leq(a, c)

    @given(intervals(), intervals())
    @settings(max_examples=300, deadline=None)
    def test_leq_is_meet_equals_left(self, a, b):
        assert interval_leq(a, b) == (interval_meet(a, b) == a)

    @pytest.mark.parametrize('star', CONTINUOUS, ids=spec_id)
    @given(pair=ordered_pairs(), c=intervals())
    @settings(max_examples=100, deadline=None)
    def test_image_is_monotone(self, star, pair, c):
        a, b = pair
        assert interval_leq(interval_image(a, c, star), interval_image(b, c, star))
        assert interval_leq(interval_image(c, a, star), interval_image(c, b, star))

    @given(st.lists(ordered_pairs(), min_size=1, max_size=4))
    @settings(max_examples=200, deadline=None)
    def test_intersection_and_union_keep_the_order(self, pairs):
        lower = [a for a, _ in pairs]
        upper = [b for _, b in pairs]
        low, high = interval_intersection(lower), interval_intersection(upper)
        if low is not None and high is not None:
            assert interval_leq(low, high)
        low, high = interval_union(lower), interval_union(upper)
        if low is not None and high is not None:
            assert interval_leq(low, high)

    @pytest.mark.parametrize('star', CONTINUOUS, ids=spec_id)
    @given(a=intervals(), b=intervals())
    @settings(max_examples=50, deadline=None)
    def test_image_matches_grid_search(self, star, a, b):
        xs = [a.lo + (a.hi - a.lo) * Fraction(k, 16) for k in range(17)]
        ys = [b.lo + (b.hi - b.lo) * Fraction(k, 16) for k in range(17)]
        values = [tnorm_eval(star, x, y) for x in xs for y in ys]
        image = interval_image(a, b, star)
        if star.kind == 'product':
            assert float(image.lo) == pytest.approx(float(min(values)), abs=1e-9)
            assert float(image.hi) == pytest.approx(float(max(values)), abs=1e-9)
        else:
            assert image.lo == min(values)
            assert image.hi == max(values)


class TestCutFamily:

    @pytest.mark.parametrize('grid', [
        [],
        [Fraction(1, 2)],
        [0, 1],
        [HALF, HALF, 1],
    ])
    def test_grid_validation(self, grid):
        with pytest.raises(CutException):
            CutFamily(grid, [Interval(0, 1)] * len(grid))

    def test_length_mismatch(self):
        with pytest.raises(CutException):
            CutFamily([HALF, 1], [Interval(0, 1)])

    def test_nesting(self):
        family = CutFamily([HALF, 1], [Interval(0.25, 0.5), Interval(0.2, 0.5)])
        assert not family.is_nested()
        assert family.first_nesting_failure() == 1
        with pytest.raises(NotNested):
            tv_from_cuts(family)

    def test_frame_and_dict(self):
        family = cuts_of(triangle_tv(0, HALF, 1), uniform_grid(4))
        frame = family.to_dataframe()
        assert list(frame.columns) == ['alpha', 'lo', 'hi']
        assert frame['lo'].tolist() == [0.125, 0.25, 0.375, 0.5]
        assert CutFamily.from_dict(family.to_dict()) == family
        floats = family.as_floats()
        assert CutFamily.from_dict(floats.to_dict()) == floats

    def test_from_dict_names_bad_entry(self):
        with pytest.raises(CutException, match=r'cuts\[0\]'):
            CutFamily.from_dict({'alpha_grid': [1], 'cuts': [{'lo': 0}]})

    def test_from_dict_rejects_unnested_cuts(self):
        data = {'alpha_grid': [0.5, 1], 'cuts': [{'lo': 0.25, 'hi': 0.5}, {'lo': 0.2, 'hi': 0.5}]}
        with pytest.raises(NotNested, match=r'cuts\[1\]'):
            CutFamily.from_dict(data)


class TestCutsOf:

    def test_triangle(self):
        family = cuts_of(triangle_tv(0, HALF, 1), [HALF, 1])
        assert family.cuts == (Interval(Fraction(1, 4), Fraction(3, 4)), Interval(HALF, HALF))

    def test_bimodal_is_rejected(self):
        f = pointwise_max(triangle_tv(0, 0.25, 0.5), triangle_tv(0.5, 0.75, 1))
        with pytest.raises(NotInLu):
            cuts_of(f, uniform_grid(8))

    @given(lu_members())
    @settings(max_examples=50, deadline=None)
    def test_cut_families_are_nested(self, f):
        assert cuts_of(f, uniform_grid(16)).is_nested()

    @given(lu_members())
    @settings(max_examples=50, deadline=None)
    def test_staircase_reproduces_cuts(self, f):
        grid = uniform_grid(16)
        family = cuts_of(f, grid)
        staircase = tv_from_cuts(family)
        assert staircase.properties().in_lu
        assert cuts_of(staircase, grid) == family

    @given(staircases())
    @settings(max_examples=30, deadline=None)
    def test_staircases_are_their_own_cut_picture(self, f):
        grid = uniform_grid(8)
        assert tv_from_cuts(cuts_of(f, grid)) == f

    def test_point_staircase(self):
        family = cuts_of(point_tv(HALF), uniform_grid(4))
        assert tv_from_cuts(family) == point_tv(HALF)
