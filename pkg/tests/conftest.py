"""
Shared strategies and fixtures for the test suite.

Truth values are generated with dyadic knots so every law can be checked
with exact rational arithmetic.
"""

import logging
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from interval_cuts import CutFamily, Interval, tv_from_cuts
from tnorms import TnormSpec, ordinal_sum
from truth_value import interval_tv, point_tv, trapezoid_tv, triangle_tv


DENOMINATOR = 8

CONTINUOUS = [
    TnormSpec('minimum'),
    TnormSpec('product'),
    TnormSpec('lukasiewicz'),
    ordinal_sum([('1/5', '4/5', 'product')]),
]

RIGHT_CONTINUOUS = [
    TnormSpec('minimum'),
    TnormSpec('product'),
    TnormSpec('lukasiewicz'),
    TnormSpec('drastic'),
]


def spec_id(spec: TnormSpec) -> str:
    return spec.kind


unit_dyadics = st.integers(min_value=0, max_value=1024).map(lambda k: Fraction(k, 1024))


def _knots(draw, count: int, denominator: int):
    picks = draw(st.lists(st.integers(min_value=0, max_value=denominator),
                          min_size=count, max_size=count))
    return [Fraction(k, denominator) for k in sorted(picks)]


@st.composite
def staircases(draw, denominator: int = DENOMINATOR):
    levels = draw(st.integers(min_value=1, max_value=3))
    inner = draw(st.lists(st.integers(min_value=1, max_value=denominator - 1),
                          min_size=levels - 1, max_size=levels - 1, unique=True))
    alphas = [Fraction(k, denominator) for k in sorted(inner)] + [Fraction(1)]
    ends = _knots(draw, 2 * len(alphas), denominator)
    lows = ends[:len(alphas)]
    highs = ends[len(alphas):][::-1]
    return tv_from_cuts(CutFamily(alphas, [Interval(lo, hi) for lo, hi in zip(lows, highs)]))


@st.composite
def lu_members(draw, denominator: int = DENOMINATOR):
    """Normal, convex, usc truth values of every sampled shape."""
    shape = draw(st.sampled_from(['point', 'interval', 'triangle', 'trapezoid', 'staircase']))
    if shape == 'point':
        return point_tv(*_knots(draw, 1, denominator))
    if shape == 'interval':
        return interval_tv(*_knots(draw, 2, denominator))
    if shape == 'triangle':
        return triangle_tv(*_knots(draw, 3, denominator))
    if shape == 'trapezoid':
        return trapezoid_tv(*_knots(draw, 4, denominator))
    return draw(staircases(denominator))


@pytest.fixture(autouse=True)
def reset_root_logger():
    """The CLI installs handlers on captured streams; drop them between tests."""
    yield
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
