"""
Interval cut module for the type-2 convolution toolkit.
Handles closed subintervals of [0,1], their images under continuous
t-norms, the componentwise order on intervals and nested cut families.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from tnorms import TnormSpec, tnorm_eval
from truth_value import (BadShape, Number, TruthValue, as_fraction, encode_number,
                          from_polyline)


logger = logging.getLogger(__name__)

Endpoint = Union[float, Fraction]


class CutException(Exception):
    """Custom exception for interval and cut family errors."""
    pass


class NotContinuous(CutException):
    """Interval image requested under a t-norm that is not continuous."""
    pass


class NotInLu(CutException):
    """A cut is empty or disconnected, so the input is not normal, convex and usc."""
    pass


class NotNested(CutException):
    """A cut family is not decreasing in alpha."""
    pass


class GridMismatch(CutException):
    """Two cut families live on different alpha grids."""
    pass


@dataclass(frozen=True)
class Interval:
    """Nonempty closed subinterval [lo, hi] of [0, 1]."""
    lo: Endpoint
    hi: Endpoint

    def __post_init__(self):
        if self.lo > self.hi:
            raise CutException(f"empty interval [{self.lo}, {self.hi}]")
        if self.lo < 0 or self.hi > 1:
            raise CutException(f"interval [{self.lo}, {self.hi}] leaves [0, 1]")

    def contains(self, other: 'Interval') -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def as_float(self) -> 'Interval':
        return Interval(float(self.lo), float(self.hi))

    def to_dict(self) -> Dict:
        return {'lo': _encode(self.lo), 'hi': _encode(self.hi)}

    def __str__(self) -> str:
        return f"[{float(self.lo):g}, {float(self.hi):g}]"


def _encode(value: Endpoint):
    if isinstance(value, Fraction):
        return encode_number(value)
    return float(value)


def interval_image(a: Interval, b: Interval, star: TnormSpec) -> Interval:
    """
    Image {x*y : x in A, y in B} under a continuous t-norm.

    Args:
        a: First interval
        b: Second interval
        star: Continuous t-norm

    Returns:
        [A.lo * B.lo, A.hi * B.hi]
    """
    if not star.is_continuous:
        raise NotContinuous(f"{star.name} is {star.declared_class}; the image may not be an interval")
    return Interval(tnorm_eval(star, a.lo, b.lo), tnorm_eval(star, a.hi, b.hi))


def interval_meet(a: Interval, b: Interval) -> Interval:
    """A^B = {min(x, y) : x in A, y in B}."""
    return Interval(min(a.lo, b.lo), min(a.hi, b.hi))


def interval_leq(a: Interval, b: Interval) -> bool:
    """A precedes B when A^B = A."""
    return a.lo <= b.lo and a.hi <= b.hi


def interval_intersection(intervals: Iterable[Interval]) -> Optional[Interval]:
    """Common part of a finite family, None when empty."""
    intervals = list(intervals)
    if not intervals:
        raise CutException("intersection of an empty family")
    lo = max(i.lo for i in intervals)
    hi = min(i.hi for i in intervals)
    return Interval(lo, hi) if lo <= hi else None


def interval_union(intervals: Iterable[Interval]) -> Optional[Interval]:
    """Union of a finite family when it is an interval, None otherwise."""
    ordered = sorted(intervals, key=lambda i: (i.lo, i.hi))
    if not ordered:
        raise CutException("union of an empty family")
    lo, hi = ordered[0].lo, ordered[0].hi
    for item in ordered[1:]:
        if item.lo > hi:
            return None
        hi = max(hi, item.hi)
    return Interval(lo, hi)


def uniform_grid(m: int) -> List[Fraction]:
    """Levels i/m for i = 1..m."""
    if m < 1:
        raise CutException(f"grid needs at least one level, got m={m}")
    return [Fraction(i, m) for i in range(1, m + 1)]


class CutFamily:
    """
    Nested closed cuts indexed by a strictly increasing alpha grid ending at 1.

    Attributes:
        alpha_grid: Levels alpha_1 < ... < alpha_m = 1
        cuts: One Interval per level
    """

    def __init__(self, alpha_grid: Sequence[Number], cuts: Sequence[Interval]):
        grid = tuple(as_fraction(a, 'alpha_grid') for a in alpha_grid)
        if not grid:
            raise CutException("alpha_grid: empty")
        if grid[-1] != 1:
            raise CutException("alpha_grid: last level must be 1")
        if grid[0] <= 0:
            raise CutException("alpha_grid: levels must be positive")
        for low, high in zip(grid, grid[1:]):
            if not low < high:
                raise CutException(f"alpha_grid: not strictly increasing at {float(high):g}")
        if len(cuts) != len(grid):
            raise CutException(f"cuts: expected {len(grid)} entries, got {len(cuts)}")
        self.alpha_grid = grid
        self.cuts = tuple(cuts)

    def __len__(self) -> int:
        return len(self.alpha_grid)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CutFamily):
            return NotImplemented
        return self.alpha_grid == other.alpha_grid and self.cuts == other.cuts

    def __repr__(self) -> str:
        return f"CutFamily(levels={len(self)}, top={self.cuts[-1]})"

    def is_nested(self) -> bool:
        return all(low.contains(high) for low, high in zip(self.cuts, self.cuts[1:]))

    def first_nesting_failure(self) -> Optional[int]:
        for index, (low, high) in enumerate(zip(self.cuts, self.cuts[1:])):
            if not low.contains(high):
                return index + 1
        return None

    def as_floats(self) -> 'CutFamily':
        return CutFamily(self.alpha_grid, [c.as_float() for c in self.cuts])

    def endpoints(self):
        """(lo, hi) float arrays, one entry per level."""
        lo = np.array([float(c.lo) for c in self.cuts])
        hi = np.array([float(c.hi) for c in self.cuts])
        return lo, hi

    def to_dataframe(self) -> pd.DataFrame:
        lo, hi = self.endpoints()
        return pd.DataFrame({
            'alpha': [float(a) for a in self.alpha_grid],
            'lo': lo,
            'hi': hi,
        })

    def to_dict(self) -> Dict:
        return {
            'alpha_grid': [encode_number(a) for a in self.alpha_grid],
            'cuts': [c.to_dict() for c in self.cuts],
        }

    @classmethod
    def from_dict(cls, data: Dict) -> 'CutFamily':
        if not isinstance(data, dict):
            raise CutException("CutFamily JSON must be an object")
        for key in ('alpha_grid', 'cuts'):
            if not isinstance(data.get(key), list):
                raise CutException(f"{key}: missing or not a list")
        cuts = []
        for index, item in enumerate(data['cuts']):
            if not isinstance(item, dict) or 'lo' not in item or 'hi' not in item:
                raise CutException(f"cuts[{index}]: needs lo and hi")
            try:
                lo = as_fraction(item['lo'], f'cuts[{index}].lo')
                hi = as_fraction(item['hi'], f'cuts[{index}].hi')
            except BadShape as e:
                raise CutException(str(e))
            cuts.append(Interval(_restore(item['lo'], lo), _restore(item['hi'], hi)))
        family = cls(data['alpha_grid'], cuts)
        failure = family.first_nesting_failure()
        if failure is not None:
            raise NotNested(f"cuts[{failure}]: not inside the cut below it")
        return family


def _restore(raw, exact: Fraction) -> Endpoint:
    return float(raw) if isinstance(raw, float) else exact


def cuts_of(f: TruthValue, alpha_grid: Sequence[Number]) -> CutFamily:
    """
    Exact closed cuts of f at every grid level.

    Args:
        f: Normal, convex, usc truth value
        alpha_grid: Strictly increasing levels ending at 1

    Returns:
        CutFamily with Fraction endpoints
    """
    cuts = []
    for alpha in alpha_grid:
        spans = f.alpha_cut(alpha)
        if len(spans) != 1:
            raise NotInLu(f"cut at alpha={float(as_fraction(alpha)):g} has {len(spans)} components")
        span = spans[0]
        if not span.closed:
            raise NotInLu(f"cut at alpha={float(as_fraction(alpha)):g} is not closed: {span}")
        cuts.append(Interval(span.lo, span.hi))
    return CutFamily(alpha_grid, cuts)


def tv_from_cuts(family: CutFamily) -> TruthValue:
    """
    The usc staircase x -> max{alpha : x in cut(alpha)}, 0 outside every cut.

    Args:
        family: Nested cut family

    Returns:
        Piecewise-constant TruthValue whose cuts on the same grid are family
    """
    failure = family.first_nesting_failure()
    if failure is not None:
        raise NotNested(
            f"cut at alpha={float(family.alpha_grid[failure]):g} is not inside the cut below it"
        )

    levels = family.alpha_grid
    cuts = [Interval(as_fraction(c.lo), as_fraction(c.hi)) for c in family.cuts]
    vertices = [(0, 0), (cuts[0].lo, 0)]
    for index, cut in enumerate(cuts):
        if index:
            vertices.append((cut.lo, levels[index - 1]))
        vertices.append((cut.lo, levels[index]))
    for index in range(len(cuts) - 1, -1, -1):
        vertices.append((cuts[index].hi, levels[index]))
        below = levels[index - 1] if index else 0
        vertices.append((cuts[index].hi, below))
    vertices.append((1, 0))
    return from_polyline(vertices)
