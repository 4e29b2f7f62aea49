"""
Order module for the type-2 convolution toolkit.
Handles the convolution order on normal convex usc truth values, decided
through the exact min/min meet and, independently, cut by cut.
"""

import logging
from fractions import Fraction
from typing import List

from convolution import meet_min
from interval_cuts import (CutFamily, GridMismatch, NotInLu, cuts_of, interval_leq,
                           uniform_grid)
from truth_value import TruthValue


logger = logging.getLogger(__name__)

__all__ = [
    'OrderException',
    'GridMismatch',
    'leq_convolution',
    'leq_cutwise',
    'order_grid',
    'leq_by_cuts',
]


class OrderException(Exception):
    """Custom exception for order comparison errors."""
    pass


def leq_convolution(f: TruthValue, g: TruthValue) -> bool:
    """f precedes g when the min/min meet of f and g is f itself."""
    return meet_min(f, g) == f


def leq_cutwise(fc: CutFamily, gc: CutFamily) -> bool:
    """
    Compare two cut families level by level.

    Args:
        fc: Cuts of the left operand
        gc: Cuts of the right operand on the same grid

    Returns:
        True when every cut of fc precedes the matching cut of gc
    """
    if fc.alpha_grid != gc.alpha_grid:
        raise GridMismatch(f"alpha grids differ ({len(fc)} vs {len(gc)} levels)")
    return all(interval_leq(a, b) for a, b in zip(fc.cuts, gc.cuts))


def _closed_cut(f: TruthValue, alpha: Fraction):
    spans = f.alpha_cut(alpha)
    if len(spans) != 1 or not spans[0].closed:
        raise NotInLu(f"cut at alpha={float(alpha):g} is not one closed interval")
    return spans[0]


def _endpoint_gaps(f: TruthValue, g: TruthValue, alpha: Fraction):
    a = _closed_cut(f, alpha)
    b = _closed_cut(g, alpha)
    return a.lo - b.lo, a.hi - b.hi


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def order_grid(f: TruthValue, g: TruthValue, m: int = 256) -> List[Fraction]:
    """
    Alpha grid on which comparing cuts decides the order exactly.

    Starts from the uniform levels and every critical level of f and g.
    Between consecutive levels the cut endpoints of both functions are
    affine in alpha, so their differences are too; wherever a difference
    changes sign inside a gap a level is added where the sign still
    matches the lower end.

    Args:
        f: Normal, convex, usc truth value
        g: Normal, convex, usc truth value
        m: Number of uniform levels

    Returns:
        Strictly increasing levels ending at 1
    """
    base = set(uniform_grid(m))
    base.update(f.critical_levels())
    base.update(g.critical_levels())
    levels = sorted(level for level in base if 0 < level <= 1)

    extra = []
    previous = Fraction(0)
    for level in levels:
        middle = (previous + level) / 2
        at_mid = _endpoint_gaps(f, g, middle)
        at_end = _endpoint_gaps(f, g, level)
        for d_mid, d_end in zip(at_mid, at_end):
            d_start = 2 * d_mid - d_end
            if d_start != 0 and _sign(d_start) != _sign(d_end):
                crossing = previous + (level - previous) * d_start / (d_start - d_end)
                extra.append((previous + crossing) / 2)
        previous = level

    if extra:
        logger.debug(f"order grid refined with {len(extra)} sign-change levels")
    return sorted(set(levels) | set(extra))


def leq_by_cuts(f: TruthValue, g: TruthValue, m: int = 256) -> bool:
    """Cutwise order test on the grid returned by order_grid."""
    try:
        grid = order_grid(f, g, m)
        return leq_cutwise(cuts_of(f, grid), cuts_of(g, grid))
    except NotInLu as e:
        raise OrderException(f"cutwise order needs inputs in L_u: {e}")
