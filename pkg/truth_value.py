"""
Fuzzy truth value module for the type-2 convolution toolkit.
Handles the exact piecewise-affine representation of maps [0,1] -> [0,1],
their shape predicates, level sets, sup-envelopes and the constructors
used throughout the toolkit.
"""

import bisect
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd


logger = logging.getLogger(__name__)

Number = Union[int, float, str, Fraction]
Knot = Tuple[Fraction, Fraction, Fraction, Fraction]  # (x, left limit, value, right limit)

ZERO = Fraction(0)
ONE = Fraction(1)


class TruthValueException(Exception):
    """Custom exception for truth value errors."""
    pass


class BadShape(TruthValueException):
    """Constructor preconditions or representation invariants violated."""
    pass


def as_fraction(value: Number, field: str = 'value') -> Fraction:
    """
    Convert a number, or a "p/q" string, to an exact Fraction.

    Floats are taken at their exact binary value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise BadShape(f"{field}: expected a number, got {value!r}")
    try:
        if isinstance(value, (int, float)):
            if isinstance(value, float) and not np.isfinite(value):
                raise BadShape(f"{field}: {value!r} is not finite")
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise BadShape(f"{field}: cannot parse {value!r} as a number")
    raise BadShape(f"{field}: expected a number, got {type(value).__name__}")


def encode_number(value: Fraction) -> Union[float, str]:
    """Float when exactly representable, otherwise a "p/q" string."""
    as_float = float(value)
    if Fraction(as_float) == value:
        return as_float
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Span:
    """
    One connected component of a level set.

    Attributes:
        lo: Left endpoint
        hi: Right endpoint
        lo_closed: Whether lo belongs to the set
        hi_closed: Whether hi belongs to the set
    """
    lo: Fraction
    hi: Fraction
    lo_closed: bool = True
    hi_closed: bool = True

    @property
    def closed(self) -> bool:
        return self.lo_closed and self.hi_closed

    def contains(self, x: Number) -> bool:
        x = as_fraction(x)
        above = x > self.lo or (x == self.lo and self.lo_closed)
        below = x < self.hi or (x == self.hi and self.hi_closed)
        return above and below

    def to_dict(self) -> Dict:
        return {
            'lo': encode_number(self.lo),
            'hi': encode_number(self.hi),
            'lo_closed': self.lo_closed,
            'hi_closed': self.hi_closed,
        }

    def __str__(self) -> str:
        left = '[' if self.lo_closed else '('
        right = ']' if self.hi_closed else ')'
        return f"{left}{float(self.lo):g}, {float(self.hi):g}{right}"


@dataclass(frozen=True)
class PropertyReport:
    """Shape predicates of a truth value; witness locates the first failure."""
    normal: bool
    convex: bool
    usc: bool
    attains_one: bool
    witness: Optional[Fraction] = None

    @property
    def in_lu(self) -> bool:
        return self.normal and self.convex and self.usc

    def to_dict(self) -> Dict:
        return {
            'normal': self.normal,
            'convex': self.convex,
            'usc': self.usc,
            'attains_one': self.attains_one,
            'witness': None if self.witness is None else encode_number(self.witness),
        }


class TruthValue:
    """
    Exact piecewise-affine map [0,1] -> [0,1] with jumps at breakpoints.

    segments[i] is the affine piece on the open interval
    (breakpoints[i], breakpoints[i+1]), given by its one-sided limits
    (value approaching the left end, value approaching the right end).
    Instances are canonical: removable breakpoints are merged away, so
    equality of instances is equality of functions.
    """

    __slots__ = ('_xs', '_values', '_segments', '_hash')

    def __init__(self, breakpoints: Sequence[Number], point_values: Sequence[Number],
                 segments: Sequence[Tuple[Number, Number]]):
        xs = [as_fraction(x, 'breakpoints') for x in breakpoints]
        values = [as_fraction(v, 'point_values') for v in point_values]
        segs = [(as_fraction(s[0], 'segments'), as_fraction(s[1], 'segments')) for s in segments]

        if len(xs) < 2:
            raise BadShape("breakpoints: need at least 0 and 1")
        if len(values) != len(xs):
            raise BadShape(f"point_values: expected {len(xs)} entries, got {len(values)}")
        if len(segs) != len(xs) - 1:
            raise BadShape(f"segments: expected {len(xs) - 1} entries, got {len(segs)}")
        if xs[0] != 0 or xs[-1] != 1:
            raise BadShape("breakpoints: must start at 0 and end at 1")
        for left, right in zip(xs, xs[1:]):
            if not left < right:
                raise BadShape(f"breakpoints: not strictly increasing at {float(right):g}")
        for v in values:
            if not 0 <= v <= 1:
                raise BadShape(f"point_values: {float(v):g} outside [0, 1]")
        for left, right in segs:
            if not (0 <= left <= 1 and 0 <= right <= 1):
                raise BadShape(f"segments: limit values ({float(left):g}, {float(right):g}) outside [0, 1]")

        xs, values, segs = self._canonical(xs, values, segs)
        self._xs = tuple(xs)
        self._values = tuple(values)
        self._segments = tuple(segs)
        self._hash = hash((self._xs, self._values, self._segments))

    @staticmethod
    def _canonical(xs, values, segs):
        out_x = [xs[0]]
        out_v = [values[0]]
        out_s = []
        current = segs[0]
        for i in range(1, len(xs) - 1):
            nxt = segs[i]
            slope_in = (current[1] - current[0]) / (xs[i] - out_x[-1])
            slope_out = (nxt[1] - nxt[0]) / (xs[i + 1] - xs[i])
            if current[1] == values[i] == nxt[0] and slope_in == slope_out:
                current = (current[0], nxt[1])
                continue
            out_s.append(current)
            out_x.append(xs[i])
            out_v.append(values[i])
            current = nxt
        out_s.append(current)
        out_x.append(xs[-1])
        out_v.append(values[-1])
        return out_x, out_v, out_s

    # ------------------------------------------------------------------
    # accessors

    @property
    def breakpoints(self) -> Tuple[Fraction, ...]:
        return self._xs

    @property
    def point_values(self) -> Tuple[Fraction, ...]:
        return self._values

    @property
    def segments(self) -> Tuple[Tuple[Fraction, Fraction], ...]:
        return self._segments

    def knots(self) -> List[Knot]:
        """(x, left limit, value, right limit) at every breakpoint."""
        return [self._knot(i) for i in range(len(self._xs))]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruthValue):
            return NotImplemented
        return (self._xs, self._values, self._segments) == (other._xs, other._values, other._segments)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        parts = ', '.join(f"{float(x):g}:{float(v):g}" for x, v in zip(self._xs, self._values))
        return f"TruthValue({parts})"

    # ------------------------------------------------------------------
    # evaluation

    def limits(self, x: Number) -> Tuple[Fraction, Fraction, Fraction]:
        """(left limit, value, right limit) at an arbitrary point x."""
        x = as_fraction(x, 'x')
        i = bisect.bisect_left(self._xs, x)
        if i < len(self._xs) and self._xs[i] == x:
            _, left, v, right = self._knot(i)
            return left, v, right
        if i == 0 or i == len(self._xs):
            raise TruthValueException(f"x={float(x):g} outside [0, 1]")
        v = self._interpolate(i - 1, x)
        return v, v, v

    def _knot(self, i: int) -> Knot:
        k = len(self._xs) - 1
        v = self._values[i]
        left = self._segments[i - 1][1] if i > 0 else v
        right = self._segments[i][0] if i < k else v
        return self._xs[i], left, v, right

    def _interpolate(self, seg: int, x: Fraction) -> Fraction:
        x0, x1 = self._xs[seg], self._xs[seg + 1]
        left, right = self._segments[seg]
        return left + (right - left) * (x - x0) / (x1 - x0)

    def eval(self, x: Number) -> Fraction:
        """
        Exact value at x.

        Args:
            x: Point in [0, 1]

        Returns:
            Breakpoint value when x is a breakpoint, affine interpolation otherwise
        """
        x = as_fraction(x, 'x')
        if not 0 <= x <= 1:
            raise TruthValueException(f"x={float(x):g} outside [0, 1]")
        i = bisect.bisect_left(self._xs, x)
        if self._xs[i] == x:
            return self._values[i]
        return self._interpolate(i - 1, x)

    def __call__(self, x: Number) -> Fraction:
        return self.eval(x)

    def eval_array(self, xs) -> np.ndarray:
        """Float evaluation on an array of points in [0, 1]."""
        xs = np.asarray(xs, dtype=float)
        bx = np.array([float(x) for x in self._xs])
        bv = np.array([float(v) for v in self._values])
        sl = np.array([float(s[0]) for s in self._segments])
        sr = np.array([float(s[1]) for s in self._segments])

        seg = np.clip(np.searchsorted(bx, xs, side='right') - 1, 0, len(sl) - 1)
        t = (xs - bx[seg]) / (bx[seg + 1] - bx[seg])
        inner = sl[seg] + (sr[seg] - sl[seg]) * t

        pos = np.clip(np.searchsorted(bx, xs, side='left'), 0, len(bx) - 1)
        on_break = bx[pos] == xs
        return np.where(on_break, bv[pos], inner)

    def sample(self, n: int) -> pd.DataFrame:
        """Values on the uniform grid k/n as an (x, value) frame."""
        xs = np.arange(n + 1) / n
        return pd.DataFrame({'x': xs, 'value': self.eval_array(xs)})

    # ------------------------------------------------------------------
    # predicates

    def supremum(self) -> Fraction:
        best = ZERO
        for _, left, v, right in self.knots():
            best = max(best, left, v, right)
        return best

    def properties(self) -> PropertyReport:
        """
        Decide normality, convexity and upper semicontinuity exactly.

        Returns:
            PropertyReport with the location of the first violated property
        """
        knots = self.knots()
        normal = self.supremum() == 1
        attains_one = any(v == 1 for v in self._values) or any(s == (ONE, ONE) for s in self._segments)

        usc = True
        usc_witness = None
        for x, left, v, right in knots:
            if v < left or v < right:
                usc = False
                usc_witness = x
                break

        # value sequence along [0,1]: one-sided limits and point values
        seq = []
        where = []
        last = len(knots) - 1
        for i, (x, left, v, right) in enumerate(knots):
            if i > 0:
                seq.append(left)
                where.append(x)
            seq.append(v)
            where.append(x)
            if i < last:
                seq.append(right)
                where.append(x)

        prefix = [ZERO] * len(seq)
        running = Fraction(-1)
        for j, s in enumerate(seq):
            prefix[j] = running
            running = max(running, s)
        convex = True
        convex_witness = None
        running = Fraction(-1)
        for j in range(len(seq) - 1, -1, -1):
            if prefix[j] > seq[j] and running > seq[j]:
                convex = False
                convex_witness = where[j]
            running = max(running, seq[j])

        witness = None
        if not usc:
            witness = usc_witness
        elif not convex:
            witness = convex_witness
        elif not normal:
            witness = knots[0][0]
        return PropertyReport(normal, convex, usc, attains_one, witness)

    def critical_levels(self) -> List[Fraction]:
        """All limit and point values in (0, 1], sorted."""
        levels = set()
        for _, left, v, right in self.knots():
            levels.update((left, v, right))
        return sorted(level for level in levels if level > 0)

    # ------------------------------------------------------------------
    # level sets

    def _level_set(self, alpha: Fraction, strict: bool) -> List[Span]:
        def keeps(value):
            return value > alpha if strict else value >= alpha

        pieces = []
        k = len(self._xs) - 1
        for i in range(k + 1):
            x = self._xs[i]
            if keeps(self._values[i]):
                pieces.append(Span(x, x, True, True))
            if i == k:
                break
            x1 = self._xs[i + 1]
            left, right = self._segments[i]
            if keeps(left) and keeps(right):
                pieces.append(Span(x, x1, False, False))
            elif keeps(left) or keeps(right):
                crossing = x + (alpha - left) / (right - left) * (x1 - x)
                if keeps(left):
                    if crossing > x:
                        pieces.append(Span(x, crossing, False, not strict))
                elif crossing < x1:
                    pieces.append(Span(crossing, x1, not strict, False))

        merged: List[Span] = []
        for piece in pieces:
            if merged:
                prev = merged[-1]
                if prev.hi == piece.lo and (prev.hi_closed or piece.lo_closed):
                    merged[-1] = Span(prev.lo, piece.hi, prev.lo_closed, piece.hi_closed)
                    continue
            merged.append(piece)
        return merged

    def alpha_cut(self, alpha: Number) -> List[Span]:
        """
        The set {x : f(x) >= alpha} as maximal components.

        The 0-cut is all of [0, 1].
        """
        alpha = as_fraction(alpha, 'alpha')
        if alpha <= 0:
            return [Span(ZERO, ONE)]
        if alpha > 1:
            return []
        return self._level_set(alpha, strict=False)

    def strong_cut(self, alpha: Number) -> List[Span]:
        """The set {x : f(x) > alpha} with per-endpoint openness."""
        alpha = as_fraction(alpha, 'alpha')
        if alpha >= 1:
            return []
        if alpha < 0:
            return [Span(ZERO, ONE)]
        return self._level_set(alpha, strict=True)

    # ------------------------------------------------------------------
    # sups

    def sup_between(self, lo: Number, hi: Number) -> Fraction:
        """Exact sup of f over the closed interval [lo, hi]."""
        lo = as_fraction(lo, 'lo')
        hi = as_fraction(hi, 'hi')
        if lo > hi:
            raise TruthValueException(f"empty interval [{float(lo):g}, {float(hi):g}]")
        best = max(self.eval(lo), self.eval(hi))
        if lo == hi:
            return best
        best = max(best, self.limits(lo)[2], self.limits(hi)[0])
        start = bisect.bisect_right(self._xs, lo)
        stop = bisect.bisect_left(self._xs, hi)
        for i in range(start, stop):
            _, left, v, right = self._knot(i)
            best = max(best, left, v, right)
        return best

    def right_sup_envelope(self) -> 'TruthValue':
        """x -> sup{f(y) : y >= x}, nonincreasing."""
        knots_in = self.knots()
        k = len(knots_in) - 1
        x_last, _, v_last, _ = knots_in[k]

        # built right to left, reversed at the end
        out: List[Knot] = [(x_last, ZERO, v_last, v_last)]
        tail = v_last
        for i in range(k - 1, -1, -1):
            x, _, v, _ = knots_in[i]
            x1 = knots_in[i + 1][0]
            left, right = self._segments[i]
            ceiling = max(tail, right)
            nx, _, nv, nr = out[-1]
            out[-1] = (nx, ceiling, nv, nr)
            if left > ceiling > right:
                crossing = x + (left - ceiling) / (left - right) * (x1 - x)
                out.append((crossing, ceiling, ceiling, ceiling))
            start_right = max(left, ceiling)
            value = max(v, start_right)
            out.append((x, ZERO, value, start_right))
            tail = value

        out.reverse()
        x0, _, v0, r0 = out[0]
        out[0] = (x0, v0, v0, r0)
        return _from_knots(out)

    def left_sup_envelope(self) -> 'TruthValue':
        """x -> sup{f(y) : y <= x}, nondecreasing."""
        return _reflect(_reflect(self).right_sup_envelope())

    # ------------------------------------------------------------------
    # serialization

    def to_dict(self) -> Dict:
        return {
            'breakpoints': [encode_number(x) for x in self._xs],
            'point_values': [encode_number(v) for v in self._values],
            'segments': [{'left_val': encode_number(left), 'right_val': encode_number(right)}
                         for left, right in self._segments],
        }

    @classmethod
    def from_dict(cls, data: Dict) -> 'TruthValue':
        """
        Build a truth value from its JSON form.

        Args:
            data: {"breakpoints": [...], "point_values": [...],
                   "segments": [{"left_val": r, "right_val": r}, ...]}

        Returns:
            Canonical TruthValue
        """
        if not isinstance(data, dict):
            raise BadShape("TruthValue JSON must be an object")
        for key in ('breakpoints', 'point_values', 'segments'):
            if key not in data:
                raise BadShape(f"{key}: missing")
            if not isinstance(data[key], list):
                raise BadShape(f"{key}: must be a list")
        segments = []
        for index, item in enumerate(data['segments']):
            if not isinstance(item, dict) or 'left_val' not in item or 'right_val' not in item:
                raise BadShape(f"segments[{index}]: needs left_val and right_val")
            segments.append((as_fraction(item['left_val'], f'segments[{index}].left_val'),
                             as_fraction(item['right_val'], f'segments[{index}].right_val')))
        return cls(data['breakpoints'], data['point_values'], segments)


# ----------------------------------------------------------------------
# construction helpers

def _from_knots(knots: Sequence[Knot]) -> TruthValue:
    xs = [kn[0] for kn in knots]
    values = [kn[2] for kn in knots]
    segments = [(knots[j][3], knots[j + 1][1]) for j in range(len(knots) - 1)]
    return TruthValue(xs, values, segments)


def _reflect(f: TruthValue) -> TruthValue:
    knots = [(ONE - x, right, v, left) for x, left, v, right in reversed(f.knots())]
    return _from_knots(knots)


def from_polyline(vertices: Sequence[Tuple[Number, Number]]) -> TruthValue:
    """
    Build a truth value from a left-to-right vertex list.

    Repeated x coordinates describe a jump: the first y is the left limit,
    the last y the right limit and the largest y the value at x.

    Args:
        vertices: (x, y) pairs with nondecreasing x, starting at 0 and ending at 1

    Returns:
        TruthValue
    """
    groups: List[Tuple[Fraction, List[Fraction]]] = []
    for x, y in vertices:
        x = as_fraction(x, 'x')
        y = as_fraction(y, 'y')
        if groups and groups[-1][0] == x:
            groups[-1][1].append(y)
        else:
            if groups and x < groups[-1][0]:
                raise BadShape(f"vertices: x decreases at {float(x):g}")
            groups.append((x, [y]))
    knots = [(x, ys[0], max(ys), ys[-1]) for x, ys in groups]
    return _from_knots(knots)


def _unit(value: Number, field: str, open_interval: bool = False) -> Fraction:
    value = as_fraction(value, field)
    if open_interval and not 0 < value < 1:
        raise BadShape(f"{field}={float(value):g} must lie in (0, 1)")
    if not 0 <= value <= 1:
        raise BadShape(f"{field}={float(value):g} must lie in [0, 1]")
    return value


def trapezoid_tv(a: Number, b: Number, c: Number, d: Number) -> TruthValue:
    """0 outside [a, d], rising on [a, b], 1 on [b, c], falling on [c, d]."""
    a, b, c, d = (_unit(v, name) for v, name in zip((a, b, c, d), 'abcd'))
    if not a <= b <= c <= d:
        raise BadShape("trapezoid needs a <= b <= c <= d")
    return from_polyline([(0, 0), (a, 0), (b, 1), (c, 1), (d, 0), (1, 0)])


def triangle_tv(a: Number, c: Number, b: Number) -> TruthValue:
    """Triangle with feet a, b and apex c."""
    a, c, b = (_unit(v, name) for v, name in zip((a, c, b), 'acb'))
    if not a <= c <= b:
        raise BadShape("triangle needs a <= c <= b")
    return trapezoid_tv(a, c, c, b)


def interval_tv(a: Number, b: Number) -> TruthValue:
    """Characteristic function of the closed interval [a, b]."""
    a, b = _unit(a, 'a'), _unit(b, 'b')
    if a > b:
        raise BadShape("interval needs a <= b")
    return trapezoid_tv(a, a, b, b)


def point_tv(x: Number) -> TruthValue:
    """Characteristic function of {x}."""
    x = _unit(x, 'x')
    return interval_tv(x, x)


def necessity_case1_f(a: Number, u: Number) -> TruthValue:
    """1 at 0, a on (0, u], 0 after u."""
    a = _unit(a, 'a', open_interval=True)
    u = _unit(u, 'u', open_interval=True)
    return from_polyline([(0, 1), (0, a), (u, a), (u, 0), (1, 0)])


def necessity_case1_g(b: Number, u: Number) -> TruthValue:
    """Affine from 1 at 0 down to b at u, 0 after u."""
    b = _unit(b, 'b', open_interval=True)
    u = _unit(u, 'u', open_interval=True)
    return from_polyline([(0, 1), (u, b), (u, 0), (1, 0)])


def necessity_case2_f(a: Number, u: Number) -> TruthValue:
    """0 on [0, u), a on [u, 1), 1 at 1."""
    a = _unit(a, 'a', open_interval=True)
    u = _unit(u, 'u', open_interval=True)
    return from_polyline([(0, 0), (u, 0), (u, a), (1, a), (1, 1)])


def necessity_case2_g(b: Number, v: Number) -> TruthValue:
    """0 on [0, v), affine from b at v up to 1 at 1."""
    b = _unit(b, 'b', open_interval=True)
    v = _unit(v, 'v', open_interval=True)
    return from_polyline([(0, 0), (v, 0), (v, b), (1, 1)])


# ----------------------------------------------------------------------
# lattice operations on the piecewise-affine class

def pointwise(f: TruthValue, g: TruthValue,
              op: Callable[[Fraction, Fraction], Fraction]) -> TruthValue:
    """
    Combine f and g pointwise with min or max, exactly.

    Crossing points of the affine pieces become breakpoints of the result.
    """
    xs = sorted(set(f.breakpoints) | set(g.breakpoints))
    at = [(f.limits(x), g.limits(x)) for x in xs]
    knots: List[Knot] = []
    for j, x in enumerate(xs):
        (fl, fv, fr), (gl, gv, gr) = at[j]
        knots.append((x, op(fl, gl), op(fv, gv), op(fr, gr)))
        if j == len(xs) - 1:
            break
        x1 = xs[j + 1]
        start = fr - gr
        end = at[j + 1][0][0] - at[j + 1][1][0]
        if start * end < 0:
            t = start / (start - end)
            crossing = x + t * (x1 - x)
            value = fr + t * (at[j + 1][0][0] - fr)
            knots.append((crossing, value, value, value))
    return _from_knots(knots)


def pointwise_min(f: TruthValue, g: TruthValue) -> TruthValue:
    return pointwise(f, g, min)


def pointwise_max(f: TruthValue, g: TruthValue) -> TruthValue:
    return pointwise(f, g, max)


def sup_distance(f: TruthValue, g: TruthValue) -> Fraction:
    """Exact sup-norm distance between f and g."""
    best = ZERO
    for x in set(f.breakpoints) | set(g.breakpoints):
        for a, b in zip(f.limits(x), g.limits(x)):
            best = max(best, abs(a - b))
    return best


def monotone_split(f: TruthValue) -> Tuple[TruthValue, TruthValue]:
    """
    Split f into its nondecreasing and nonincreasing sup-envelopes.

    f is convex exactly when the pointwise min of the two pieces is f.
    """
    return f.left_sup_envelope(), f.right_sup_envelope()


def is_convex_by_split(f: TruthValue) -> bool:
    rising, falling = monotone_split(f)
    return pointwise_min(rising, falling) == f
