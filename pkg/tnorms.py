"""
Triangular norm module for the type-2 convolution toolkit.
Handles the built-in t-norm zoo, ordinal sums, JSON descriptors and the
finite-grid continuity and cancellativity probes.
"""

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np


logger = logging.getLogger(__name__)

Number = Union[float, Fraction]

KINDS = ('minimum', 'product', 'lukasiewicz', 'drastic', 'nilpotent_minimum', 'ordinal_sum')
INNER_KINDS = ('product', 'lukasiewicz')
CONTINUITY_CLASSES = ('continuous', 'right_continuous', 'left_continuous', 'neither')

DECLARED_CLASS = {
    'minimum': 'continuous',
    'product': 'continuous',
    'lukasiewicz': 'continuous',
    'ordinal_sum': 'continuous',
    'drastic': 'right_continuous',
    'nilpotent_minimum': 'left_continuous',
}

# probe verdicts, keyed by declared class
PROBE_VERDICT = {
    'continuous': 'continuous',
    'right_continuous': 'right_continuous_only',
    'left_continuous': 'left_continuous_only',
    'neither': 'neither',
}

ALIASES = {
    'min': 'minimum',
    'minimum': 'minimum',
    'godel': 'minimum',
    'prod': 'product',
    'product': 'product',
    'luk': 'lukasiewicz',
    'lukasiewicz': 'lukasiewicz',
    'drastic': 'drastic',
    'nm': 'nilpotent_minimum',
    'nilmin': 'nilpotent_minimum',
    'nilpotent_minimum': 'nilpotent_minimum',
}

# kinds whose values are exact on dyadic inputs
EXACT_KINDS = ('minimum', 'lukasiewicz', 'drastic', 'nilpotent_minimum')


class TnormException(Exception):
    """Custom exception for t-norm descriptor errors."""
    pass


class OverlappingSummands(TnormException):
    """Two ordinal-sum summand intervals intersect."""
    pass


class DegenerateSummand(TnormException):
    """An ordinal-sum summand has lo >= hi or leaves [0, 1]."""
    pass


class TnormParseError(TnormException):
    """A TnormSpec JSON document is malformed."""
    pass


def _bound(value) -> Fraction:
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def _plain(value: Fraction):
    as_float = float(value)
    if Fraction(as_float) == value:
        return as_float
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Summand:
    """One block of an ordinal sum: inner t-norm rescaled onto [lo, hi]."""
    lo: Fraction
    hi: Fraction
    inner: str

    def bounds(self, exact: bool) -> Tuple[Number, Number]:
        if exact:
            return self.lo, self.hi
        return float(self.lo), float(self.hi)

    def to_dict(self) -> Dict:
        return {'lo': _plain(self.lo), 'hi': _plain(self.hi), 'inner': self.inner}


@dataclass(frozen=True)
class TnormSpec:
    """
    Descriptor of a binary operation on [0, 1].

    Attributes:
        kind: One of KINDS
        summands: Ordinal-sum blocks, sorted by lo (empty unless kind is ordinal_sum)
        declared_class: Analytic continuity class of the operation
    """
    kind: str
    summands: Tuple[Summand, ...] = ()
    declared_class: str = ''

    def __post_init__(self):
        if self.kind not in KINDS:
            raise TnormException(f"Unknown t-norm kind: {self.kind}")
        expected = DECLARED_CLASS[self.kind]
        if not self.declared_class:
            object.__setattr__(self, 'declared_class', expected)
        elif self.declared_class != expected:
            raise TnormException(
                f"declared_class {self.declared_class!r} is inconsistent with kind {self.kind!r} "
                f"(expected {expected!r})"
            )
        if self.kind != 'ordinal_sum' and self.summands:
            raise TnormException(f"summands are only allowed for ordinal_sum, not {self.kind}")

    @property
    def name(self) -> str:
        if self.kind != 'ordinal_sum':
            return self.kind
        blocks = ','.join(f"({float(s.lo):g},{float(s.hi):g},{s.inner})" for s in self.summands)
        return f"ordinal_sum[{blocks}]"

    @property
    def is_continuous(self) -> bool:
        return self.declared_class == 'continuous'

    @property
    def is_right_continuous(self) -> bool:
        return self.declared_class in ('continuous', 'right_continuous')

    def to_dict(self) -> Dict:
        data = {'kind': self.kind}
        if self.kind == 'ordinal_sum':
            data['summands'] = [s.to_dict() for s in self.summands]
        return data

    @classmethod
    def from_dict(cls, data: Dict) -> 'TnormSpec':
        """
        Build a descriptor from its JSON form.

        Args:
            data: {"kind": ..., "summands": [{"lo", "hi", "inner"}, ...]}

        Returns:
            Validated TnormSpec
        """
        if not isinstance(data, dict):
            raise TnormParseError("TnormSpec JSON must be an object")
        kind = data.get('kind')
        if kind not in KINDS:
            raise TnormParseError(f"field 'kind': unknown t-norm kind {kind!r}")

        declared = data.get('declared_class', '')
        if declared and declared not in CONTINUITY_CLASSES:
            raise TnormParseError(f"field 'declared_class': unknown class {declared!r}")

        if kind != 'ordinal_sum':
            if data.get('summands'):
                raise TnormParseError("field 'summands': only allowed for kind 'ordinal_sum'")
            try:
                return cls(kind=kind, declared_class=declared)
            except TnormException as e:
                raise TnormParseError(f"field 'declared_class': {e}")

        raw = data.get('summands', [])
        if not isinstance(raw, list):
            raise TnormParseError("field 'summands': must be a list")
        blocks = []
        for index, item in enumerate(raw):
            if not isinstance(item, dict):
                raise TnormParseError(f"field 'summands[{index}]': must be an object")
            for key in ('lo', 'hi', 'inner'):
                if key not in item:
                    raise TnormParseError(f"field 'summands[{index}].{key}': missing")
            if item['inner'] not in INNER_KINDS:
                raise TnormParseError(f"field 'summands[{index}].inner': unknown inner t-norm {item['inner']!r}")
            try:
                blocks.append((_bound(item['lo']), _bound(item['hi']), item['inner']))
            except (TypeError, ValueError, ZeroDivisionError):
                raise TnormParseError(f"field 'summands[{index}]': lo and hi must be numbers")
        return ordinal_sum(blocks)


def ordinal_sum(summands: Sequence[Tuple[float, float, str]]) -> TnormSpec:
    """
    Assemble a continuous t-norm from product/Lukasiewicz blocks.

    Args:
        summands: (lo, hi, inner) triples on pairwise disjoint open subintervals

    Returns:
        ordinal_sum TnormSpec, or the minimum t-norm for an empty list
    """
    if not summands:
        return TnormSpec('minimum')

    blocks = []
    for lo, hi, inner in summands:
        if inner not in INNER_KINDS:
            raise TnormException(f"Unknown inner t-norm: {inner}")
        lo, hi = _bound(lo), _bound(hi)
        if not (0 <= lo < hi <= 1):
            raise DegenerateSummand(f"summand ({float(lo):g}, {float(hi):g}) needs 0 <= lo < hi <= 1")
        blocks.append(Summand(lo, hi, inner))

    blocks.sort(key=lambda s: s.lo)
    for left, right in zip(blocks, blocks[1:]):
        if right.lo < left.hi:
            raise OverlappingSummands(
                f"summands ({float(left.lo):g}, {float(left.hi):g}) and "
                f"({float(right.lo):g}, {float(right.hi):g}) intersect"
            )

    return TnormSpec('ordinal_sum', tuple(blocks))


def tnorm_from_name(name: str) -> TnormSpec:
    """Resolve a zoo name or alias (min, product, luk, drastic, nm)."""
    kind = ALIASES.get(name.strip().lower())
    if kind is None:
        raise TnormParseError(f"unknown t-norm name {name!r}; expected one of {sorted(set(ALIASES))}")
    return TnormSpec(kind)


def load_tnorm(source: Union[str, Path]) -> TnormSpec:
    """
    Resolve a t-norm given either by name or by a JSON file path.

    Args:
        source: Zoo name/alias or path to a TnormSpec JSON document

    Returns:
        TnormSpec
    """
    text = str(source)
    if text.strip().lower() in ALIASES:
        return tnorm_from_name(text)

    path = Path(text)
    if not path.exists():
        raise TnormParseError(f"{text!r} is neither a known t-norm name nor an existing file")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise TnormParseError(f"{path}: invalid JSON: {e}")
    return TnormSpec.from_dict(data)


def _inner(kind: str, x: Number, y: Number) -> Number:
    if y == 1:
        return x
    if x == 1:
        return y
    if kind == 'product':
        return x * y
    return max(x + y - 1, 0)


def tnorm_eval(spec: TnormSpec, x: Number, y: Number) -> Number:
    """
    Apply the operation described by spec to (x, y).

    Works on floats and on Fractions; with Fractions every zoo member is
    evaluated exactly.

    Args:
        spec: t-norm descriptor
        x: First argument in [0, 1]
        y: Second argument in [0, 1]

    Returns:
        x * y under spec
    """
    if y == 1:
        return x
    if x == 1:
        return y

    kind = spec.kind
    if kind == 'minimum':
        return min(x, y)
    if kind == 'product':
        return x * y
    if kind == 'lukasiewicz':
        return max(x + y - 1, 0)
    if kind == 'drastic':
        # max(x, y) == 1 is handled by the unit shortcut
        return 0 * x
    if kind == 'nilpotent_minimum':
        return min(x, y) if x + y > 1 else 0 * x

    exact = not (isinstance(x, float) or isinstance(y, float))
    for block in spec.summands:
        lo, hi = block.bounds(exact)
        if lo <= x <= hi and lo <= y <= hi:
            width = hi - lo
            value = lo + width * _inner(block.inner, (x - lo) / width, (y - lo) / width)
            return min(max(value, lo), min(x, y))
    return min(x, y)


def tnorm_eval_array(spec: TnormSpec, x, y) -> np.ndarray:
    """
    Vectorised tnorm_eval on float arrays (broadcasting like numpy).

    Elementwise results are bit-identical to tnorm_eval on Python floats.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    x, y = np.broadcast_arrays(x, y)

    kind = spec.kind
    if kind == 'minimum':
        core = np.minimum(x, y)
    elif kind == 'product':
        core = x * y
    elif kind == 'lukasiewicz':
        core = np.maximum(x + y - 1.0, 0.0)
    elif kind == 'drastic':
        core = np.zeros_like(x)
    elif kind == 'nilpotent_minimum':
        core = np.where(x + y > 1.0, np.minimum(x, y), 0.0)
    else:
        core = np.minimum(x, y)
        done = np.zeros(x.shape, dtype=bool)
        for block in spec.summands:
            lo, hi = block.bounds(exact=False)
            inside = (x >= lo) & (x <= hi) & (y >= lo) & (y <= hi) & ~done
            if not inside.any():
                continue
            width = hi - lo
            px = (x[inside] - lo) / width
            py = (y[inside] - lo) / width
            if block.inner == 'product':
                inner = np.where(py == 1.0, px, np.where(px == 1.0, py, px * py))
            else:
                inner = np.where(py == 1.0, px, np.where(px == 1.0, py, np.maximum(px + py - 1.0, 0.0)))
            value = lo + width * inner
            core[inside] = np.minimum(np.maximum(value, lo), np.minimum(x[inside], y[inside]))
            done |= inside

    return np.where(y == 1.0, x, np.where(x == 1.0, y, core))


def equality_tolerance(spec: TnormSpec) -> float:
    """Tolerance for comparing values of spec on dyadic grids."""
    return 0.0 if spec.kind in EXACT_KINDS else 1e-12


def probe_continuity(spec: TnormSpec, grid_size: int = 256,
                     return_witness: bool = False):
    """
    Classify spec by probing its sections x*(-) on a finite grid.

    Every grid point y is approached from above and from below along
    y +/- 2^-j / grid_size; a jump that persists along the whole tail of
    the sequence counts as a discontinuity of the section. The verdict is
    finite evidence, not a proof.

    Args:
        spec: t-norm descriptor
        grid_size: Number of grid cells (>= 16)
        return_witness: Also return the first (x, y, side, gap) jump found

    Returns:
        One of 'continuous', 'right_continuous_only', 'left_continuous_only',
        'neither' (and the witness when requested)
    """
    if grid_size < 16:
        raise TnormException(f"grid_size must be at least 16, got {grid_size}")

    grid = np.arange(grid_size + 1) / grid_size
    xs = grid[:, None]
    ys = grid[None, :]
    base = tnorm_eval_array(spec, xs, ys)
    tolerance = 1e-6
    tail = (20, 30, 40)

    def persistent_jump(direction: int) -> Optional[Tuple[float, float, float]]:
        valid = (grid < 1.0) if direction > 0 else (grid > 0.0)
        jump = np.ones(base.shape, dtype=bool)
        last_gap = None
        for power in tail:
            delta = 2.0 ** -power / grid_size
            moved = np.clip(ys + direction * delta, 0.0, 1.0)
            gap = np.abs(tnorm_eval_array(spec, xs, moved) - base)
            jump &= gap > tolerance
            last_gap = gap
        jump &= valid[None, :]
        if not jump.any():
            return None
        i, j = np.argwhere(jump)[0]
        return float(grid[i]), float(grid[j]), float(last_gap[i, j])

    right_jump = persistent_jump(+1)
    left_jump = persistent_jump(-1)

    if right_jump and left_jump:
        verdict = 'neither'
    elif right_jump:
        verdict = 'left_continuous_only'
    elif left_jump:
        verdict = 'right_continuous_only'
    else:
        verdict = 'continuous'

    witness = None
    if right_jump:
        witness = (right_jump[0], right_jump[1], 'from_above', right_jump[2])
    elif left_jump:
        witness = (left_jump[0], left_jump[1], 'from_below', left_jump[2])
    if witness:
        logger.debug(f"{spec.name}: section x={witness[0]} jumps at y={witness[1]} {witness[2]} by {witness[3]}")

    if return_witness:
        return verdict, witness
    return verdict


def probe_conditional_cancellativity(spec: TnormSpec, grid_size: int = 256
                                     ) -> Tuple[bool, Optional[Tuple[float, float, float]]]:
    """
    Search the grid for x1 != x2 with x1*y == x2*y > 0.

    Args:
        spec: t-norm descriptor
        grid_size: Number of grid cells (>= 16)

    Returns:
        (True, None) when no violation is found, otherwise (False, (x1, x2, y))
    """
    if grid_size < 16:
        raise TnormException(f"grid_size must be at least 16, got {grid_size}")

    tolerance = equality_tolerance(spec)
    grid = np.arange(grid_size + 1) / grid_size
    values = tnorm_eval_array(spec, grid[:, None], grid[None, :])

    order = np.argsort(values, axis=0, kind='stable')
    ranked = np.take_along_axis(values, order, axis=0)
    equal_next = (np.abs(np.diff(ranked, axis=0)) <= tolerance) & (ranked[1:] > 0)

    if not equal_next.any():
        return True, None

    # first column (y) with a repeated positive value
    rows, cols = np.nonzero(equal_next)
    first = np.lexsort((rows, cols))[0]
    row, col = rows[first], cols[first]
    x1, x2 = sorted((float(grid[order[row, col]]), float(grid[order[row + 1, col]])))
    return False, (x1, x2, float(grid[col]))


def right_limit_gap(spec: TnormSpec, a: Number, b: Number, steps: int = 40) -> Fraction:
    """
    Estimate a*b+ - a*b along y_k = b + (1 - b) 2^-k decreasing to b.

    The values a*y_k are nonincreasing in k, so the last one bounds the
    right limit from above. Evaluated exactly with Fractions.

    Returns:
        Nonnegative gap; 0 means no right discontinuity was seen at (a, b)
    """
    a = Fraction(a)
    b = Fraction(b)
    if b >= 1:
        return Fraction(0)
    at_point = Fraction(tnorm_eval(spec, a, b))
    approach = Fraction(tnorm_eval(spec, a, b + (1 - b) / 2 ** steps))
    return max(approach - at_point, Fraction(0))


def zoo() -> List[TnormSpec]:
    """The built-in t-norms plus one representative ordinal sum."""
    return [
        TnormSpec('minimum'),
        TnormSpec('product'),
        TnormSpec('lukasiewicz'),
        TnormSpec('drastic'),
        TnormSpec('nilpotent_minimum'),
        ordinal_sum([(0.2, 0.8, 'product')]),
    ]
