"""
Convolution module for the type-2 convolution toolkit.
Handles the sup-convolution of truth values through a brute-force grid
oracle, the exact closed form for the min/min meet, the alpha-cut
frontier engine and a sampled fiber sup used to certify single points.
"""

import bisect
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from interval_cuts import CutFamily, GridMismatch, Interval
from tnorms import TnormSpec, tnorm_eval, tnorm_eval_array
from truth_value import TruthValue, pointwise_max, pointwise_min


logger = logging.getLogger(__name__)

ENGINE_METHODS = ('frontier', 'brute')
MAX_TRIPLE_RESOLUTION = 200


class ConvolutionException(Exception):
    """Custom exception for convolution errors."""
    pass


class HypothesisViolation(ConvolutionException):
    """Operators fall outside the cut engine's contract."""
    pass


@dataclass
class SampledFunction:
    """
    Grid picture of a convolution produced by an oracle.

    cell_sup[k] bounds the values seen in the cell [k/n, (k+1)/n);
    point_best[k] is the best value whose image a*b rounds to k/n, with
    the pair that realised it. A fiber never hit keeps value 0.
    """
    n: int
    cell_sup: np.ndarray
    point_best: np.ndarray
    witness_a: np.ndarray
    witness_b: np.ndarray
    witness_c: Optional[np.ndarray] = None

    @property
    def grid(self) -> np.ndarray:
        return np.arange(self.n + 1) / self.n

    def cell_of(self, x: float) -> int:
        return int(min(np.floor(x * self.n), self.n - 1))

    def point_index(self, x: float) -> int:
        return int(np.rint(x * self.n))

    def value_near(self, x: float) -> float:
        return float(self.point_best[self.point_index(x)])

    def to_dataframe(self) -> pd.DataFrame:
        frame = pd.DataFrame({
            'x': self.grid,
            'value': self.point_best,
            'witness_a': self.witness_a,
            'witness_b': self.witness_b,
        })
        if self.witness_c is not None:
            frame['witness_c'] = self.witness_c
        return frame


class _GridAccumulator:
    """Running max-reduction of (z, value, witnesses) onto an n-grid."""

    def __init__(self, n: int, witnesses: int = 2):
        self.n = n
        self.cell_sup = np.zeros(n)
        self.point_best = np.zeros(n + 1)
        self.witness = [np.full(n + 1, np.nan) for _ in range(witnesses)]

    def add(self, z: np.ndarray, value: np.ndarray, *witnesses: np.ndarray):
        z = z.ravel()
        value = value.ravel()
        n = self.n

        cells = np.minimum(np.floor(z * n), n - 1).astype(np.int64)
        np.maximum.at(self.cell_sup, cells, value)

        points = np.rint(z * n).astype(np.int64)
        order = np.lexsort((-value, points))
        points = points[order]
        first = np.ones(points.shape, dtype=bool)
        first[1:] = points[1:] != points[:-1]
        best_at = order[first]
        targets = points[first]

        better = value[best_at] > self.point_best[targets]
        targets = targets[better]
        best_at = best_at[better]
        self.point_best[targets] = value[best_at]
        for store, source in zip(self.witness, witnesses):
            store[targets] = source.ravel()[best_at]

    def result(self) -> SampledFunction:
        extra = self.witness[2] if len(self.witness) > 2 else None
        return SampledFunction(self.n, self.cell_sup, self.point_best,
                               self.witness[0], self.witness[1], extra)


def convolve_oracle(f: TruthValue, g: TruthValue, star: TnormSpec, tri: TnormSpec,
                    n: int, block_rows: int = 256) -> SampledFunction:
    """
    Brute-force convolution over all (n+1)^2 grid pairs.

    Args:
        f: Left operand
        g: Right operand
        star: Operation combining the arguments
        tri: Operation combining the values
        n: Grid resolution (>= 16)
        block_rows: Rows of the pair matrix evaluated at once

    Returns:
        SampledFunction; values are realised lower bounds at each grid point
    """
    if n < 16:
        raise ConvolutionException(f"oracle resolution must be at least 16, got {n}")

    grid = np.arange(n + 1) / n
    fa = f.eval_array(grid)
    gb = g.eval_array(grid)
    acc = _GridAccumulator(n)

    for start in range(0, n + 1, block_rows):
        rows = slice(start, min(start + block_rows, n + 1))
        a = grid[rows][:, None]
        b = grid[None, :]
        z = tnorm_eval_array(star, a, b)
        value = tnorm_eval_array(tri, fa[rows][:, None], gb[None, :])
        a_full, b_full = np.broadcast_arrays(a, b)
        acc.add(z, value, a_full, b_full)

    logger.debug(f"oracle {star.name}/{tri.name} at n={n}: max value {acc.point_best.max():.6f}")
    return acc.result()


def convolve3_oracle(f: TruthValue, g: TruthValue, h: TruthValue, star: TnormSpec,
                     tri: TnormSpec, n: int) -> SampledFunction:
    """
    Brute-force triple convolution over all (n+1)^3 grid triples.

    n is capped at 200.
    """
    if n < 16:
        raise ConvolutionException(f"oracle resolution must be at least 16, got {n}")
    if n > MAX_TRIPLE_RESOLUTION:
        logger.warning(f"triple oracle resolution {n} capped at {MAX_TRIPLE_RESOLUTION}")
        n = MAX_TRIPLE_RESOLUTION

    grid = np.arange(n + 1) / n
    fa = f.eval_array(grid)
    gb = g.eval_array(grid)
    hc = h.eval_array(grid)
    acc = _GridAccumulator(n, witnesses=3)

    b_full, c_full = np.meshgrid(grid, grid, indexing='ij')
    for i in range(n + 1):
        ab = tnorm_eval_array(star, grid[i], grid)
        z = tnorm_eval_array(star, ab[:, None], grid[None, :])
        fg = tnorm_eval_array(tri, fa[i], gb)
        value = tnorm_eval_array(tri, fg[:, None], hc[None, :])
        acc.add(z, value, np.full(z.shape, grid[i]), b_full, c_full)

    return acc.result()


def meet_min(f: TruthValue, g: TruthValue) -> TruthValue:
    """
    Exact convolution with both operations equal to min.

    The fiber of z under min is {z} x [z,1] together with [z,1] x {z}, so
    the result is max(min(f, Er g), min(g, Er f)) with Er the right
    sup-envelope.
    """
    left = pointwise_min(f, g.right_sup_envelope())
    right = pointwise_min(g, f.right_sup_envelope())
    return pointwise_max(left, right)


# ----------------------------------------------------------------------
# cut engine

def check_engine_hypothesis(star: TnormSpec, tri: TnormSpec):
    """Raise HypothesisViolation unless star is continuous and tri right-continuous."""
    if not star.is_continuous:
        raise HypothesisViolation(f"star {star.name} is {star.declared_class}, not continuous")
    if not tri.is_right_continuous:
        raise HypothesisViolation(f"tri {tri.name} is {tri.declared_class}, not right-continuous")


@lru_cache(maxsize=64)
def _rank_table(tri: TnormSpec, grid: Tuple[Fraction, ...]) -> np.ndarray:
    """R[i, j] = number of grid levels <= grid[i] tri grid[j], computed exactly."""
    m = len(grid)
    table = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        for j in range(i, m):
            value = tnorm_eval(tri, grid[i], grid[j])
            rank = bisect.bisect_right(grid, value)
            table[i, j] = rank
            table[j, i] = rank
    return table


@lru_cache(maxsize=64)
def _frontier_table(tri: TnormSpec, grid: Tuple[Fraction, ...]) -> np.ndarray:
    """
    F[i, t] = smallest j with grid[i] tri grid[j] >= grid[t], or m if none.

    Built by a two-pointer walk per level: the frontier column only moves
    left as the row index grows.
    """
    ranks = _rank_table(tri, grid)
    m = len(grid)
    frontier = np.full((m, m), m, dtype=np.int64)
    for t in range(m):
        need = t + 1
        j = m - 1
        for i in range(m):
            if ranks[i, m - 1] < need:
                continue
            while j > 0 and ranks[i, j - 1] >= need:
                j -= 1
            frontier[i, t] = j
    return frontier


@dataclass(frozen=True)
class LevelWitness:
    """Grid pairs realising both endpoints of one output cut."""
    alpha: float
    lo: float
    hi: float
    lo_levels: Tuple[int, int]
    hi_levels: Tuple[int, int]
    lo_args: Tuple[float, float]
    hi_args: Tuple[float, float]

    def to_dict(self) -> Dict:
        return {
            'alpha': self.alpha,
            'lo': self.lo,
            'hi': self.hi,
            'lo_levels': list(self.lo_levels),
            'hi_levels': list(self.hi_levels),
            'lo_args': list(self.lo_args),
            'hi_args': list(self.hi_args),
        }


def _engine_inputs(fc: CutFamily, gc: CutFamily):
    if fc.alpha_grid != gc.alpha_grid:
        raise GridMismatch(f"alpha grids differ ({len(fc)} vs {len(gc)} levels)")
    f_lo, f_hi = fc.endpoints()
    g_lo, g_hi = gc.endpoints()
    return f_lo, f_hi, g_lo, g_hi


def _frontier_scan(fc: CutFamily, gc: CutFamily, star: TnormSpec, tri: TnormSpec):
    f_lo, f_hi, g_lo, g_hi = _engine_inputs(fc, gc)
    m = len(fc)
    frontier = _frontier_table(tri, fc.alpha_grid)
    valid = frontier < m
    cols = np.minimum(frontier, m - 1)

    lows = tnorm_eval_array(star, f_lo[:, None], g_lo[cols])
    highs = tnorm_eval_array(star, f_hi[:, None], g_hi[cols])
    lows = np.where(valid, lows, np.inf)
    highs = np.where(valid, highs, -np.inf)

    lo_rows = np.argmin(lows, axis=0)
    hi_rows = np.argmax(highs, axis=0)
    levels = np.arange(m)
    lo = lows[lo_rows, levels]
    hi = highs[hi_rows, levels]
    lo_cols = cols[lo_rows, levels]
    hi_cols = cols[hi_rows, levels]
    return lo, hi, (lo_rows, lo_cols), (hi_rows, hi_cols), (f_lo, f_hi, g_lo, g_hi)


def _brute_scan(fc: CutFamily, gc: CutFamily, star: TnormSpec, tri: TnormSpec):
    f_lo, f_hi, g_lo, g_hi = _engine_inputs(fc, gc)
    m = len(fc)
    ranks = _rank_table(tri, fc.alpha_grid)
    lows = tnorm_eval_array(star, f_lo[:, None], g_lo[None, :])
    highs = tnorm_eval_array(star, f_hi[:, None], g_hi[None, :])
    lo = np.empty(m)
    hi = np.empty(m)
    for t in range(m):
        member = ranks >= t + 1
        lo[t] = lows[member].min()
        hi[t] = highs[member].max()
    return lo, hi


def convolve_cuts(fc: CutFamily, gc: CutFamily, star: TnormSpec, tri: TnormSpec,
                  method: str = 'frontier', enforce_hypothesis: bool = True) -> CutFamily:
    """
    Convolution of two cut families, level by level.

    The output cut at level alpha_t is spanned by the images of the input
    cut pairs (i, j) with alpha_i tri alpha_j >= alpha_t.

    Args:
        fc: Cuts of the left operand
        gc: Cuts of the right operand, on the same grid
        star: Continuous t-norm
        tri: Right-continuous t-norm
        method: 'frontier' (staircase scan) or 'brute' (full pair scan)
        enforce_hypothesis: Refuse operators outside the engine's contract

    Returns:
        CutFamily with float endpoints
    """
    if enforce_hypothesis:
        check_engine_hypothesis(star, tri)
    if method == 'frontier':
        lo, hi = _frontier_scan(fc, gc, star, tri)[:2]
    elif method == 'brute':
        lo, hi = _brute_scan(fc, gc, star, tri)
    else:
        raise ConvolutionException(f"Unknown engine method: {method}")

    cuts = [Interval(float(a), float(b)) for a, b in zip(lo, hi)]
    return CutFamily(fc.alpha_grid, cuts)


def frontier_witnesses(fc: CutFamily, gc: CutFamily, star: TnormSpec,
                       tri: TnormSpec) -> List[LevelWitness]:
    """The frontier pairs that attain each output endpoint."""
    lo, hi, lo_pairs, hi_pairs, ends = _frontier_scan(fc, gc, star, tri)
    f_lo, f_hi, g_lo, g_hi = ends
    out = []
    for t, alpha in enumerate(fc.alpha_grid):
        li, lj = int(lo_pairs[0][t]), int(lo_pairs[1][t])
        hi_i, hi_j = int(hi_pairs[0][t]), int(hi_pairs[1][t])
        out.append(LevelWitness(
            alpha=float(alpha),
            lo=float(lo[t]),
            hi=float(hi[t]),
            lo_levels=(li, lj),
            hi_levels=(hi_i, hi_j),
            lo_args=(float(f_lo[li]), float(g_lo[lj])),
            hi_args=(float(f_hi[hi_i]), float(g_hi[hi_j])),
        ))
    return out


# ----------------------------------------------------------------------
# single-point certification

def _inner_fiber(kind: str, a: Fraction, z: Fraction) -> Tuple[Fraction, Fraction]:
    if kind == 'product':
        if a == 0:
            return Fraction(0), Fraction(1)
        return z / a, z / a
    if z > 0:
        return z + 1 - a, z + 1 - a
    return Fraction(0), 1 - a


def fiber_interval(star: TnormSpec, a, z) -> Optional[Tuple[Fraction, Fraction]]:
    """
    Exact set {b : a*b = z} for a continuous t-norm, as a closed interval.

    Args:
        star: Continuous t-norm
        a: First argument
        z: Target value

    Returns:
        (b_lo, b_hi), or None when the fiber is empty
    """
    if not star.is_continuous:
        raise HypothesisViolation(f"exact fibers need a continuous t-norm, got {star.name}")
    a = Fraction(a)
    z = Fraction(z)
    if a < z:
        return None
    if star.kind in ('product', 'lukasiewicz'):
        return _inner_fiber(star.kind, a, z)

    for block in star.summands:
        lo, hi = block.lo, block.hi
        if lo <= a <= hi and lo <= z:
            width = hi - lo
            inner_lo, inner_hi = _inner_fiber(block.inner, (a - lo) / width, (z - lo) / width)
            b_lo = lo + width * inner_lo
            b_hi = lo + width * inner_hi
            # a*b = a for every b beyond the block
            return b_lo, (Fraction(1) if b_hi == hi else b_hi)

    if a > z:
        return z, z
    return z, Fraction(1)


def fiber_sup(f: TruthValue, g: TruthValue, star: TnormSpec, tri: TnormSpec,
              z, samples: int = 4000) -> Tuple[float, float, float]:
    """
    Sampled sup of f(a) tri g(b) over the fiber a*b = z.

    a runs over the uniform sample k/samples, the breakpoints of f and z
    itself; each b-fiber is solved exactly and g's exact sup over it is
    used. Per sampled a the value is exact when tri is left-continuous.

    Returns:
        (value, a, b) with the best sampled a and a point b of its fiber
    """
    z = Fraction(z)
    candidates = {Fraction(k, samples) for k in range(samples + 1)}
    candidates.update(f.breakpoints)
    candidates.add(z)

    best = (0.0, float('nan'), float('nan'))
    best_value = Fraction(-1)
    for a in sorted(c for c in candidates if c >= z):
        fiber = fiber_interval(star, a, z)
        if fiber is None:
            continue
        value = tnorm_eval(tri, f.eval(a), g.sup_between(*fiber))
        if value > best_value:
            best_value = value
            best = (float(value), float(a), float(fiber[0]))
    return best
