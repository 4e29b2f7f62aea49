"""
Verification harness module for the type-2 convolution toolkit.
Handles random sampling of normal convex usc truth values, the law suites
run on the cut engine and the oracles, and the constructive necessity
counterexamples.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from config import DEFAULTS
from convolution import (MAX_TRIPLE_RESOLUTION, check_engine_hypothesis, convolve3_oracle,
                         convolve_cuts, convolve_oracle, fiber_sup, meet_min)
from interval_cuts import CutFamily, Interval, NotNested, cuts_of, tv_from_cuts, uniform_grid
from order import leq_cutwise
from tnorms import TnormSpec, ordinal_sum, right_limit_gap, tnorm_eval
from truth_value import (ONE, ZERO, Span, TruthValue, as_fraction, interval_tv,
                         is_convex_by_split, necessity_case1_f, necessity_case1_g,
                         necessity_case2_f, necessity_case2_g, point_tv, pointwise_max,
                         trapezoid_tv, triangle_tv)


logger = logging.getLogger(__name__)

SHAPES = ('point', 'interval', 'triangle', 'trapezoid', 'staircase', 'mixed')
CASES = ('case1_min_star', 'case2_ordinal_star')

AXIOM_LAWS = ('T1_commutativity', 'T2_associativity', 'T3_monotonicity', 'T4_unit',
              'closure_normal', 'closure_convex', 'closure_usc')
TR_LAWS = ('J_closed', 'J2_closed', 'boundary_law')
CLOSURE_LAWS = ('closure_normal', 'closure_convex', 'closure_usc')

TR_DENOMINATOR = 1024

# oracle points within which an engine level must be realised: three rounded
# coordinates move the image by 3/n, plus rounding to the nearest point
OVERSHOOT_REACH = 4

# right-limit gaps below this are read as continuity
JUMP_TOLERANCE = Fraction(1, 2 ** 20)


class HarnessException(Exception):
    """Custom exception for verification harness errors."""
    pass


class NotACounterexample(HarnessException):
    """The supplied operator is right-continuous at the chosen point."""
    pass


@dataclass
class AxiomReport:
    """Outcome of one law over a batch of trials."""
    law: str
    trials: int
    failures: int = 0
    first_witness: Optional[Dict] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> Dict:
        return {
            'law': self.law,
            'trials': self.trials,
            'failures': self.failures,
            'first_witness': self.first_witness,
        }

    @classmethod
    def from_dict(cls, data: Dict) -> 'AxiomReport':
        try:
            report = cls(data['law'], int(data['trials']), int(data['failures']),
                         data.get('first_witness'))
        except (KeyError, TypeError, ValueError) as e:
            raise HarnessException(f"invalid report JSON: {e}")
        if (report.failures == 0) != (report.first_witness is None):
            raise HarnessException(f"report {report.law}: failures and first_witness disagree")
        return report


@dataclass(frozen=True)
class NecessityWitness:
    """A point where the convolution falls below its one-sided limit."""
    point: float
    value_at_point: float
    approach_limit: float
    gap: float

    def to_dict(self) -> Dict:
        return {
            'point': self.point,
            'value_at_point': self.value_at_point,
            'approach_limit': self.approach_limit,
            'gap': self.gap,
        }

    @classmethod
    def from_dict(cls, data: Dict) -> 'NecessityWitness':
        try:
            return cls(float(data['point']), float(data['value_at_point']),
                       float(data['approach_limit']), float(data['gap']))
        except (KeyError, TypeError, ValueError) as e:
            raise HarnessException(f"invalid witness JSON: {e}")


def laws_passed(reports: Sequence[AxiomReport]) -> bool:
    return all(r.passed for r in reports)


# ----------------------------------------------------------------------
# sampling

def _knots(rng: np.random.Generator, count: int, denominator: int) -> List[Fraction]:
    picks = np.sort(rng.integers(0, denominator + 1, size=count))
    return [Fraction(int(k), denominator) for k in picks]


def _random_staircase(rng: np.random.Generator, denominator: int) -> TruthValue:
    levels = int(rng.integers(1, 5))
    inner = rng.choice(np.arange(1, denominator), size=min(levels - 1, denominator - 1), replace=False)
    alphas = sorted(Fraction(int(k), denominator) for k in inner) + [ONE]
    ends = _knots(rng, 2 * len(alphas), denominator)
    lows = ends[:len(alphas)]
    highs = ends[len(alphas):][::-1]
    cuts = [Interval(lo, hi) for lo, hi in zip(lows, highs)]
    return tv_from_cuts(CutFamily(alphas, cuts))


def sample_lu(seed, shape: str = 'mixed', denominator: int = 8) -> TruthValue:
    """
    Draw a random normal, convex, usc truth value with dyadic knots.

    Args:
        seed: int, SeedSequence or Generator
        shape: One of SHAPES
        denominator: Knots are multiples of 1/denominator

    Returns:
        TruthValue whose properties are all true
    """
    if shape not in SHAPES:
        raise HarnessException(f"Unknown shape: {shape}")
    rng = np.random.default_rng(seed)
    if shape == 'mixed':
        shape = SHAPES[int(rng.integers(0, len(SHAPES) - 1))]

    if shape == 'point':
        return point_tv(_knots(rng, 1, denominator)[0])
    if shape == 'interval':
        return interval_tv(*_knots(rng, 2, denominator))
    if shape == 'triangle':
        return triangle_tv(*_knots(rng, 3, denominator))
    if shape == 'trapezoid':
        return trapezoid_tv(*_knots(rng, 4, denominator))
    return _random_staircase(rng, denominator)


def _bimodal(rng: np.random.Generator, denominator: int) -> TruthValue:
    """Two separated triangles; never convex."""
    peak = _knots(rng, 1, denominator)[0] / 2
    gap = Fraction(1, denominator)
    left = triangle_tv(0, peak, peak + gap)
    right = triangle_tv(1 - gap, 1, 1)
    return pointwise_max(left, right)


# ----------------------------------------------------------------------
# helpers

def _tv_json(f: TruthValue) -> Dict:
    return f.to_dict()


def _level_profile(family: CutFamily, n: int, reach: float, eps: float = 1e-9) -> np.ndarray:
    """Per grid point k, the top level whose cut meets [(k - reach)/n, (k + reach)/n]; 0 if none."""
    lo, hi = family.endpoints()
    alphas = np.array([float(a) for a in family.alpha_grid])
    k = np.arange(n + 1)
    meets = (lo[:, None] <= (k + reach) / n + eps) & (hi[:, None] >= (k - reach) / n - eps)
    return np.where(meets, alphas[:, None], 0.0).max(axis=0)


def _level_at(family: CutFamily, z: Fraction, eps: float = 1e-9) -> Fraction:
    top = ZERO
    for alpha, cut in zip(family.alpha_grid, family.cuts):
        if float(cut.lo) - eps <= z <= float(cut.hi) + eps:
            top = alpha
    return top


def _span_meet(a: Span, b: Span) -> Span:
    """{min(x, y) : x in A, y in B} for two intervals with openness flags."""
    if a.lo < b.lo:
        lo, lo_closed = a.lo, a.lo_closed
    elif b.lo < a.lo:
        lo, lo_closed = b.lo, b.lo_closed
    else:
        lo, lo_closed = a.lo, a.lo_closed or b.lo_closed
    if a.hi < b.hi:
        hi, hi_closed = a.hi, a.hi_closed
    elif b.hi < a.hi:
        hi, hi_closed = b.hi, b.hi_closed
    else:
        hi, hi_closed = a.hi, a.hi_closed and b.hi_closed
    return Span(lo, hi, lo_closed, hi_closed)


def _necessity_star(params: Dict) -> Tuple[TnormSpec, Fraction, Fraction, str]:
    star = params.get('star')
    if star is None:
        lo = params.get('summand_lo', Fraction(1, 5))
        hi = params.get('summand_hi', Fraction(4, 5))
        star = ordinal_sum([(lo, hi, params.get('inner', 'product'))])
    if star.kind in ('product', 'lukasiewicz'):
        return star, ZERO, ONE, star.kind
    if star.kind != 'ordinal_sum':
        raise HarnessException(f"case2 needs an ordinal-sum star, product or lukasiewicz, got {star.name}")
    index = int(params.get('summand_index', 0))
    if not 0 <= index < len(star.summands):
        raise HarnessException(f"summand_index {index} out of range for {star.name}")
    block = star.summands[index]
    return star, block.lo, block.hi, block.inner


def _necessity_setup(tri: TnormSpec, case: str, params: Optional[Dict], n: int):
    """Operators, operands, exact point value and approach sequence of one case."""
    if case not in CASES:
        raise HarnessException(f"Unknown case: {case}; expected one of {CASES}")
    params = dict(params or {})
    a = as_fraction(params.get('a', Fraction(1, 2)), 'a')
    b = as_fraction(params.get('b', Fraction(1, 2)), 'b')

    if case == 'case1_min_star':
        u = as_fraction(params.get('u', Fraction(1, 2)), 'u')
        star = TnormSpec('minimum')
        f = necessity_case1_f(a, u)
        g = necessity_case1_g(b, u)
        point = u
        approach = []
        k = 1
        while u / 2 ** k >= Fraction(1, n):
            z = u - u / 2 ** k
            approach.append((z, tnorm_eval(tri, f.eval(z), g.eval(z))))
            k += 1
        side = -1
    else:
        star, lo, hi, _ = _necessity_star(params)
        u = as_fraction(params.get('u', Fraction(7, 10)), 'u')
        v = as_fraction(params.get('v', Fraction(7, 10)), 'v')
        if not (lo < u < hi and lo < v < hi):
            raise HarnessException(f"u and v must lie inside the summand ({float(lo):g}, {float(hi):g})")
        point = tnorm_eval(star, u, v)
        if not point > lo:
            raise HarnessException("u*v must lie above the summand's left end")
        f = necessity_case2_f(a, u)
        g = necessity_case2_g(b, v)
        approach = []
        k = 1
        while (hi - v) / 2 ** k >= Fraction(1, n):
            x = v + (hi - v) / 2 ** k
            approach.append((tnorm_eval(star, u, x), tnorm_eval(tri, a, g.eval(x))))
            k += 1
        side = +1

    value_at_point = tnorm_eval(tri, a, b)
    return {
        'star': star,
        'f': f,
        'g': g,
        'a': a,
        'b': b,
        'point': point,
        'value_at_point': value_at_point,
        'approach': approach,
        'side': side,
    }


# ----------------------------------------------------------------------
# harness

class VerificationHarness:
    """
    Runs law suites over batches of random trials.

    Trials are independent; each gets a child of SeedSequence(seed), so
    reports do not depend on worker count or completion order.
    """

    def __init__(self, config: Optional[Dict] = None):
        config = config or {}
        settings = dict(DEFAULTS['harness'])
        settings.update(config.get('harness', {}))
        grid = dict(DEFAULTS['grid'])
        grid.update(config.get('grid', {}))

        self.trials = int(settings['trials'])
        self.seed = int(settings['seed'])
        self.max_workers = int(settings['max_workers'])
        self.show_progress = bool(settings['show_progress'])
        self.usc_threshold = float(settings['usc_threshold'])
        self.fiber_samples = int(settings['fiber_samples'])
        self.max_usc_candidates = int(settings['max_usc_candidates'])
        self.slack_levels = int(settings['associativity_slack_levels'])
        self.slack_cells = int(settings['associativity_slack_cells'])

        self.levels = int(grid['levels'])
        self.oracle_resolution = int(grid['oracle_resolution'])
        self.triple_resolution = int(grid['triple_resolution'])
        self.denominator = int(grid['knot_denominator'])

        self.logger = logging.getLogger(__name__)

    def _run_trials(self, label: str, trials: int, seed: int,
                    trial_fn: Callable[[int, np.random.SeedSequence], Dict[str, Optional[Dict]]],
                    laws: Sequence[str]) -> List[AxiomReport]:
        if trials < 1:
            raise HarnessException(f"trials must be at least 1, got {trials}")

        children = np.random.SeedSequence(seed).spawn(trials)
        outcomes: List[Optional[Dict]] = [None] * trials

        self.logger.info(f"{label}: {trials} trials on {self.max_workers} workers (seed {seed})")
        with tqdm(total=trials, desc=label, unit="trial", disable=not self.show_progress) as pbar:
            with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
                future_to_index = {
                    executor.submit(trial_fn, index, child): index
                    for index, child in enumerate(children)
                }
                failed = 0
                for future in as_completed(future_to_index):
                    index = future_to_index[future]
                    outcome = future.result()
                    outcomes[index] = outcome
                    if any(w is not None for w in outcome.values()):
                        failed += 1
                    pbar.update(1)
                    pbar.set_postfix({'Failing trials': failed})

        reports = []
        for law in laws:
            report = AxiomReport(law, trials)
            for index, outcome in enumerate(outcomes):
                witness = outcome.get(law)
                if witness is None:
                    continue
                report.failures += 1
                if report.first_witness is None:
                    report.first_witness = dict(witness, trial=index)
            if report.failures:
                self.logger.warning(f"{label}: law {law} failed in {report.failures}/{trials} trials")
            reports.append(report)
        return reports

    # ------------------------------------------------------------------
    # theorem-level suites

    def check_axioms(self, star: TnormSpec, tri: TnormSpec, trials: Optional[int] = None,
                     m: Optional[int] = None, seed: Optional[int] = None,
                     n: Optional[int] = None) -> List[AxiomReport]:
        """
        Run the t-norm axioms and closure laws of the convolution on sampled inputs.

        Args:
            star: Continuous t-norm
            tri: Right-continuous t-norm
            trials: Number of sampled triples
            m: Alpha-grid levels
            seed: Base seed
            n: Triple oracle resolution for the associativity cross-check

        Returns:
            One AxiomReport per law in AXIOM_LAWS
        """
        check_engine_hypothesis(star, tri)
        trials = self.trials if trials is None else trials
        m = self.levels if m is None else m
        seed = self.seed if seed is None else seed
        n = min(self.triple_resolution if n is None else n, MAX_TRIPLE_RESOLUTION)
        if m < 16:
            raise HarnessException(f"m must be at least 16, got {m}")
        if n % self.denominator:
            raise HarnessException(f"n={n} must be a multiple of the knot denominator {self.denominator}")

        grid = uniform_grid(m)
        unit = cuts_of(point_tv(1), grid)
        tolerance = self.slack_levels / m + 2 / n

        def trial(index: int, child: np.random.SeedSequence) -> Dict[str, Optional[Dict]]:
            rng = np.random.default_rng(child)
            f, g, h = (sample_lu(rng, 'mixed', self.denominator) for _ in range(3))
            inputs = {'f': _tv_json(f), 'g': _tv_json(g), 'h': _tv_json(h)}
            fc, gc, hc = cuts_of(f, grid), cuts_of(g, grid), cuts_of(h, grid)
            out: Dict[str, Optional[Dict]] = {law: None for law in AXIOM_LAWS}

            fg = convolve_cuts(fc, gc, star, tri)
            if fg != convolve_cuts(gc, fc, star, tri):
                out['T1_commutativity'] = dict(inputs)

            if convolve_cuts(fc, unit, star, tri) != fc.as_floats():
                out['T4_unit'] = {'f': inputs['f']}

            try:
                props = tv_from_cuts(fg).properties()
                closure = {'closure_normal': props.normal, 'closure_convex': props.convex,
                           'closure_usc': props.usc}
            except NotNested as e:
                closure = {law: False for law in CLOSURE_LAWS}
                inputs['error'] = str(e)
            for law, ok in closure.items():
                if not ok:
                    out[law] = dict(inputs)

            lower = meet_min(f, h)
            if not leq_cutwise(convolve_cuts(cuts_of(lower, grid), gc, star, tri),
                               convolve_cuts(hc, gc, star, tri)):
                out['T3_monotonicity'] = dict(inputs)

            left = convolve_cuts(fg, hc, star, tri)
            right = convolve_cuts(fc, convolve_cuts(gc, hc, star, tri), star, tri)
            mismatch = self._associativity_mismatch(f, g, h, star, tri, left, right, n, tolerance)
            if mismatch is not None:
                out['T2_associativity'] = dict(inputs, **mismatch)

            self.logger.debug(f"axioms trial {index}: {[law for law, w in out.items() if w]}")
            return out

        return self._run_trials(f"axioms {star.name}/{tri.name}", trials, seed, trial, AXIOM_LAWS)

    def _associativity_mismatch(self, f, g, h, star, tri, left: CutFamily, right: CutFamily,
                                n: int, tolerance: float) -> Optional[Dict]:
        """
        Compare both groupings of the engine with the triple oracle, in both directions.

        Overshoot: an engine level at x must be realised by the oracle within
        OVERSHOOT_REACH points of x. Knots on the 1/n grid let every
        attaining triple be rounded towards the peaks without losing value,
        and a 1-Lipschitz star moves the image by at most 3/n.

        Undershoot: an oracle value may exceed the engine within slack_cells
        points by at most tolerance. Larger excesses are re-examined through
        the oracle's witness triple, whose image must lie in the cut of the
        grid-floored level the engine assigns to it.
        """
        sampled = convolve3_oracle(f, g, h, star, tri, n)
        best = sampled.point_best
        reach = OVERSHOOT_REACH
        realised = np.array([best[max(k - reach, 0):k + reach + 1].max() for k in range(n + 1)])

        for name, family in (('left', left), ('right', right)):
            overshoot = _level_profile(family, n, 0.5) - realised
            k = int(np.argmax(overshoot))
            if overshoot[k] > 1e-9:
                return {'grouping': name, 'engine_excess': float(overshoot[k]), 'at': k / n}

        screen = np.minimum(_level_profile(left, n, self.slack_cells),
                            _level_profile(right, n, self.slack_cells))
        for k in np.nonzero(best > screen + tolerance)[0]:
            k = int(k)
            args = (sampled.witness_a[k], sampled.witness_b[k], sampled.witness_c[k])
            if not self._witness_covered(args, f, g, h, star, tri, left, right):
                return {'oracle_excess': float(best[k] - screen[k]), 'at': k / n,
                        'witness': [float(x) for x in args]}
        return None

    @staticmethod
    def _witness_covered(args, f, g, h, star, tri, left: CutFamily, right: CutFamily) -> bool:
        m = len(left)

        def floor(value: Fraction) -> Fraction:
            return Fraction(math.floor(value * m), m)

        a, b, c = (Fraction(float(x)) for x in args)
        p, q, r = floor(f.eval(a)), floor(g.eval(b)), floor(h.eval(c))
        left_need = floor(tnorm_eval(tri, floor(tnorm_eval(tri, p, q)), r))
        right_need = floor(tnorm_eval(tri, p, floor(tnorm_eval(tri, q, r))))
        z_left = tnorm_eval(star, tnorm_eval(star, a, b), c)
        z_right = tnorm_eval(star, a, tnorm_eval(star, b, c))
        return _level_at(left, z_left) >= left_need and _level_at(right, z_right) >= right_need

    def check_tr_norm(self, star: TnormSpec, tri: TnormSpec, trials: Optional[int] = None,
                      seed: Optional[int] = None) -> List[AxiomReport]:
        """
        Check the singleton, interval and boundary laws on two-level grids.

        Runs for any pair of operators; the cut engine's contract is not enforced.
        """
        trials = self.trials if trials is None else trials
        seed = self.seed if seed is None else seed
        grid = [Fraction(1, 2), ONE]

        def constant(lo: float, hi: float) -> CutFamily:
            return CutFamily(grid, [Interval(lo, hi)] * len(grid))

        def convolve(left: TruthValue, right: TruthValue) -> CutFamily:
            return convolve_cuts(cuts_of(left, grid), cuts_of(right, grid), star, tri,
                                 enforce_hypothesis=False)

        def trial(index: int, child: np.random.SeedSequence) -> Dict[str, Optional[Dict]]:
            rng = np.random.default_rng(child)
            x, y = (int(k) / TR_DENOMINATOR for k in rng.integers(0, TR_DENOMINATOR + 1, size=2))
            a, b = sorted(int(k) / TR_DENOMINATOR for k in rng.integers(0, TR_DENOMINATOR + 1, size=2))
            c, d = sorted(int(k) / TR_DENOMINATOR for k in rng.integers(0, TR_DENOMINATOR + 1, size=2))
            out: Dict[str, Optional[Dict]] = {law: None for law in TR_LAWS}

            product = tnorm_eval(star, x, y)
            got = convolve(point_tv(x), point_tv(y))
            if got != constant(product, product):
                out['J_closed'] = {'x': x, 'y': y, 'expected': product, 'got': got.to_dict()}

            expected = constant(tnorm_eval(star, a, c), tnorm_eval(star, b, d))
            got = convolve(interval_tv(a, b), interval_tv(c, d))
            if got != expected:
                out['J2_closed'] = {'a': a, 'b': b, 'c': c, 'd': d, 'got': got.to_dict()}

            got = convolve(interval_tv(0, 1), interval_tv(a, b))
            if got != constant(0.0, b):
                out['boundary_law'] = {'a': a, 'b': b, 'got': got.to_dict()}
            return out

        return self._run_trials(f"tr-norm {star.name}/{tri.name}", trials, seed, trial, TR_LAWS)

    def check_closure_oracle(self, star: TnormSpec, tri: TnormSpec, trials: Optional[int] = None,
                             n: Optional[int] = None, seed: Optional[int] = None) -> List[AxiomReport]:
        """
        Look for closure failures with the brute-force oracle only.

        Trial 0 always uses the min-star necessity pair, so a tri that is not
        right-continuous at (1/2, 1/2) shows up as a usc failure.

        Returns:
            Reports for closure_normal, closure_convex and closure_usc
        """
        trials = self.trials if trials is None else trials
        n = self.oracle_resolution if n is None else n
        seed = self.seed if seed is None else seed
        if n % self.denominator:
            self.logger.warning(f"oracle resolution {n} is not a multiple of the knot denominator "
                                f"{self.denominator}; peaks may fall between grid points")
        threshold = self.usc_threshold
        can_refine = star.is_continuous
        samples = max(self.fiber_samples // 4, 64)

        def refined(f, g, x: Fraction) -> float:
            return fiber_sup(f, g, star, tri, x, samples)[0]

        def trial(index: int, child: np.random.SeedSequence) -> Dict[str, Optional[Dict]]:
            rng = np.random.default_rng(child)
            if index == 0:
                f, g = necessity_case1_f(Fraction(1, 2), Fraction(1, 2)), \
                    necessity_case1_g(Fraction(1, 2), Fraction(1, 2))
            else:
                f, g = sample_lu(rng, 'mixed', self.denominator), sample_lu(rng, 'mixed', self.denominator)
            inputs = {'f': _tv_json(f), 'g': _tv_json(g)}
            values = convolve_oracle(f, g, star, tri, n).point_best
            out: Dict[str, Optional[Dict]] = {law: None for law in CLOSURE_LAWS}

            if values.max() < 1 - 1e-9:
                out['closure_normal'] = dict(inputs, max_value=float(values.max()))

            before = np.maximum.accumulate(np.concatenate([[-1.0], values[:-1]]))
            after = np.maximum.accumulate(np.concatenate([[-1.0], values[:0:-1]]))[::-1]
            depth = np.minimum(before, after) - values
            for k in np.nonzero(depth > threshold)[0]:
                x = Fraction(int(k), n)
                if can_refine and min(before[k], after[k]) - refined(f, g, x) <= threshold:
                    continue
                out['closure_convex'] = dict(inputs, point=float(x), depth=float(depth[k]))
                break

            drops = []
            for k in range(n + 1):
                for side in (-1, +1):
                    j = k + side
                    if 0 <= j <= n and values[j] - values[k] > threshold:
                        drops.append((float(values[j] - values[k]), k, side))
            drops.sort(key=lambda item: (-item[0], item[1], item[2]))
            for drop, k, side in drops[:self.max_usc_candidates]:
                x = Fraction(k, n)
                if not can_refine:
                    out['closure_usc'] = dict(inputs, point=float(x), drop=drop, confirmed=False)
                    break
                at_point = refined(f, g, x)
                closest = refined(f, g, x + side * Fraction(1, n * 2 ** 8))
                if closest - at_point <= threshold:
                    continue
                approach = min(refined(f, g, x + side * Fraction(1, n * 2 ** j)) for j in range(1, 8))
                approach = min(approach, closest)
                if approach - at_point > threshold:
                    out['closure_usc'] = dict(inputs, point=float(x), value_at_point=at_point,
                                              approach_limit=approach, confirmed=True)
                    break
            return out

        return self._run_trials(f"closure-oracle {star.name}/{tri.name}", trials, seed, trial,
                                CLOSURE_LAWS)

    # ------------------------------------------------------------------
    # supplementary suites

    def check_strong_cut_meet(self, trials: Optional[int] = None,
                              seed: Optional[int] = None) -> AxiomReport:
        """Strong cuts of the min/min meet against the min-image of the operands' strong cuts."""
        trials = self.trials if trials is None else trials
        seed = self.seed if seed is None else seed

        def trial(index: int, child: np.random.SeedSequence) -> Dict[str, Optional[Dict]]:
            rng = np.random.default_rng(child)
            f = sample_lu(rng, 'mixed', self.denominator)
            g = sample_lu(rng, 'mixed', self.denominator)
            meet = meet_min(f, g)
            levels = sorted({ZERO} | {lv for lv in f.critical_levels() + g.critical_levels() if lv < 1})
            probes = list(levels) + [(p + q) / 2 for p, q in zip(levels, levels[1:] + [ONE])]
            for alpha in sorted(probes):
                fs, gs = f.strong_cut(alpha), g.strong_cut(alpha)
                expected = [_span_meet(fs[0], gs[0])] if fs and gs else []
                if meet.strong_cut(alpha) != expected:
                    return {'strong_cut_meet': {'f': _tv_json(f), 'g': _tv_json(g),
                                                'alpha': float(alpha)}}
            return {'strong_cut_meet': None}

        return self._run_trials("strong-cut meet", trials, seed, trial, ('strong_cut_meet',))[0]

    def check_monotone_split(self, trials: Optional[int] = None,
                             seed: Optional[int] = None) -> AxiomReport:
        """Convexity against the envelope decomposition, on convex and bimodal inputs."""
        trials = self.trials if trials is None else trials
        seed = self.seed if seed is None else seed

        def trial(index: int, child: np.random.SeedSequence) -> Dict[str, Optional[Dict]]:
            rng = np.random.default_rng(child)
            convex = sample_lu(rng, 'mixed', self.denominator)
            bumpy = _bimodal(rng, self.denominator)
            for f, expected in ((convex, True), (bumpy, False)):
                if f.properties().convex != expected or is_convex_by_split(f) != expected:
                    return {'monotone_split': {'f': _tv_json(f), 'expected_convex': expected}}
            return {'monotone_split': None}

        return self._run_trials("monotone split", trials, seed, trial, ('monotone_split',))[0]

    # ------------------------------------------------------------------
    # necessity

    def necessity_demo(self, tri: TnormSpec, case: str = 'case1_min_star',
                       params: Optional[Dict] = None, n: Optional[int] = None,
                       cross_check: bool = True) -> NecessityWitness:
        """
        Rebuild one of the constructed counterexamples and measure its usc gap.

        Args:
            tri: t-norm that is not right-continuous at (a, b)
            case: 'case1_min_star' or 'case2_ordinal_star'
            params: a, b, u (and v, star or summand_lo/summand_hi/inner, summand_index)
            n: Resolution of the approach sequence and of the oracle cross-check
            cross_check: Confirm the witness with recheck_witness before returning it

        Returns:
            NecessityWitness with a positive gap
        """
        n = self.oracle_resolution if n is None else n
        params = dict(params or {})
        a = as_fraction(params.get('a', Fraction(1, 2)), 'a')
        b = as_fraction(params.get('b', Fraction(1, 2)), 'b')
        if right_limit_gap(tri, a, b) <= JUMP_TOLERANCE:
            raise NotACounterexample(
                f"{tri.name} is right-continuous at ({float(a):g}, {float(b):g}); no usc gap to show"
            )

        setup = _necessity_setup(tri, case, params, n)
        if not setup['approach']:
            raise HarnessException(f"resolution n={n} too coarse for an approach sequence")
        # values along the approach are nonincreasing; the last one is the limit
        approach_limit = min(value for _, value in setup['approach'])
        gap = approach_limit - setup['value_at_point']
        if gap <= 0:
            raise NotACounterexample(f"{tri.name}: approach limit does not exceed the point value")

        witness = NecessityWitness(
            point=float(setup['point']),
            value_at_point=float(setup['value_at_point']),
            approach_limit=float(approach_limit),
            gap=float(gap),
        )
        self.logger.info(f"{case} with {tri.name}: gap {witness.gap:g} at {witness.point:.6f}")

        if cross_check and not self.recheck_witness(witness, tri, case, params, n):
            raise NotACounterexample(f"{case} with {tri.name}: fiber sups do not confirm the gap")
        return witness

    def recheck_witness(self, witness: NecessityWitness, tri: TnormSpec,
                        case: str = 'case1_min_star', params: Optional[Dict] = None,
                        n: Optional[int] = None) -> bool:
        """
        Re-evaluate a witness on refined fibers.

        At the point the fiber sup must not exceed value_at_point; on the
        approach side it must come within 1/n of approach_limit.
        """
        n = self.oracle_resolution if n is None else n
        setup = _necessity_setup(tri, case, params, n)
        f, g, star = setup['f'], setup['g'], setup['star']
        point = setup['point']

        at_point = fiber_sup(f, g, star, tri, point, self.fiber_samples)[0]
        if at_point > witness.value_at_point + 1e-12:
            self.logger.warning(f"witness refuted: fiber sup {at_point} at the point")
            return False
        side = setup['side']
        for j in range(0, 4):
            z = point + side * Fraction(1, n * 2 ** j)
            if 0 <= z <= 1 and fiber_sup(f, g, star, tri, z, self.fiber_samples)[0] >= \
                    witness.approach_limit - 1 / n:
                return True
        self.logger.warning("witness refuted: no nearby value reaches the approach limit")
        return False


# ----------------------------------------------------------------------
# module-level entry points

def _default_harness() -> VerificationHarness:
    return VerificationHarness({'harness': {'show_progress': False}})


def check_axioms(star: TnormSpec, tri: TnormSpec, trials: int, m: int, seed: int,
                 n: int = MAX_TRIPLE_RESOLUTION) -> List[AxiomReport]:
    return _default_harness().check_axioms(star, tri, trials, m, seed, n)


def check_tr_norm(star: TnormSpec, tri: TnormSpec, trials: int, seed: int) -> List[AxiomReport]:
    return _default_harness().check_tr_norm(star, tri, trials, seed)


def check_closure_oracle(star: TnormSpec, tri: TnormSpec, trials: int, n: int,
                         seed: int) -> List[AxiomReport]:
    return _default_harness().check_closure_oracle(star, tri, trials, n, seed)


def necessity_demo(tri: TnormSpec, case: str = 'case1_min_star', params: Optional[Dict] = None,
                   n: int = 2000) -> NecessityWitness:
    return _default_harness().necessity_demo(tri, case, params, n)


def recheck_witness(witness: NecessityWitness, tri: TnormSpec, case: str = 'case1_min_star',
                    params: Optional[Dict] = None, n: int = 2000) -> bool:
    return _default_harness().recheck_witness(witness, tri, case, params, n)


def check_strong_cut_meet(trials: int, seed: int) -> AxiomReport:
    return _default_harness().check_strong_cut_meet(trials, seed)


def check_monotone_split(trials: int, seed: int) -> AxiomReport:
    return _default_harness().check_monotone_split(trials, seed)
