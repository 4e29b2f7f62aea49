"""
Tests for the t-norm zoo, ordinal sums and the probes.
"""

import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tnorms import (
    DegenerateSummand,
    OverlappingSummands,
    TnormException,
    TnormParseError,
    TnormSpec,
    load_tnorm,
    ordinal_sum,
    probe_conditional_cancellativity,
    probe_continuity,
    right_limit_gap,
    tnorm_eval,
    tnorm_eval_array,
    tnorm_from_name,
    zoo,
)

from conftest import spec_id, unit_dyadics


ZOO = zoo()
EXACT_ZOO = ZOO[:5] + [ordinal_sum([('1/5', '4/5', 'product')])]


class TestValues:

    def test_lukasiewicz_float_and_exact(self):
        luk = TnormSpec('lukasiewicz')
        assert tnorm_eval(luk, 0.7, 0.6) == pytest.approx(0.3)
        assert tnorm_eval(luk, Fraction(7, 10), Fraction(6, 10)) == Fraction(3, 10)

    def test_ordinal_sum_inside_block(self):
        spec = ordinal_sum([('1/5', '4/5', 'product')])
        value = tnorm_eval(spec, Fraction(7, 10), Fraction(7, 10))
        assert value == Fraction(1, 5) + Fraction(3, 5) * Fraction(5, 6) ** 2
        assert float(value) == pytest.approx(0.616667, abs=1e-6)

    def test_ordinal_sum_outside_blocks_is_min(self):
        spec = ordinal_sum([(0.2, 0.8, 'product')])
        assert tnorm_eval(spec, 0.1, 0.9) == 0.1
        assert tnorm_eval(spec, 0.5, 0.9) == 0.5

    def test_lukasiewicz_summand_floor(self):
        spec = ordinal_sum([(0, 0.5, 'lukasiewicz')])
        assert tnorm_eval(spec, 0.25, 0.25) == 0

    def test_discontinuous_members(self):
        assert tnorm_eval(TnormSpec('drastic'), 0.5, 0.5) == 0
        assert tnorm_eval(TnormSpec('drastic'), 1.0, 0.3) == 0.3
        nm = TnormSpec('nilpotent_minimum')
        assert tnorm_eval(nm, 0.6, 0.5) == 0.5
        assert tnorm_eval(nm, 0.5, 0.5) == 0

    def test_empty_ordinal_sum_is_minimum(self):
        assert ordinal_sum([]) == TnormSpec('minimum')


@pytest.mark.parametrize('spec', EXACT_ZOO, ids=spec_id)
class TestLaws:

    @given(unit_dyadics, unit_dyadics)
    @settings(max_examples=60, deadline=None)
    def test_commutative(self, spec, x, y):
        assert tnorm_eval(spec, x, y) == tnorm_eval(spec, y, x)

    @given(unit_dyadics, unit_dyadics, unit_dyadics)
    @settings(max_examples=60, deadline=None)
    def test_associative(self, spec, x, y, z):
        left = tnorm_eval(spec, tnorm_eval(spec, x, y), z)
        right = tnorm_eval(spec, x, tnorm_eval(spec, y, z))
        assert left == right

    @given(unit_dyadics, unit_dyadics, unit_dyadics)
    @settings(max_examples=60, deadline=None)
    def test_monotone(self, spec, x, y, z):
        low, high = sorted((x, y))
        assert tnorm_eval(spec, low, z) <= tnorm_eval(spec, high, z)

    @given(unit_dyadics)
    @settings(max_examples=30, deadline=None)
    def test_unit(self, spec, x):
        assert tnorm_eval(spec, x, Fraction(1)) == x
        assert tnorm_eval(spec, Fraction(1), x) == x


@pytest.mark.parametrize('spec', ZOO, ids=spec_id)
@given(st.lists(st.integers(0, 1024), min_size=1, max_size=20),
       st.lists(st.integers(0, 1024), min_size=1, max_size=20))
@settings(max_examples=30, deadline=None)
def test_array_matches_scalar(spec, xs, ys):
    size = min(len(xs), len(ys))
    x = np.array(xs[:size]) / 1024
    y = np.array(ys[:size]) / 1024
    vector = tnorm_eval_array(spec, x, y)
    scalar = [tnorm_eval(spec, float(a), float(b)) for a, b in zip(x, y)]
    assert vector.tolist() == scalar


class TestDescriptors:

    def test_aliases(self):
        assert tnorm_from_name('min').kind == 'minimum'
        assert tnorm_from_name('Godel').kind == 'minimum'
        assert tnorm_from_name('luk').kind == 'lukasiewicz'
        assert tnorm_from_name('nm').kind == 'nilpotent_minimum'

    def test_unknown_name(self):
        with pytest.raises(TnormParseError):
            tnorm_from_name('hamacher')

    def test_unknown_kind(self):
        with pytest.raises(TnormException):
            TnormSpec('hamacher')

    def test_inconsistent_declared_class(self):
        with pytest.raises(TnormException):
            TnormSpec('drastic', declared_class='continuous')

    def test_overlapping_summands(self):
        with pytest.raises(OverlappingSummands):
            ordinal_sum([(0.1, 0.5, 'product'), (0.4, 0.9, 'lukasiewicz')])

    def test_touching_summands_allowed(self):
        spec = ordinal_sum([(0.5, 1, 'product'), (0, 0.5, 'lukasiewicz')])
        assert [s.lo for s in spec.summands] == [0, Fraction(1, 2)]

    @pytest.mark.parametrize('lo,hi', [(0.5, 0.5), (0.6, 0.4), (-0.1, 0.5), (0.5, 1.2)])
    def test_degenerate_summand(self, lo, hi):
        with pytest.raises(DegenerateSummand):
            ordinal_sum([(lo, hi, 'product')])

    def test_unknown_inner(self):
        with pytest.raises(TnormException):
            ordinal_sum([(0.2, 0.8, 'minimum')])

    def test_name(self):
        assert TnormSpec('product').name == 'product'
        assert ordinal_sum([(0.2, 0.8, 'product')]).name == 'ordinal_sum[(0.2,0.8,product)]'

    def test_dict_round_trip(self):
        spec = ordinal_sum([('1/3', '2/3', 'lukasiewicz')])
        data = spec.to_dict()
        assert data['summands'][0]['lo'] == '1/3'
        assert TnormSpec.from_dict(data) == spec

    @pytest.mark.parametrize('data,field', [
        ({'kind': 'hamacher'}, "'kind'"),
        ({'kind': 'ordinal_sum', 'summands': 'x'}, "'summands'"),
        ({'kind': 'ordinal_sum', 'summands': [{'lo': 0.1, 'hi': 0.5}]}, "summands[0].inner"),
        ({'kind': 'ordinal_sum', 'summands': [{'lo': 0.1, 'hi': 0.5, 'inner': 'min'}]}, "summands[0].inner"),
        ({'kind': 'product', 'summands': [{'lo': 0, 'hi': 1, 'inner': 'product'}]}, "'summands'"),
    ])
    def test_parse_errors_name_field(self, data, field):
        with pytest.raises(TnormParseError, match=field.replace('[', r'\[').replace(']', r'\]')):
            TnormSpec.from_dict(data)

    def test_load_from_file(self, tmp_path):
        path = tmp_path / 'star.json'
        path.write_text(json.dumps({
            'kind': 'ordinal_sum',
            'summands': [{'lo': 0.2, 'hi': 0.8, 'inner': 'product'}],
        }))
        spec = load_tnorm(path)
        assert spec.kind == 'ordinal_sum'
        assert spec.summands[0].inner == 'product'

    def test_load_by_name(self):
        assert load_tnorm('prod') == TnormSpec('product')

    def test_load_missing(self, tmp_path):
        with pytest.raises(TnormParseError):
            load_tnorm(tmp_path / 'missing.json')

    def test_load_invalid_json(self, tmp_path):
        path = tmp_path / 'bad.json'
        path.write_text('{not json')
        with pytest.raises(TnormParseError):
            load_tnorm(path)


class TestProbes:

    @pytest.mark.parametrize('spec,expected', [
        (TnormSpec('minimum'), 'continuous'),
        (TnormSpec('product'), 'continuous'),
        (TnormSpec('lukasiewicz'), 'continuous'),
        (ordinal_sum([(0.2, 0.8, 'product')]), 'continuous'),
        (TnormSpec('drastic'), 'right_continuous_only'),
        (TnormSpec('nilpotent_minimum'), 'left_continuous_only'),
    ], ids=lambda value: value if isinstance(value, str) else value.kind)
    def test_continuity(self, spec, expected):
        assert probe_continuity(spec, 256) == expected

    def test_continuity_witness(self):
        verdict, witness = probe_continuity(TnormSpec('nilpotent_minimum'), 64, return_witness=True)
        assert verdict == 'left_continuous_only'
        x, y, side, gap = witness
        assert side == 'from_above'
        assert x + y == pytest.approx(1.0)
        assert gap > 0

    @pytest.mark.parametrize('spec,expected', [
        (TnormSpec('product'), True),
        (TnormSpec('lukasiewicz'), True),
        (TnormSpec('drastic'), True),
        (TnormSpec('minimum'), False),
        (TnormSpec('nilpotent_minimum'), False),
        (ordinal_sum([(0.2, 0.8, 'product')]), False),
    ], ids=lambda value: str(value) if isinstance(value, bool) else value.kind)
    def test_conditional_cancellativity(self, spec, expected):
        verdict, witness = probe_conditional_cancellativity(spec, 64)
        assert verdict is expected
        if not expected:
            x1, x2, y = witness
            assert x1 != x2
            assert tnorm_eval(spec, x1, y) == tnorm_eval(spec, x2, y) > 0

    def test_small_grid_rejected(self):
        with pytest.raises(TnormException):
            probe_continuity(TnormSpec('minimum'), 8)
        with pytest.raises(TnormException):
            probe_conditional_cancellativity(TnormSpec('minimum'), 8)


class TestRightLimitGap:

    def test_nilpotent_minimum_jumps(self):
        gap = right_limit_gap(TnormSpec('nilpotent_minimum'), Fraction(1, 2), Fraction(1, 2))
        assert gap == Fraction(1, 2)

    def test_drastic_is_right_continuous(self):
        assert right_limit_gap(TnormSpec('drastic'), Fraction(1, 2), Fraction(1, 2)) == 0

    @pytest.mark.parametrize('spec', ZOO[:3], ids=spec_id)
    def test_continuous_gap_is_tiny(self, spec):
        assert right_limit_gap(spec, Fraction(1, 3), Fraction(2, 5)) < Fraction(1, 2 ** 30)

    def test_at_one(self):
        assert right_limit_gap(TnormSpec('nilpotent_minimum'), Fraction(1, 2), Fraction(1)) == 0
