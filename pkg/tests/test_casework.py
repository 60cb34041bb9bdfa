# -*- coding: utf-8 -*-

import copy
import dataclasses
import json
import os

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dp2_cluster.casework import (STAGES, CaseRun, CaseVerdict, case_chain, load_case_fixtures, load_effects,
                                  parse_case_fixture, parse_effects, parse_form, parse_monomial, rank_candidates,
                                  sweep_cases, verify_case_fixture)
from dp2_cluster.config import fixture_path, load_config
from dp2_cluster.contour import SIDES, Contour, Special, contour_for, parse_contour
from dp2_cluster.errors import CaseFailure, InvalidFixture, ParseError, PreconditionViolated
from dp2_cluster.laurent import LaurentPoly
from dp2_cluster.somos import ClassifiedVariable, Family
from dp2_cluster.tiling import BLACK, WHITE

FIXTURE_IDS = ['base_odd', 'base_even', 'x3_pos', 'x3_neg'] + \
    [f'a{a}_case{c}' for a in range(1, 5) for c in range(1, 4)]

# contours of x2 and x1, reached through the mirror when a slot has m = 1
MIRROR_CONTOURS = {
    ClassifiedVariable(Family.EVEN, 1, 0): '-1,1,-1,0,0-R',
    ClassifiedVariable(Family.ODD, 1, 0): '-1,0,0,-1,1-R',
}

SAMPLES = [(f.id, n, k) for f in load_case_fixtures(load_config()) for n, k in f.samples]


@pytest.fixture(scope='module')
def raw_effects(config):
    with open(fixture_path(config, 'effects_file')) as file:
        return json.load(file)


@pytest.fixture(scope='module')
def raw_base_odd(config):
    with open(os.path.join(fixture_path(config, 'cases_dir'), 'base_odd.json')) as file:
        return json.load(file)


# Linear forms ---------------------------------------------------------------------------------------------------------
@pytest.mark.parametrize('text, n, k, expected', [
    ('k-3n+1', 1, 5, 3),
    ('n-1', 0, 7, -1),
    ('0', 3, 3, 0),
    (2, 0, 0, 2),
    ('-ceil((k+5n-5)/2)-1', 1, 4, -3),
    ('-ceil((k+5n-5)/2)-1', 0, 4, -1),
    ('floor((k-3n)/2)', 1, 6, 1),
    ('floor((k-3n)/2)', 1, 2, -1),
])
def test_parse_form(text, n, k, expected):
    assert parse_form(text)(n, k) == expected


@pytest.mark.parametrize('text', ['k*n', '2k 3', 'ceil((k)/0)', 'm+1'])
def test_parse_form_errors(text):
    with pytest.raises(ParseError):
        parse_form(text)


def test_parse_monomial():
    assert parse_monomial('x3^2 x4') == LaurentPoly.monomial((0, 0, 2, 1, 0))
    assert parse_monomial('1') == LaurentPoly.one()
    with pytest.raises(ParseError):
        parse_monomial('y2')


# Effects --------------------------------------------------------------------------------------------------------------
def test_effect_catalog(catalog):
    keep = parse_contour('2,-2,1,0,-1-K')
    assert catalog.apply(keep, 'c', WHITE) == Contour((2, -2, 1, 0, -1), Special.REMOVE)
    assert catalog.apply(keep, 'a', WHITE) == Contour((1, -1, 1, 0, 0), Special.KEEP)
    assert catalog.apply(keep, 'd', BLACK) == Contour((2, -2, 0, 0, -2), Special.REMOVE)


@given(st.sampled_from(SIDES), st.sampled_from([WHITE, BLACK]), st.sampled_from(list(Special)),
       st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6))
def test_undo_inverts_apply(catalog, side, color, special, a, b, e):
    c = Contour((a, b, a + e, a + b, e), special)
    assert catalog.undo(catalog.apply(c, side, color), side, color) == c
    assert catalog.apply(catalog.undo(c, side, color), side, color) == c
    assert catalog.apply(c, side, color).closed


def test_effects_are_cached(config):
    path = fixture_path(config, 'effects_file')
    assert load_effects(path) is load_effects(path)


def test_effect_catalog_validation(raw_effects):
    missing = copy.deepcopy(raw_effects)
    missing['effects'].pop()
    duplicate = copy.deepcopy(raw_effects)
    duplicate['effects'][1] = duplicate['effects'][0]
    open_delta = copy.deepcopy(raw_effects)
    open_delta['effects'][0]['K']['delta'] = [1, 0, 0, 0, 0]
    bad_side = copy.deepcopy(raw_effects)
    bad_side['effects'][0]['side'] = 'f'
    for data in (missing, duplicate, open_delta, bad_side, {}):
        with pytest.raises(InvalidFixture):
            parse_effects(data)


# Fixtures -------------------------------------------------------------------------------------------------------------
def test_packaged_fixtures(fixtures):
    assert sorted(fixtures) == sorted(FIXTURE_IDS)
    for fixture in fixtures.values():
        assert fixture.samples
        assert all(fixture.in_range(n, k) for n, k in fixture.samples)


@pytest.mark.parametrize('change', [
    lambda d: d['points'].pop(),
    lambda d: d['S'].__setitem__(2, [1, 5]),
    lambda d: d['S'].__setitem__(2, [1]),
    lambda d: d['samples'].append([0, 2]),
    lambda d: d.__setitem__('kuo', 'sideways'),
    lambda d: d['points'][0].__setitem__('hint', 'middle'),
    lambda d: d['T']['K'].pop(),
    lambda d: d['T'].__setitem__('R', ['1', 'x3', 'x3', 'x3', 'x3', 'x3']),
    lambda d: d['slots'][0].__setitem__('m', 'k*k'),
])
def test_fixture_validation(raw_base_odd, change):
    data = copy.deepcopy(raw_base_odd)
    change(data)
    with pytest.raises(InvalidFixture):
        parse_case_fixture(data)


def test_slot_variables(fixtures):
    fixture = fixtures['x3_neg']
    variables = fixture.variables(-2, 2)
    assert variables[0] == ClassifiedVariable(Family.ODD, 2, 2)
    assert variables[1] == ClassifiedVariable(Family.EVEN, 4, -1)


def test_range(fixtures):
    fixture = fixtures['a1_case1']
    assert fixture.in_range(1, 3)
    assert not fixture.in_range(0, 3)
    with pytest.raises(PreconditionViolated):
        fixture.check_range(0, 3)


# Chains ---------------------------------------------------------------------------------------------------------------
@pytest.mark.parametrize('case, n, k', SAMPLES)
def test_chain_matches_the_slots(fixtures, catalog, case, n, k):
    fixture = fixtures[case]
    g, chain = case_chain(fixture, n, k, catalog)
    assert g.closed
    for c, v in zip(chain, fixture.variables(n, k)):
        expected = str(contour_for(v)) if v.m >= 2 else MIRROR_CONTOURS[v]
        assert str(c) == expected


@pytest.mark.parametrize('case, n, k', SAMPLES)
def test_shape_stage(fixtures, tiling, config, catalog, case, n, k):
    (verdict,) = verify_case_fixture(fixtures[case], n, k, tiling, config, catalog, stages=('shape',))
    assert verdict.passed, verdict.detail


def test_out_of_range_run(fixtures, tiling, config, catalog):
    with pytest.raises(PreconditionViolated):
        verify_case_fixture(fixtures['a1_case1'], 0, 3, tiling, config, catalog)


def test_rank_candidates(fixtures, tiling, config, catalog):
    fixture = fixtures['base_odd']
    run = CaseRun(fixture, 0, 4, tiling, catalog, config)
    for spec in fixture.points:
        ranked = rank_candidates(run.extracted, spec)
        assert ranked
        assert all(run.extracted.graph.nodes[node]['color'] == spec.color for node in ranked)
        assert ranked[0] not in rank_candidates(run.extracted, spec, exclude=ranked[:1])


# Full pipeline --------------------------------------------------------------------------------------------------------
@pytest.mark.parametrize('case, n, k', [
    ('base_odd', 0, 4),
    ('base_odd', 0, 5),
    ('base_even', 0, 3),
    ('base_even', 0, 4),
])
def test_base_cases(fixtures, tiling, config, catalog, case, n, k):
    verdicts = verify_case_fixture(fixtures[case], n, k, tiling, config, catalog)
    assert [v.stage for v in verdicts] == list(STAGES)
    for verdict in verdicts:
        assert verdict.passed, f'{verdict.stage}: {verdict.detail}'


@pytest.mark.slow
def test_a1_case1(fixtures, tiling, config, catalog):
    for verdict in verify_case_fixture(fixtures['a1_case1'], 1, 3, tiling, config, catalog):
        assert verdict.passed, f'{verdict.stage}: {verdict.detail}'


@pytest.mark.slow
@pytest.mark.parametrize('case, n, k', SAMPLES)
def test_every_sample_passes(fixtures, tiling, config, catalog, case, n, k):
    for verdict in verify_case_fixture(fixtures[case], n, k, tiling, config, catalog):
        assert verdict.passed, f'{verdict.stage}: {verdict.detail}'


# Point search ---------------------------------------------------------------------------------------------------------
def test_points_reproduce_the_transcription(fixtures, tiling, config, catalog):
    run = CaseRun(fixtures['base_odd'], 0, 4, tiling, catalog, config)
    assert run.g == parse_contour('2,-1,0,1,-2-K')
    # the nearest black to edge e gives x5 where the transcription has x4
    assert run.points == [('ba', -2, 0), ('wd', -2, 0), ('ba', -2, 1), ('w5', -2, 1)]
    assert tuple(run.t_values) == fixtures['base_odd'].transcribed[Special.KEEP]


def test_points_reproduce_the_removed_transcription(fixtures, tiling, config, catalog):
    run = CaseRun(fixtures['base_even'], 0, 3, tiling, catalog, config)
    assert run.g.special is Special.REMOVE
    assert run.points == [('wd', -2, 0), ('bv', -1, 0), ('w5', -1, 0), ('ba', -2, 0)]
    assert [str(t) for t in run.t_values] == ['1', 'x2*x3*x4*x5', 'x3*x5', 'x2*x4', 'x2*x3', 'x4*x5']


def test_points_without_transcription_are_balanced(fixtures, tiling, config, catalog):
    fixture = dataclasses.replace(fixtures['base_odd'], transcribed={})
    run = CaseRun(fixture, 0, 4, tiling, catalog, config)
    t = run.t_values
    assert t[0] * t[1] == t[2] * t[3] == t[4] * t[5]
    assert run.points[0] == ('bv', -1, 0)


def test_unrealizable_points_raise(fixtures, tiling, config, catalog):
    narrow = copy.deepcopy(config)
    narrow['matching_meta']['point_search_limit'] = 1
    # one candidate per point leaves p3 = bv(-2, 0), which no p4 completes
    run = CaseRun(fixtures['base_odd'], 0, 4, tiling, catalog, narrow)
    with pytest.raises(CaseFailure) as error:
        run.points
    assert error.value.case == 'base_odd'

    verdicts = {v.stage: v for v in verify_case_fixture(fixtures['base_odd'], 0, 4, tiling, narrow, catalog)}
    assert verdicts['shape'].passed
    for stage in ('deletion', 'kuo', 't_products', 'transcription'):
        assert not verdicts[stage].passed
        assert verdicts[stage].detail.startswith('CaseFailure')


def test_wrong_transcription_fails(fixtures, tiling, config, catalog):
    wrong_t = tuple(parse_monomial('1') for _ in range(6))
    fixture = dataclasses.replace(fixtures['base_odd'], transcribed={Special.KEEP: wrong_t})
    verdicts = verify_case_fixture(fixture, 0, 4, tiling, config, catalog)
    assert all(v.passed for v in verdicts if v.stage != 'transcription')
    (transcription,) = [v for v in verdicts if v.stage == 'transcription']
    assert not transcription.passed
    assert 'but the transcription has [1, 1, 1, 1, 1, 1]' in transcription.detail


def test_wrong_template_fails(raw_base_odd, tiling, config, catalog):
    data = copy.deepcopy(raw_base_odd)
    data['template'][0]['special'] = 'R'
    (verdict,) = verify_case_fixture(parse_case_fixture(data), 0, 4, tiling, config, catalog,
                                     stages=('transcription',))
    assert not verdict.passed
    assert 'template gives 2,-1,0,1,-2-R but G = 2,-1,0,1,-2-K' in verdict.detail


def test_sweep_cases(fixtures, tiling, config):
    lines = list(sweep_cases(config, tiling, [fixtures['base_even']], stages=('shape',)))
    assert [(line['n'], line['k']) for line in lines] == [(0, 3), (0, 4), (0, 5)]
    assert all(line['pass'] for line in lines)
    assert set(lines[0]) == {'case', 'n', 'k', 'stage', 'pass', 'detail'}


def test_case_verdict_json():
    verdict = CaseVerdict('base_odd', 0, 4, 'kuo', False, 'balanced identity fails')
    assert verdict.to_json() == {'case': 'base_odd', 'n': 0, 'k': 4, 'stage': 'kuo', 'pass': False,
                                 'detail': 'balanced identity fails'}
