# -*- coding: utf-8 -*-

import pytest

from dp2_cluster import matching
from dp2_cluster.contour import contour_for, extract
from dp2_cluster.errors import CapExceeded, OutOfRange, PreconditionViolated
from dp2_cluster.laurent import LaurentPoly, at_ones, x
from dp2_cluster.matching import (KuoVariant, c_value, cap_lower_bound, count_matchings, covering_monomial,
                                  enumerate_matchings, expected_matching_count, kuo_check, matching_weight, sweep,
                                  verify_main_theorem, weight)
from dp2_cluster.somos import ClassifiedVariable, Family

EVEN, ODD = Family.EVEN, Family.ODD


# Toy graphs -----------------------------------------------------------------------------------------------------------
def test_ladder_matchings(grid):
    g = grid(2, 3)
    assert count_matchings(g) == 3
    matchings = enumerate_matchings(g)
    assert len(matchings) == 3
    for m in matchings:
        assert len(m) == 3
        assert {node for edge in m for node in edge} == set(g)
    assert sum((matching_weight(g, m) for m in matchings), LaurentPoly.zero()) == weight(g)
    assert at_ones(weight(g)) == 3


def test_unbalanced_graph_has_no_matching(grid):
    g = grid(3, 3)
    assert count_matchings(g) == 0
    assert weight(g).is_zero()
    assert enumerate_matchings(g) == []


def test_cap(grid):
    g = grid(4, 4)
    assert count_matchings(g) == 36
    with pytest.raises(CapExceeded) as error:
        weight(g, cap=10)
    assert error.value.count == 36


def test_kuo_balanced(grid):
    pts = [(0, 0), (0, 1), (0, 2), (1, 2)]
    assert kuo_check(grid(2, 3), pts, KuoVariant.BALANCED)


def test_kuo_unbalanced(grid):
    pts = [(0, 0), (0, 2), (2, 2), (2, 1)]
    assert kuo_check(grid(3, 3), pts, KuoVariant.UNBALANCED)


def test_kuo_non_alternating(grid):
    pts = [(0, 2), (1, 1), (1, 0), (0, 1)]
    assert kuo_check(grid(2, 3), pts, KuoVariant.NON_ALTERNATING)


def test_kuo_with_explicit_subsets(grid):
    # balanced identity with p1 <-> p3 and p2 <-> p4 relabeled
    pts = [(0, 2), (1, 2), (0, 0), (0, 1)]
    subsets = ((), (1, 2, 3, 4), (3, 4), (1, 2), (2, 3), (1, 4))
    assert kuo_check(grid(2, 3), pts, KuoVariant.BALANCED, subsets=subsets)


def test_kuo_rejects_unbalanced_deletions(grid):
    with pytest.raises(PreconditionViolated):
        kuo_check(grid(2, 3), [(0, 0), (0, 2), (0, 1), (1, 2)], KuoVariant.BALANCED)
    with pytest.raises(PreconditionViolated):
        kuo_check(grid(2, 3), [(0, 0), (0, 0), (0, 1), (1, 2)], KuoVariant.BALANCED)


# Covering monomial ----------------------------------------------------------------------------------------------------
def test_zero_contour_covers_x3(tiling):
    e = extract(contour_for(ClassifiedVariable(ODD, 2, 0)), tiling)
    report, monomial = covering_monomial(e)
    assert report.c3 == 1
    assert monomial == x(3)
    assert c_value(e) == x(3)


# Main theorem ---------------------------------------------------------------------------------------------------------
@pytest.mark.parametrize('family, m, n', [
    (ODD, 2, 0), (EVEN, 2, 0), (ODD, 3, 0), (EVEN, 3, 0), (ODD, 4, 0),
    (EVEN, 3, 1), (ODD, 3, -1),
])
def test_main_theorem(tiling, family, m, n):
    verdict = verify_main_theorem(ClassifiedVariable(family, m, n), tiling)
    assert verdict.passed
    assert not verdict.reflected
    assert verdict.to_json()['pass'] is True


@pytest.mark.parametrize('family, m', [(EVEN, 1), (ODD, 1), (EVEN, 0), (ODD, 0)])
def test_main_theorem_through_the_mirror(tiling, family, m):
    verdict = verify_main_theorem(ClassifiedVariable(family, m, 0), tiling)
    assert verdict.passed
    assert verdict.reflected


def test_matching_counts():
    assert expected_matching_count(ClassifiedVariable(EVEN, 3, 1)) == 4
    assert expected_matching_count(ClassifiedVariable(ODD, 3, -1)) == 12


@pytest.mark.parametrize('family, m, n, count', [(EVEN, 3, 1, 4), (ODD, 3, -1, 12), (EVEN, 3, 0, 2)])
def test_verdict_counts_hat_matchings(tiling, family, m, n, count):
    v = ClassifiedVariable(family, m, n)
    verdict = verify_main_theorem(v, tiling)
    assert verdict.matchings == count_matchings(extract(contour_for(v), tiling).hat) == count
    assert verdict.expected_matchings == count
    assert verdict.passed


def test_matching_count_mismatch_fails(tiling, monkeypatch):
    monkeypatch.setattr(matching, 'expected_matching_count', lambda v: 5)
    verdict = verify_main_theorem(ClassifiedVariable(EVEN, 3, 1), tiling)
    assert verdict.computed == verdict.expected
    assert not verdict.passed
    report = verdict.to_json()
    assert report['matchings'] == 4
    assert report['expected_matchings'] == 5


def test_cap_lower_bound():
    assert cap_lower_bound(ClassifiedVariable(EVEN, 2, 0), 10) is None
    assert cap_lower_bound(ClassifiedVariable(ODD, 8, 0), 1000) == 1217
    with pytest.raises(CapExceeded):
        verify_main_theorem(ClassifiedVariable(EVEN, 7, 2), cap=10)


def test_sweep(config, tiling):
    small = dict(config)
    small['sweep_meta'] = dict(config['sweep_meta'], families=['even'], n_min=0, n_max=0, k_min=2, k_max=3)
    df = sweep(small, tiling, workers=2)
    assert list(df['k']) == [2, 3]
    assert list(df['status']) == ['pass', 'pass']
    assert list(df['matchings']) == [1, 2]


def test_sweep_starts_at_k2(config, tiling):
    small = dict(config)
    small['sweep_meta'] = dict(config['sweep_meta'], k_min=1)
    with pytest.raises(OutOfRange):
        sweep(small, tiling)


@pytest.mark.slow
def test_configured_grid(config, tiling):
    df = sweep(config, tiling)
    assert 'fail' not in set(df['status'])
    assert (df['status'] == 'pass').sum() >= 40
