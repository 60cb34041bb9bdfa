# -*- coding: utf-8 -*-

import copy
import json
from fractions import Fraction

import pytest

from dp2_cluster.config import fixture_path
from dp2_cluster.errors import InvalidFixture
from dp2_cluster.quiver import Model, classify_model
from dp2_cluster.tiling import (BLACK, WHITE, CellRect, dual_quiver, expand, load_tiling, parse_tiling,
                                superpotential_terms, validate, vertex_degrees)


@pytest.fixture(scope='module')
def raw_tiling(config):
    with open(fixture_path(config, 'tiling_file')) as file:
        return json.load(file)


def test_packaged_tiling_is_valid(tiling):
    validate(tiling)
    assert (len(tiling.vertices), len(tiling.edges), len(tiling.faces)) == (6, 11, 5)


def test_dual_quiver_is_model1(tiling):
    assert classify_model(dual_quiver(tiling)) is Model.MODEL1


def test_superpotential(tiling):
    assert superpotential_terms(tiling) == {WHITE: [5, 3, 3], BLACK: [4, 4, 3]}
    assert sum(vertex_degrees(tiling).values()) == 22


def test_positions_use_the_lattice(tiling):
    assert tiling.position('wd', 1, 2) == (Fraction(5, 3), Fraction(8, 3))


def test_expand(tiling):
    patch = expand(tiling, CellRect(-1, 1, -1, 1))
    assert patch.graph.number_of_nodes() == 54
    assert patch.graph.degree[(tiling.anchor, 0, 0)] == 5
    assert len(patch.faces) == 45
    for u, v in patch.graph.edges():
        assert {patch.graph.nodes[u]['color'], patch.graph.nodes[v]['color']} == {WHITE, BLACK}


def test_expand_rejects_empty_rect(tiling):
    with pytest.raises(ValueError):
        expand(tiling, CellRect(1, 0, 0, 0))


def test_recolored_vertex_is_rejected(raw_tiling):
    data = copy.deepcopy(raw_tiling)
    data['vertices'][1]['color'] = 'black'
    with pytest.raises(InvalidFixture):
        validate(parse_tiling(data))


def test_missing_edge_is_rejected(raw_tiling):
    data = copy.deepcopy(raw_tiling)
    data['edges'].pop()
    with pytest.raises(InvalidFixture):
        validate(parse_tiling(data))


def test_malformed_documents(raw_tiling):
    data = copy.deepcopy(raw_tiling)
    del data['anchor']
    with pytest.raises(InvalidFixture):
        parse_tiling(data)
    data = copy.deepcopy(raw_tiling)
    data['vertices'][0]['x'] = '1/0'
    with pytest.raises(InvalidFixture):
        parse_tiling(data)


def test_unreadable_fixture(tmp_path):
    with pytest.raises(InvalidFixture):
        load_tiling(str(tmp_path / 'missing.json'))
    bad = tmp_path / 'bad.json'
    bad.write_text('{not json')
    with pytest.raises(InvalidFixture):
        load_tiling(str(bad))
