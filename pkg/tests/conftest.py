# -*- coding: utf-8 -*-

import networkx as nx
import pytest

from dp2_cluster.casework import default_catalog, load_case_fixtures
from dp2_cluster.config import load_config
from dp2_cluster.tiling import BLACK, WHITE, dp2_tiling


@pytest.fixture(scope='session')
def config():
    return load_config()


@pytest.fixture(scope='session')
def tiling():
    return dp2_tiling()


@pytest.fixture(scope='session')
def catalog(config):
    return default_catalog(config)


@pytest.fixture(scope='session')
def fixtures(config):
    return {f.id: f for f in load_case_fixtures(config)}


def grid_graph(rows, cols):
    '''
    rows x cols grid with checkerboard colors; (0, 0) is white. Face labels
    give horizontal edges (1, 2) on even rows, (3, 4) on odd rows and vertical edges (2, 5).
    '''
    g = nx.Graph()
    for r in range(rows):
        for c in range(cols):
            g.add_node((r, c), color=WHITE if (r + c) % 2 == 0 else BLACK)
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                g.add_edge((r, c), (r, c + 1), faces=(1, 2) if r % 2 == 0 else (3, 4))
            if r + 1 < rows:
                g.add_edge((r, c), (r + 1, c), faces=(2, 5))
    return g


@pytest.fixture
def grid():
    return grid_graph
