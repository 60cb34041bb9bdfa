# -*- coding: utf-8 -*-

"""
tiling loads the dP2 brane tiling from its JSON fixture, validates it and
expands it into finite patches of the universal cover.

Steps:
1- Read vertices, edges, faces and blocks of the fundamental domain
2- Validate bipartiteness, counts, face cycles, degrees and duality
3- Expand a rectangle of cells into a networkx patch
"""

import json
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, NamedTuple, Tuple

import networkx as nx

from dp2_cluster.config import fixture_path, load_config
from dp2_cluster.errors import InvalidFixture
from dp2_cluster.quiver import Model, Quiver, classify_model

WHITE = 'white'
BLACK = 'black'

NodeKey = Tuple[str, int, int]
Point = Tuple[Fraction, Fraction]


# Types ----------------------------------------------------------------------------------------------------------------
@dataclass(frozen=True)
class TilingVertex:
    id: str
    color: str
    pos: Point


@dataclass(frozen=True)
class EdgeEnd:
    id: str
    dx: int
    dy: int


@dataclass(frozen=True)
class TilingEdge:
    '''faces = (left, right) when walking from the white end to the black end'''
    id: str
    u: EdgeEnd
    v: EdgeEnd
    faces: Tuple[int, int]


@dataclass(frozen=True)
class FaceRef:
    edge: str
    dx: int
    dy: int


@dataclass(frozen=True)
class Face:
    label: int
    boundary: Tuple[FaceRef, ...]


@dataclass(frozen=True)
class Block:
    '''A kite of face `label`: the region of one triangle near its apex lattice point.'''
    label: int
    apex: Tuple[int, int]
    centroid: str


@dataclass(frozen=True)
class BraneTiling:
    vertices: Tuple[TilingVertex, ...]
    edges: Tuple[TilingEdge, ...]
    faces: Tuple[Face, ...]
    blocks: Tuple[Block, ...]
    lattice: Tuple[Point, Point]
    directions: Dict[str, Tuple[int, int]]
    anchor: str

    def vertex (self, vid: str) -> TilingVertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(vid)

    def edge (self, eid: str) -> TilingEdge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def position (self, vid: str, cx: int, cy: int) -> Point:
        px, py = self.vertex(vid).pos
        (ax, ay), (bx, by) = self.lattice
        return px + cx * ax + cy * bx, py + cx * ay + cy * by

    def __hash__ (self) -> int:
        return hash((self.vertices, self.edges))


class CellRect(NamedTuple):
    '''Inclusive rectangle of cell offsets.'''
    x0: int
    x1: int
    y0: int
    y1: int

    def __contains__ (self, cell) -> bool:
        cx, cy = cell
        return self.x0 <= cx <= self.x1 and self.y0 <= cy <= self.y1

    def cells (self):
        for cx in range(self.x0, self.x1 + 1):
            for cy in range(self.y0, self.y1 + 1):
                yield cx, cy


@dataclass
class Patch:
    '''Finite piece of the universal cover; nodes are (vertex id, cx, cy).'''
    graph: nx.Graph
    faces: List[Tuple[int, int, int]]
    rect: CellRect


# Helpers --------------------------------------------------------------------------------------------------------------
def _fraction (text) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as error:
        raise InvalidFixture(f'bad rational {text!r}') from error


def _edge_endpoints (t: BraneTiling, ref: FaceRef) -> Tuple[NodeKey, NodeKey]:
    e = t.edge(ref.edge)
    return ((e.u.id, ref.dx + e.u.dx, ref.dy + e.u.dy),
            (e.v.id, ref.dx + e.v.dx, ref.dy + e.v.dy))


def parse_tiling (data: dict) -> BraneTiling:
    '''
    Build a BraneTiling from the fixture's JSON document
    :param data:
    :return: BraneTiling
    '''
    try:
        vertices = tuple(TilingVertex(v['id'], v['color'], (_fraction(v['x']), _fraction(v['y'])))
                         for v in data['vertices'])
        edges = tuple(TilingEdge(e['id'], EdgeEnd(**e['u']), EdgeEnd(**e['v']), tuple(e['faces']))
                      for e in data['edges'])
        faces = tuple(Face(f['label'], tuple(FaceRef(**r) for r in f['boundary'])) for f in data['faces'])
        blocks = tuple(Block(b['label'], tuple(b['apex']), b['centroid']) for b in data['blocks'])
        lattice = tuple((_fraction(x), _fraction(y)) for x, y in (data['lattice']['e1'], data['lattice']['e2']))
        directions = {side: tuple(vec) for side, vec in data['directions'].items()}
        anchor = data['anchor']
    except (KeyError, TypeError) as error:
        raise InvalidFixture(f'malformed tiling fixture: {error}') from error
    return BraneTiling(vertices, edges, faces, blocks, lattice, directions, anchor)


def dual_quiver (t: BraneTiling) -> Quiver:
    '''
    One arrow per tiling edge, from its left face to its right face
    :param t:
    :return: Quiver
    '''
    return Quiver.from_arrows([(e.faces[0], e.faces[1], 1) for e in t.edges])


def vertex_degrees (t: BraneTiling) -> Dict[str, int]:
    degrees = Counter()
    for e in t.edges:
        degrees[e.u.id] += 1
        degrees[e.v.id] += 1
    return dict(degrees)


def superpotential_terms (t: BraneTiling) -> Dict[str, List[int]]:
    '''
    Term sizes per color: each vertex is the cyclic product of its incident edges
    :param t:
    :return: {'white': [...], 'black': [...]}
    '''
    degrees = vertex_degrees(t)
    terms = {WHITE: [], BLACK: []}
    for v in t.vertices:
        terms[v.color].append(degrees.get(v.id, 0))
    return {color: sorted(sizes, reverse=True) for color, sizes in terms.items()}


def validate (t: BraneTiling) -> None:
    '''
    Raise InvalidFixture unless every structural invariant holds
    :param t:
    :return: None
    '''
    colors = {v.id: v.color for v in t.vertices}
    if set(colors.values()) - {WHITE, BLACK}:
        raise InvalidFixture('vertex colors must be white or black')
    for e in t.edges:
        if colors.get(e.u.id) != WHITE or colors.get(e.v.id) != BLACK:
            raise InvalidFixture(f'edge {e.id} must run from a white to a black vertex')
        if e.u.dx or e.u.dy:
            raise InvalidFixture(f'edge {e.id} must have its white end in cell (0, 0)')
        if len(set(e.faces)) != 2:
            raise InvalidFixture(f'edge {e.id} must border two distinct faces')

    nv, ne, nf = len(t.vertices), len(t.edges), len(t.faces)
    if (nv, ne, nf) != (6, 11, 5) or nv - ne + nf != 0:
        raise InvalidFixture(f'counts V, E, F = {nv}, {ne}, {nf}; expected 6, 11, 5')

    uses = Counter()
    for face in t.faces:
        expected = 6 if face.label == 3 else 4
        if len(face.boundary) != expected:
            raise InvalidFixture(f'face {face.label} has {len(face.boundary)} sides, expected {expected}')
        ends = Counter()
        for ref in face.boundary:
            e = t.edge(ref.edge)
            if face.label not in e.faces:
                raise InvalidFixture(f'edge {e.id} does not border face {face.label}')
            uses[e.id] += 1
            ends.update(_edge_endpoints(t, ref))
        if any(count != 2 for count in ends.values()):
            raise InvalidFixture(f'boundary of face {face.label} is not a closed cycle')
    if any(uses[e.id] != 2 for e in t.edges):
        raise InvalidFixture('every edge must appear in exactly two face boundaries')

    terms = superpotential_terms(t)
    if terms[WHITE] != [5, 3, 3] or terms[BLACK] != [4, 4, 3]:
        raise InvalidFixture(f'superpotential term sizes {terms}; expected white 5,3,3 and black 4,4,3')
    if colors.get(t.anchor) != WHITE or vertex_degrees(t)[t.anchor] != 5:
        raise InvalidFixture('the anchor must be the white degree-5 vertex')

    labels = Counter(b.label for b in t.blocks)
    if labels != Counter({1: 1, 2: 1, 3: 2, 4: 1, 5: 1}):
        raise InvalidFixture(f'block labels {dict(labels)}; expected one per face and two for face 3')
    if set(t.directions) != set('abcde'):
        raise InvalidFixture('directions must name the sides a..e')
    if t.lattice != ((1, 0), (0, 1)) or t.vertex(t.anchor).pos != (0, 0):
        raise InvalidFixture('positions must be sheared lattice coordinates with the anchor at the origin')

    if classify_model(dual_quiver(t)) is not Model.MODEL1:
        raise InvalidFixture('dual quiver is not the Model 1 quiver')


def load_tiling (path: str) -> BraneTiling:
    '''
    Read and validate a tiling fixture
    :param path:
    :return: BraneTiling
    '''
    try:
        with open(path) as file:
            data = json.load(file)
    except (OSError, json.JSONDecodeError) as error:
        raise InvalidFixture(f'cannot read tiling fixture {path}: {error}') from error
    t = parse_tiling(data)
    validate(t)
    logging.info('Loaded tiling fixture %s', path)
    return t


@lru_cache(maxsize=8)
def _cached_tiling (path: str) -> BraneTiling:
    return load_tiling(path)


def dp2_tiling (path: str = None) -> BraneTiling:
    '''
    The packaged tiling, or the fixture at path
    :param path:
    :return: BraneTiling
    '''
    return _cached_tiling(path or fixture_path(load_config(), 'tiling_file'))


# Patches --------------------------------------------------------------------------------------------------------------
def expand (t: BraneTiling, rect: CellRect) -> Patch:
    '''
    Vertex, edge and face instances of the cells in rect. An edge is kept iff
    both of its endpoint cells lie in rect.
    :param t:
    :param rect:
    :return: Patch
    '''
    if rect.x0 > rect.x1 or rect.y0 > rect.y1:
        raise ValueError('empty cell rectangle')
    graph = nx.Graph()
    for cx, cy in rect.cells():
        for v in t.vertices:
            graph.add_node((v.id, cx, cy), color=v.color, pos=t.position(v.id, cx, cy))
    for cx, cy in rect.cells():
        for e in t.edges:
            ucell = (cx + e.u.dx, cy + e.u.dy)
            vcell = (cx + e.v.dx, cy + e.v.dy)
            if ucell in rect and vcell in rect:
                graph.add_edge((e.u.id,) + ucell, (e.v.id,) + vcell, faces=e.faces, edge=e.id)
    faces = [(f.label, cx, cy) for cx, cy in rect.cells() for f in t.faces]
    return Patch(graph, faces, rect)
