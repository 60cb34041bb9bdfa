# -*- coding: utf-8 -*-

"""
contour holds the five-sided contours of the main theorem and turns them
into subgraphs of the dP2 tiling.

Steps:
1- Build the contour of a classified variable (reflecting k <= 1)
2- Trace its corners from a white degree-5 anchor
3- Keep or remove tiling vertices by the side, corner and special rules
4- Peel forced matchings to get the hat graph and its bookkeeping
"""

import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from heapq import heapify, heappop, heappush
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Tuple

import networkx as nx

from dp2_cluster.errors import ExtractionError, GeometryError, OutOfRange, ParseError
from dp2_cluster.somos import ClassifiedVariable, Family
from dp2_cluster.tiling import WHITE, BLACK, BraneTiling, CellRect, NodeKey, Point, expand

SIDES = 'abcde'
SPECIAL_CORNER = 3


# Types ----------------------------------------------------------------------------------------------------------------
class Special(Enum):
    KEEP = 'K'
    REMOVE = 'R'

    def flip (self) -> 'Special':
        return Special.REMOVE if self is Special.KEEP else Special.KEEP


@dataclass(frozen=True)
class Contour:
    sides: Tuple[int, int, int, int, int]
    special: Special

    @classmethod
    def of (cls, sides, special: Optional[Special] = None) -> 'Contour':
        '''special defaults to Keep iff a is even'''
        sides = tuple(int(s) for s in sides)
        if len(sides) != 5:
            raise ValueError('a contour has five sides')
        if special is None:
            special = Special.KEEP if sides[0] % 2 == 0 else Special.REMOVE
        return cls(sides, special)

    @property
    def closed (self) -> bool:
        a, b, c, d, e = self.sides
        return a + b == d and a + e == c

    @property
    def is_zero (self) -> bool:
        return not any(self.sides)

    def moved (self, delta, special: Special) -> 'Contour':
        return Contour(tuple(s + ds for s, ds in zip(self.sides, delta)), special)

    def __str__ (self) -> str:
        return ','.join(str(s) for s in self.sides) + '-' + self.special.value


@dataclass(frozen=True)
class ContourShape:
    signs: Tuple[str, str, str, str, str]

    @property
    def degenerate (self) -> bool:
        return all(sign == '0' for sign in self.signs)

    def __str__ (self) -> str:
        return ''.join(self.signs)


class ForcedEdge(NamedTuple):
    u: NodeKey
    v: NodeKey
    faces: Tuple[int, int]


@dataclass
class ExtractedGraph:
    '''
    graph is G(C); hat is G(C) with its forced matchings peeled off.
    enclosed counts kites per face label, so face 3 counts twice per cell.
    '''
    contour: Contour
    anchor: NodeKey
    corners: Tuple[Point, ...]
    graph: nx.Graph
    hat: nx.Graph
    forced: List[ForcedEdge]
    kept_special: bool
    special_node: NodeKey
    enclosed: Counter = field(default_factory=Counter)
    c3: int = 0

    @property
    def side_segments (self) -> Dict[str, Tuple[Point, Point]]:
        return {side: (self.corners[i], self.corners[(i + 1) % 5]) for i, side in enumerate(SIDES)}


# Contours -------------------------------------------------------------------------------------------------------------
def _ceil_half (p: int) -> int:
    return -((-p) // 2)


def contour_for (v: ClassifiedVariable) -> Contour:
    '''
    Contour of a classified variable with m >= 2. The odd family is written
    in terms of t = -n so that both formulas share one parameter.
    :param v:
    :return: Contour
    '''
    k = v.m
    if k < 2:
        raise OutOfRange(f'contours are defined for k >= 2, got k = {k}; use reflect_case')
    if v.family is Family.EVEN:
        t = v.n
        sides = (k - 2 + t, -_ceil_half(k - 4 + 5 * t), 2 * t - 1, (k - 3 * t) // 2, 1 + t - k)
    else:
        t = -v.n
        sides = (k - 2 + t, -_ceil_half(k - 2 + 5 * t), 2 * t, (k - 2 - 3 * t) // 2, 2 + t - k)
    c = Contour.of(sides)
    assert c.closed, f'contour {c} is not closed'
    return c


def reflect_case (v: ClassifiedVariable) -> Tuple[ClassifiedVariable, bool]:
    '''
    Mirror partner with index 6 - index, and whether swap_reflect must be applied
    :param v:
    :return: (partner, swapped)
    '''
    if v.m >= 2:
        return v, False
    m = 3 - v.m if v.family is Family.EVEN else 4 - v.m
    return ClassifiedVariable(v.family, m, v.n), True


def shape (c: Contour) -> ContourShape:
    return ContourShape(tuple('+' if s > 0 else '-' if s < 0 else '0' for s in c.sides))


_CONTOUR_TEXT = re.compile(r'^\s*\(?\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)?'
                           r'\s*(?:-\s*([KkRr]))?\s*$')


def parse_contour (text: str) -> Contour:
    '''
    Accepts "a,b,c,d,e", "(a,b,c,d,e)" and either with a -K / -R suffix
    :param text:
    :return: Contour
    '''
    m = _CONTOUR_TEXT.match(text)
    if not m:
        raise ParseError(f'not a contour: {text!r}', 0)
    special = Special(m.group(6).upper()) if m.group(6) else None
    return Contour.of([int(m.group(i)) for i in range(1, 6)], special)


# Geometry -------------------------------------------------------------------------------------------------------------
def _cross (o: Point, p: Point, q: Point) -> Fraction:
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])


def on_segment (p: Point, s0: Point, s1: Point) -> bool:
    if _cross(s0, s1, p) != 0:
        return False
    return (min(s0[0], s1[0]) <= p[0] <= max(s0[0], s1[0])
            and min(s0[1], s1[1]) <= p[1] <= max(s0[1], s1[1]))


def strictly_inside (p: Point, corners) -> bool:
    '''Even-odd ray casting; boundary points must be handled by the caller.'''
    x, y = p
    inside = False
    n = len(corners)
    for i in range(n):
        (x0, y0), (x1, y1) = corners[i], corners[(i + 1) % n]
        if (y0 > y) != (y1 > y):
            if x < x0 + (y - y0) * (x1 - x0) / (y1 - y0):
                inside = not inside
    return inside


def zero_area (corners) -> bool:
    base = corners[0]
    others = [p for p in corners if p != base]
    if not others:
        return True
    return all(_cross(base, others[0], p) == 0 for p in others)


def trace (c: Contour, t: BraneTiling, anchor: NodeKey = None) -> Tuple[Point, ...]:
    '''
    Corners P0..P4 of the contour; P0 is the anchor and P3 the special corner
    :param c:
    :param t:
    :param anchor: white degree-5 vertex instance, default the one in cell (0, 0)
    :return: five corner positions
    '''
    anchor = anchor or (t.anchor, 0, 0)
    if anchor[0] != t.anchor:
        raise GeometryError(f'anchor {anchor} is not a white degree-5 vertex')
    corners = [t.position(*anchor)]
    for side, length in zip(SIDES, c.sides):
        dx, dy = t.directions[side]
        x, y = corners[-1]
        corners.append((x + length * dx, y + length * dy))
    if corners[-1] != corners[0]:
        raise GeometryError(f'contour {c} does not close: ends at {corners[-1]}')
    return tuple(corners[:5])


# Extraction -----------------------------------------------------------------------------------------------------------
def _keep_boundary (p: Point, color: str, c: Contour, corners) -> Optional[bool]:
    '''
    Keep/remove verdict for a point on the traced boundary, None if it is not on it
    '''
    if p == corners[SPECIAL_CORNER]:
        return c.special is Special.KEEP
    verdicts = []
    for i, length in enumerate(c.sides):
        s0, s1 = corners[i], corners[(i + 1) % 5]
        if not on_segment(p, s0, s1):
            continue
        if length == 0:
            return False
        if p == s0 or p == s1:
            continue
        verdicts.append(color == BLACK if length > 0 else color == WHITE)
    for i in range(5):
        if p == corners[i]:
            verdicts.append(c.sides[i - 1] <= 0 and c.sides[i] <= 0)
    if not verdicts:
        return None
    return all(verdicts)


def _bounding_rect (corners, margin: int = 1) -> CellRect:
    xs = [p[0] for p in corners]
    ys = [p[1] for p in corners]
    return CellRect(int(min(xs)) - margin, int(max(xs)) + margin, int(min(ys)) - margin, int(max(ys)) + margin)


def peel (graph: nx.Graph) -> Tuple[nx.Graph, List[ForcedEdge]]:
    '''
    Remove valence-1 vertices with their partners, lowest node key first
    :param graph:
    :return: (hat graph, forced edges in peeling order)
    '''
    h = graph.copy()
    forced = []
    heap = [node for node in h if h.degree(node) == 1]
    heapify(heap)
    while heap:
        u = heappop(heap)
        if u not in h or h.degree(u) != 1:
            continue
        (w,) = h.neighbors(u)
        forced.append(ForcedEdge(u, w, h.edges[u, w].get('faces', ())))
        neighbors = [x for x in h.neighbors(w) if x != u]
        h.remove_nodes_from((u, w))
        for x in neighbors:
            if h.degree(x) == 1:
                heappush(heap, x)
    logging.debug('Peeled %d forced edges', len(forced))
    return h, forced


def hat (graph: nx.Graph) -> nx.Graph:
    return peel(graph)[0]


def _three_kites_at (t: BraneTiling, apex: Tuple[int, int]) -> List[Tuple[str, int, int]]:
    kites = []
    for block in t.blocks:
        if block.label == 3:
            cx, cy = apex[0] - block.apex[0], apex[1] - block.apex[1]
            kites.append((block.centroid, cx, cy))
    return kites


def extract (c: Contour, t: BraneTiling, anchor: NodeKey = None) -> ExtractedGraph:
    '''
    G(C) from the keep/remove rules, then the hat graph and covering bookkeeping
    :param c:
    :param t:
    :param anchor:
    :return: ExtractedGraph
    '''
    anchor = anchor or (t.anchor, 0, 0)
    corners = trace(c, t, anchor)
    special_pos = corners[SPECIAL_CORNER]
    special_node = (t.anchor, int(special_pos[0]), int(special_pos[1]))
    if t.position(*special_node) != special_pos:
        raise ExtractionError(f'special corner {special_pos} is not a tiling vertex')
    kept_special = c.special is Special.KEEP

    if zero_area(corners):
        empty = nx.Graph()
        c3 = 1 if kept_special else 0
        return ExtractedGraph(c, anchor, corners, empty, empty.copy(), [], kept_special, special_node, Counter(), c3)

    patch = expand(t, _bounding_rect(corners))
    kept = []
    for node, data in patch.graph.nodes(data=True):
        verdict = _keep_boundary(data['pos'], data['color'], c, corners)
        if verdict is None:
            verdict = strictly_inside(data['pos'], corners)
        if verdict:
            kept.append(node)
    if kept_special and special_node not in patch.graph:
        raise ExtractionError(f'special vertex {special_node} is outside the patch')

    graph = nx.Graph()
    for node in sorted(kept):
        graph.add_node(node, **patch.graph.nodes[node])
    graph.add_edges_from(sorted(patch.graph.subgraph(kept).edges(data=True), key=lambda edge: edge[:2]))
    hat_graph, forced = peel(graph)

    enclosed = Counter()
    inside_kites = set()
    for cx, cy in patch.rect.cells():
        for block in t.blocks:
            if strictly_inside(t.position(block.centroid, cx, cy), corners):
                enclosed[block.label] += 1
                inside_kites.add((block.label, block.centroid, cx, cy))
    at_special = [(3,) + kite for kite in _three_kites_at(t, special_node[1:])]
    # the 3-block at the special vertex is cut or left out by the contour
    c3 = 1 if kept_special and not all(kite in inside_kites for kite in at_special) else 0

    logging.debug('Extracted %s: %d kept, %d after peeling', c, graph.number_of_nodes(), hat_graph.number_of_nodes())
    return ExtractedGraph(c, anchor, corners, graph, hat_graph, forced, kept_special, special_node, enclosed, c3)


# Graph comparison -----------------------------------------------------------------------------------------------------
def canonical_key (graph: nx.Graph) -> FrozenSet[NodeKey]:
    '''Vertex set translated so that the smallest cell offsets are zero.'''
    if graph.number_of_nodes() == 0:
        return frozenset()
    mx = min(node[1] for node in graph)
    my = min(node[2] for node in graph)
    return frozenset((vid, cx - mx, cy - my) for vid, cx, cy in graph)


def _faces_match (d1: dict, d2: dict) -> bool:
    return sorted(d1['faces']) == sorted(d2['faces'])


def _profile (graph: nx.Graph) -> Tuple[Counter, Counter]:
    '''(color, degree) and face-pair multisets, both kept by any matching isomorphism'''
    return (Counter((color, graph.degree(node)) for node, color in graph.nodes(data='color')),
            Counter(tuple(sorted(faces)) for _, _, faces in graph.edges(data='faces')))


def graphs_equal (g1: nx.Graph, g2: nx.Graph) -> bool:
    '''
    Equal up to lattice translation, else up to color and face-label preserving isomorphism
    :param g1:
    :param g2:
    :return: bool
    '''
    if g1.number_of_nodes() != g2.number_of_nodes() or g1.number_of_edges() != g2.number_of_edges():
        return False
    if canonical_key(g1) == canonical_key(g2):
        return True
    if _profile(g1) != _profile(g2):
        return False
    return nx.is_isomorphic(g1, g2, node_match=nx.algorithms.isomorphism.categorical_node_match('color', None),
                            edge_match=_faces_match)


def to_json (e: ExtractedGraph) -> dict:
    '''
    Serializable view of the hat graph and its bookkeeping
    :param e:
    :return: dict
    '''
    def node_json (node):
        vid, cx, cy = node
        return {'id': vid, 'cell': [cx, cy], 'color': e.graph.nodes[node]['color']}

    return {
        'contour': str(e.contour),
        'shape': str(shape(e.contour)),
        'anchor': list(e.anchor),
        'kept': e.graph.number_of_nodes(),
        'vertices': [node_json(node) for node in sorted(e.hat)],
        'edges': [{'u': list(u), 'v': list(v), 'faces': list(d['faces'])}
                  for u, v, d in sorted(e.hat.edges(data=True), key=lambda edge: sorted(edge[:2]))],
        'forced': [{'u': list(f.u), 'v': list(f.v), 'faces': list(f.faces)} for f in e.forced],
        'kept_special': e.kept_special,
        'enclosed': {str(label): e.enclosed[label] for label in sorted(e.enclosed)},
        'c3': e.c3,
    }
