# -*- coding: utf-8 -*-

"""
render draws an extracted graph on top of its tiling patch as SVG.

Steps:
1- Expand the patch around the contour and map sheared coordinates to the plane
2- Draw patch edges, the contour, the kept subgraph and the forced edges
3- Return the drawing, or write it with drawsvg
"""

import logging
import math

import drawsvg as draw

from dp2_cluster.contour import SPECIAL_CORNER, ExtractedGraph
from dp2_cluster.tiling import WHITE, BraneTiling, CellRect, expand

PATCH_COLOR = '#c8c8c8'
GRAPH_COLOR = '#202020'
FORCED_COLOR = '#1f5fbf'
CONTOUR_COLOR = '#c0392b'


# Helpers --------------------------------------------------------------------------------------------------------------
def _plane (pos):
    '''Sheared lattice coordinates to the triangular-lattice plane.'''
    x, y = pos
    return float(x) + float(y) / 2, float(y) * math.sqrt(3) / 2


class _Canvas:
    '''Plane to SVG pixels: y grows upwards in the plane and downwards on screen.'''

    def __init__ (self, points, scale: float, margin: float):
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        self.x0 = min(xs) - margin
        self.y1 = max(ys) + margin
        self.scale = scale
        self.width = (max(xs) - min(xs) + 2 * margin) * scale
        self.height = (max(ys) - min(ys) + 2 * margin) * scale

    def __call__ (self, pos):
        x, y = _plane(pos)
        return round((x - self.x0) * self.scale, 3), round((self.y1 - y) * self.scale, 3)


def _rect_around (corners, margin: int) -> CellRect:
    xs = [p[0] for p in corners]
    ys = [p[1] for p in corners]
    return CellRect(math.floor(min(xs)) - margin, math.ceil(max(xs)) + margin,
                    math.floor(min(ys)) - margin, math.ceil(max(ys)) + margin)


# Main -----------------------------------------------------------------------------------------------------------------
def render_extraction (e: ExtractedGraph, tiling: BraneTiling, config: dict) -> draw.Drawing:
    '''
    Patch edges in grey, the contour in red, G(C) in black and forced edges dashed in blue
    :param e:
    :param tiling:
    :param config: svg_meta gives scale and margin
    :return: drawsvg Drawing
    '''
    svg_meta = config['svg_meta']
    patch = expand(tiling, _rect_around(e.corners, max(1, svg_meta['margin'])))
    positions = {node: data['pos'] for node, data in patch.graph.nodes(data=True)}
    canvas = _Canvas([_plane(p) for p in positions.values()], svg_meta['scale'], 0.5)
    radius = svg_meta['scale'] / 10

    d = draw.Drawing(canvas.width, canvas.height)
    d.append(draw.Rectangle(0, 0, canvas.width, canvas.height, fill='white'))

    for u, v in sorted(patch.graph.edges()):
        d.append(draw.Line(*canvas(positions[u]), *canvas(positions[v]), stroke=PATCH_COLOR, stroke_width=1))

    outline = [coord for corner in e.corners for coord in canvas(corner)]
    d.append(draw.Lines(*outline, close=True, fill='none', stroke=CONTOUR_COLOR, stroke_width=2))

    forced = {frozenset((f.u, f.v)) for f in e.forced}
    for u, v in sorted(e.graph.edges()):
        style = {'stroke': GRAPH_COLOR}
        if frozenset((u, v)) in forced:
            style = {'stroke': FORCED_COLOR, 'stroke_dasharray': '4,3'}
        d.append(draw.Line(*canvas(positions[u]), *canvas(positions[v]), stroke_width=2, **style))

    for node in sorted(patch.graph):
        kept = node in e.graph
        white = patch.graph.nodes[node]['color'] == WHITE
        d.append(draw.Circle(*canvas(positions[node]), radius if kept else radius / 2,
                             fill='white' if white else (GRAPH_COLOR if kept else PATCH_COLOR),
                             stroke=GRAPH_COLOR if kept else PATCH_COLOR, stroke_width=1))

    sx, sy = canvas(e.corners[SPECIAL_CORNER])
    marker = {} if e.kept_special else {'stroke_dasharray': '2,2'}
    d.append(draw.Circle(sx, sy, radius * 2, fill='none', stroke=CONTOUR_COLOR, stroke_width=1, **marker))
    d.append(draw.Text(str(e.contour), radius * 3, radius, radius * 4, fill=GRAPH_COLOR))
    return d


def render_to_svg (e: ExtractedGraph, tiling: BraneTiling, config: dict, path: str = None) -> str:
    '''
    SVG text of render_extraction, also written to path when given
    :param e:
    :param tiling:
    :param config:
    :param path:
    :return: svg text
    '''
    drawing = render_extraction(e, tiling, config)
    if path:
        drawing.save_svg(path)
        logging.info('Wrote %s', path)
    return drawing.as_svg()
