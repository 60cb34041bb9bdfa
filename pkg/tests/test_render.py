# -*- coding: utf-8 -*-

import drawsvg as draw

from dp2_cluster.contour import contour_for, extract, parse_contour
from dp2_cluster.render import CONTOUR_COLOR, render_extraction, render_to_svg
from dp2_cluster.somos import ClassifiedVariable, Family


def test_render_is_deterministic(tiling, config):
    e = extract(contour_for(ClassifiedVariable(Family.EVEN, 3, 1)), tiling)
    first = render_to_svg(e, tiling, config)
    assert first == render_to_svg(e, tiling, config)
    assert '<svg' in first
    assert '2,-2,1,0,-1-K' in first
    assert CONTOUR_COLOR in first


def test_render_scales_with_config(tiling, config):
    e = extract(parse_contour('0,1,-1,1,-1'), tiling)
    small = render_extraction(e, tiling, config)
    big = render_extraction(e, tiling, dict(config, svg_meta=dict(config['svg_meta'], scale=80)))
    assert isinstance(small, draw.Drawing)
    assert big.width == 2 * small.width


def test_render_zero_contour(tiling, config, tmp_path):
    e = extract(contour_for(ClassifiedVariable(Family.ODD, 2, 0)), tiling)
    path = tmp_path / 'x3.svg'
    svg = render_to_svg(e, tiling, config, str(path))
    assert path.exists()
    assert '<svg' in svg
