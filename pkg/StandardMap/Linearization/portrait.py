"""
Leaf CSV and SVG portrait of a traced foliation
"""
import csv
import logging

from django.template.loader import render_to_string

from .foliation import leaf_residual

logger = logging.getLogger(__name__)

CSV_COLUMNS = ['leaf_id', 'leaf_parameter', 'point_index', 'x', 'y', 'residual', 'truncated']
SVG_TEMPLATE = 'Linearization/portrait.svg'
SVG_PIXELS = 800


def _offset(report):
    return report.recentered_at or (0.0, 0.0)


def leaf_rows(report):
    """
    One row per traced point, in the coordinates of the original map
    """
    dx, dy = _offset(report)
    for leaf_id, leaf in enumerate(report.leaves):
        for index, p in enumerate(leaf.points):
            residual = leaf_residual(report.standard_map, report.foliation, leaf.parameter, p)
            yield [leaf_id, leaf.parameter, index, p[0] + dx, p[1] + dy, residual, int(leaf.truncated)]


def write_csv(report, stream):
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(CSV_COLUMNS)
    count = 0
    for row in leaf_rows(report):
        writer.writerow(row)
        count += 1
    logger.info('Wrote %d leaf points for %d leaves', count, len(report.leaves))
    return count


def _svg_number(value):
    return '{0:.6f}'.format(value)


def render_svg(report):
    """
    SVG with the window frame, one polyline per leaf and the fixed points; y points up
    """
    window = report.window
    width, height = window.x_max - window.x_min, window.y_max - window.y_min
    dx, dy = _offset(report)
    leaves = []
    for leaf_id, leaf in enumerate(report.leaves):
        points = ' '.join('{0},{1}'.format(_svg_number(p[0] + dx), _svg_number(-(p[1] + dy))) for p in leaf.points)
        leaves.append({'id': leaf_id, 'truncated': leaf.truncated, 'points': points})
    fixed_points = [{'x': _svg_number(point.location[0]), 'y': _svg_number(-point.location[1])}
                    for point in report.fixed_points or ()]
    scale = max(width, height)
    context = {
        'title': '{0} on {1}'.format(report.map_source, window.label()),
        'view_box': ' '.join(_svg_number(v) for v in (window.x_min, -window.y_max, width, height)),
        'width': SVG_PIXELS if width >= height else int(round(SVG_PIXELS * width / height)),
        'height': SVG_PIXELS if height >= width else int(round(SVG_PIXELS * height / width)),
        'frame': {'x': _svg_number(window.x_min), 'y': _svg_number(-window.y_max),
                  'width': _svg_number(width), 'height': _svg_number(height)},
        'stroke': _svg_number(scale / 400.0),
        'radius': _svg_number(scale / 120.0),
        'leaves': leaves,
        'fixed_points': fixed_points,
    }
    return render_to_string(SVG_TEMPLATE, context)


def write_svg(report, stream):
    stream.write(render_svg(report))
