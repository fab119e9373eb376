"""
Runs the analysis phases in order and collects their results in one AnalysisReport.

verify -> orientation -> fixed points -> spectrum -> verdict -> standard map ->
injectivity -> spectrum shift -> (optional) foliation
"""
import logging
import shlex
import time
from contextlib import contextmanager
from dataclasses import dataclass, field, replace

from . import gallery
from .exceptions import InvolutionError, NotApplicableError, PhaseError
from .expr import RecenteredMap, parse
from .foliation import diagonalize_involution, trace_foliation
from .involution import FixClass, Orientation, Region, find_fixed_points, orientation, verify_involution
from .linalg2 import Mat2, add, max_abs_entry, norm
from .linearize import Collision, conjugacy_residual, injectivity_scan, spectrum_shift_check, standard_map
from .spectral import decide, sample_spectrum

logger = logging.getLogger(__name__)

NONDETERMINISTIC_FIELDS = ['timings', 'injectivity.witness_pair']


@dataclass
class AnalysisOptions:
    window: Region
    epsilon: float = 0.1
    tol: float = 1e-9
    im_tol: float = 1e-9
    scan_n: int = 201
    collision_tol: float = 1e-6
    newton_tol: float = 1e-10
    max_iter: int = 50
    class_tol: float = 1e-6
    leaf_step: float = 1e-2


@dataclass
class AnalysisReport:
    map_source: str
    window: Region
    header: dict = field(default_factory=dict)
    involution: object = None
    orientation: object = None
    fixed_points: object = None
    fixed_set_kind: str = None
    recentered_at: tuple = None
    conditions: tuple = ()
    verdict: object = None
    conjugacy_residual: float = None
    injectivity: object = None
    spectrum_shift_deviation: float = None
    foliation_kind: str = None
    foliation_certified: bool = False
    leaf_count: int = 0
    max_leaf_residual: float = None
    timings: dict = field(default_factory=dict)
    nondeterministic_fields: list = field(default_factory=lambda: list(NONDETERMINISTIC_FIELDS))
    # working objects, not part of the document
    analysed_map: object = None
    analysed_window: Region = None
    standard_map: object = None
    foliation: object = None
    leaves: list = field(default_factory=list)

    @property
    def theorem_verdict(self):
        return self.verdict.text if self.verdict else None


def resolve_map(expression=None, gallery_name=None):
    """
    Returns (map, source label, default window or None) for either an expression or a gallery reference.
    An expression of the form "gallery:NAME[:n]" is read as a gallery reference.
    """
    if expression is not None and gallery_name is None and expression.startswith('gallery:'):
        expression, gallery_name = None, expression
    if (expression is None) == (gallery_name is None):
        raise ValueError('Exactly one of an expression and a gallery reference is required')
    if expression is not None:
        with phase('parse'):
            planar_map = parse(expression)
        return planar_map, planar_map.describe(), None
    reference = gallery_name[len('gallery:'):] if gallery_name.startswith('gallery:') else gallery_name
    with phase('gallery'):
        entry = gallery.load(reference)
    label = 'gallery:{0}'.format(entry.name)
    if entry.parameter_n is not None:
        label = '{0}:{1}'.format(label, entry.parameter_n)
    return entry.map, label, entry.window


@contextmanager
def phase(name, timings=None):
    """
    Tags any domain failure with the phase name and records the elapsed milliseconds
    """
    started = time.perf_counter()
    try:
        yield
    except PhaseError:
        raise
    except (InvolutionError, ValueError) as error:
        logger.warning('Phase %s failed: %s', name, error)
        raise PhaseError(name, error) from error
    finally:
        if timings is not None:
            timings[name] = round((time.perf_counter() - started) * 1000.0, 3)
    logger.info('Phase %s done', name)


def rerun_command(command, source, options, leaves=None):
    window = options.window
    parts = ['python', 'manage.py', command]
    if source.startswith('gallery:'):
        parts += ['--gallery', source[len('gallery:'):]]
    else:
        parts += ['--map', source]
    # joined with '=' so negative bounds are not read as flags
    parts += [
        '--window={0!r},{1!r},{2!r},{3!r}'.format(*window.bounds()),
        '--grid', str(window.grid_n),
        '--eps', repr(options.epsilon),
        '--tol', repr(options.tol),
        '--scan', str(options.scan_n),
    ]
    if leaves is not None:
        parts += ['--leaves', str(leaves)]
    return ' '.join(shlex.quote(part) for part in parts)


def build_header(command, source, options, leaves=None):
    return {
        'command': command,
        'map': source,
        'window': list(options.window.bounds()),
        'grid': options.window.grid_n,
        'eps': options.epsilon,
        'tol': options.tol,
        'im_tol': options.im_tol,
        'scan': options.scan_n,
        'collision_tol': options.collision_tol,
        'newton_tol': options.newton_tol,
        'newton_max_iter': options.max_iter,
        'class_tol': options.class_tol,
        'leaves': leaves,
        'step': options.leaf_step,
        'rerun': rerun_command(command, source, options, leaves),
    }


def _recenter_point(points):
    for point in points:
        if point.classification == FixClass.FIX_MINUS:
            return point.location
    return points.points[0].location if len(points) else None


def _original_frame(report, p):
    """
    Moves a point of the recentred map back to the coordinates of the input map
    """
    if report.recentered_at is None:
        return p
    return p[0] + report.recentered_at[0], p[1] + report.recentered_at[1]


def run_analysis(planar_map, source, options, header=None, leaves=None):
    """
    Runs every phase on planar_map over options.window; raises PhaseError naming the failed phase
    """
    region = options.window
    report = AnalysisReport(source, region, header=dict(header or {}))
    timings = report.timings

    with phase('verify', timings):
        report.involution = verify_involution(planar_map, region, options.tol)
        if not report.involution.passed:
            raise InvolutionError('map is not an involution on {0}: residual {1:.3e} at {2}'.format(
                region.label(), report.involution.max_residual, report.involution.worst_point))

    with phase('orientation', timings):
        report.orientation = orientation(planar_map, region)

    with phase('fixed-points', timings):
        report.fixed_points = find_fixed_points(planar_map, region, options.newton_tol, options.max_iter,
                                                options.class_tol)
        report.fixed_set_kind = report.fixed_points.kind
        analysed_map, analysed_window = planar_map, region
        if norm(planar_map.evaluate((0.0, 0.0))) > options.tol:
            center = _recenter_point(report.fixed_points)
            if center is None:
                raise InvolutionError('phi(0) != 0 and no fixed point was found on {0}'.format(region.label()))
            report.recentered_at = center
            analysed_map = RecenteredMap(planar_map, center)
            analysed_window = region.translated(-center[0], -center[1])
            logger.info('Recentered at (%r, %r)', center[0], center[1])
        report.analysed_map, report.analysed_window = analysed_map, analysed_window

    with phase('spectrum', timings):
        samples = [replace(sample, point=_original_frame(report, sample.point))
                   for sample in sample_spectrum(analysed_map, analysed_window)]

    with phase('verdict', timings):
        report.verdict = decide(report.orientation.kind, samples, region, options.epsilon, options.im_tol)
        report.conditions = report.verdict.conditions
        logger.info(report.verdict.text)

    with phase('standard-map', timings):
        report.standard_map = standard_map(analysed_map, options.tol)
        report.conjugacy_residual = max(conjugacy_residual(report.standard_map, p)
                                        for p in analysed_window.nodes())

    with phase('injectivity', timings):
        report.injectivity = injectivity_scan(report.standard_map, analysed_window, options.scan_n,
                                              options.collision_tol)
        if report.injectivity.witness_pair:
            report.injectivity = replace(report.injectivity, witness_pair=tuple(
                _original_frame(report, p) for p in report.injectivity.witness_pair))

    linear_part = report.standard_map.linear_part
    minus_identity = max_abs_entry(add(linear_part, Mat2.identity())) <= options.tol
    if report.orientation.kind == Orientation.PRESERVING and minus_identity:
        with phase('spectrum-shift', timings):
            report.spectrum_shift_deviation = spectrum_shift_check(analysed_map, analysed_window, options.tol)

    try:
        report.foliation = diagonalize_involution(linear_part, options.tol)
        report.foliation_kind = report.foliation.kind.value
    except NotApplicableError as error:
        logger.info('No canonical foliation: %s', error)
    report.foliation_certified = bool(report.verdict.linearizable and report.foliation is not None
                                      and report.injectivity.status == Collision.NONE)

    if leaves is not None:
        trace_leaves(report, leaves or None, options.leaf_step)
    return report


def trace_leaves(report, count=None, step=1e-2):
    """
    Traces the default leaf family (or count leaves) of an analysed report
    """
    with phase('foliation', report.timings):
        if report.foliation is None:
            raise NotApplicableError('D phi(0) = I has no canonical foliation to pull back')
        report.leaves = trace_foliation(report.standard_map, report.foliation, report.analysed_window, count, step)
        report.leaf_count = len(report.leaves)
        residuals = [leaf.residual for leaf in report.leaves if leaf.points]
        report.max_leaf_residual = max(residuals) if residuals else None
    return report.leaves
