"""
Involution identity, orientation class and fixed points of a planar map on a bounded window
"""
import enum
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DegenerateOrientationError, EvaluationError, SingularMatrixError
from .linalg2 import Mat2, add, distance, inverse, max_abs_entry, norm, subtract

logger = logging.getLogger(__name__)

DEGENERATE_DET = 1e-12
MERGE_RADIUS = 1e-6
CURVE_FRACTION = 0.05


@dataclass(frozen=True)
class Region:
    x_min: float
    x_max: float
    y_min: float
    y_max: float
    grid_n: int = 41

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ValueError('x-min must be less than x-max')
        if not self.y_min < self.y_max:
            raise ValueError('y-min must be less than y-max')
        if int(self.grid_n) != self.grid_n or self.grid_n < 2:
            raise ValueError('grid-n must be an integer of at least 2')

    @property
    def diameter(self):
        return math.hypot(self.x_max - self.x_min, self.y_max - self.y_min)

    def with_grid(self, grid_n):
        return Region(self.x_min, self.x_max, self.y_min, self.y_max, grid_n)

    def translated(self, dx, dy):
        return Region(self.x_min + dx, self.x_max + dx, self.y_min + dy, self.y_max + dy, self.grid_n)

    def nodes(self):
        """
        Grid nodes row by row, y ascending in the outer loop
        """
        xs = np.linspace(self.x_min, self.x_max, self.grid_n).tolist()
        ys = np.linspace(self.y_min, self.y_max, self.grid_n).tolist()
        return [(x, y) for y in ys for x in xs]

    def contains(self, p):
        return self.x_min <= p[0] <= self.x_max and self.y_min <= p[1] <= self.y_max

    def bounds(self):
        return self.x_min, self.x_max, self.y_min, self.y_max

    def label(self):
        return '[{0:g}, {1:g}] x [{2:g}, {3:g}]'.format(*self.bounds())


DEFAULT_REGION = Region(-5.0, 5.0, -5.0, 5.0, 41)


@dataclass(frozen=True)
class InvolutionVerdict:
    max_residual: float
    passed: bool
    worst_point: tuple
    tol: float


class Orientation(enum.Enum):
    PRESERVING = 'preserving'
    REVERSING = 'reversing'


@dataclass(frozen=True)
class OrientationClass:
    kind: Orientation
    min_abs_det: float


class FixClass(enum.Enum):
    FIX_PLUS = 'fix-plus'
    FIX_MINUS = 'fix-minus'
    CURVE = 'curve'
    UNCLASSIFIED = 'unclassified'


@dataclass(frozen=True)
class FixedPoint:
    location: tuple
    classification: FixClass
    jacobian: Mat2
    residual: float


@dataclass
class FixedPointSet:
    """
    Roots found on a window. ``kind`` is 'plane' when every seed is already fixed,
    'curve' for one-dimensional fixed sets, 'point' for isolated roots and 'empty' otherwise.
    """
    points: list
    kind: str
    seeds: int
    converged: int
    skipped: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    @property
    def is_curve(self):
        return self.kind == 'curve'


def verify_involution(planar_map, region, tol=1e-9):
    """
    Max over the grid of |phi(phi(p)) - p| / (1 + |p|)
    """
    worst, worst_point = 0.0, region.nodes()[0]
    for p in region.nodes():
        try:
            twice = planar_map.evaluate(planar_map.evaluate(p))
        except EvaluationError as error:
            raise EvaluationError(p, error.reason) from error
        residual = distance(twice, p) / (1.0 + norm(p))
        if residual > worst:
            worst, worst_point = residual, p
    verdict = InvolutionVerdict(worst, worst <= tol, worst_point, tol)
    logger.info('Involution residual %.3e on %s (%s)', worst, region.label(), 'pass' if verdict.passed else 'fail')
    return verdict


def orientation(planar_map, region):
    sign, smallest = 0, math.inf
    for p in region.nodes():
        det = planar_map.evaluate_with_jacobian(p)[1].det
        if abs(det) <= DEGENERATE_DET:
            raise DegenerateOrientationError(p, det, 'Jacobian determinant vanishes')
        current = 1 if det > 0 else -1
        if sign and current != sign:
            raise DegenerateOrientationError(p, det, 'Jacobian determinant changes sign')
        sign = current
        smallest = min(smallest, abs(det))
    kind = Orientation.PRESERVING if sign > 0 else Orientation.REVERSING
    return OrientationClass(kind, smallest)


def classify_fixed_point(planar_map, p, class_tol=1e-6):
    """
    Fix+ / Fix- by comparing the Jacobian with +I and -I. Orientation-reversing points stay unclassified.
    """
    jacobian = planar_map.evaluate_with_jacobian(p)[1]
    if jacobian.det < 0:
        return FixClass.UNCLASSIFIED
    identity = Mat2.identity()
    if max_abs_entry(subtract(jacobian, identity)) <= class_tol:
        return FixClass.FIX_PLUS
    if max_abs_entry(add(jacobian, identity)) <= class_tol:
        return FixClass.FIX_MINUS
    return FixClass.UNCLASSIFIED


def _newton_step(jacobian, residual):
    """
    Solves J d = -F, falling back to the minimum-norm least-squares step when J is singular
    """
    try:
        inv = inverse(jacobian)
        return (-(inv.a11 * residual[0] + inv.a12 * residual[1]),
                -(inv.a21 * residual[0] + inv.a22 * residual[1]))
    except SingularMatrixError:
        if max_abs_entry(jacobian) <= DEGENERATE_DET:
            return None
        step = np.linalg.lstsq(np.array(jacobian.rows()), -np.array(residual), rcond=None)[0]
        return float(step[0]), float(step[1])


def _merge(buckets, root, radius):
    """
    Registers root unless a known root lies within radius; True when root is new
    """
    cx, cy = math.floor(root[0] / radius), math.floor(root[1] / radius)
    for i in (cx - 1, cx, cx + 1):
        for j in (cy - 1, cy, cy + 1):
            if any(distance(root, known) <= radius for known in buckets.get((i, j), ())):
                return False
    buckets.setdefault((cx, cy), []).append(root)
    return True


def _newton(planar_map, seed, newton_tol, max_iter, limit):
    p = seed
    for _ in range(max_iter + 1):
        q, jacobian = planar_map.evaluate_with_jacobian(p)
        residual = (q[0] - p[0], q[1] - p[1])
        if norm(residual) <= newton_tol:
            return p, 'converged'
        step = _newton_step(subtract(jacobian, Mat2.identity()), residual)
        if step is None:
            return p, 'singular'
        p = (p[0] + step[0], p[1] + step[1])
        if not (math.isfinite(p[0]) and math.isfinite(p[1])) or norm(p) > limit:
            return p, 'diverged'
    return p, 'exhausted'


def find_fixed_points(planar_map, region, newton_tol=1e-10, max_iter=50, class_tol=1e-6):
    """
    Newton on phi(p) - p from every grid node, roots merged within 1e-6 of the window diameter
    """
    nodes = region.nodes()
    merge_radius = MERGE_RADIUS * region.diameter
    limit = 1e6 * (region.diameter + norm((region.x_max, region.y_max)))
    roots, skipped, buckets = [], [], {}
    converged = already_fixed = 0
    for seed in nodes:
        try:
            root, status = _newton(planar_map, seed, newton_tol, max_iter, limit)
        except EvaluationError as error:
            logger.debug('Seed %s skipped: %s', seed, error)
            skipped.append(seed)
            continue
        if status == 'singular':
            skipped.append(seed)
            continue
        if status != 'converged' or not region.contains(root):
            continue
        converged += 1
        if root == seed:
            already_fixed += 1
        if _merge(buckets, root, merge_radius):
            roots.append(root)
    if skipped:
        logger.debug('%d seeds skipped on a singular Newton Jacobian', len(skipped))

    if nodes and already_fixed == len(nodes):
        kind = 'plane'
    elif len(roots) > max(1, CURVE_FRACTION * region.grid_n):
        kind = 'curve'
    elif roots:
        kind = 'point'
    else:
        kind = 'empty'

    points = []
    for root in roots:
        classification = classify_fixed_point(planar_map, root, class_tol)
        if kind == 'curve' and classification == FixClass.UNCLASSIFIED:
            classification = FixClass.CURVE
        q, jacobian = planar_map.evaluate_with_jacobian(root)
        points.append(FixedPoint(root, classification, jacobian, distance(q, root)))
    logger.info('%d fixed points (%s) from %d seeds on %s', len(points), kind, len(nodes), region.label())
    return FixedPointSet(points, kind, len(nodes), converged, skipped)
