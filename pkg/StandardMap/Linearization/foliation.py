"""
Canonical foliation of the linear part D phi(0) and its pull-back F_phi through the standard map.

Leaves are traced by natural-parameter continuation in the target plane: each canonical
leaf is walked with a fixed step and every target point is pulled back through h by
Newton's method, using the extrapolation of the two previous preimages as predictor.
"""
import enum
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import EvaluationError, InversionError, NotApplicableError, SingularMatrixError
from .linalg2 import (
    Mat2,
    add,
    apply,
    eigenvector,
    inverse,
    is_linear_involution,
    max_abs_entry,
    norm,
    subtract,
)

logger = logging.getLogger(__name__)

INVOLUTION_TOL = 1e-9
RADIAL_START = 1e-3
MAX_HALVINGS = 10
MAX_LEAF_POINTS = 20000
DEFAULT_RAYS = 24
DEFAULT_LINES = 21
START_CANDIDATES = 8


class FoliationKind(enum.Enum):
    RADIAL = 'radial'
    VERTICAL = 'vertical'


@dataclass(frozen=True)
class CanonicalFoliation:
    """
    ``change_of_basis`` is S with S L S^-1 = diag(-1, -1) (radial) or diag(1, -1) (vertical)
    """
    kind: FoliationKind
    change_of_basis: Mat2
    linear_part: Mat2

    @property
    def inverse_change(self):
        return inverse(self.change_of_basis)

    def canonical(self, p):
        return apply(self.change_of_basis, p)

    def from_canonical(self, z):
        return apply(self.inverse_change, z)


@dataclass
class Leaf:
    parameter: float
    kind: FoliationKind
    points: list = field(default_factory=list)
    residual: float = 0.0
    truncated: bool = False
    diagnostic: str = None


def diagonalize_involution(linear, tol=INVOLUTION_TOL):
    if not is_linear_involution(linear, tol):
        raise NotApplicableError('matrix is not a linear involution')
    identity = Mat2.identity()
    if max_abs_entry(subtract(linear, identity)) <= tol:
        raise NotApplicableError('identity involution has no canonical foliation of this kind')
    if max_abs_entry(add(linear, identity)) <= tol:
        return CanonicalFoliation(FoliationKind.RADIAL, identity, linear)
    plus = eigenvector(linear, 1.0)
    minus = eigenvector(linear, -1.0)
    change = inverse(Mat2.from_columns(plus, minus))
    return CanonicalFoliation(FoliationKind.VERTICAL, change, linear)


def invert_standard_map(h, target, guess, tol=1e-11, max_iter=50):
    """
    Damped Newton for h(p) = target starting at guess
    """
    p = (float(guess[0]), float(guess[1]))
    try:
        image, jacobian = h.evaluate_with_jacobian(p)
    except EvaluationError as failure:
        raise InversionError(str(failure), p) from failure
    error = (image[0] - target[0], image[1] - target[1])
    for _ in range(max_iter):
        if norm(error) <= tol:
            return p
        try:
            step = apply(inverse(jacobian), error)
        except SingularMatrixError as singular:
            raise InversionError('singular Dh ({0})'.format(singular), p) from singular
        scale = 1.0
        while True:
            trial = (p[0] - scale * step[0], p[1] - scale * step[1])
            try:
                trial_image, trial_jacobian = h.evaluate_with_jacobian(trial)
            except EvaluationError as failure:
                raise InversionError(str(failure), p) from failure
            trial_error = (trial_image[0] - target[0], trial_image[1] - target[1])
            if norm(trial_error) < norm(error) or scale < 1e-3:
                break
            scale *= 0.5
        p, jacobian, error = trial, trial_jacobian, trial_error
    if norm(error) <= tol:
        return p
    raise InversionError('no convergence after {0} iterations'.format(max_iter), p)


def leaf_residual(h, fol, parameter, p):
    z = fol.canonical(h.evaluate(p))
    if fol.kind == FoliationKind.VERTICAL:
        return abs(z[0] - parameter)
    if norm(z) == 0:
        return math.pi
    return abs(_wrap(math.atan2(z[1], z[0]) - parameter))


def _wrap(angle):
    return (angle + math.pi) % (2.0 * math.pi) - math.pi


def _target(fol, parameter, s):
    if fol.kind == FoliationKind.VERTICAL:
        return fol.from_canonical((parameter, s))
    return fol.from_canonical((s * math.cos(parameter), s * math.sin(parameter)))


def _march(h, fol, parameter, region, start, s0, direction, step):
    """
    Walks the canonical leaf from s0 in one direction until the preimage leaves the region
    """
    points, previous, current, s, last_size = [], None, start, s0, step
    while len(points) < MAX_LEAF_POINTS:
        size = step
        for _ in range(MAX_HALVINGS + 1):
            guess = current if previous is None else (
                current[0] + (current[0] - previous[0]) * size / last_size,
                current[1] + (current[1] - previous[1]) * size / last_size)
            try:
                candidate = invert_standard_map(h, _target(fol, parameter, s + direction * size), guess)
                break
            except InversionError as error:
                failure = error
                size *= 0.5
        else:
            logger.debug('Leaf %.6g truncated: %s', parameter, failure)
            return points, str(failure)
        if not region.contains(candidate):
            return points, None
        previous, current, last_size, s = current, candidate, size, s + direction * size
        points.append(current)
    return points, 'leaf exceeds {0} points'.format(MAX_LEAF_POINTS)


def _margin(region, p):
    return min(p[0] - region.x_min, region.x_max - p[0], p[1] - region.y_min, region.y_max - p[1])


def _grid_crossings(h, fol, parameter, region):
    """
    Points where the first canonical coordinate of h crosses parameter along grid edges,
    linearly interpolated, deepest inside the region first. Returns (s, point) pairs.
    """
    n = region.grid_n
    nodes = region.nodes()
    images = [fol.canonical(h.evaluate(p)) for p in nodes]
    found = []
    for j in range(n):
        for i in range(n):
            k = j * n + i
            for other in (k + 1 if i + 1 < n else None, k + n if j + 1 < n else None):
                if other is None:
                    continue
                a, b = images[k][0] - parameter, images[other][0] - parameter
                if a == 0:
                    t = 0.0
                elif a * b > 0:
                    continue
                else:
                    t = a / (a - b)
                p, q = nodes[k], nodes[other]
                point = (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
                s = images[k][1] + t * (images[other][1] - images[k][1])
                found.append((-_margin(region, point), s, point))
    found.sort()
    return [(s, point) for _, s, point in found[:START_CANDIDATES]]


def trace_leaf(h, fol, parameter, region, step=1e-2, leaf_tol=1e-6):
    """
    Pulls one canonical leaf back through h inside region
    """
    leaf = Leaf(parameter, fol.kind)
    if fol.kind == FoliationKind.RADIAL:
        candidates = [(RADIAL_START, _target(fol, parameter, RADIAL_START))]
    else:
        candidates = _grid_crossings(h, fol, parameter, region)
    start, failure = None, None
    for s0, guess in candidates:
        try:
            point = invert_standard_map(h, _target(fol, parameter, s0), guess)
        except InversionError as error:
            failure = error
            continue
        if region.contains(point):
            start = point
            break
    if start is None:
        if failure is not None:
            leaf.truncated, leaf.diagnostic = True, str(failure)
        else:
            leaf.diagnostic = 'leaf does not meet the window'
        return leaf

    forward, forward_issue = _march(h, fol, parameter, region, start, s0, 1.0, step)
    if fol.kind == FoliationKind.RADIAL:
        backward, backward_issue = [], None
    else:
        backward, backward_issue = _march(h, fol, parameter, region, start, s0, -1.0, step)
    leaf.points = list(reversed(backward)) + [start] + forward
    issue = forward_issue or backward_issue
    if issue:
        leaf.truncated, leaf.diagnostic = True, issue
    leaf.residual = max(leaf_residual(h, fol, parameter, p) for p in leaf.points)
    if leaf.residual > leaf_tol:
        logger.warning('Leaf %.6g residual %.3e exceeds %.1e', parameter, leaf.residual, leaf_tol)
    return leaf


def leaf_parameters(h, fol, region, count=None):
    """
    Evenly spread ray angles, or cell midpoints of the range of the first canonical coordinate of h
    """
    if fol.kind == FoliationKind.RADIAL:
        count = count or DEFAULT_RAYS
        return (2.0 * math.pi * np.arange(count) / count).tolist()
    count = count or DEFAULT_LINES
    first = [fol.canonical(h.evaluate(p))[0] for p in region.nodes()]
    low, high = min(first), max(first)
    return (low + (np.arange(count) + 0.5) * (high - low) / count).tolist()


def trace_foliation(h, fol, region, count=None, step=1e-2, leaf_tol=1e-6):
    leaves = [trace_leaf(h, fol, parameter, region, step, leaf_tol)
              for parameter in leaf_parameters(h, fol, region, count)]
    truncated = sum(1 for leaf in leaves if leaf.truncated)
    logger.info('Traced %d %s leaves (%d truncated)', len(leaves), fol.kind.value, truncated)
    return leaves


def leaf_invariance_check(planar_map, h, fol, leaf, min_norm=1e-6):
    """
    How far phi moves the traced points off their own leaf
    """
    worst = 0.0
    for q in leaf.points:
        here = fol.canonical(h.evaluate(q))
        there = fol.canonical(h.evaluate(planar_map.evaluate(q)))
        if fol.kind == FoliationKind.VERTICAL:
            worst = max(worst, abs(there[0] - here[0]))
        elif norm(here) >= min_norm:
            angle = math.atan2(there[1], there[0]) - math.atan2(-here[1], -here[0])
            worst = max(worst, abs(_wrap(angle)))
    return worst
