"""
The standard map h = 1/2 (I + D phi(0) phi) and the checks built around it
"""
import enum
import logging
import math
from dataclasses import dataclass

from .exceptions import BasePointError, NotApplicableError
from .expr import PlanarMap
from .linalg2 import (
    Mat2,
    add,
    apply,
    distance,
    eigenvalues,
    max_abs_entry,
    norm,
    spectrum_distance,
)

logger = logging.getLogger(__name__)

BASE_TOL = 1e-9
SEPARATION_FRACTION = 1e-3


class StandardMap(PlanarMap):
    source = 'standard-map'

    def __init__(self, base, linear_part):
        self.base = base
        self.linear_part = linear_part

    def components(self, x, y):
        u, v = self.base.components(x, y)
        a = self.linear_part
        return 0.5 * (x + (a.a11 * u + a.a12 * v)), 0.5 * (y + (a.a21 * u + a.a22 * v))

    def describe(self):
        return 'standard map of {0}'.format(self.base.describe())


class AuxiliaryMap(PlanarMap):
    """
    g = D phi(0) + phi, so that h = 1/2 D phi(0) g
    """
    source = 'auxiliary-map'

    def __init__(self, base, linear_part):
        self.base = base
        self.linear_part = linear_part

    def components(self, x, y):
        u, v = self.base.components(x, y)
        a = self.linear_part
        return (a.a11 * x + a.a12 * y) + u, (a.a21 * x + a.a22 * y) + v

    def describe(self):
        return 'auxiliary map of {0}'.format(self.base.describe())


class Collision(enum.Enum):
    NONE = 'no-collision-found'
    FOUND = 'collision'


@dataclass(frozen=True)
class InjectivityCertificate:
    status: Collision
    witness_pair: tuple = None
    cells_checked: int = 0
    collision_tol: float = 1e-6
    separation_min: float = 0.0


@dataclass(frozen=True)
class JacobianBounds:
    min_trace: float
    min_det: float


def _linear_part_at_origin(planar_map, tol):
    image, jacobian = planar_map.evaluate_with_jacobian((0.0, 0.0))
    if norm(image) > tol:
        raise BasePointError(
            'phi(0) = ({0!r}, {1!r}) is not the origin; recenter the map at a fixed point'.format(*image))
    return jacobian


def standard_map(planar_map, tol=BASE_TOL):
    linear_part = _linear_part_at_origin(planar_map, tol)
    logger.debug('Standard map built on D phi(0) = %s', linear_part)
    return StandardMap(planar_map, linear_part)


def auxiliary_map(planar_map, tol=BASE_TOL):
    return AuxiliaryMap(planar_map, _linear_part_at_origin(planar_map, tol))


def conjugacy_residual(h, p):
    """
    |h(phi(p)) - D phi(0) h(p)| / (1 + |p|)
    """
    left = h.evaluate(h.base.evaluate(p))
    right = apply(h.linear_part, h.evaluate(p))
    return distance(left, right) / (1.0 + norm(p))


def auxiliary_residual(h, p):
    g = AuxiliaryMap(h.base, h.linear_part).evaluate(p)
    half = apply(h.linear_part, g)
    return distance(h.evaluate(p), (0.5 * half[0], 0.5 * half[1]))


def injectivity_scan(h, region, scan_n=201, collision_tol=1e-6, separation_min=None):
    """
    Buckets the images of a scan_n x scan_n grid in cells of side collision_tol and looks for
    two images closer than collision_tol whose preimages are at least separation_min apart.
    A NONE status is only evidence; a FOUND status is a concrete witness of non-injectivity.
    """
    if scan_n < 2:
        raise ValueError('scan-n must be at least 2')
    if separation_min is None:
        separation_min = SEPARATION_FRACTION * region.diameter
    cells, checked = {}, 0
    for p in region.with_grid(scan_n).nodes():
        image = h.evaluate(p)
        cx, cy = math.floor(image[0] / collision_tol), math.floor(image[1] / collision_tol)
        for i in (cx - 1, cx, cx + 1):
            for j in (cy - 1, cy, cy + 1):
                checked += 1
                for q, other in cells.get((i, j), ()):
                    if distance(image, other) <= collision_tol and distance(p, q) >= separation_min:
                        logger.info('Collision: h%s and h%s lie within %.1e', q, p, collision_tol)
                        return InjectivityCertificate(Collision.FOUND, (q, p), checked, collision_tol, separation_min)
        cells.setdefault((cx, cy), []).append((p, image))
    logger.info('No collision among %d images on %s', scan_n * scan_n, region.label())
    return InjectivityCertificate(Collision.NONE, None, checked, collision_tol, separation_min)


def spectrum_shift_check(planar_map, region, tol=BASE_TOL):
    """
    Max over the grid of the distance between Spc(Dg(p)) and Spc(D phi(p)) - 1
    """
    g = auxiliary_map(planar_map, tol)
    if max_abs_entry(add(g.linear_part, Mat2.identity())) > tol:
        raise NotApplicableError('spectrum shift needs D phi(0) = -I')
    worst = 0.0
    for p in region.nodes():
        shifted = eigenvalues(planar_map.evaluate_with_jacobian(p)[1]).shifted(-1.0)
        worst = max(worst, spectrum_distance(eigenvalues(g.evaluate_with_jacobian(p)[1]), shifted))
    logger.info('Spectrum shift deviation %.3e on %s', worst, region.label())
    return worst


def theorem_B_jacobian_check(h, region):
    min_trace = min_det = math.inf
    for p in region.nodes():
        jacobian = h.evaluate_with_jacobian(p)[1]
        min_trace = min(min_trace, jacobian.trace)
        min_det = min(min_det, jacobian.det)
    return JacobianBounds(min_trace, min_det)
