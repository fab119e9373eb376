"""
Worked examples with their known answers.

The A family depends on an integer n >= 0 (default 1). For n = 0 the maps A2 and A4 do not
fix the origin; the loader recenters them at their fixed point so every entry satisfies
phi(0) = 0. Example D is not here: its involution is only shown to exist, never written down.
"""
import math
from dataclasses import dataclass

from .exceptions import InvalidParameterError, UnknownEntryError
from .expr import NativeMap, RecenteredMap, clamp, cos, parse, sin
from .involution import Orientation, Region

DEFAULT_N = 1
DEFAULT_WINDOW = Region(-5.0, 5.0, -5.0, 5.0)
EXAMPLE_C_WINDOW = Region(-6.0, 6.0, -6.0, 6.0)
EXAMPLE_D_NOTE = ('Example D is out of scope: the embedding and the involution fixing it are only '
                  'shown to exist and have no closed form')

THEOREM_A_A = 'Theorem A(a)'
THEOREM_A_C = 'Theorem A(c)'
THEOREM_B = 'Theorem B'
NO_HYPOTHESIS = 'no hypothesis verified'
IDENTITY_H = '(x, y)'


@dataclass(frozen=True)
class Expected:
    orientation: Orientation
    known_verdict: str
    known_h: str = None
    known_foliation: str = None


@dataclass(frozen=True)
class GalleryEntry:
    name: str
    parameter_n: int
    map: object
    expected: Expected
    formula: str
    tag: str
    window: Region = DEFAULT_WINDOW

    def known_standard_map(self):
        return parse(self.expected.known_h) if self.expected.known_h else None


def _bump(t):
    """
    C^1 bump equal to pi on [-1, 1] and to 0 outside (-2, 2)
    """
    u = clamp(2.0 - abs(t), 0.0, 1.0)
    return math.pi * (3.0 * u * u - 2.0 * u * u * u)


def _rotation_minus_identity(theta, a, b):
    c, s = cos(theta) - 1.0, sin(theta)
    return c * a + s * b, -s * a + c * b


def _example_c(x, y):
    # offsets from the centres (3, 3) and (-3, -3)
    px, py = x - 3.0, y - 3.0
    mx, my = x + 3.0, y + 3.0
    theta_plus = _bump(px * px + py * py)
    theta_minus = _bump(mx * mx + my * my)
    u1, v1 = _rotation_minus_identity(-theta_plus, -px, -py)
    u2, v2 = _rotation_minus_identity(theta_minus, -mx, -my)
    return -x + u1 + u2, -y + v1 + v2


def example_c_map():
    """
    psi(p) = c + R_{-theta(p)}(-p - c) with theta the difference of the bumps around (3, 3) and
    (-3, -3) and c the centre opposite the ball p lies in; psi = -p away from both balls
    """
    return NativeMap(
        'example-c',
        _example_c,
        {'centres': [[3.0, 3.0], [-3.0, -3.0]], 'inner_radius': 1.0, 'outer_radius': math.sqrt(2.0)},
        formula='psi(p) = c + R(-theta(p))(-p - c), theta = eta(|p-(3,3)|^2) - eta(|p+(3,3)|^2)',
    )


def _a1(n):
    k = 2 * n + 1
    return ('(x - y^{0}, -y)'.format(k), Orientation.REVERSING, THEOREM_B,
            '(x - y^{0}/2, y)'.format(k) if n else IDENTITY_H,
            '2x - y^{0} = const'.format(k), None)


def _a2(n):
    return ('(-x + y^{0}, -y)'.format(2 * n), Orientation.PRESERVING, THEOREM_A_C,
            '(x - y^{0}/2, y)'.format(2 * n) if n else IDENTITY_H,
            'rays pulled back through h (radial type)', None if n else (0.5, 0.0))


def _a3(n):
    k = 2 * n + 1
    return ('(-y - ((x + y)/2)^{0}, -x + ((x + y)/2)^{0})'.format(k), Orientation.REVERSING, THEOREM_B,
            '(x - ((x + y)/2)^{0}/2, y + ((x + y)/2)^{0}/2)'.format(k) if n else IDENTITY_H,
            'x - y - ((x + y)/2)^{0} = const'.format(k) if n else '(x - 3y)/2 = const', None)


def _a4(n):
    return ('(-x + ((x + y)/2)^{0}, -y - ((x + y)/2)^{0})'.format(2 * n), Orientation.PRESERVING, THEOREM_A_C,
            '(x - ((x + y)/2)^{0}/2, y + ((x + y)/2)^{0}/2)'.format(2 * n) if n else IDENTITY_H,
            'rays pulled back through h (radial type)', None if n else (0.5, -0.5))


FAMILY = {
    'A1': (_a1, 'Example A(i)'),
    'A2': (_a2, 'Example A(ii)'),
    'A3': (_a3, 'Example A(iii)'),
    'A4': (_a4, 'Example A(iv)'),
}

FIXED = {
    'B': ('(asinh((sinh(x) + sinh(y))/2), asinh((3*sinh(x) - sinh(y))/2))', Orientation.REVERSING, THEOREM_B,
          None, 'pi_1(S h) = const (vertical type)', 'Example B'),
    'identity': ('(x, y)', Orientation.PRESERVING, THEOREM_A_A, IDENTITY_H, None, 'linear baseline'),
    'minus-identity': ('(-x, -y)', Orientation.PRESERVING, THEOREM_A_C, IDENTITY_H, 'rays from the origin',
                       'linear baseline'),
    'flip-y': ('(x, -y)', Orientation.REVERSING, THEOREM_B, IDENTITY_H, 'x = const', 'linear baseline'),
}

NAMES = ['A1', 'A2', 'A3', 'A4', 'B', 'C', 'identity', 'minus-identity', 'flip-y']


def list_entries():
    return list(NAMES)


def get(name, n=None):
    if name == 'D':
        raise UnknownEntryError(EXAMPLE_D_NOTE)
    if name not in NAMES:
        raise UnknownEntryError('Unknown gallery entry {0}; known entries: {1}'.format(name, ', '.join(NAMES)))
    if name in FAMILY:
        n = DEFAULT_N if n is None else n
        if int(n) != n or n < 0:
            raise InvalidParameterError('n must be a non-negative integer, got {0}'.format(n))
        n = int(n)
        build, tag = FAMILY[name]
        formula, kind, verdict, known_h, foliation, center = build(n)
        planar_map = parse(formula)
        if center is not None:
            planar_map = RecenteredMap(planar_map, center)
        return GalleryEntry(name, n, planar_map, Expected(kind, verdict, known_h, foliation), formula,
                            '{0}, n = {1}'.format(tag, n))
    if n is not None:
        raise InvalidParameterError('Gallery entry {0} takes no parameter n'.format(name))
    if name == 'C':
        planar_map = example_c_map()
        return GalleryEntry('C', None, planar_map, Expected(Orientation.PRESERVING, NO_HYPOTHESIS, None,
                                                            'degenerate: h collapses B_1(3,3) to (3,3)'),
                            planar_map.formula, 'Example C', EXAMPLE_C_WINDOW)
    formula, kind, verdict, known_h, foliation, tag = FIXED[name]
    return GalleryEntry(name, None, parse(formula), Expected(kind, verdict, known_h, foliation), formula, tag)


def load(reference):
    """
    Resolves "NAME" or "NAME:n" (an optional "gallery:" prefix is accepted)
    """
    parts = reference.split(':')
    if parts[0] == 'gallery':
        parts = parts[1:]
    if not parts or len(parts) > 2 or not parts[0]:
        raise UnknownEntryError('Gallery reference must look like NAME or NAME:n, got {0}'.format(reference))
    n = None
    if len(parts) == 2:
        try:
            n = int(parts[1])
        except ValueError:
            raise InvalidParameterError('n must be a non-negative integer, got {0}'.format(parts[1]))
    return get(parts[0], n)
