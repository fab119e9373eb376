"""
Real 2x2 matrices, their closed-form spectra and a few point helpers.

Points are plain ``(x, y)`` tuples of floats throughout the app.
"""
import math
from dataclasses import dataclass

from .exceptions import SingularMatrixError

SINGULAR_DET = 1e-14
# Relative size of a negative discriminant that is still treated as rounding noise
DISCRIMINANT_NOISE = 1e-14


@dataclass(frozen=True)
class Mat2:
    a11: float
    a12: float
    a21: float
    a22: float

    @property
    def trace(self):
        return self.a11 + self.a22

    @property
    def det(self):
        return self.a11 * self.a22 - self.a12 * self.a21

    @classmethod
    def identity(cls):
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def diagonal(cls, d1, d2):
        return cls(float(d1), 0.0, 0.0, float(d2))

    @classmethod
    def from_columns(cls, first, second):
        return cls(first[0], second[0], first[1], second[1])

    def entries(self):
        return self.a11, self.a12, self.a21, self.a22

    def rows(self):
        return [[self.a11, self.a12], [self.a21, self.a22]]


@dataclass(frozen=True)
class Spectrum:
    """
    Both roots of the characteristic polynomial.

    ``lambda1`` comes from the minus branch of the quadratic formula and ``lambda2`` from
    the plus branch. ``real`` is decided from the sign of the discriminant, and real roots
    carry an imaginary part of exactly zero.
    """
    lambda1: complex
    lambda2: complex
    real: bool

    def values(self):
        return self.lambda1, self.lambda2

    def shifted(self, amount):
        return Spectrum(self.lambda1 + amount, self.lambda2 + amount, self.real)


def multiply(a, b):
    return Mat2(
        a.a11 * b.a11 + a.a12 * b.a21,
        a.a11 * b.a12 + a.a12 * b.a22,
        a.a21 * b.a11 + a.a22 * b.a21,
        a.a21 * b.a12 + a.a22 * b.a22,
    )


def add(a, b):
    return Mat2(a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22)


def subtract(a, b):
    return Mat2(a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22)


def scale(c, a):
    return Mat2(c * a.a11, c * a.a12, c * a.a21, c * a.a22)


def apply(a, p):
    return a.a11 * p[0] + a.a12 * p[1], a.a21 * p[0] + a.a22 * p[1]


def inverse(a):
    det = a.det
    if abs(det) <= SINGULAR_DET:
        raise SingularMatrixError(det)
    return Mat2(a.a22 / det, -a.a12 / det, -a.a21 / det, a.a11 / det)


def max_abs_entry(a):
    return max(abs(entry) for entry in a.entries())


def is_linear_involution(a, tol=1e-9):
    return max_abs_entry(subtract(multiply(a, a), Mat2.identity())) <= tol


def eigenvalues(m):
    """
    Closed form lambda_j = (trace + (-1)^j sqrt(trace^2 - 4 det)) / 2.

    The discriminant is evaluated as (a11 - a22)^2 + 4 a12 a21, which equals
    trace^2 - 4 det but keeps triangular and conjugated-triangular matrices exact.
    The larger root is taken from the formula and the smaller one from det / larger,
    so that products stay accurate when the roots differ in magnitude.
    """
    trace = m.trace
    spread = (m.a11 - m.a22) ** 2
    coupling = 4.0 * m.a12 * m.a21
    discriminant = spread + coupling
    if discriminant < 0 and -discriminant <= DISCRIMINANT_NOISE * (spread + abs(coupling)):
        discriminant = 0.0
    if discriminant < 0:
        re = trace / 2.0
        im = math.sqrt(-discriminant) / 2.0
        return Spectrum(complex(re, -im), complex(re, im), False)
    root = math.sqrt(discriminant)
    if trace >= 0:
        plus = (trace + root) / 2.0
        minus = m.det / plus if plus != 0 else 0.0
    else:
        minus = (trace - root) / 2.0
        plus = m.det / minus
    return Spectrum(complex(minus, 0.0), complex(plus, 0.0), True)


def eigenvector(m, value, tol=1e-12):
    """
    Unit eigenvector for a real eigenvalue, first nonzero component positive.
    Returns None when M - value*I vanishes (every vector is an eigenvector).
    """
    rows = [(m.a11 - value, m.a12), (m.a21, m.a22 - value)]
    a, b = max(rows, key=lambda row: math.hypot(row[0], row[1]))
    length = math.hypot(a, b)
    if length <= tol:
        return None
    vx, vy = -b / length, a / length
    if vx < 0 or (vx == 0 and vy < 0):
        vx, vy = -vx, -vy
    return vx, vy


def spectrum_distance(first, second):
    """
    Distance between two spectra seen as unordered two-element sets
    """
    a1, a2 = first.values()
    b1, b2 = second.values()
    straight = max(abs(a1 - b1), abs(a2 - b2))
    crossed = max(abs(a1 - b2), abs(a2 - b1))
    return min(straight, crossed)


def norm(p):
    return math.hypot(p[0], p[1])


def distance(p, q):
    return math.hypot(p[0] - q[0], p[1] - q[1])
