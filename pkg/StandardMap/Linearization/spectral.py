"""
Sampling of Spc(phi) on a window and the spectral hypotheses of the two linearization theorems
"""
import enum
import logging
import math
from dataclasses import dataclass

from .exceptions import BasePointError
from .involution import FixClass, Orientation, orientation, verify_involution
from .linalg2 import eigenvalues, multiply, norm

logger = logging.getLogger(__name__)

BASE_TOL = 1e-9
UNIT_TOL = 1e-9


class Condition(enum.Enum):
    A_A = 'A-a'
    A_B = 'A-b'
    A_C = 'A-c'
    B_TRACE = 'B-trace'


@dataclass(frozen=True)
class SpectrumSample:
    point: tuple
    spectrum: object
    trace_product: float


@dataclass(frozen=True)
class ConditionVerdict:
    """
    ``margin`` is positive when the condition holds with room to spare and negative
    (or zero) at a violation; ``witness`` is the first violating sample in grid order.
    """
    condition: Condition
    holds: bool
    witness: SpectrumSample = None
    margin: float = 0.0


@dataclass(frozen=True)
class TheoremVerdict:
    orientation: Orientation
    conditions: tuple
    linearizable: bool
    theorem: str
    text: str
    window: str
    epsilon: float


def base_linear_part(planar_map, fixed_points=None, tol=BASE_TOL):
    """
    D phi(0) when the origin is fixed, otherwise the Jacobian at a discovered Fix- point
    """
    if norm(planar_map.evaluate((0.0, 0.0))) <= tol:
        return planar_map.evaluate_with_jacobian((0.0, 0.0))[1]
    for point in fixed_points or ():
        if point.classification == FixClass.FIX_MINUS:
            return point.jacobian
    raise BasePointError('phi(0) != 0 and no Fix- point is available as base point; recenter the map first')


def sample_spectrum(planar_map, region, base=None, fixed_points=None):
    if base is None:
        base = base_linear_part(planar_map, fixed_points)
    samples = []
    for p in region.nodes():
        jacobian = planar_map.evaluate_with_jacobian(p)[1]
        samples.append(SpectrumSample(p, eigenvalues(jacobian), multiply(base, jacobian).trace))
    return samples


def _is_real(value, im_tol):
    return abs(value.imag) <= im_tol


def _interval_margin(value, epsilon):
    """
    Signed distance of a real eigenvalue to [1, 1 + epsilon); negative inside
    """
    if value < 1.0:
        return 1.0 - value
    if value >= 1.0 + epsilon:
        return value - (1.0 + epsilon)
    return -min(value - 1.0, 1.0 + epsilon - value)


def check_condition_A(samples, epsilon=0.1, im_tol=1e-9):
    """
    Returns the verdicts for (a) Spc = {1}, (b) Spc missing [1, 1 + epsilon) and (c) Spc real
    """
    if epsilon <= 0 or im_tol <= 0:
        raise ValueError('epsilon and im-tol must be positive')
    unit_gap, unit_witness = 0.0, None
    gap_margin, gap_witness = math.inf, None
    imag_peak, imag_witness = 0.0, None
    for sample in samples:
        for value in sample.spectrum.values():
            distance_to_one = abs(value - 1.0)
            if distance_to_one > unit_gap:
                unit_gap = distance_to_one
                if unit_witness is None and distance_to_one > UNIT_TOL:
                    unit_witness = sample
            if _is_real(value, im_tol):
                margin = _interval_margin(value.real, epsilon)
                if margin < gap_margin:
                    gap_margin = margin
                if gap_witness is None and 1.0 <= value.real < 1.0 + epsilon:
                    gap_witness = sample
            else:
                if imag_witness is None:
                    imag_witness = sample
                imag_peak = max(imag_peak, abs(value.imag))
    return {
        Condition.A_A: ConditionVerdict(Condition.A_A, unit_gap <= UNIT_TOL, unit_witness, -unit_gap),
        Condition.A_B: ConditionVerdict(Condition.A_B, gap_witness is None, gap_witness, gap_margin),
        Condition.A_C: ConditionVerdict(Condition.A_C, imag_witness is None, imag_witness, -imag_peak),
    }


def check_condition_B(samples):
    lowest, witness = math.inf, None
    for sample in samples:
        if sample.trace_product < lowest:
            lowest, witness = sample.trace_product, sample
    holds = lowest > -1.0
    return ConditionVerdict(Condition.B_TRACE, holds, None if holds else witness, lowest + 1.0)


def _point_label(p):
    return '({0:.6g}, {1:.6g})'.format(p[0], p[1])


def decide(kind, samples, region, epsilon=0.1, im_tol=1e-9):
    """
    Picks the theorem whose hypothesis holds on the sampled window
    """
    window = region.label()
    if kind == Orientation.PRESERVING:
        verdicts = check_condition_A(samples, epsilon, im_tol)
        conditions = (verdicts[Condition.A_A], verdicts[Condition.A_B], verdicts[Condition.A_C])
        if verdicts[Condition.A_A].holds:
            theorem, reason = 'A(a)', 'φ = I'
        elif verdicts[Condition.A_C].holds:
            theorem, reason = 'A(c)', 'Spc ⊂ ℝ'
        elif verdicts[Condition.A_B].holds:
            theorem, reason = 'A(b)', 'Spc misses [1, 1+{0:g})'.format(epsilon)
        else:
            theorem = ''
            witness = verdicts[Condition.A_B].witness
            reason = 'Theorem A(b) violated at witness {0}'.format(_point_label(witness.point))
    else:
        trace = check_condition_B(samples)
        conditions = (trace,)
        if trace.holds:
            theorem, reason = 'B', 'trace condition, margin {0:.6g}'.format(trace.margin)
        else:
            theorem = ''
            reason = 'Theorem B trace condition violated at witness {0}'.format(_point_label(trace.witness.point))
    if theorem:
        text = 'Theorem {0} applies ({1}) on window {2}'.format(theorem, reason, window)
    else:
        text = 'no hypothesis verified; {0} on window {1}'.format(reason, window)
    return TheoremVerdict(kind, conditions, bool(theorem), theorem, text, window, epsilon)


def theorem_verdict(planar_map, region, epsilon=0.1, tol=1e-9, im_tol=1e-9, fixed_points=None):
    involution = verify_involution(planar_map, region, tol)
    if not involution.passed:
        logger.warning('Map fails the involution identity on %s (residual %.3e)',
                       region.label(), involution.max_residual)
    kind = orientation(planar_map, region).kind
    samples = sample_spectrum(planar_map, region, fixed_points=fixed_points)
    verdict = decide(kind, samples, region, epsilon, im_tol)
    logger.info(verdict.text)
    return verdict
