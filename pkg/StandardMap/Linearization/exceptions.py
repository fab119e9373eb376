class InvolutionError(Exception):
    """
    Base class for every failure raised while analysing a planar map
    """


class ExpressionSyntaxError(InvolutionError):
    def __init__(self, message, position):
        super().__init__('{0} (at offset {1})'.format(message, position))
        self.message = message
        self.position = position


class UnknownIdentifierError(ExpressionSyntaxError):
    pass


class MalformedExponentError(ExpressionSyntaxError):
    pass


class EvaluationError(InvolutionError):
    def __init__(self, point, reason):
        super().__init__('Evaluation failed at ({0!r}, {1!r}): {2}'.format(point[0], point[1], reason))
        self.point = point
        self.reason = reason


class SingularMatrixError(InvolutionError):
    def __init__(self, det):
        super().__init__('Matrix is singular, det = {0!r}'.format(det))
        self.det = det


class DegenerateOrientationError(InvolutionError):
    def __init__(self, point, det, reason):
        super().__init__('{0} at ({1!r}, {2!r}), det = {3!r}'.format(reason, point[0], point[1], det))
        self.point = point
        self.det = det


class BasePointError(InvolutionError):
    pass


class NotApplicableError(InvolutionError):
    pass


class InversionError(InvolutionError):
    def __init__(self, reason, last_iterate):
        super().__init__('{0}; last iterate ({1!r}, {2!r})'.format(reason, last_iterate[0], last_iterate[1]))
        self.reason = reason
        self.last_iterate = last_iterate


class UnknownEntryError(InvolutionError):
    pass


class InvalidParameterError(InvolutionError):
    pass


class PhaseError(InvolutionError):
    """
    Wraps the failure of one analysis phase so the caller can report which phase broke
    """

    def __init__(self, phase, error):
        super().__init__('[{0}] {1}'.format(phase, error))
        self.phase = phase
        self.error = error
