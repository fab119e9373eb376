import math

from rest_framework import serializers
from rest_framework.exceptions import ValidationError
from rest_framework.renderers import JSONRenderer

from .involution import Region


def parse_window(text):
    """
    Parses "XMIN,XMAX,YMIN,YMAX" into four floats
    """
    parts = [part.strip() for part in str(text).split(',')]
    if len(parts) != 4:
        raise ValidationError('Window must have the form XMIN,XMAX,YMIN,YMAX')
    try:
        bounds = [float(part) for part in parts]
    except ValueError:
        raise ValidationError('Window bounds must be numbers')
    if not all(math.isfinite(bound) for bound in bounds):
        raise ValidationError('Window bounds must be finite')
    if not (bounds[0] < bounds[1] and bounds[2] < bounds[3]):
        raise ValidationError('Window needs XMIN < XMAX and YMIN < YMAX')
    return tuple(bounds)


class FiniteFloatField(serializers.FloatField):
    """
    Infinite or NaN values (an empty set's margin) are written as null
    """

    def to_representation(self, value):
        value = float(value)
        return value if math.isfinite(value) else None


class PointField(serializers.Field):
    def to_representation(self, value):
        return [float(value[0]), float(value[1])]


class PointPairField(serializers.Field):
    def to_representation(self, value):
        return [[float(p[0]), float(p[1])] for p in value]


class ComplexField(serializers.Field):
    def to_representation(self, value):
        return {'re': float(value.real), 'im': float(value.imag)}


class EnumValueField(serializers.Field):
    def to_representation(self, value):
        return value.value


class MatrixField(serializers.Field):
    def to_representation(self, value):
        return [list(row) for row in value.rows()]


class RegionSerializer(serializers.Serializer):
    x_min = serializers.FloatField()
    x_max = serializers.FloatField()
    y_min = serializers.FloatField()
    y_max = serializers.FloatField()
    grid_n = serializers.IntegerField()
    label = serializers.CharField()


class InvolutionVerdictSerializer(serializers.Serializer):
    max_residual = FiniteFloatField()
    passed = serializers.BooleanField()
    worst_point = PointField()
    tol = serializers.FloatField()


class OrientationSerializer(serializers.Serializer):
    kind = EnumValueField()
    min_abs_det = FiniteFloatField()


class FixedPointSerializer(serializers.Serializer):
    location = PointField()
    classification = EnumValueField()
    jacobian = MatrixField()
    residual = FiniteFloatField()


class SpectrumSerializer(serializers.Serializer):
    lambda1 = ComplexField()
    lambda2 = ComplexField()
    real = serializers.BooleanField()


class SpectrumSampleSerializer(serializers.Serializer):
    point = PointField()
    spectrum = SpectrumSerializer()
    trace_product = FiniteFloatField()


class ConditionVerdictSerializer(serializers.Serializer):
    condition = EnumValueField()
    holds = serializers.BooleanField()
    witness = SpectrumSampleSerializer(allow_null=True)
    margin = FiniteFloatField()


class InjectivitySerializer(serializers.Serializer):
    status = EnumValueField()
    witness_pair = PointPairField(allow_null=True)
    cells_checked = serializers.IntegerField()
    collision_tol = serializers.FloatField()
    separation_min = serializers.FloatField()


class AnalysisReportSerializer(serializers.Serializer):
    header = serializers.DictField()
    map_source = serializers.CharField()
    window = RegionSerializer()
    involution = InvolutionVerdictSerializer()
    orientation = OrientationSerializer()
    fixed_set_kind = serializers.CharField()
    fixed_points = FixedPointSerializer(many=True)
    recentered_at = PointField(allow_null=True)
    conditions = ConditionVerdictSerializer(many=True)
    theorem = serializers.CharField(source='verdict.theorem')
    linearizable = serializers.BooleanField(source='verdict.linearizable')
    theorem_verdict = serializers.CharField()
    conjugacy_residual = FiniteFloatField()
    injectivity = InjectivitySerializer()
    spectrum_shift_deviation = FiniteFloatField(allow_null=True)
    foliation_kind = serializers.CharField(allow_null=True)
    foliation_certified = serializers.BooleanField()
    leaf_count = serializers.IntegerField()
    max_leaf_residual = FiniteFloatField(allow_null=True)
    timings = serializers.DictField(child=serializers.FloatField())
    nondeterministic_fields = serializers.ListField(child=serializers.CharField())


def render_report(report):
    data = AnalysisReportSerializer(report).data
    return JSONRenderer().render(data, renderer_context={'indent': 2})


class AnalysisOptionsSerializer(serializers.Serializer):
    """
    Options shared by the analyze and foliate commands, as given on the command line
    """
    map = serializers.CharField(required=False, allow_null=True)
    gallery = serializers.CharField(required=False, allow_null=True)
    window = serializers.CharField(required=False, allow_null=True)
    grid = serializers.IntegerField(min_value=2)
    eps = serializers.FloatField()
    tol = serializers.FloatField()
    scan = serializers.IntegerField(min_value=2)
    leaves = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    step = serializers.FloatField()

    def is_valid(self, raise_exception=True):
        """
        Validating of input data
        """
        super(AnalysisOptionsSerializer, self).is_valid(raise_exception=True)
        has_map = bool(self.validated_data.get('map'))
        has_gallery = bool(self.validated_data.get('gallery'))
        if has_map == has_gallery:
            raise ValidationError('Exactly one of --map and --gallery is required')
        return True

    def validate_window(self, window):
        if window is None:
            return None
        return parse_window(window)

    def validate_eps(self, eps):
        if not eps > 0:
            raise ValidationError('Epsilon must be positive')
        return eps

    def validate_tol(self, tol):
        if not tol > 0:
            raise ValidationError('Tolerance must be positive')
        return tol

    def validate_step(self, step):
        if not step > 0:
            raise ValidationError('Leaf step must be positive')
        return step

    def region(self, default_window):
        bounds = self.validated_data.get('window') or default_window
        return Region(*bounds, grid_n=self.validated_data['grid'])
