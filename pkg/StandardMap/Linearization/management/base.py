import logging

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import ValidationError

from ..analysis import AnalysisOptions, resolve_map
from ..exceptions import PhaseError
from ..serializers import AnalysisOptionsSerializer, parse_window

logger = logging.getLogger(__name__)

PHASE_ERROR_STATUS = 2


def format_detail(detail):
    """
    Flattens DRF error details into one line
    """
    if isinstance(detail, dict):
        return '; '.join('{0}: {1}'.format(key, format_detail(value)) for key, value in detail.items())
    if isinstance(detail, (list, tuple)):
        return ' '.join(format_detail(item) for item in detail)
    return str(detail)


class AnalysisCommand(BaseCommand):
    """
    Shared map selection, window and tolerance flags of analyze and foliate
    """

    def add_arguments(self, parser):
        source = parser.add_mutually_exclusive_group()
        source.add_argument('--map', help='map as "(f1, f2)" over x and y')
        source.add_argument('--gallery', help='gallery entry NAME[:n]')
        parser.add_argument('--window', help='XMIN,XMAX,YMIN,YMAX (default from settings or the gallery entry)')
        parser.add_argument('--grid', type=int, help='samples per axis')
        parser.add_argument('--eps', type=float, help='epsilon of condition A(b)')
        parser.add_argument('--tol', type=float, help='involution and base point tolerance')
        parser.add_argument('--scan', type=int, help='injectivity scan samples per axis')
        parser.add_argument('--leaves', type=int, help='number of leaves to trace')
        parser.add_argument('--step', type=float, help='continuation step along canonical leaves')

    def config(self):
        return settings.INVOLUTION_ANALYSIS

    def validated_options(self, options):
        conf = self.config()

        def pick(name, key):
            value = options.get(name)
            return conf[key] if value is None else value

        serializer = AnalysisOptionsSerializer(data={
            'map': options.get('map'),
            'gallery': options.get('gallery'),
            'window': options.get('window'),
            'grid': pick('grid', 'GRID'),
            'eps': pick('eps', 'EPSILON'),
            'tol': pick('tol', 'TOLERANCE'),
            'scan': pick('scan', 'SCAN'),
            'leaves': options.get('leaves'),
            'step': pick('step', 'LEAF_STEP'),
        })
        try:
            serializer.is_valid()
        except ValidationError as error:
            raise CommandError(format_detail(error.detail))
        return serializer

    def prepare(self, options):
        """
        Returns (map, source label, AnalysisOptions) for the command line options
        """
        serializer = self.validated_options(options)
        data = serializer.validated_data
        conf = self.config()
        try:
            planar_map, source, default_window = resolve_map(data.get('map'), data.get('gallery'))
        except PhaseError as error:
            raise CommandError(str(error), returncode=PHASE_ERROR_STATUS)
        try:
            region = serializer.region(default_window.bounds() if default_window else parse_window(conf['WINDOW']))
        except (ValidationError, ValueError) as error:
            raise CommandError('Invalid window: {0}'.format(format_detail(getattr(error, 'detail', error))))
        analysis_options = AnalysisOptions(
            window=region,
            epsilon=data['eps'],
            tol=data['tol'],
            im_tol=conf['IM_TOL'],
            scan_n=data['scan'],
            collision_tol=conf['COLLISION_TOL'],
            newton_tol=conf['NEWTON_TOL'],
            max_iter=conf['NEWTON_MAX_ITER'],
            class_tol=conf['CLASS_TOL'],
            leaf_step=data['step'],
        )
        return planar_map, source, analysis_options, data.get('leaves')

    def write_output(self, path, content):
        mode = 'wb' if isinstance(content, bytes) else 'w'
        try:
            with open(path, mode) as stream:
                stream.write(content)
        except OSError as error:
            raise CommandError('Cannot write {0}: {1}'.format(path, error))
