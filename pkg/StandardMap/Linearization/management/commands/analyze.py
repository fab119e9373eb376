from django.core.management.base import CommandError

from ...analysis import build_header, run_analysis
from ...exceptions import PhaseError
from ...serializers import render_report
from ..base import PHASE_ERROR_STATUS, AnalysisCommand


class Command(AnalysisCommand):
    help = 'Checks the linearization hypotheses of a planar involution and writes a JSON report'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--out', help='report path (default: standard output)')

    def handle(self, *args, **options):
        planar_map, source, analysis_options, leaves = self.prepare(options)
        header = build_header('analyze', source, analysis_options, leaves)
        try:
            report = run_analysis(planar_map, source, analysis_options, header, leaves)
        except PhaseError as error:
            raise CommandError(str(error), returncode=PHASE_ERROR_STATUS)
        document = render_report(report)
        if options.get('out'):
            self.write_output(options['out'], document)
            if options['verbosity'] >= 1:
                self.stdout.write('{0}\nReport written to {1}'.format(report.theorem_verdict, options['out']))
        else:
            self.stdout.write(document.decode('utf-8'))
