import io

from django.core.management.base import CommandError

from ...analysis import build_header, run_analysis, trace_leaves
from ...exceptions import PhaseError
from ...portrait import write_csv, write_svg
from ..base import PHASE_ERROR_STATUS, AnalysisCommand


class Command(AnalysisCommand):
    help = 'Traces the invariant foliation pulled back through the standard map as CSV and SVG'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--svg', help='SVG portrait path')
        parser.add_argument('--csv', help='leaf CSV path (default: standard output when no --svg)')
        parser.add_argument('--force', action='store_true', help='trace even when the foliation is not certified')

    def handle(self, *args, **options):
        planar_map, source, analysis_options, leaves = self.prepare(options)
        header = build_header('foliate', source, analysis_options, leaves)
        try:
            report = run_analysis(planar_map, source, analysis_options, header)
            if not report.foliation_certified and not options.get('force'):
                raise CommandError('Foliation is not certified ({0}); pass --force to trace it anyway'.format(
                    report.theorem_verdict))
            trace_leaves(report, leaves, analysis_options.leaf_step)
        except PhaseError as error:
            raise CommandError(str(error), returncode=PHASE_ERROR_STATUS)

        truncated = sum(1 for leaf in report.leaves if leaf.truncated)
        if options.get('csv'):
            stream = io.StringIO()
            write_csv(report, stream)
            self.write_output(options['csv'], stream.getvalue())
        if options.get('svg'):
            stream = io.StringIO()
            write_svg(report, stream)
            self.write_output(options['svg'], stream.getvalue())
        if not options.get('csv') and not options.get('svg'):
            write_csv(report, self.stdout)
        elif options['verbosity'] >= 1:
            self.stdout.write('{0} {1} leaves traced ({2} truncated), max residual {3}'.format(
                report.leaf_count, report.foliation_kind, truncated, report.max_leaf_residual))
