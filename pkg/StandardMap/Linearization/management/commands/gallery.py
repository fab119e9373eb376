from django.core.management.base import BaseCommand, CommandError

from ... import gallery
from ...exceptions import InvalidParameterError, UnknownEntryError


class Command(BaseCommand):
    help = 'Lists the worked examples or shows one with its expected answers'

    def add_arguments(self, parser):
        parser.add_argument('action', choices=['list', 'show'])
        parser.add_argument('name', nargs='?')
        parser.add_argument('--n', type=int, help='parameter of the A family')

    def handle(self, *args, **options):
        if options['action'] == 'list':
            for name in gallery.list_entries():
                self.stdout.write(name)
            return
        if not options.get('name'):
            raise CommandError('gallery show needs an entry name')
        try:
            entry = gallery.get(options['name'], options.get('n'))
        except (UnknownEntryError, InvalidParameterError) as error:
            raise CommandError(str(error))
        expected = entry.expected
        lines = [
            '{0} ({1})'.format(entry.name, entry.tag),
            '  map: {0}'.format(entry.formula),
            '  orientation: {0}'.format(expected.orientation.value),
            '  expected verdict: {0}'.format(expected.known_verdict),
            '  standard map h: {0}'.format(expected.known_h or 'no closed form'),
            '  foliation: {0}'.format(expected.known_foliation or 'none'),
            '  default window: {0}'.format(entry.window.label()),
        ]
        self.stdout.write('\n'.join(lines))
