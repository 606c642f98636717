from core.error_handlers import handle_command_errors
from core.management.base import DiagramCommand
from core.services.factor_service import FactorService


class Command(DiagramCommand):
    help = 'List every perfect matching of the underlying cubic graph'

    def add_arguments(self, parser):
        self.add_graph_argument(parser)
        parser.add_argument(
            '--format',
            type=str,
            choices=['text', 'json'],
            default='text',
            help='Output format (text or json)'
        )

    @handle_command_errors
    def handle(self, *args, **options):
        d = self.load(options['graph'])
        found = FactorService().enumerate_perfect_matchings(d)

        if options['format'] == 'json':
            self.emit_json({'name': d.label, 'matchings': [list(m) for m in found]})
            return

        for matching in found:
            self.stdout.write(' '.join(str(e) for e in matching))
        self.stderr.write(f"{len(found)} perfect matching(s)")
