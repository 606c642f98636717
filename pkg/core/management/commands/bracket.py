from core.error_handlers import handle_command_errors
from core.management.base import DiagramCommand
from core.services.bracket_service import BracketService


class Command(DiagramCommand):
    help = 'Print the 2-factor bracket of a matched diagram'

    def add_arguments(self, parser):
        self.add_graph_argument(parser)
        parser.add_argument(
            '--at-one',
            action='store_true',
            help='Also print the value at z = 1'
        )
        parser.add_argument(
            '--format',
            type=str,
            choices=['text', 'json'],
            default='text',
            help='Output format (text or json)'
        )
        self.add_limit_arguments(parser)

    @handle_command_errors
    def handle(self, *args, **options):
        d = self.load(options['graph'])
        service = BracketService(state_limit=options['state_limit'], threads=options['threads'])
        polynomial = service.bracket(d)

        if options['format'] == 'json':
            self.emit_json({
                'name': d.label,
                'bracket': polynomial.to_text(),
                'terms': polynomial.to_json(),
                'value_at_one': polynomial.eval_at_one(),
            })
            return

        self.stdout.write(polynomial.to_text())
        if options['at_one']:
            self.stdout.write(str(polynomial.eval_at_one()))
