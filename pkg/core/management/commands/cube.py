from core.error_handlers import handle_command_errors
from core.management.base import DiagramCommand
from core.services.bracket_service import BracketService


class Command(DiagramCommand):
    help = 'Export the cube of resolutions as DOT or JSON'

    def add_arguments(self, parser):
        self.add_graph_argument(parser)
        parser.add_argument(
            '--format',
            type=str,
            choices=['dot', 'json'],
            default='json',
            help='Output format (dot or json)'
        )
        self.add_output_argument(parser)
        self.add_limit_arguments(parser)

    @handle_command_errors
    def handle(self, *args, **options):
        d = self.load(options['graph'])
        service = BracketService(state_limit=options['state_limit'])
        self.emit(service.export_cube(service.cube(d), options['format']), options['output'])
