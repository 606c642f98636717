from core.error_handlers import handle_command_errors
from core.management.base import DiagramCommand
from core.services.ihmove_service import IHMoveService


class Command(DiagramCommand):
    help = 'Apply an IH-move at a matching edge'

    def add_arguments(self, parser):
        self.add_graph_argument(parser)
        parser.add_argument(
            '--edge',
            type=int,
            required=True,
            help='Id of the matching edge'
        )
        self.add_output_argument(parser)

    @handle_command_errors
    def handle(self, *args, **options):
        d = self.load(options['graph'])
        self.emit_diagram(IHMoveService().ih_move(d, options['edge']), options['output'])
