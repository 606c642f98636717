from core.error_handlers import handle_command_errors
from core.management.base import DiagramCommand
from core.services.ihmove_service import IHMoveService


class Command(DiagramCommand):
    help = 'Delete a matching edge and rejoin its four strands'

    def add_arguments(self, parser):
        self.add_graph_argument(parser)
        parser.add_argument(
            '--edge',
            type=int,
            required=True,
            help='Id of the matching edge'
        )
        parser.add_argument(
            '--dir',
            type=str,
            choices=['vertical', 'horizontal'],
            required=True,
            help='vertical joins a-d and b-c; horizontal joins a-b and c-d'
        )
        self.add_output_argument(parser)

    @handle_command_errors
    def handle(self, *args, **options):
        d = self.load(options['graph'])
        service = IHMoveService()
        if options['dir'] == 'vertical':
            result = service.smooth_vertical(d, options['edge'])
        else:
            result = service.smooth_horizontal(d, options['edge'])
        self.emit_diagram(result, options['output'])
