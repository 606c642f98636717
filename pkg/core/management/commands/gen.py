from django.conf import settings

from core.error_handlers import handle_command_errors
from core.management.base import DiagramCommand
from core.services.harness_service import GenSpec, HarnessService, MATCHING_POLICIES


class Command(DiagramCommand):
    help = 'Generate a planar cubic graph with a perfect matching by seeded face expansion'

    def add_arguments(self, parser):
        parser.add_argument(
            '--vertices',
            type=int,
            required=True,
            help='Target vertex count (even, at least 2)'
        )
        parser.add_argument(
            '--seed',
            type=int,
            default=getattr(settings, 'CORPUS_SEED', 0),
            help='Random seed'
        )
        parser.add_argument(
            '--matching-policy',
            type=str,
            choices=MATCHING_POLICIES,
            default='random',
            help='random draws a perfect matching; all takes the first in enumeration order'
        )
        self.add_output_argument(parser)

    @handle_command_errors
    def handle(self, *args, **options):
        spec = GenSpec(options['vertices'], options['seed'], options['matching_policy'])
        self.emit_diagram(HarnessService().generate(spec), options['output'])
