from core.diagram import complement_cycles
from core.error_handlers import handle_command_errors
from core.exceptions import VerificationFailedException
from core.management.base import DiagramCommand
from core.services.factor_service import FactorService


class Command(DiagramCommand):
    help = 'Count the 2-factors through the matching'

    def add_arguments(self, parser):
        self.add_graph_argument(parser)
        parser.add_argument(
            '--enumerate',
            action='store_true',
            help='Also enumerate the 2-factors by brute force and list them'
        )
        self.add_limit_arguments(parser)

    @handle_command_errors
    def handle(self, *args, **options):
        d = self.load(options['graph'])
        service = FactorService(enum_limit=options['enum_limit'])
        formula = service.two_factor_count_formula(d)
        self.stdout.write(str(formula))

        if not options['enumerate']:
            return

        found = service.two_factor_enumerate(d)
        self.stdout.write(f"enumerated: {len(found)}")
        for factor in found:
            self.stdout.write(' '.join(str(e) for e in factor))

        if len(found) != formula:
            raise VerificationFailedException(
                f"Formula gives {formula} but enumeration found {len(found)} 2-factors",
                failures=[{'check': 'two_factor_count', 'lengths': complement_cycles(d).lengths}],
            )
