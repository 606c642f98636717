from core.error_handlers import handle_command_errors
from core.exceptions import VerificationFailedException
from core.management.base import DiagramCommand
from core.services.bracket_service import BracketService
from core.services.factor_service import FactorService


class Command(DiagramCommand):
    help = 'Print the planar Tait polynomial (bracket summed over all perfect matchings)'

    def add_arguments(self, parser):
        self.add_graph_argument(parser)
        parser.add_argument(
            '--at-one',
            action='store_true',
            help='Also print the value at z = 1'
        )
        parser.add_argument(
            '--oracle',
            action='store_true',
            help='Also count Tait colorings by brute force'
        )
        self.add_limit_arguments(parser)

    @handle_command_errors
    def handle(self, *args, **options):
        d = self.load(options['graph'])
        service = FactorService(BracketService(state_limit=options['state_limit'], threads=options['threads']))
        polynomial = service.tait_polynomial(d)
        value = polynomial.eval_at_one()

        self.stdout.write(polynomial.to_text())
        if options['at_one']:
            self.stdout.write(str(value))

        if options['oracle']:
            colorings = service.tait_colorings_count(d)
            self.stdout.write(f"colorings: {colorings}")
            if colorings != value:
                raise VerificationFailedException(
                    f"Tait polynomial at 1 is {value} but {colorings} colorings were found",
                    failures=[{'check': 'tait_identity', 'value': value, 'colorings': colorings}],
                )
