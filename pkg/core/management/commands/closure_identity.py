import json

from core.error_handlers import handle_command_errors
from core.exceptions import VerificationFailedException
from core.management.base import DiagramCommand
from core.services.closure_service import ClosureService


class Command(DiagramCommand):
    help = 'Check the triangle closure identity over all 15 pairings of the boundary'

    def add_arguments(self, parser):
        parser.add_argument(
            '--format',
            type=str,
            choices=['text', 'json'],
            default='text',
            help='Output format (text or json)'
        )

    @handle_command_errors
    def handle(self, *args, **options):
        results, records = ClosureService().triangle_closure_identity()

        if options['format'] == 'json':
            for result in results:
                self.stdout.write(json.dumps(result.to_dict(), sort_keys=True))
        else:
            for result in results:
                pairing = ' '.join(f"{x}-{y}" for x, y in result.pairing)
                self.stdout.write(f"{pairing}  {result.pattern():<24} {result.value}")

        failures = [r for r in records if not r.passed]
        if failures:
            raise VerificationFailedException(
                f"{len(failures)} pairing(s) break the closure identity",
                failures=[r.to_dict() for r in failures],
            )
        self.stderr.write(self.style.SUCCESS(f"All {len(results)} pairings sum to 0"))
