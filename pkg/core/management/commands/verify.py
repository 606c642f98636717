from pathlib import Path

from django.conf import settings

from core.error_handlers import handle_command_errors
from core.exceptions import ValidationException, VerificationFailedException
from core.management.base import DiagramCommand
from core.reports.generators import JsonLinesReportGenerator, SummaryTableGenerator, VerificationReport
from core.services.construction_service import ConstructionService
from core.services.harness_service import HarnessService


class Command(DiagramCommand):
    help = 'Run the identity checks on a graph, the bundled fixtures or a seeded random corpus'

    graph_required = False

    def add_arguments(self, parser):
        self.add_graph_argument(parser)
        parser.add_argument(
            '--random',
            type=int,
            metavar='N',
            help='Verify N generated instances instead of a file'
        )
        parser.add_argument(
            '--fixtures',
            action='store_true',
            help='Verify the bundled fixtures and the purpose-built bubble and bridge instances'
        )
        parser.add_argument(
            '--min-size',
            type=int,
            default=getattr(settings, 'CORPUS_MIN_VERTICES', 6),
            help='Smallest generated vertex count'
        )
        parser.add_argument(
            '--max-size',
            type=int,
            default=getattr(settings, 'CORPUS_MAX_VERTICES', 14),
            help='Largest generated vertex count'
        )
        parser.add_argument(
            '--seed',
            type=int,
            default=getattr(settings, 'CORPUS_SEED', 0),
            help='Seed of the first generated instance'
        )
        parser.add_argument(
            '--all-matchings',
            action='store_true',
            help='Repeat the matching-dependent checks for every perfect matching'
        )
        parser.add_argument(
            '--report',
            type=str,
            help='Write the JSONL report to this file instead of stdout'
        )
        parser.add_argument(
            '--store',
            action='store_true',
            help='Persist the run and its outcomes in the database'
        )
        self.add_limit_arguments(parser)

    @handle_command_errors
    def handle(self, *args, **options):
        modes = [bool(options['graph']), options['random'] is not None, options['fixtures']]
        if sum(modes) != 1:
            raise ValidationException('Give exactly one of a graph path, --random N or --fixtures')

        service = HarnessService(
            threads=options['threads'],
            state_limit=options['state_limit'],
            enum_limit=options['enum_limit'],
        )

        if options['random'] is not None:
            report = service.run_corpus(
                options['random'], options['min_size'], options['max_size'], options['seed'],
                all_matchings=options['all_matchings'],
            )
            source = f"random:{options['random']}:seed={options['seed']}"
        elif options['fixtures']:
            report = self.verify_fixtures(service, options['all_matchings'])
            source = 'fixtures'
        else:
            d = self.load(options['graph'])
            report = service.verify_instance(d, all_matchings=options['all_matchings'])
            source = str(options['graph'])

        self.emit(JsonLinesReportGenerator(report).generate(), options['report'])
        self.stderr.write(SummaryTableGenerator(report).generate())

        if options['store']:
            run = service.persist_report(report, source)
            self.stderr.write(f"Stored run {run.pk}")

        if not report.passed:
            raise VerificationFailedException(
                f"{len(report.failures)} check(s) failed",
                failures=[r.to_dict() for r in report.failures],
            )

    def verify_fixtures(self, service: HarnessService, all_matchings: bool) -> VerificationReport:
        report = VerificationReport(parameters={'all_matchings': all_matchings, 'fixtures': True})
        paths = sorted(Path(settings.GRAPH_FIXTURE_DIR).glob('*.json'))
        diagrams = [self.load(path) for path in paths] + ConstructionService().purpose_built()
        for d in diagrams:
            report.merge(service.verify_instance(d, all_matchings=all_matchings))
        return report
