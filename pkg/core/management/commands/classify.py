from core.diagram import complement_cycles, genus
from core.error_handlers import handle_command_errors
from core.management.base import DiagramCommand
from core.services.ihmove_service import IHMoveService, REDUCIBLE_LABELS


class Command(DiagramCommand):
    help = 'Print the (m, l) label of every face'

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
        labels = IHMoveService().classify_faces(d)
        cycles = complement_cycles(d)

        if options['format'] == 'json':
            self.emit_json({
                'name': d.label,
                'genus': genus(d),
                'cycle_lengths': cycles.lengths,
                'faces': [f.to_dict() for f in labels],
            })
            return

        self.stdout.write(f"{'face':>4}  {'length':>6}  {'m':>2}  {'l':>2}  reducible")
        for face in labels:
            mark = 'yes' if face.label in REDUCIBLE_LABELS else ''
            self.stdout.write(f"{face.index:>4}  {len(face.half_edges):>6}  {face.m:>2}  {face.l:>2}  {mark}")
        self.stdout.write(f"genus: {' '.join(str(g) for g in genus(d))}")
        self.stdout.write(f"complement cycles: {' '.join(str(n) for n in cycles.lengths)}")
