import json
from pathlib import Path

from core.diagram import complement_cycles, fingerprint
from core.error_handlers import handle_command_errors
from core.exceptions import ValidationException, VerificationFailedException
from core.management.base import DiagramCommand
from core.services.ihmove_service import IHMoveService, MoveRecord


class Command(DiagramCommand):
    help = 'IH-move a connected bridgeless diagram until a complement cycle has length at most 3'

    def add_arguments(self, parser):
        self.add_graph_argument(parser)
        self.add_output_argument(parser)
        parser.add_argument(
            '--moves',
            type=str,
            help='Write the move log to this file'
        )
        parser.add_argument(
            '--replay',
            type=str,
            help='Re-apply a move log instead of searching'
        )
        parser.add_argument(
            '--depth',
            type=int,
            help='Search depth for the bounded move search'
        )

    @handle_command_errors
    def handle(self, *args, **options):
        d = self.load(options['graph'])
        service = IHMoveService(search_depth=options['depth'])

        if options['replay']:
            log = self.read_log(options['replay'])
            result = service.replay_moves(d, [MoveRecord.from_dict(m) for m in log.get('moves', [])])
            expected = log.get('result_fingerprint')
            if expected and expected != fingerprint(result):
                raise VerificationFailedException(
                    f"Replaying {options['replay']} does not reproduce the logged result",
                    failures=[{'check': 'short_cycle_reduction', 'expected': expected}],
                )
            self.emit_diagram(result, options['output'])
            return

        reduction = service.reduce(d)
        result, moves = reduction.result, reduction.moves
        log = {
            'source': d.label,
            'source_fingerprint': fingerprint(d),
            'search': reduction.search,
            'moves': [m.to_dict() for m in moves],
            'result_fingerprint': fingerprint(result),
            'cycle_lengths': complement_cycles(result).lengths,
        }
        if options['moves']:
            Path(options['moves']).write_text(json.dumps(log, indent=2, sort_keys=True) + '\n')
        self.stderr.write(f"{len(moves)} move(s); cycle lengths {log['cycle_lengths']}")
        if not reduction.face_guided:
            self.stderr.write(self.style.WARNING("Face-guided search failed; the moves come from the unrestricted search"))
        self.emit_diagram(result, options['output'])

    def read_log(self, path) -> dict:
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as e:
            raise ValidationException(f"{path}: not valid JSON ({e.msg} at line {e.lineno})") from e
        if not isinstance(data, dict):
            raise ValidationException(f"{path}: a move log is a JSON object")
        return data
