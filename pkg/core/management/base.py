"""
Shared plumbing for the graph commands.
"""
import json
import sys
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError, CommandParser

from core.diagram import MatchedDiagram, dump_diagram, load_diagram
from core.exceptions import EXIT_INVALID_INPUT
from core.validators import ensure_valid


class DiagramCommandParser(CommandParser):
    """Usage errors are invalid input: exit 1, never the check-failure code 2."""

    def error(self, message):
        if self.called_from_command_line:
            self.print_usage(sys.stderr)
            self.exit(EXIT_INVALID_INPUT, f"{self.prog}: error: {message}\n")
        raise CommandError(f"Error: {message}", returncode=EXIT_INVALID_INPUT)


class DiagramCommand(BaseCommand):
    """Base for commands that read a graph file and print or write a result."""

    graph_required = True

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.__class__ = DiagramCommandParser
        return parser

    def add_graph_argument(self, parser):
        parser.add_argument(
            'graph',
            nargs=None if self.graph_required else '?',
            help='Path to a graph JSON document'
        )

    def add_output_argument(self, parser):
        parser.add_argument(
            '-o', '--output',
            type=str,
            help='Write the result to this file instead of stdout'
        )

    def add_limit_arguments(self, parser):
        parser.add_argument(
            '--state-limit',
            type=int,
            help='Maximum number of matching edges for a state sum'
        )
        parser.add_argument(
            '--enum-limit',
            type=int,
            help='Maximum number of non-matching edges for 2-factor enumeration'
        )
        parser.add_argument(
            '--threads',
            type=int,
            help=('Worker processes for large state sums and corpus runs; defaults to WORKER_THREADS. '
                  'Set it to the core count to speed up verify --random')
        )

    def load(self, path) -> MatchedDiagram:
        return ensure_valid(load_diagram(path))

    def emit(self, text: str, output: str = None):
        """Write ``text`` to ``output`` or stdout, always newline-terminated."""
        if output:
            Path(output).write_text(text if text.endswith('\n') else text + '\n')
            self.stderr.write(f"Wrote {output}")
        else:
            self.stdout.write(text)

    def emit_diagram(self, d: MatchedDiagram, output: str = None):
        self.emit(dump_diagram(d), output)

    def emit_json(self, data, output: str = None):
        self.emit(json.dumps(data, indent=2, sort_keys=True), output)
