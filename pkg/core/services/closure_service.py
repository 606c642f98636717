"""
Closure identity for a complement triangle.

Three matching edges hang off a triangle of non-matching edges; their six
outer endpoints are closed up by every one of the 15 perfect pairings.
Each closure is evaluated at z = 1 by the state engine without the
planarity check, since most pairings cannot be drawn on the sphere.
"""
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .base_service import BaseService
from .bracket_service import BracketService, value_at_one_from_histogram, StateEngine
from ..diagram import MatchedDiagram, Edge, HalfEdgeId, Vertex
from ..reports.generators import CheckRecord

Pairing = Tuple[Tuple[HalfEdgeId, HalfEdgeId], ...]

TRIANGLE_SIZE = 3


def _p(i: int) -> HalfEdgeId:
    return 12 + 2 * i


def _q(i: int) -> HalfEdgeId:
    return 13 + 2 * i


BOUNDARY = tuple(h for i in range(TRIANGLE_SIZE) for h in (_p(i), _q(i)))


def closure_pairings(points: Sequence[HalfEdgeId] = BOUNDARY) -> List[Pairing]:
    """Every perfect pairing of ``points``: the first point goes with each other in turn."""
    if not points:
        return [()]
    first, rest = points[0], points[1:]
    result = []
    for i, partner in enumerate(rest):
        for tail in closure_pairings(rest[:i] + rest[i + 1:]):
            result.append(((first, partner),) + tail)
    return result


def closure_gadget(pairing: Pairing) -> MatchedDiagram:
    """
    Triangle ``t0 t1 t2`` with matching edges out to ``o0 o1 o2``.

    ``o_i`` carries the boundary half-edges ``p_i`` and ``q_i``; with every
    matching edge open, ``q_i`` is joined to ``p_(i+1)``.
    """
    vertices = []
    edges = []
    for i in range(TRIANGLE_SIZE):
        previous = (i - 1) % TRIANGLE_SIZE
        vertices.append(Vertex(i, (2 * i, 6 + 2 * i, 7 + 2 * previous)))
        edges.append(Edge(i, (2 * i, 2 * i + 1), True))
    for i in range(TRIANGLE_SIZE):
        vertices.append(Vertex(TRIANGLE_SIZE + i, (2 * i + 1, _p(i), _q(i))))
        edges.append(Edge(TRIANGLE_SIZE + i, (6 + 2 * i, 7 + 2 * i)))
    for j, (x, y) in enumerate(pairing):
        edges.append(Edge(2 * TRIANGLE_SIZE + j, (x, y)))
    name = 'closure[' + ','.join(f"{x}-{y}" for x, y in pairing) + ']'
    return MatchedDiagram(tuple(vertices), tuple(edges), name=name)


@dataclass(frozen=True)
class ClosureResult:
    pairing: Pairing
    columns: Tuple[Tuple[int, ...], ...]
    value: int

    def pattern(self) -> str:
        """Circle counts by column, states within a column in bit order."""
        return ';'.join(','.join(str(c) for c in column) for column in self.columns)

    def to_dict(self) -> dict:
        return {
            'pairing': [list(p) for p in self.pairing],
            'pattern': self.pattern(),
            'value': self.value,
        }


class ClosureService(BaseService):
    """Evaluates the triangle closure identity over all pairings."""

    def __init__(self, bracket_service: Optional[BracketService] = None):
        super().__init__()
        self.bracket_service = bracket_service or BracketService(use_cache=False)

    def evaluate(self, pairing: Pairing) -> ClosureResult:
        d = closure_gadget(pairing)
        histogram = self.bracket_service.state_histogram(d, validate=False)
        engine = StateEngine(d)
        columns = [[] for _ in range(TRIANGLE_SIZE + 1)]
        for bits in range(1 << TRIANGLE_SIZE):
            columns[bin(bits).count('1')].append(engine.circle_count(bits))
        return ClosureResult(pairing, tuple(tuple(c) for c in columns), value_at_one_from_histogram(histogram))

    def triangle_closure_identity(self) -> Tuple[List[ClosureResult], List[CheckRecord]]:
        results = [self.evaluate(p) for p in closure_pairings()]
        records = []
        for result in results:
            passed = result.value == 0
            if not passed:
                self.logger.warning(f"Closure identity failed for pairing {result.pairing}: {result.value}")
            records.append(CheckRecord(
                'triangle_closure', closure_gadget(result.pairing).name, passed, result.to_dict(),
            ))
        self.log_operation("Closure identity", pairings=len(results),
                           failures=sum(1 for r in records if not r.passed))
        return results, records
