"""
Structural validation of matched diagrams.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import List, Tuple

from .diagram import MatchedDiagram, euler_characteristics
from .exceptions import InvalidDiagramException

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    ids: Tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {'code': self.code, 'message': self.message, 'ids': list(self.ids)}


@dataclass
class ValidationReport:
    violations: List[Violation] = field(default_factory=list)

    @property
    def is_valid(self) -> bool:
        return not self.violations

    def add(self, code: str, message: str, *ids: int):
        self.violations.append(Violation(code, message, tuple(ids)))

    def messages(self) -> List[str]:
        return [v.message for v in self.violations]

    def to_list(self) -> List[dict]:
        return [v.to_dict() for v in self.violations]

    def __bool__(self):
        return self.is_valid


class DiagramValidator:
    """Validator for the matched-diagram invariants."""

    def validate(self, d: MatchedDiagram) -> ValidationReport:
        """
        Check every invariant and collect the violations.

        The Euler check needs a well-formed map, so it only runs when the
        structural checks pass.
        """
        report = ValidationReport()

        if d.free_circles < 0:
            report.add('free_circles', f"free_circles is negative ({d.free_circles})")

        self._check_ids(d, report)
        self._check_incidence(d, report)
        if report.is_valid:
            self._check_matching(d, report)
        if report.is_valid:
            self._check_sphericity(d, report)

        if not report.is_valid:
            logger.debug(f"Diagram {d.label} has {len(report.violations)} violation(s)")
        return report

    def _check_ids(self, d: MatchedDiagram, report: ValidationReport):
        for vid, count in Counter(v.id for v in d.vertices).items():
            if count > 1:
                report.add('duplicate_vertex', f"vertex id {vid} is used {count} times", vid)
        for eid, count in Counter(e.id for e in d.edges).items():
            if count > 1:
                report.add('duplicate_edge', f"edge id {eid} is used {count} times", eid)

    def _check_incidence(self, d: MatchedDiagram, report: ValidationReport):
        for v in d.vertices:
            if len(v.rotation) != 3:
                report.add('degree', f"vertex {v.id} has {len(v.rotation)} incident half-edges, expected 3", v.id)
        for e in d.edges:
            if len(e.ends) != 2:
                report.add('edge_ends', f"edge {e.id} has {len(e.ends)} ends, expected 2", e.id)
            elif e.ends[0] == e.ends[1]:
                report.add('edge_ends', f"edge {e.id} uses half-edge {e.ends[0]} twice", e.id)

        in_rotations = Counter(h for v in d.vertices for h in v.rotation)
        in_edges = Counter(h for e in d.edges for h in e.ends)

        for h, count in sorted(in_rotations.items()):
            if count > 1:
                report.add('half_edge_rotation', f"half-edge {h} appears in {count} rotations", h)
        for h, count in sorted(in_edges.items()):
            if count > 1:
                report.add('half_edge_edge', f"half-edge {h} appears in {count} edges", h)
        for h in sorted(set(in_rotations) - set(in_edges)):
            report.add('half_edge_edge', f"half-edge {h} belongs to no edge", h)
        for h in sorted(set(in_edges) - set(in_rotations)):
            report.add('half_edge_rotation', f"half-edge {h} belongs to no vertex rotation", h)

    def _check_matching(self, d: MatchedDiagram, report: ValidationReport):
        for e in d.edges:
            if e.matching and d.is_loop(e.id):
                report.add('matching_loop', f"matching edge {e.id} is a loop", e.id)

        for v in sorted(d.vertices, key=lambda x: x.id):
            count = sum(1 for h in v.rotation if d.edge_by_id[d.edge_of[h]].matching)
            if count == 0:
                report.add('matching', f"vertex {v.id} has no matching half-edge", v.id)
            elif count > 1:
                report.add('matching', f"vertex {v.id} has {count} matching half-edges", v.id)

    def _check_sphericity(self, d: MatchedDiagram, report: ValidationReport):
        for smallest, chi in euler_characteristics(d):
            if chi != 2:
                report.add(
                    'euler',
                    f"component of vertex {smallest} has V - E + F = {chi}, expected 2 (genus {(2 - chi) // 2})",
                    smallest,
                )


def validate(d: MatchedDiagram) -> ValidationReport:
    return DiagramValidator().validate(d)


def ensure_valid(d: MatchedDiagram) -> MatchedDiagram:
    """Raise ``InvalidDiagramException`` unless ``d`` passes validation."""
    cached = d.__dict__.get('_validation_report')
    report = cached if cached is not None else validate(d)
    d.__dict__['_validation_report'] = report
    if not report.is_valid:
        raise InvalidDiagramException(
            message=f"Invalid diagram {d.label}: " + "; ".join(report.messages()),
            violations=report.to_list(),
        )
    return d
