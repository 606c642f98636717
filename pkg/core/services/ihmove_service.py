"""
IH-moves, smoothing surgeries, bubble collapse and the local identity checks.
"""
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .base_service import BaseService
from .bracket_service import BracketService, matching_strands
from .factor_service import FactorService
from ..diagram import (
    MatchedDiagram, Edge, EdgeId, HalfEdgeId, Vertex, VertexId,
    complement_cycles, connected_components, diagram_to_dict, faces, find_bridges,
    fingerprint, sorted_diagram,
)
from ..exceptions import MoveException, SearchExhaustedException, ValidationException
from ..reports.generators import CheckRecord
from ..validators import ensure_valid

IH = 'ih'
SMOOTH_VERTICAL = 'smooth_vertical'
SMOOTH_HORIZONTAL = 'smooth_horizontal'
BUBBLE_COLLAPSE = 'bubble_collapse'
MOVE_KINDS = (IH, SMOOTH_VERTICAL, SMOOTH_HORIZONTAL, BUBBLE_COLLAPSE)

# Which phase of the reduction produced the short cycle.
SEARCH_NONE = 'none'
SEARCH_MERGE = 'merge'
SEARCH_RESTRICTED = 'restricted'
SEARCH_UNRESTRICTED = 'unrestricted'

# Face labels (m, l) guaranteed to exist when the complement is one cycle.
REDUCIBLE_LABELS = frozenset({(1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (3, 0)})


@dataclass(frozen=True)
class MoveRecord:
    kind: str
    edges: Tuple[EdgeId, ...]
    result: str = ''

    def to_dict(self) -> dict:
        return {'kind': self.kind, 'edges': list(self.edges), 'result': self.result}

    @classmethod
    def from_dict(cls, data: dict) -> 'MoveRecord':
        try:
            kind = data['kind']
            edges = tuple(int(e) for e in data['edges'])
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationException(f"Invalid move record {data!r}: {e}") from e
        if kind not in MOVE_KINDS:
            raise ValidationException(f"Unknown move kind {kind!r}")
        return cls(kind, edges, str(data.get('result', '')))


@dataclass(frozen=True)
class Reduction:
    """Result of a reduction with the phase that reached a short cycle."""

    result: MatchedDiagram
    moves: Tuple[MoveRecord, ...]
    search: str

    @property
    def face_guided(self) -> bool:
        return self.search != SEARCH_UNRESTRICTED


@dataclass(frozen=True)
class Bubble:
    edges: Tuple[EdgeId, EdgeId]
    outer: Tuple[EdgeId, EdgeId]
    vertices: Tuple[VertexId, VertexId]

    def to_dict(self) -> dict:
        return {'edges': list(self.edges), 'outer': list(self.outer), 'vertices': list(self.vertices)}


@dataclass(frozen=True)
class FaceLabel:
    index: int
    half_edges: Tuple[HalfEdgeId, ...]
    m: int
    l: int

    @property
    def label(self) -> Tuple[int, int]:
        return (self.m, self.l)

    def to_dict(self) -> dict:
        return {'face': self.index, 'length': len(self.half_edges), 'm': self.m, 'l': self.l,
                'half_edges': list(self.half_edges)}


def splice(d: MatchedDiagram, removed: Set[VertexId], pairing: Dict[HalfEdgeId, HalfEdgeId],
           name: str) -> MatchedDiagram:
    """
    Delete ``removed`` and reconnect the strands through ``pairing``.

    Each surviving half-edge whose twin dies is followed through the
    pairing until it reaches another survivor; the chain becomes one edge
    carrying the smallest merged id, matching if any merged edge was.
    Chains that never reach a survivor close into free circles.
    """
    dead = {h for vid in removed for h in d.vertex_by_id[vid].rotation}
    vertices = [v for v in d.vertices if v.id not in removed]
    edges = [e for e in d.edges if not (set(e.ends) & dead)]

    visited: Set[HalfEdgeId] = set()
    consumed: Set[HalfEdgeId] = set()
    for x in sorted(h for v in vertices for h in v.rotation):
        if x in consumed or d.twin[x] not in dead:
            continue
        chain = [d.edge_of[x]]
        current = d.twin[x]
        while True:
            visited.add(current)
            partner = pairing[current]
            visited.add(partner)
            chain.append(d.edge_of[partner])
            end = d.twin[partner]
            if end not in dead:
                break
            current = end
        consumed.update((x, end))
        matching = any(d.edge_by_id[eid].matching for eid in chain)
        edges.append(Edge(min(chain), (x, end), matching))

    free_circles = d.free_circles
    for h in sorted(pairing):
        if h in visited:
            continue
        current = h
        while current not in visited:
            visited.add(current)
            partner = pairing[current]
            visited.add(partner)
            current = d.twin[partner]
        free_circles += 1

    return sorted_diagram(vertices, edges, free_circles, name)


def is_short(d: MatchedDiagram, bound: int = 3) -> bool:
    return any(length <= bound for length in complement_cycles(d).lengths)


class IHMoveService(BaseService):
    """Service for IH-move rewriting and the local identity checks."""

    def __init__(self, bracket_service: Optional[BracketService] = None,
                 factor_service: Optional[FactorService] = None,
                 search_depth: Optional[int] = None):
        super().__init__()
        self.bracket_service = bracket_service or BracketService()
        self.factor_service = factor_service or FactorService(self.bracket_service)
        self.search_depth = search_depth if search_depth is not None else self.setting('REDUCTION_SEARCH_DEPTH', 3)

    # Rewrites

    def ih_move(self, d: MatchedDiagram, edge_id: EdgeId) -> MatchedDiagram:
        """
        Replace the I-configuration at ``edge_id`` by the H-configuration.

        Ids are kept: ``u`` becomes ``(e_u, d, a)`` and ``v`` becomes
        ``(e_v, b, c)``; edge records are unchanged.
        """
        ensure_valid(d)
        s = matching_strands(d, edge_id)
        rotations = {s.u: (s.e_u, s.d, s.a), s.v: (s.e_v, s.b, s.c)}
        vertices = tuple(Vertex(v.id, rotations.get(v.id, v.rotation)) for v in d.vertices)
        return MatchedDiagram(vertices, d.edges, d.free_circles, name=f"ih({d.label},{edge_id})")

    def smooth_vertical(self, d: MatchedDiagram, edge_id: EdgeId) -> MatchedDiagram:
        """Delete the matching edge and join ``a-d``, ``b-c``."""
        ensure_valid(d)
        s = matching_strands(d, edge_id)
        pairing = {s.a: s.d, s.d: s.a, s.b: s.c, s.c: s.b}
        return splice(d, {s.u, s.v}, pairing, f"sv({d.label},{edge_id})")

    def smooth_horizontal(self, d: MatchedDiagram, edge_id: EdgeId) -> MatchedDiagram:
        """Delete the matching edge and join ``a-b``, ``c-d``."""
        ensure_valid(d)
        s = matching_strands(d, edge_id)
        pairing = {s.a: s.b, s.b: s.a, s.c: s.d, s.d: s.c}
        return splice(d, {s.u, s.v}, pairing, f"sh({d.label},{edge_id})")

    def detect_bubbles(self, d: MatchedDiagram) -> List[Bubble]:
        """Bigon faces of two non-matching edges with distinct outer matching edges."""
        ensure_valid(d)
        found: Dict[Tuple[EdgeId, EdgeId], Bubble] = {}
        for walk in faces(d):
            if len(walk) != 2:
                continue
            e1, e2 = d.edge_of[walk[0]], d.edge_of[walk[1]]
            if e1 == e2 or d.edge_by_id[e1].matching or d.edge_by_id[e2].matching:
                continue
            if d.is_loop(e1) or d.is_loop(e2):
                continue
            x, y = sorted(d.endpoints(e1))
            m1 = d.edge_of[d.matching_half_edge[x]]
            m2 = d.edge_of[d.matching_half_edge[y]]
            if m1 == m2:
                continue
            key = tuple(sorted((e1, e2)))
            found[key] = Bubble(key, (m1, m2), (x, y))
        return [found[key] for key in sorted(found)]

    def find_bubble(self, d: MatchedDiagram, edges: Sequence[EdgeId]) -> Bubble:
        key = tuple(sorted(edges))
        for bubble in self.detect_bubbles(d):
            if bubble.edges == key:
                return bubble
        raise MoveException(f"Edges {list(key)} do not bound a bubble in {d.label}", move=BUBBLE_COLLAPSE)

    def collapse_bubble(self, d: MatchedDiagram, bubble: Bubble) -> MatchedDiagram:
        """Remove the bigon and fuse its two outer matching edges into one."""
        ensure_valid(d)
        m1, m2 = bubble.outer
        if m1 == m2:
            raise MoveException(
                f"Bubble {list(bubble.edges)} has a single outer matching edge {m1}; "
                f"fusing it would create a matching loop",
                move=BUBBLE_COLLAPSE,
            )
        x, y = bubble.vertices
        hx, hy = d.matching_half_edge[x], d.matching_half_edge[y]
        return splice(d, {x, y}, {hx: hy, hy: hx}, f"collapse({d.label},{bubble.edges[0]},{bubble.edges[1]})")

    # Labels and search

    def classify_faces(self, d: MatchedDiagram) -> List[FaceLabel]:
        """
        Label each face by ``(m, l)``.

        ``m`` counts matching edges on the boundary walk and ``l`` counts
        boundary vertices whose matching edge is not on the walk.
        """
        ensure_valid(d)
        labels = []
        for index, walk in enumerate(faces(d)):
            edges_on_walk = {d.edge_of[h] for h in walk}
            m = sum(1 for e in edges_on_walk if d.edge_by_id[e].matching)
            vertices_on_walk = {d.vertex_of[h] for h in walk}
            l = sum(
                1 for v in vertices_on_walk
                if d.edge_of[d.matching_half_edge[v]] not in edges_on_walk
            )
            labels.append(FaceLabel(index, tuple(walk), m, l))
        return labels

    def _candidate_edges(self, d: MatchedDiagram, restricted: bool) -> List[EdgeId]:
        if not restricted:
            return list(d.matching_edges)
        candidates = set()
        for face in self.classify_faces(d):
            if face.label in REDUCIBLE_LABELS:
                candidates.update(
                    d.edge_of[h] for h in face.half_edges if d.edge_by_id[d.edge_of[h]].matching
                )
        return sorted(candidates)

    def _search(self, start: MatchedDiagram, restricted: bool) -> Optional[Tuple[MatchedDiagram, List[MoveRecord]]]:
        frontier = [(start, [])]
        seen = {fingerprint(start)}
        for _ in range(self.search_depth):
            next_frontier = []
            for diagram, path in frontier:
                for edge in self._candidate_edges(diagram, restricted):
                    moved = self.ih_move(diagram, edge)
                    key = fingerprint(moved)
                    if key in seen:
                        continue
                    seen.add(key)
                    moves = path + [MoveRecord(IH, (edge,), moved.name)]
                    if is_short(moved):
                        return moved, moves
                    next_frontier.append((moved, moves))
            frontier = next_frontier
        return None

    def reduce_to_short_cycle(self, d: MatchedDiagram) -> Tuple[MatchedDiagram, List[MoveRecord]]:
        """IH-moves until some complement cycle has length at most three."""
        reduction = self.reduce(d)
        return reduction.result, list(reduction.moves)

    def reduce(self, d: MatchedDiagram) -> Reduction:
        """
        First merge complement cycles until one is left, then search
        breadth-first over moves on faces with a reducible label.

        Only when that face-guided search fails is every matching edge
        tried; the returned ``search`` says so.
        """
        ensure_valid(d)
        if d.free_circles or len(connected_components(d)) != 1:
            raise ValidationException(f"Reduction needs a connected diagram; {d.label} is not")
        if find_bridges(d):
            raise ValidationException(f"Reduction needs a bridgeless diagram; {d.label} has a bridge")

        current = d
        moves: List[MoveRecord] = []
        cycles = complement_cycles(current)
        while cycles.count > 1 and not is_short(current):
            cycle_of = cycles.cycle_of()
            edge = next(
                e for e in current.matching_edges
                if cycle_of[current.endpoints(e)[0]] != cycle_of[current.endpoints(e)[1]]
            )
            current = self.ih_move(current, edge)
            moves.append(MoveRecord(IH, (edge,), current.name))
            cycles = complement_cycles(current)

        if is_short(current):
            search = SEARCH_MERGE if moves else SEARCH_NONE
            self.log_operation("Reduction finished", diagram=d.label, moves=len(moves), search=search)
            return Reduction(current, tuple(moves), search)

        search = SEARCH_RESTRICTED
        found = self._search(current, restricted=True)
        if found is None:
            self.logger.warning(f"Face-guided reduction search failed on {current.label}; widening", extra={
                'diagram': current.label, 'depth': self.search_depth,
            })
            search = SEARCH_UNRESTRICTED
            found = self._search(current, restricted=False)
        if found is None:
            raise SearchExhaustedException(
                f"No complement cycle of length <= 3 within {self.search_depth} moves of {current.label}",
                depth=self.search_depth,
            )

        result, extra = found
        moves.extend(extra)
        self.log_operation("Reduction finished", diagram=d.label, moves=len(moves), search=search)
        return Reduction(result, tuple(moves), search)

    def replay_moves(self, d: MatchedDiagram, records: Iterable[MoveRecord]) -> MatchedDiagram:
        current = d
        for record in records:
            if record.kind == IH:
                current = self.ih_move(current, record.edges[0])
            elif record.kind == SMOOTH_VERTICAL:
                current = self.smooth_vertical(current, record.edges[0])
            elif record.kind == SMOOTH_HORIZONTAL:
                current = self.smooth_horizontal(current, record.edges[0])
            elif record.kind == BUBBLE_COLLAPSE:
                current = self.collapse_bubble(current, self.find_bubble(current, record.edges))
            else:
                raise ValidationException(f"Unknown move kind {record.kind!r}")
        return current

    # Checks

    def check_ih_relation(self, d: MatchedDiagram, edge_id: EdgeId) -> List[CheckRecord]:
        """Both IH-relations at one matching edge: as polynomials and as counts."""
        bracket = self.bracket_service.bracket
        count = self.factor_service.two_factor_count_formula

        moved = self.ih_move(d, edge_id)
        vertical = self.smooth_vertical(d, edge_id)
        horizontal = self.smooth_horizontal(d, edge_id)

        lhs = bracket(d) - bracket(moved)
        rhs = bracket(vertical) - bracket(horizontal)
        poly_ok = lhs == rhs

        counts = [count(d), count(moved), count(vertical), count(horizontal)]
        count_ok = counts[0] - counts[1] == counts[2] - counts[3]

        instance = f"{d.label}@{edge_id}"
        witness = None if poly_ok and count_ok else diagram_to_dict(d)
        return [
            CheckRecord('ih_relation_polynomial', instance, poly_ok,
                        {'edge': edge_id, 'lhs': lhs.to_text(), 'rhs': rhs.to_text()},
                        witness=None if poly_ok else witness),
            CheckRecord('ih_relation_count', instance, count_ok,
                        {'edge': edge_id, 'counts': counts},
                        witness=None if count_ok else witness),
        ]

    def check_bubble(self, d: MatchedDiagram, bubble: Bubble) -> CheckRecord:
        collapsed = self.collapse_bubble(d, bubble)
        value, collapsed_value = self.bracket_service.bracket_at_one(d), self.bracket_service.bracket_at_one(collapsed)
        count = self.factor_service.two_factor_count_formula
        factors, collapsed_factors = count(d), count(collapsed)
        passed = value == 2 * collapsed_value and factors == 2 * collapsed_factors
        return CheckRecord(
            'bubble', f"{d.label}#{bubble.edges[0]},{bubble.edges[1]}", passed,
            {'bubble': bubble.to_dict(), 'value': value, 'collapsed_value': collapsed_value,
             'count': factors, 'collapsed_count': collapsed_factors},
            witness=None if passed else diagram_to_dict(d),
        )

    def check_bridge(self, d: MatchedDiagram) -> CheckRecord:
        ensure_valid(d)
        bridges = sorted(find_bridges(d))
        if not bridges:
            return CheckRecord('bridge', d.label, True, {'bridges': []}, vacuous=True)

        value = self.bracket_service.bracket_at_one(d)
        factors = self.factor_service.two_factor_count_formula(d)
        all_matching = all(d.edge_by_id[e].matching for e in bridges)
        passed = value == 0 and factors == 0 and all_matching
        return CheckRecord(
            'bridge', d.label, passed,
            {'bridges': bridges, 'value': value, 'count': factors, 'bridges_are_matching': all_matching},
            witness=None if passed else diagram_to_dict(d),
        )

    def check_triangle(self, d: MatchedDiagram) -> CheckRecord:
        ensure_valid(d)
        triangles = [i for i, length in enumerate(complement_cycles(d).lengths) if length == 3]
        if not triangles:
            return CheckRecord('triangle', d.label, True, {'triangles': []}, vacuous=True)
        value = self.bracket_service.bracket_at_one(d)
        return CheckRecord(
            'triangle', d.label, value == 0, {'triangles': triangles, 'value': value},
            witness=None if value == 0 else diagram_to_dict(d),
        )

    def check_face_configuration(self, d: MatchedDiagram) -> CheckRecord:
        """With a single complement cycle some face carries a reducible label."""
        cycles = complement_cycles(ensure_valid(d))
        if cycles.count != 1:
            return CheckRecord('face_configuration', d.label, True, {'cycles': cycles.count}, vacuous=True)
        labels = sorted({f.label for f in self.classify_faces(d)})
        passed = any(label in REDUCIBLE_LABELS for label in labels)
        return CheckRecord(
            'face_configuration', d.label, passed, {'labels': [list(label) for label in labels]},
            witness=None if passed else diagram_to_dict(d),
        )

    def check_reduction(self, d: MatchedDiagram) -> CheckRecord:
        """
        The reduction reaches a short cycle, replays exactly, and needs no
        move outside the faces with a reducible label.
        """
        try:
            reduction = self.reduce(d)
        except SearchExhaustedException as e:
            return CheckRecord('short_cycle_reduction', d.label, False, {'error': e.message},
                               witness=diagram_to_dict(d))
        result = reduction.result
        replayed = self.replay_moves(d, reduction.moves)
        passed = replayed == result and is_short(result) and reduction.face_guided
        return CheckRecord(
            'short_cycle_reduction', d.label, passed,
            {'moves': [m.to_dict() for m in reduction.moves], 'search': reduction.search,
             'face_guided': reduction.face_guided, 'cycle_lengths': complement_cycles(result).lengths},
            witness=None if passed else diagram_to_dict(d),
        )
