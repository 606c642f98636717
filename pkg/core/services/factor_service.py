"""
Counting 2-factors, perfect matchings and Tait colorings.
"""
from collections import Counter
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .base_service import BaseService
from .bracket_service import BracketService
from ..diagram import MatchedDiagram, EdgeId, complement_cycles, connected_components, with_matching
from ..exceptions import ResourceLimitException, ValidationException
from ..laurent import LaurentPoly
from ..validators import ensure_valid

TwoFactor = Tuple[EdgeId, ...]
PerfectMatching = Tuple[EdgeId, ...]
TaitColoring = Tuple[int, ...]

COLOR_NAMES = ('i', 'j', 'k')


def perfect_matchings(d: MatchedDiagram, cap: int) -> List[PerfectMatching]:
    """
    Backtracking over the smallest unmatched vertex, its edges in id order.

    Works on the bare graph: matching flags are ignored and the diagram
    is not validated, so generator intermediates can be matched.
    """
    incident: Dict[int, List[EdgeId]] = {v.id: [] for v in d.vertices}
    for e in sorted(d.edges, key=lambda x: x.id):
        u, v = d.endpoints(e.id)
        if u != v:
            incident[u].append(e.id)
            incident[v].append(e.id)

    order = sorted(incident)
    matched = set()
    chosen: List[EdgeId] = []
    result: List[PerfectMatching] = []

    def backtrack():
        if len(result) > cap:
            raise ResourceLimitException(f"More than {cap} perfect matchings in {d.label}", limit=cap)
        vertex = next((v for v in order if v not in matched), None)
        if vertex is None:
            result.append(tuple(sorted(chosen)))
            return
        for e in incident[vertex]:
            u, v = d.endpoints(e)
            other = v if u == vertex else u
            if other in matched:
                continue
            matched.update((vertex, other))
            chosen.append(e)
            backtrack()
            chosen.pop()
            matched.difference_update((vertex, other))

    backtrack()
    return result


class FactorService(BaseService):
    """Service for factor counting and coloring oracles."""

    def __init__(self, bracket_service: Optional[BracketService] = None,
                 enum_limit: Optional[int] = None):
        super().__init__()
        self.bracket_service = bracket_service or BracketService()
        self.enum_limit = enum_limit if enum_limit is not None else self.setting('TWO_FACTOR_ENUM_LIMIT', 24)
        self.matching_cap = self.setting('MATCHING_ENUM_CAP', 200000)
        self.coloring_cap = self.setting('TAIT_COLORING_CAP', 1000000)

    def two_factor_count_formula(self, d: MatchedDiagram) -> int:
        """
        Closed-form count of 2-factors through the matching.

        Zero when a complement cycle is odd; otherwise each cycle and each
        free circle contributes a factor of two.
        """
        ensure_valid(d)
        cycles = complement_cycles(d)
        if cycles.has_odd_cycle():
            return 0
        return 2 ** (cycles.count + d.free_circles)

    def two_factor_enumerate(self, d: MatchedDiagram) -> List[TwoFactor]:
        """Brute force over subsets of non-matching edges."""
        ensure_valid(d)
        if d.free_circles:
            raise ValidationException("Enumeration needs a diagram without free circles")

        candidates = [e.id for e in d.edges if not e.matching]
        if len(candidates) > self.enum_limit:
            raise ResourceLimitException(
                f"{d.label} has {len(candidates)} non-matching edges; the enumeration limit is {self.enum_limit}",
                limit=self.enum_limit,
                required=len(candidates),
            )

        # With the matching in place every vertex needs exactly one more edge,
        # so only subsets of size V/2 can work.
        size = len(d.vertices) // 2
        matching = list(d.matching_edges)
        result = []
        for chosen in combinations(candidates, size):
            degree = Counter()
            for e in chosen:
                u, v = d.endpoints(e)
                degree[u] += 1
                degree[v] += 1
            if all(degree[v.id] == 1 for v in d.vertices):
                result.append(tuple(sorted(matching + list(chosen))))
        return result

    def enumerate_perfect_matchings(self, d: MatchedDiagram) -> List[PerfectMatching]:
        """All perfect matchings of the underlying cubic graph, flags ignored."""
        ensure_valid(d)
        return perfect_matchings(d, self.matching_cap)

    def _require_connected(self, d: MatchedDiagram):
        if d.free_circles or len(connected_components(d)) != 1:
            raise ValidationException(f"The planar Tait polynomial is defined for connected graphs; {d.label} is not")

    def tait_polynomial(self, d: MatchedDiagram) -> LaurentPoly:
        """Sum of brackets over every perfect matching."""
        ensure_valid(d)
        self._require_connected(d)
        total = LaurentPoly.zero()
        matchings = self.enumerate_perfect_matchings(d)
        for matching in matchings:
            total = total + self.bracket_service.bracket(with_matching(d, matching))
        self.log_operation("Tait polynomial", diagram=d.label, matchings=len(matchings))
        return total

    def tait_colorings(self, d: MatchedDiagram) -> List[TaitColoring]:
        """
        Every proper 3-edge-coloring, labeled.

        Colorings are tuples indexed like ``d.edges`` sorted by id, with
        colors 0, 1, 2 standing for i, j, k.
        """
        ensure_valid(d)
        edges = sorted(e.id for e in d.edges)
        ends = [d.endpoints(e) for e in edges]
        if any(u == v for u, v in ends):
            return []

        used: Dict[int, set] = {v.id: set() for v in d.vertices}
        colors = [0] * len(edges)
        result: List[TaitColoring] = []

        def backtrack(i: int):
            if len(result) > self.coloring_cap:
                raise ResourceLimitException(f"More than {self.coloring_cap} Tait colorings in {d.label}",
                                             limit=self.coloring_cap)
            if i == len(edges):
                result.append(tuple(colors))
                return
            u, v = ends[i]
            for color in range(3):
                if color in used[u] or color in used[v]:
                    continue
                used[u].add(color)
                used[v].add(color)
                colors[i] = color
                backtrack(i + 1)
                used[u].discard(color)
                used[v].discard(color)

        backtrack(0)
        self.logger.debug(f"{len(result)} Tait colorings of {d.label}")
        return result

    def tait_colorings_count(self, d: MatchedDiagram) -> int:
        return len(self.tait_colorings(d))

    def colorings_by_matching(self, d: MatchedDiagram) -> Dict[PerfectMatching, int]:
        """Number of colorings whose color-i edges are exactly each matching."""
        edges = sorted(e.id for e in d.edges)
        counts: Counter = Counter()
        for coloring in self.tait_colorings(d):
            counts[tuple(e for e, c in zip(edges, coloring) if c == 0)] += 1
        return {m: counts.get(m, 0) for m in self.enumerate_perfect_matchings(d)}

    @staticmethod
    def coloring_to_dict(d: MatchedDiagram, coloring: TaitColoring) -> Dict[int, str]:
        edges = sorted(e.id for e in d.edges)
        return {e: COLOR_NAMES[c] for e, c in zip(edges, coloring)}
