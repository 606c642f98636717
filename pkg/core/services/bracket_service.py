"""
State-sum evaluation of the 2-factor bracket and the cube of resolutions.
"""
import json
from collections import Counter
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Dict, List, Optional, Tuple, Union

from .base_service import BaseService
from .cache_service import CacheService
from ..diagram import MatchedDiagram, EdgeId, HalfEdgeId, connected_components
from ..exceptions import MoveException, ResourceLimitException, ValidationException
from ..laurent import LaurentPoly
from ..validators import ensure_valid

OPEN = 'open'
CROSS = 'cross'


@dataclass(frozen=True)
class Strands:
    """The matching edge ``e`` between ``u`` and ``v`` and its four strands.

    ``a``, ``b`` follow ``e_u`` counterclockwise at ``u``; ``c``, ``d``
    follow ``e_v`` at ``v``.
    """
    edge: EdgeId
    u: int
    v: int
    e_u: HalfEdgeId
    e_v: HalfEdgeId
    a: HalfEdgeId
    b: HalfEdgeId
    c: HalfEdgeId
    d: HalfEdgeId


def matching_strands(d: MatchedDiagram, edge_id: EdgeId) -> Strands:
    edge = d.edge_by_id.get(edge_id)
    if edge is None:
        raise ValidationException(f"Edge {edge_id} does not exist in {d.label}")
    if not edge.matching:
        raise MoveException(f"Edge {edge_id} is not a matching edge", move='resolution')
    e_u, e_v = edge.ends
    u, v = d.vertex_of[e_u], d.vertex_of[e_v]
    if u == v:
        raise MoveException(f"Matching edge {edge_id} is a loop", move='resolution')
    a = d.succ[e_u]
    c = d.succ[e_v]
    return Strands(edge_id, u, v, e_u, e_v, a, d.succ[a], c, d.succ[c])


def resolution_pairing(d: MatchedDiagram, edge_id: EdgeId, choice: str) -> Tuple[Tuple[int, int], Tuple[int, int]]:
    """Open joins ``a-d`` and ``b-c``; cross joins ``a-c`` and ``b-d``."""
    s = matching_strands(d, edge_id)
    if choice == OPEN:
        pairs = [(s.a, s.d), (s.b, s.c)]
    elif choice == CROSS:
        pairs = [(s.a, s.c), (s.b, s.d)]
    else:
        raise ValidationException(f"Unknown resolution {choice!r}; expected 'open' or 'cross'")
    return tuple(sorted(tuple(sorted(p)) for p in pairs))


@dataclass(frozen=True)
class ResolutionState:
    """Bit ``i`` resolves the ``i``-th matching edge (by id): 0 open, 1 cross."""

    bits: int
    k: int

    @classmethod
    def from_string(cls, text: str) -> 'ResolutionState':
        if any(ch not in '01' for ch in text):
            raise ValidationException(f"State {text!r} must consist of 0 and 1")
        return cls(sum(1 << i for i, ch in enumerate(text) if ch == '1'), len(text))

    def to_string(self) -> str:
        return ''.join('1' if self.bits >> i & 1 else '0' for i in range(self.k))

    @property
    def cross_count(self) -> int:
        return bin(self.bits).count('1')

    def flip(self, i: int) -> 'ResolutionState':
        return ResolutionState(self.bits ^ (1 << i), self.k)

    def __str__(self):
        return self.to_string()


class StateEngine:
    """
    Circle counting for every resolution state of a diagram.

    Non-matching half-edges are indexed densely; a state's circles are the
    cycles of the union of the edge pairing and the resolution pairing.
    Plain lists only, so engines pickle cheaply into worker processes.
    """

    def __init__(self, d: MatchedDiagram):
        self.edges: List[EdgeId] = list(d.matching_edges)
        self.k = len(self.edges)
        self.free_circles = d.free_circles

        matching_halves = {h for e in self.edges for h in d.edge_by_id[e].ends}
        halves = [h for h in d.half_edges if h not in matching_halves]
        index = {h: i for i, h in enumerate(halves)}
        self.size = len(halves)
        self.twin = [index[d.twin[h]] for h in halves]

        self.open_pairs = []
        self.cross_pairs = []
        for e in self.edges:
            s = matching_strands(d, e)
            a, b, c, dd = index[s.a], index[s.b], index[s.c], index[s.d]
            self.open_pairs.append(((a, dd), (b, c)))
            self.cross_pairs.append(((a, c), (b, dd)))

    def circle_count(self, bits: int) -> int:
        partner = [0] * self.size
        for i in range(self.k):
            pairs = self.cross_pairs[i] if bits >> i & 1 else self.open_pairs[i]
            for x, y in pairs:
                partner[x] = y
                partner[y] = x

        seen = [False] * self.size
        circles = 0
        twin = self.twin
        for start in range(self.size):
            if seen[start]:
                continue
            circles += 1
            j = start
            while True:
                seen[j] = True
                t = twin[j]
                seen[t] = True
                j = partner[t]
                if j == start:
                    break
        return circles + self.free_circles

    def histogram(self, start: int = 0, stop: Optional[int] = None) -> Counter:
        """Count states by ``(cross_count, circle_count)`` over ``[start, stop)``."""
        stop = (1 << self.k) if stop is None else stop
        counts = Counter()
        for bits in range(start, stop):
            counts[(bin(bits).count('1'), self.circle_count(bits))] += 1
        return counts


def _histogram_chunk(engine: StateEngine, start: int, stop: int) -> Counter:
    return engine.histogram(start, stop)


def polynomial_from_histogram(histogram: Dict[Tuple[int, int], int]) -> LaurentPoly:
    """Sum ``n * (-z)^c * (z + z^-1)^l`` over the histogram."""
    loop = LaurentPoly.loop_factor()
    total = LaurentPoly.zero()
    for (crosses, circles), n in sorted(histogram.items()):
        sign = -1 if crosses % 2 else 1
        total = total + (loop ** circles).shift(crosses).scale(sign * n)
    return total


def value_at_one_from_histogram(histogram: Dict[Tuple[int, int], int]) -> int:
    return sum(n * (-1) ** crosses * 2 ** circles for (crosses, circles), n in histogram.items())


@dataclass(frozen=True)
class CubeState:
    state: ResolutionState
    cross_count: int
    circle_count: int
    term: LaurentPoly

    def to_dict(self) -> dict:
        return {
            'bits': self.state.to_string(),
            'crosses': self.cross_count,
            'circles': self.circle_count,
            'term': self.term.to_text(),
        }


@dataclass(frozen=True)
class CubeOfResolutions:
    edges: Tuple[EdgeId, ...]
    states: Tuple[CubeState, ...]
    arrows: Tuple[Tuple[int, int], ...]

    @property
    def k(self) -> int:
        return len(self.edges)

    def columns(self) -> List[List[CubeState]]:
        cols = [[] for _ in range(self.k + 1)]
        for s in self.states:
            cols[s.cross_count].append(s)
        return cols

    def total(self) -> LaurentPoly:
        total = LaurentPoly.zero()
        for s in self.states:
            total = total + s.term
        return total


class BracketService(BaseService):
    """Service computing the 2-factor bracket by state sum."""

    def __init__(self, state_limit: Optional[int] = None, threads: Optional[int] = None,
                 use_cache: bool = True):
        super().__init__()
        self.state_limit = state_limit if state_limit is not None else self.setting('BRACKET_STATE_LIMIT', 30)
        self.threads = threads if threads is not None else self.setting('WORKER_THREADS', 1)
        self.parallel_min_states = self.setting('PARALLEL_MIN_STATES', 4096)
        self.cache = CacheService() if use_cache else None

    def _check_limit(self, d: MatchedDiagram) -> int:
        k = len(d.matching_edges)
        if k > self.state_limit:
            self.logger.warning(f"State sum refused for {d.label}: k={k} exceeds limit {self.state_limit}")
            raise ResourceLimitException(
                f"{d.label} has {k} matching edges; the state limit is {self.state_limit}",
                limit=self.state_limit,
                required=k,
            )
        return k

    def resolution_pairing(self, d: MatchedDiagram, edge_id: EdgeId, choice: str):
        ensure_valid(d)
        return resolution_pairing(d, edge_id, choice)

    def circle_count(self, d: MatchedDiagram, state: Union[ResolutionState, str, int]) -> int:
        ensure_valid(d)
        k = len(d.matching_edges)
        if isinstance(state, str):
            state = ResolutionState.from_string(state)
        elif isinstance(state, int):
            state = ResolutionState(state, k)
        if state.k != k:
            raise ValidationException(f"State has {state.k} bits but {d.label} has {k} matching edges")
        return StateEngine(d).circle_count(state.bits)

    def state_histogram(self, d: MatchedDiagram, validate: bool = True) -> Counter:
        """
        Histogram of states by cross and circle count.

        ``validate=False`` admits immersed (non-spherical) drawings; only
        the strand pairing structure enters the count.
        """
        if validate:
            ensure_valid(d)
        k = self._check_limit(d)
        engine = StateEngine(d)
        total_states = 1 << k

        if self.threads and self.threads > 1 and total_states >= self.parallel_min_states:
            step = -(-total_states // self.threads)
            chunks = [(engine, start, min(start + step, total_states)) for start in range(0, total_states, step)]
            self.log_operation("Parallel state sum", diagram=d.label, states=total_states, workers=len(chunks))
            with Pool(processes=self.threads) as pool:
                parts = pool.starmap(_histogram_chunk, chunks)
            histogram = Counter()
            for part in parts:
                histogram.update(part)
            return histogram

        return engine.histogram()

    def bracket_state_sum(self, d: MatchedDiagram) -> LaurentPoly:
        return polynomial_from_histogram(self.state_histogram(d))

    def bracket_factored(self, d: MatchedDiagram) -> LaurentPoly:
        """Product over connected components times the free-circle factor."""
        ensure_valid(d)
        result = LaurentPoly.loop_factor() ** d.free_circles
        for component in connected_components(d):
            result = result * self.bracket_state_sum(component)
        return result

    def bracket(self, d: MatchedDiagram) -> LaurentPoly:
        """Cached state-sum bracket."""
        if self.cache is None:
            return self.bracket_state_sum(d)
        ensure_valid(d)
        self._check_limit(d)
        return self.cache.get_or_compute_polynomial('bracket', d, lambda: self.bracket_state_sum(d))

    def bracket_at_one(self, d: MatchedDiagram) -> int:
        return self.bracket(d).eval_at_one()

    def cube(self, d: MatchedDiagram) -> CubeOfResolutions:
        ensure_valid(d)
        k = self._check_limit(d)
        engine = StateEngine(d)
        loop = LaurentPoly.loop_factor()

        states = []
        arrows = []
        for bits in range(1 << k):
            state = ResolutionState(bits, k)
            crosses = state.cross_count
            circles = engine.circle_count(bits)
            sign = -1 if crosses % 2 else 1
            states.append(CubeState(state, crosses, circles, (loop ** circles).shift(crosses).scale(sign)))
            for i in range(k):
                if not bits >> i & 1:
                    arrows.append((bits, bits | (1 << i)))

        self.log_operation("Cube built", diagram=d.label, states=len(states), arrows=len(arrows))
        return CubeOfResolutions(tuple(engine.edges), tuple(states), tuple(arrows))

    def export_cube(self, cube: CubeOfResolutions, fmt: str = 'json') -> str:
        def bits_of(value: int) -> str:
            return ResolutionState(value, cube.k).to_string()

        if fmt == 'json':
            return json.dumps({
                'edges': list(cube.edges),
                'states': [s.to_dict() for s in cube.states],
                'arrows': [[bits_of(a), bits_of(b)] for a, b in cube.arrows],
            }, indent=2)

        if fmt == 'dot':
            lines = ['digraph cube {', '  rankdir=LR;', '  node [shape=box];']
            for column, states in enumerate(cube.columns()):
                names = ' '.join(f'"{s.state.to_string()}";' for s in states)
                lines.append(f'  subgraph col{column} {{ rank=same; {names} }}')
            for s in cube.states:
                bits = s.state.to_string()
                label = f"{bits}\\n{s.circle_count} circle(s)\\n{s.term.to_text()}"
                lines.append(f'  "{bits}" [label="{label}"];')
            for a, b in cube.arrows:
                lines.append(f'  "{bits_of(a)}" -> "{bits_of(b)}";')
            lines.append('}')
            return '\n'.join(lines)

        raise ValidationException(f"Unknown cube format {fmt!r}; expected 'dot' or 'json'")
