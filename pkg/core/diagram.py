"""
Half-edge combinatorial maps of trivalent multigraphs with a flagged
perfect matching.

Rotations list the three incident half-edges of a vertex in
counterclockwise order. Faces are traced with ``phi(h) = succ(twin(h))``.
Diagrams are immutable; every rewrite builds a new diagram.
"""
import hashlib
import json
import logging
from dataclasses import dataclass, field, replace
from functools import cached_property
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from .exceptions import ValidationException

logger = logging.getLogger(__name__)

HalfEdgeId = int
VertexId = int
EdgeId = int


@dataclass(frozen=True)
class Vertex:
    id: VertexId
    rotation: Tuple[HalfEdgeId, ...]


@dataclass(frozen=True)
class Edge:
    id: EdgeId
    ends: Tuple[HalfEdgeId, ...]
    matching: bool = False


@dataclass(frozen=True)
class ComplementCycles:
    """Cycles of the graph with its matching edges removed."""

    cycles: Tuple[Tuple[Tuple[VertexId, EdgeId], ...], ...]
    free_circles: int = 0

    @property
    def lengths(self) -> List[int]:
        return [len(cycle) for cycle in self.cycles]

    @property
    def count(self) -> int:
        return len(self.cycles)

    def has_odd_cycle(self) -> bool:
        return any(length % 2 for length in self.lengths)

    def shortest(self) -> Optional[int]:
        return min(self.lengths) if self.cycles else None

    def cycle_of(self) -> Dict[VertexId, int]:
        """Map every vertex to the index of the cycle through it."""
        return {v: index for index, cycle in enumerate(self.cycles) for v, _ in cycle}


@dataclass(frozen=True)
class MatchedDiagram:
    vertices: Tuple[Vertex, ...]
    edges: Tuple[Edge, ...]
    free_circles: int = 0
    name: str = field(default='', compare=False)

    # Lookups. Tolerant of malformed input so the validator can inspect it.

    @cached_property
    def vertex_by_id(self) -> Dict[VertexId, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def edge_by_id(self) -> Dict[EdgeId, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def vertex_of(self) -> Dict[HalfEdgeId, VertexId]:
        return {h: v.id for v in self.vertices for h in v.rotation}

    @cached_property
    def edge_of(self) -> Dict[HalfEdgeId, EdgeId]:
        return {h: e.id for e in self.edges for h in e.ends}

    @cached_property
    def twin(self) -> Dict[HalfEdgeId, HalfEdgeId]:
        result = {}
        for e in self.edges:
            if len(e.ends) == 2:
                h1, h2 = e.ends
                result[h1] = h2
                result[h2] = h1
        return result

    @cached_property
    def succ(self) -> Dict[HalfEdgeId, HalfEdgeId]:
        """Next half-edge counterclockwise around the same vertex."""
        result = {}
        for v in self.vertices:
            n = len(v.rotation)
            for i, h in enumerate(v.rotation):
                result[h] = v.rotation[(i + 1) % n]
        return result

    @cached_property
    def matching_edges(self) -> List[EdgeId]:
        return sorted(e.id for e in self.edges if e.matching)

    @cached_property
    def matching_half_edge(self) -> Dict[VertexId, HalfEdgeId]:
        result = {}
        for v in self.vertices:
            for h in v.rotation:
                if self.edge_by_id[self.edge_of[h]].matching:
                    result[v.id] = h
        return result

    @cached_property
    def half_edges(self) -> List[HalfEdgeId]:
        return sorted(h for v in self.vertices for h in v.rotation)

    def endpoints(self, edge_id: EdgeId) -> Tuple[VertexId, VertexId]:
        h1, h2 = self.edge_by_id[edge_id].ends
        return self.vertex_of[h1], self.vertex_of[h2]

    def is_loop(self, edge_id: EdgeId) -> bool:
        u, v = self.endpoints(edge_id)
        return u == v

    def next_half_edge_id(self) -> HalfEdgeId:
        used = [h for e in self.edges for h in e.ends] + [h for v in self.vertices for h in v.rotation]
        return max(used, default=-1) + 1

    def next_vertex_id(self) -> VertexId:
        return max((v.id for v in self.vertices), default=-1) + 1

    def next_edge_id(self) -> EdgeId:
        return max((e.id for e in self.edges), default=-1) + 1

    @property
    def label(self) -> str:
        return self.name or 'diagram'

    def __len__(self) -> int:
        return len(self.vertices)


# Structural queries

def faces(d: MatchedDiagram) -> List[List[HalfEdgeId]]:
    """Face walks of the rotation system, each started at its smallest half-edge."""
    seen: Set[HalfEdgeId] = set()
    walks = []
    for start in d.half_edges:
        if start in seen:
            continue
        walk = []
        h = start
        while h not in seen:
            seen.add(h)
            walk.append(h)
            h = d.succ[d.twin[h]]
        walks.append(walk)
    return walks


def vertex_components(d: MatchedDiagram) -> List[List[VertexId]]:
    """Vertex sets of the connected components, ordered by smallest vertex id."""
    graph = nx.MultiGraph()
    graph.add_nodes_from(v.id for v in d.vertices)
    for e in d.edges:
        u, v = d.endpoints(e.id)
        graph.add_edge(u, v, key=e.id)
    components = [sorted(c) for c in nx.connected_components(graph)]
    return sorted(components, key=lambda c: c[0])


def euler_characteristics(d: MatchedDiagram) -> List[Tuple[VertexId, int]]:
    """``(smallest vertex, V - E + F)`` for every connected component."""
    component_of = {}
    components = vertex_components(d)
    for index, component in enumerate(components):
        for v in component:
            component_of[v] = index

    counts = [[len(c), 0, 0] for c in components]
    for e in d.edges:
        counts[component_of[d.vertex_of[e.ends[0]]]][1] += 1
    for walk in faces(d):
        counts[component_of[d.vertex_of[walk[0]]]][2] += 1

    return [(components[i][0], v - e + f) for i, (v, e, f) in enumerate(counts)]


def genus(d: MatchedDiagram) -> List[int]:
    """Orientable genus of every connected component."""
    return [(2 - chi) // 2 for _, chi in euler_characteristics(d)]


def complement_cycles(d: MatchedDiagram) -> ComplementCycles:
    """Trace the cycles formed by the non-matching edges."""
    visited: Set[VertexId] = set()
    cycles = []
    for vertex in sorted(d.vertex_by_id):
        if vertex in visited:
            continue
        start = d.succ[d.matching_half_edge[vertex]]
        cycle = []
        h = start
        while True:
            v = d.vertex_of[h]
            visited.add(v)
            cycle.append((v, d.edge_of[h]))
            arrival = d.twin[h]
            w = d.vertex_of[arrival]
            m = d.matching_half_edge[w]
            h = next(x for x in d.vertex_by_id[w].rotation if x != m and x != arrival)
            if h == start:
                break
        cycles.append(tuple(cycle))
    return ComplementCycles(cycles=tuple(cycles), free_circles=d.free_circles)


def find_bridges(d: MatchedDiagram) -> Set[EdgeId]:
    """Bridges of the underlying multigraph.

    Every edge is subdivided twice so parallel edges and loops come out
    right in a simple graph; an edge is a bridge iff its middle segment is.
    """
    graph = nx.Graph()
    graph.add_nodes_from(('v', v.id) for v in d.vertices)
    for e in d.edges:
        u, v = d.endpoints(e.id)
        graph.add_edge(('v', u), ('e', e.id, 0))
        graph.add_edge(('e', e.id, 0), ('e', e.id, 1))
        graph.add_edge(('e', e.id, 1), ('v', v))

    bridges = set()
    for a, b in nx.bridges(graph):
        if a[0] == 'e' and b[0] == 'e' and a[1] == b[1]:
            bridges.add(a[1])
    return bridges


def connected_components(d: MatchedDiagram) -> List[MatchedDiagram]:
    """Split into connected sub-diagrams; free circles are not carried over."""
    result = []
    for index, component in enumerate(vertex_components(d)):
        members = set(component)
        vertices = tuple(v for v in d.vertices if v.id in members)
        edges = tuple(e for e in d.edges if d.vertex_of[e.ends[0]] in members)
        result.append(MatchedDiagram(
            vertices=vertices,
            edges=edges,
            free_circles=0,
            name=f"{d.label}[{index}]",
        ))
    return result


def mirror(d: MatchedDiagram) -> MatchedDiagram:
    """Reverse every rotation (orientation reversal of the sphere)."""
    vertices = tuple(Vertex(v.id, tuple(reversed(v.rotation))) for v in d.vertices)
    return replace(d, vertices=vertices, name=f"mirror({d.label})")


def with_matching(d: MatchedDiagram, edge_ids: Iterable[EdgeId], name: str = None) -> MatchedDiagram:
    """Reinstall the matching flags on exactly ``edge_ids``."""
    chosen = set(edge_ids)
    unknown = chosen - set(d.edge_by_id)
    if unknown:
        raise ValidationException(f"Unknown edge ids: {sorted(unknown)}")
    edges = tuple(Edge(e.id, e.ends, e.id in chosen) for e in d.edges)
    return replace(d, edges=edges, name=name or d.name)


def disjoint_union(d1: MatchedDiagram, d2: MatchedDiagram, name: str = None) -> MatchedDiagram:
    """``d1 ⊔ d2``; the ids of ``d2`` are shifted past those of ``d1``."""
    v_off = d1.next_vertex_id()
    e_off = d1.next_edge_id()
    h_off = d1.next_half_edge_id()

    vertices = d1.vertices + tuple(
        Vertex(v.id + v_off, tuple(h + h_off for h in v.rotation)) for v in d2.vertices
    )
    edges = d1.edges + tuple(
        Edge(e.id + e_off, tuple(h + h_off for h in e.ends), e.matching) for e in d2.edges
    )
    return MatchedDiagram(
        vertices=vertices,
        edges=edges,
        free_circles=d1.free_circles + d2.free_circles,
        name=name or f"{d1.label}+{d2.label}",
    )


def add_free_circles(d: MatchedDiagram, count: int = 1) -> MatchedDiagram:
    return replace(d, free_circles=d.free_circles + count)


def fingerprint(d: MatchedDiagram) -> str:
    """Stable digest of the diagram's structure (the name is ignored)."""
    payload = diagram_to_dict(d)
    payload.pop('name')
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


# JSON codec

def diagram_from_dict(data: dict, name: str = None) -> MatchedDiagram:
    """Build a diagram from the graph JSON document."""
    if not isinstance(data, dict):
        raise ValidationException("Graph document must be a JSON object")

    field_errors = {}
    for key in ('vertices', 'edges'):
        if not isinstance(data.get(key), list):
            field_errors[key] = "This field is required and must be a list"
    free_circles = data.get('free_circles', 0)
    if not isinstance(free_circles, int) or isinstance(free_circles, bool) or free_circles < 0:
        field_errors['free_circles'] = "Must be a nonnegative integer"
    if field_errors:
        raise ValidationException("Invalid graph document", field_errors=field_errors)

    try:
        vertices = tuple(
            Vertex(int(item['id']), tuple(int(h) for h in item['rotation']))
            for item in data['vertices']
        )
        edges = tuple(
            Edge(int(item['id']), tuple(int(h) for h in item['ends']), bool(item.get('matching', False)))
            for item in data['edges']
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ValidationException(f"Invalid graph document: {e}") from e

    return MatchedDiagram(
        vertices=vertices,
        edges=edges,
        free_circles=free_circles,
        name=name or str(data.get('name', '')),
    )


def diagram_to_dict(d: MatchedDiagram) -> dict:
    return {
        'name': d.name,
        'free_circles': d.free_circles,
        'vertices': [{'id': v.id, 'rotation': list(v.rotation)} for v in d.vertices],
        'edges': [{'id': e.id, 'ends': list(e.ends), 'matching': e.matching} for e in d.edges],
    }


def load_diagram(path) -> MatchedDiagram:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise ValidationException(f"{path}: not valid JSON ({e.msg} at line {e.lineno})") from e
    return diagram_from_dict(data, name=data.get('name') or path.stem if isinstance(data, dict) else None)


def dump_diagram(d: MatchedDiagram) -> str:
    return json.dumps(diagram_to_dict(d), indent=2)


def sorted_diagram(vertices: Sequence[Vertex], edges: Sequence[Edge], free_circles: int, name: str) -> MatchedDiagram:
    """Diagram with vertices and edges ordered by id."""
    return MatchedDiagram(
        vertices=tuple(sorted(vertices, key=lambda v: v.id)),
        edges=tuple(sorted(edges, key=lambda e: e.id)),
        free_circles=free_circles,
        name=name,
    )
