"""
Purpose-built diagrams: the theta graph, bubbles, matching bridges and the
face expansion step used by the random generator.
"""
import random
from dataclasses import dataclass
from typing import List, Tuple

from .base_service import BaseService
from ..diagram import (
    MatchedDiagram, Edge, EdgeId, HalfEdgeId, Vertex, VertexId,
    disjoint_union, faces, sorted_diagram,
)
from ..exceptions import MoveException
from ..validators import ensure_valid


@dataclass(frozen=True)
class Subdivision:
    """New degree-3 vertex ``s`` placed on an edge; ``s_3`` is still unattached."""
    vertex: VertexId
    s_out: HalfEdgeId
    s_in: HalfEdgeId
    s_3: HalfEdgeId


def theta() -> MatchedDiagram:
    return MatchedDiagram(
        vertices=(Vertex(0, (0, 1, 2)), Vertex(1, (3, 5, 4))),
        edges=(Edge(0, (0, 3), True), Edge(1, (1, 4)), Edge(2, (2, 5))),
        name='theta',
    )


def subdivide(d: MatchedDiagram, h: HalfEdgeId) -> Tuple[MatchedDiagram, Subdivision]:
    """
    Put a new vertex on the edge through ``h``, on the side of ``h``.

    The part next to ``h`` keeps the edge id; ``s_3`` lands in the face
    traced through ``h``. The result has one dangling half-edge and is
    not a valid diagram until ``s_3`` is joined.
    """
    edge = d.edge_by_id[d.edge_of[h]]
    if edge.matching:
        raise MoveException(f"Cannot subdivide matching edge {edge.id}", move='subdivide')
    t = d.twin[h]
    base = d.next_half_edge_id()
    s = Subdivision(d.next_vertex_id(), base, base + 1, base + 2)

    kept = Edge(edge.id, (h, s.s_in) if edge.ends[0] == h else (s.s_in, h))
    added = Edge(d.next_edge_id(), (s.s_out, t))
    edges = [e for e in d.edges if e.id != edge.id] + [kept, added]
    vertices = list(d.vertices) + [Vertex(s.vertex, (s.s_out, s.s_in, s.s_3))]
    return sorted_diagram(vertices, edges, d.free_circles, d.name), s


def join(d: MatchedDiagram, x: HalfEdgeId, y: HalfEdgeId, matching: bool = False,
         name: str = None) -> MatchedDiagram:
    edges = list(d.edges) + [Edge(d.next_edge_id(), (x, y), matching)]
    return sorted_diagram(d.vertices, edges, d.free_circles, name or d.name)


def expand_face(d: MatchedDiagram, rng: random.Random) -> MatchedDiagram:
    """
    Add two vertices and a chord inside one face.

    Two sides of a random face are subdivided and the new vertices joined
    through that face. Picking the same side twice closes a bigon.
    """
    walk = rng.choice(faces(d))
    i, j = sorted((rng.randrange(len(walk)), rng.randrange(len(walk))))
    first, s1 = subdivide(d, walk[i])
    if i == j:
        second, s2 = subdivide(first, s1.s_out)
    else:
        second, s2 = subdivide(first, walk[j])
    return join(second, s1.s_3, s2.s_3)


class ConstructionService(BaseService):
    """Builders for the bubbled and bridged instances."""

    def insert_bubble(self, d: MatchedDiagram, edge_id: EdgeId) -> MatchedDiagram:
        """
        Replace matching edge ``u-v`` by ``u-x``, a bigon ``x=y``, and ``y-v``.

        ``u-x`` keeps the edge id; collapsing the new bubble gives ``d`` back.
        """
        ensure_valid(d)
        edge = d.edge_by_id.get(edge_id)
        if edge is None or not edge.matching:
            raise MoveException(f"Bubbles go on matching edges; {edge_id} is not one", move='insert_bubble')
        h_u, h_v = edge.ends
        x = d.next_vertex_id()
        y = x + 1
        m1_x, p1_x, p2_x, m2_y, p2_y, p1_y = range(d.next_half_edge_id(), d.next_half_edge_id() + 6)
        n = d.next_edge_id()

        vertices = list(d.vertices) + [Vertex(x, (m1_x, p1_x, p2_x)), Vertex(y, (m2_y, p2_y, p1_y))]
        edges = [e for e in d.edges if e.id != edge_id] + [
            Edge(edge_id, (h_u, m1_x), True),
            Edge(n, (p1_x, p1_y)),
            Edge(n + 1, (p2_x, p2_y)),
            Edge(n + 2, (m2_y, h_v), True),
        ]
        result = sorted_diagram(vertices, edges, d.free_circles, f"bubble({d.label},{edge_id})")
        self.logger.debug(f"Inserted bubble on edge {edge_id} of {d.label}")
        return ensure_valid(result)

    def bridged_join(self, d1: MatchedDiagram, d2: MatchedDiagram, e1: EdgeId, e2: EdgeId,
                     name: str = None) -> MatchedDiagram:
        """Subdivide ``e1`` in ``d1`` and ``e2`` in ``d2`` and join the new vertices by a matching bridge."""
        ensure_valid(d1)
        ensure_valid(d2)
        union = disjoint_union(d1, d2)
        offset = d1.next_edge_id()
        d, s1 = subdivide(union, union.edge_by_id[e1].ends[0])
        d, s2 = subdivide(d, d.edge_by_id[e2 + offset].ends[0])
        return ensure_valid(join(d, s1.s_3, s2.s_3, matching=True,
                                 name=name or f"bridge({d1.label},{d2.label})"))

    def bridged_double_theta(self) -> MatchedDiagram:
        return self.bridged_join(theta(), theta(), 1, 1, name='bridged-double-theta')

    def nested_bubble_theta(self, depth: int) -> MatchedDiagram:
        """Theta with ``depth`` bubbles stacked on its matching edge."""
        d = theta()
        for _ in range(depth):
            d = self.insert_bubble(d, 0)
        return MatchedDiagram(d.vertices, d.edges, d.free_circles, name=f"nested-bubble-theta-{depth}")

    def purpose_built(self) -> List[MatchedDiagram]:
        """Bubbled and bridged instances that trigger the local checks."""
        bridged = self.bridged_double_theta()
        bridge = max(bridged.matching_edges)
        return [
            self.nested_bubble_theta(1),
            self.nested_bubble_theta(2),
            self.nested_bubble_theta(3),
            bridged,
            self.insert_bubble(bridged, bridge),
            self.bridged_join(self.nested_bubble_theta(1), theta(), 1, 2, name='bridge-bubble-theta'),
        ]
