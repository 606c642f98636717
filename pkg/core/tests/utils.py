from django.conf import settings

from core.diagram import MatchedDiagram, Edge, Vertex, load_diagram


def fixture_path(name: str):
    return settings.GRAPH_FIXTURE_DIR / f"{name}.json"


def load_fixture(name: str) -> MatchedDiagram:
    return load_diagram(fixture_path(name))


def dumbbell() -> MatchedDiagram:
    """Two loops joined by a matching bridge."""
    return MatchedDiagram(
        vertices=(Vertex(0, (0, 4, 1)), Vertex(1, (3, 2, 5))),
        edges=(Edge(0, (0, 3), True), Edge(1, (1, 4)), Edge(2, (2, 5))),
        name='dumbbell',
    )
