"""Bipartite dual graphs of curve configurations.

One vertex per irreducible component, one per singular point of the
configuration, one edge per local branch (a component may run through
a point with several branches, giving parallel edges). The first
Betti number of the configuration is the cycle rank of this multigraph.
"""
from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .errors import LatticeError, ModelError


@dataclass(frozen=True)
class SingularPoint:
    name: str
    branches: tuple[str, ...]

    def __post_init__(self):
        if not self.branches:
            raise LatticeError(f"singular point {self.name!r} needs at least one branch")


@dataclass(frozen=True)
class CurveConfiguration:
    """Components plus singular points with their branches (repetition
    encodes branch multiplicity)."""

    components: tuple[str, ...]
    singularities: tuple[SingularPoint, ...]

    def __post_init__(self):
        if not self.components:
            raise LatticeError("a curve configuration needs at least one component")
        if len(set(self.components)) != len(self.components):
            raise LatticeError("duplicate component names")
        names = [s.name for s in self.singularities]
        if len(set(names)) != len(names):
            raise LatticeError("duplicate singular point names")
        known = set(self.components)
        for s in self.singularities:
            for b in s.branches:
                if b not in known:
                    raise LatticeError(
                        f"singular point {s.name!r} references unknown component {b!r}"
                    )


@dataclass(frozen=True)
class DualGraph:
    """The bipartite multigraph of a configuration, with deterministic
    vertex order: components first, then singular points, both in input
    order; edges sorted by (point, component, branch position)."""

    config: CurveConfiguration
    vertices: tuple[tuple[str, str], ...]  # (kind, name), kind in {component, point}
    edges: tuple[tuple[str, str], ...]     # (point name, component name), one per branch

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def build_graph(config: CurveConfiguration) -> DualGraph:
    vertices = tuple(
        [("component", c) for c in config.components]
        + [("point", s.name) for s in config.singularities]
    )
    edges = []
    for s in config.singularities:
        for pos, b in enumerate(s.branches):
            edges.append((s.name, b, pos))
    edges.sort()
    return DualGraph(config, vertices, tuple((p, c) for p, c, _ in edges))


def _nx_graph(graph: DualGraph) -> nx.MultiGraph:
    g = nx.MultiGraph()
    for kind, name in graph.vertices:
        g.add_node((kind, name))
    for point, comp in graph.edges:
        g.add_edge(("point", point), ("component", comp))
    return g


def connected_component_count(graph: DualGraph) -> int:
    return nx.number_connected_components(_nx_graph(graph))


def betti1(graph: DualGraph) -> int:
    """Cycle rank: edges - vertices + connected components.

    For a connected configuration this is cross-checked against the
    closed formula sum over points of (branches - 1), minus components,
    plus one.
    """
    pieces = connected_component_count(graph)
    b1 = graph.edge_count - graph.vertex_count + pieces
    if b1 < 0:
        raise ModelError("negative cycle rank, graph bookkeeping is broken")
    if pieces == 1:
        closed = (
            sum(len(s.branches) - 1 for s in graph.config.singularities)
            - len(graph.config.components)
            + 1
        )
        if closed != b1:
            raise ModelError(
                f"cycle rank cross-check failure: graph {b1} vs formula {closed}"
            )
    return b1
