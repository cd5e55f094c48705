"""
List coloring to vertex coloring.

A list-coloring instance (G, p, L) becomes the graph H_G: a copy of G plus a
p-clique whose i-th vertex stands for color i, with an edge from every
original vertex v to the clique vertex of each color not in L(v). H_G has a
proper p-coloring iff G has a list coloring.
"""

import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Sequence, Tuple

from kempe_recon.data_sources.model import UtpInstance
from kempe_recon.exceptions import ContractError, GraphInputError
from kempe_recon.graphs import Coloring, Graph, build_graph, is_proper, read_dimacs, write_dimacs

logger = logging.getLogger(__name__)

FixedSet = FrozenSet[int]


@dataclass(frozen=True)
class ReducedGraph:
    graph: Graph
    p: int
    clique_vertices: Tuple[int, ...]
    original_count: int

    def is_clique_vertex(self, v: int) -> bool:
        return v >= self.original_count

    def color_list(self, v: int) -> FrozenSet[int]:
        """Colors still allowed for original vertex ``v``."""
        forbidden = {w - self.original_count + 1 for w in self.graph.neighbors(v) if self.is_clique_vertex(w)}
        return frozenset(range(1, self.p + 1)) - forbidden

    def to_dimacs(self) -> str:
        trailer = [
            f"c palette {self.p}",
            "c clique " + " ".join(str(v + 1) for v in self.clique_vertices),
        ]
        return write_dimacs(self.graph) + "\n".join(trailer) + "\n"

    @classmethod
    def from_dimacs(cls, text: str) -> "ReducedGraph":
        p = None
        clique: Tuple[int, ...] = ()
        for line in text.splitlines():
            entries = line.split()
            if entries[:2] == ["c", "palette"]:
                p = int(entries[2])
            elif entries[:2] == ["c", "clique"]:
                clique = tuple(int(v) - 1 for v in entries[2:])
        if p is None or len(clique) != p:
            raise GraphInputError("reduced graph text needs 'c palette' and a matching 'c clique' trailer")
        graph = read_dimacs(text)
        if clique != tuple(range(graph.vertex_count - p, graph.vertex_count)):
            raise GraphInputError("clique vertices must be the last p vertices")
        return cls(graph, p, clique, graph.vertex_count - p)


def build_reduced(graph: Graph, p: int, lists: Sequence[Iterable[int]]) -> ReducedGraph:
    if p < 1:
        raise GraphInputError(f"palette size must be positive, got {p}")
    if len(lists) != graph.vertex_count:
        raise GraphInputError(f"expected {graph.vertex_count} color lists, got {len(lists)}")
    n = graph.vertex_count
    clique = tuple(range(n, n + p))
    edges = list(graph.edges())
    edges.extend((clique[i], clique[j]) for i in range(p) for j in range(i + 1, p))
    for v, allowed in enumerate(lists):
        allowed = frozenset(allowed)
        if not allowed:
            raise GraphInputError(f"vertex {v} has an empty color list")
        if min(allowed) < 1 or max(allowed) > p:
            raise GraphInputError(f"color list of vertex {v} leaves 1..{p}")
        edges.extend((v, clique[color - 1]) for color in range(1, p + 1) if color not in allowed)
    reduced = ReducedGraph(build_graph(n + p, edges), p, clique, n)
    logger.debug(f"Built reduced graph: {reduced.graph.vertex_count} vertices, {reduced.graph.edge_count} edges")
    return reduced


def reduce_instance(instance: UtpInstance) -> ReducedGraph:
    return build_reduced(instance.conflict_graph, instance.timeslot_count, instance.availability)


def fixed_set(reduced: ReducedGraph) -> FixedSet:
    """Vertices with exactly p-1 clique neighbors: the clique itself plus every single-color vertex."""
    clique = set(reduced.clique_vertices)
    target = reduced.p - 1
    return frozenset(
        v for v in reduced.graph.vertices
        if sum(1 for w in reduced.graph.neighbors(v) if w in clique) == target
    )


def _clique_permutation(reduced: ReducedGraph, coloring: Coloring) -> Dict[int, int]:
    if not is_proper(reduced.graph, coloring):
        raise ContractError("coloring is not proper on the reduced graph")
    return {coloring[w]: i for i, w in enumerate(reduced.clique_vertices, start=1)}


def normalize_coloring(reduced: ReducedGraph, coloring: Coloring) -> Coloring:
    """Rename colors so that clique vertex i gets color i."""
    mapping = _clique_permutation(reduced, coloring)
    try:
        colors = tuple(mapping[c] for c in coloring)
    except KeyError as e:
        raise ContractError(f"color {e.args[0]} is not used on the clique; palette exceeds p") from None
    return Coloring(colors, reduced.p)


def project_coloring(reduced: ReducedGraph, coloring: Coloring) -> Coloring:
    """List coloring of the original graph read off a proper p-coloring of H_G."""
    normalized = normalize_coloring(reduced, coloring)
    return Coloring(normalized.colors[:reduced.original_count], reduced.p)


def lift_list_coloring(reduced: ReducedGraph, coloring: Coloring) -> Coloring:
    """Extend a list coloring of G to H_G with clique vertex i colored i."""
    if len(coloring) != reduced.original_count:
        raise ContractError(f"expected a coloring of {reduced.original_count} vertices")
    for v, color in enumerate(coloring):
        if color not in reduced.color_list(v):
            raise ContractError(f"vertex {v} has color {color} outside its list")
    lifted = Coloring(tuple(coloring.colors) + tuple(range(1, reduced.p + 1)), reduced.p)
    if not is_proper(reduced.graph, lifted):
        raise ContractError("list coloring is not proper")
    return lifted
