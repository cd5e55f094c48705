"""
Orderings that keep a fixed vertex set F untouched during reconfiguration.

An ordering is admissible for F when every vertex outside F that follows an
adjacent vertex outside F also follows all of its neighbors in F. The
subdegeneracy bound is the maximum predecessor count over vertices outside F
for an admissible ordering; a palette larger than it lets reconfiguration
leave every color on F alone.
"""

import logging
from dataclasses import dataclass
from typing import AbstractSet, Iterable, List

from kempe_recon.exceptions import ContractError
from kempe_recon.graphs import Graph, VertexOrdering, eliminate_min_degree, max_pred

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SubdegResult:
    value: int
    ordering: VertexOrdering
    lambda_value: int
    prefix_count: int

    def to_text(self) -> str:
        return (
            f"subdeg_ub {self.value} lambda {self.lambda_value} prefix {self.prefix_count}\n"
            + self.ordering.to_text()
        )


def _validate_fixed(graph: Graph, fixed: Iterable[int]) -> frozenset:
    fixed = frozenset(fixed)
    outside = [v for v in fixed if not 0 <= v < graph.vertex_count]
    if outside:
        raise ContractError(f"fixed vertices {sorted(outside)} are not in the graph")
    return fixed


def vertex_elimination(graph: Graph, fixed: AbstractSet[int]) -> VertexOrdering:
    """Order the vertices outside ``fixed`` by min-degree elimination.

    Fixed vertices are never removed but count toward degrees. Placing all of
    ``fixed`` first and then this ordering gives an admissible ordering whose
    maximum predecessor count outside ``fixed`` is the smallest possible among
    F-first orderings.
    """
    fixed = _validate_fixed(graph, fixed)
    _, order = eliminate_min_degree(graph, (v for v in graph.vertices if v not in fixed))
    return VertexOrdering(tuple(order))


def check_sprime(graph: Graph, fixed: AbstractSet[int], ordering: VertexOrdering) -> bool:
    if not ordering.covers(graph):
        raise ContractError("ordering must cover every vertex")
    positions = ordering.positions
    for v in graph.vertices:
        if v in fixed:
            continue
        here = positions[v]
        earlier_free = any(positions[w] < here for w in graph.neighbors(v) if w not in fixed)
        if earlier_free and any(positions[w] > here for w in graph.neighbors(v) if w in fixed):
            return False
    return True


def postprocess(graph: Graph, fixed: AbstractSet[int], tail: VertexOrdering) -> SubdegResult:
    """Move the longest pairwise non-adjacent head of ``tail`` in front of the fixed vertices."""
    fixed = _validate_fixed(graph, fixed)
    sequence = tail.sequence
    f_first = VertexOrdering(tuple(sorted(fixed)) + sequence)
    lambda_value = max_pred(graph, f_first, sequence)

    prefix: List[int] = []
    for v in sequence:
        if any(graph.has_edge(v, w) for w in prefix):
            break
        prefix.append(v)

    ordering = VertexOrdering(tuple(prefix) + tuple(sorted(fixed)) + sequence[len(prefix):])
    value = max_pred(graph, ordering, sequence)
    logger.debug(f"Independent head of {len(prefix)} vertices moved before F: {lambda_value} -> {value}")
    return SubdegResult(value=value, ordering=ordering, lambda_value=lambda_value, prefix_count=len(prefix))


def subdeg_ub(graph: Graph, fixed: AbstractSet[int]) -> SubdegResult:
    return postprocess(graph, fixed, vertex_elimination(graph, fixed))
