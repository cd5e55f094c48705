"""DIMACS-like edge-list text: ``p edge <n> <m>`` followed by 1-based ``e <u> <v>`` lines."""

import logging
from typing import Iterable, List, Tuple

from kempe_recon.exceptions import GraphInputError
from kempe_recon.graphs.core import Graph, build_graph

logger = logging.getLogger(__name__)


def read_dimacs(text: str) -> Graph:
    vertex_count = None
    declared_edges = None
    edges: List[Tuple[int, int]] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        entries = line.split()
        if not entries or entries[0] == "c":
            continue
        tag = entries[0].lower()
        try:
            if tag == "p":
                if len(entries) != 4:
                    raise GraphInputError(f"line {line_no}: expected 'p edge <n> <m>'")
                vertex_count, declared_edges = int(entries[2]), int(entries[3])
            elif tag == "e":
                if vertex_count is None:
                    raise GraphInputError(f"line {line_no}: edge before problem line")
                if len(entries) != 3:
                    raise GraphInputError(f"line {line_no}: expected 'e <u> <v>'")
                u, v = int(entries[1]) - 1, int(entries[2]) - 1
                if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                    raise GraphInputError(f"line {line_no}: endpoint outside 1..{vertex_count}")
                if u == v:
                    raise GraphInputError(f"line {line_no}: self-loop at vertex {u + 1}")
                edges.append((u, v))
            else:
                logger.warning(f"Ignoring unknown DIMACS line {line_no}: {line.strip()!r}")
        except ValueError as e:
            if isinstance(e, GraphInputError):
                raise
            raise GraphInputError(f"line {line_no}: non-integer field in {line.strip()!r}") from e
    if vertex_count is None:
        raise GraphInputError("missing 'p edge' problem line")
    graph = build_graph(vertex_count, edges)
    if declared_edges != graph.edge_count:
        logger.warning(
            f"Problem line declares {declared_edges} edges, found {graph.edge_count} distinct edges"
        )
    return graph


def write_dimacs(graph: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"c {comment}" for comment in comments]
    lines.append(f"p edge {graph.vertex_count} {graph.edge_count}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in graph.edges())
    return "\n".join(lines) + "\n"
