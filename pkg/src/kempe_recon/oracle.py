"""
Brute-force ground truth for small graphs.

Everything here enumerates explicitly and refuses inputs above the caps from
``Config.get_oracle_caps()`` with a CapExceededError instead of truncating.
"""

import logging
import math
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import AbstractSet, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import pandas as pd

from kempe_recon.config import Config, OracleCaps
from kempe_recon.exceptions import CapExceededError, ContractError
from kempe_recon.graphs import Coloring, Graph, VertexOrdering, kempe_component, max_pred, swap_component
from kempe_recon.reduction import ReducedGraph, build_reduced

logger = logging.getLogger(__name__)

ELEMENTARY = "elementary"
KEMPE = "kempe"
RELATIONS = (ELEMENTARY, KEMPE)


@dataclass(frozen=True)
class ReconfigGraph:
    nodes: Tuple[Coloring, ...]
    edges: Tuple[Tuple[int, int], ...]
    relation: str

    def edge_set(self) -> frozenset:
        """Edges as unordered pairs of colorings, comparable across relations."""
        return frozenset(frozenset((self.nodes[i], self.nodes[j])) for i, j in self.edges)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(len(self.nodes)))
        g.add_edges_from(self.edges)
        return g

    def to_dimacs(self) -> str:
        lines = [f"c {self.relation} reconfiguration graph", f"p edge {len(self.nodes)} {len(self.edges)}"]
        lines.extend(f"e {i + 1} {j + 1}" for i, j in self.edges)
        return "\n".join(lines) + "\n"

    def manifest(self) -> str:
        return "".join(node.to_text() for node in self.nodes)


@dataclass(frozen=True)
class Connectivity:
    connected: bool
    component_count: int
    diameter: float


@dataclass(frozen=True)
class SearchSpaceComparison:
    list_space: Connectivity
    reduced_space: Connectivity
    list_colorings: int
    reduced_colorings: int
    diameter_bound: Optional[float]

    @property
    def equivalent(self) -> bool:
        return self.list_space.connected == self.reduced_space.connected

    @property
    def bound_holds(self) -> Optional[bool]:
        if self.diameter_bound is None or not (self.list_space.connected and self.reduced_space.connected):
            return None
        return self.list_space.diameter <= self.diameter_bound


def _caps(caps: Optional[OracleCaps]) -> OracleCaps:
    return caps if caps is not None else Config.get_oracle_caps()


def enumerate_colorings(
    graph: Graph,
    k: int,
    lists: Optional[Sequence[Iterable[int]]] = None,
    caps: Optional[OracleCaps] = None,
) -> List[Coloring]:
    """All proper k-colorings (respecting ``lists`` if given) in lexicographic order."""
    caps = _caps(caps)
    n = graph.vertex_count
    if lists is None:
        candidates = [tuple(range(1, k + 1))] * n
    else:
        if len(lists) != n:
            raise ContractError(f"expected {n} color lists, got {len(lists)}")
        candidates = [tuple(sorted(set(allowed))) for allowed in lists]
        for v, allowed in enumerate(candidates):
            if allowed and (allowed[0] < 1 or allowed[-1] > k):
                raise ContractError(f"color list of vertex {v} leaves 1..{k}")
    if n > caps.max_vertices or k > caps.max_colors:
        raise CapExceededError(
            f"refusing to enumerate {k}-colorings of {n} vertices "
            f"(caps: {caps.max_vertices} vertices, {caps.max_colors} colors)",
            estimate=math.prod(len(c) for c in candidates),
        )

    colors = [0] * n
    found: List[Coloring] = []

    def place(v: int) -> None:
        if v == n:
            found.append(Coloring(tuple(colors), k))
            return
        earlier = [w for w in graph.neighbors(v) if w < v]
        for color in candidates[v]:
            if all(colors[w] != color for w in earlier):
                colors[v] = color
                place(v + 1)
        colors[v] = 0

    place(0)
    logger.debug(f"Enumerated {len(found)} colorings of {n} vertices with {k} colors")
    return found


def build_reconfig_graph(graph: Graph, colorings: Sequence[Coloring], relation: str = KEMPE) -> ReconfigGraph:
    """Reconfiguration graph on ``colorings``; an edge needs both endpoints in the node set."""
    if relation not in RELATIONS:
        raise ValueError(f"unknown relation {relation!r}; expected one of {RELATIONS}")
    nodes = tuple(colorings)
    index: Dict[Coloring, int] = {c: i for i, c in enumerate(nodes)}
    k = max((c.palette_size for c in nodes), default=1)
    edges = set()
    for i, coloring in enumerate(nodes):
        for v in graph.vertices:
            a = coloring[v]
            for b in range(1, k + 1):
                if b == a:
                    continue
                component = kempe_component(graph, coloring, a, b, v)
                if relation == ELEMENTARY and len(component) > 1:
                    continue
                swapped = list(coloring.colors)
                swap_component(swapped, component, a, b)
                j = index.get(Coloring(tuple(swapped), k))
                if j is not None and j != i:
                    edges.add((min(i, j), max(i, j)))
    return ReconfigGraph(nodes, tuple(sorted(edges)), relation)


def connectivity(reconfig: ReconfigGraph) -> Connectivity:
    """Component count and diameter; the diameter is infinite unless connected. No nodes counts as disconnected."""
    if not reconfig.nodes:
        return Connectivity(False, 0, math.inf)
    g = reconfig.to_networkx()
    count = nx.number_connected_components(g)
    if count > 1:
        return Connectivity(False, count, math.inf)
    return Connectivity(True, 1, nx.diameter(g))


def check_theorem1(graph: Graph, k: int, caps: Optional[OracleCaps] = None) -> bool:
    """Whether the Kempe k-coloring graph of ``graph`` is connected."""
    return connectivity(build_reconfig_graph(graph, enumerate_colorings(graph, k, caps=caps), KEMPE)).connected


def compare_search_spaces(
    graph: Graph,
    p: int,
    lists: Sequence[Iterable[int]],
    caps: Optional[OracleCaps] = None,
) -> SearchSpaceComparison:
    """Kempe space of the list colorings of ``graph`` next to the Kempe p-coloring space of its reduced graph."""
    lists = [frozenset(allowed) for allowed in lists]
    reduced = build_reduced(graph, p, lists)
    list_colorings = enumerate_colorings(graph, p, lists, caps)
    reduced_colorings = enumerate_colorings(reduced.graph, p, caps=caps)
    list_space = connectivity(build_reconfig_graph(graph, list_colorings, KEMPE))
    reduced_space = connectivity(build_reconfig_graph(reduced.graph, reduced_colorings, KEMPE))

    n = graph.vertex_count
    bound = None
    # The factor (n-1)//2 vanishes below three vertices, so no bound is reported there.
    if n >= 3 and reduced_space.connected:
        bound = ((n - 1) // 2) * reduced_space.diameter
    return SearchSpaceComparison(list_space, reduced_space, len(list_colorings), len(reduced_colorings), bound)


def max_min_subgraph_degree(graph: Graph, fixed: AbstractSet[int] = frozenset(), caps: Optional[OracleCaps] = None) -> int:
    """Max over induced subgraphs H with G[F] <= H of the minimum degree in H over V(H) minus F.

    With ``fixed`` empty this is the degeneracy.
    """
    caps = _caps(caps)
    free = [v for v in graph.vertices if v not in fixed]
    if graph.vertex_count > caps.max_subdeg_vertices:
        raise CapExceededError(
            f"refusing subgraph search on {graph.vertex_count} vertices (cap {caps.max_subdeg_vertices})",
            estimate=2 ** len(free),
        )
    best = 0
    for size in range(1, len(free) + 1):
        for chosen in combinations(free, size):
            kept = set(fixed) | set(chosen)
            low = min(sum(1 for w in graph.neighbors(v) if w in kept) for v in chosen)
            best = max(best, low)
    return best


def exact_subdeg(graph: Graph, fixed: AbstractSet[int], caps: Optional[OracleCaps] = None) -> int:
    """Exact subdegeneracy: min over admissible orderings of the max predecessor count outside ``fixed``.

    Dynamic program over the set of already placed vertices, since admissibility
    and predecessor counts of the next vertex depend only on that set.
    """
    caps = _caps(caps)
    n = graph.vertex_count
    if n > caps.max_subdeg_vertices:
        raise CapExceededError(
            f"refusing exact subdegeneracy on {n} vertices (cap {caps.max_subdeg_vertices})",
            estimate=math.factorial(n),
        )
    fixed = frozenset(fixed)
    neighbors = [sum(1 << w for w in graph.neighbors(v)) for v in range(n)]
    fixed_mask = sum(1 << v for v in fixed)
    free_neighbors = [mask & ~fixed_mask for mask in neighbors]
    fixed_neighbors = [mask & fixed_mask for mask in neighbors]

    full = (1 << n) - 1
    best = [math.inf] * (1 << n)
    best[0] = 0
    for placed in range(1 << n):
        if best[placed] == math.inf:
            continue
        for v in range(n):
            bit = 1 << v
            if placed & bit:
                continue
            if v in fixed:
                cost = 0
            else:
                if free_neighbors[v] & placed and fixed_neighbors[v] & ~placed:
                    continue
                cost = bin(neighbors[v] & placed).count("1")
            value = max(best[placed], cost)
            if value < best[placed | bit]:
                best[placed | bit] = value
    return int(best[full])


def _validate_blocks(reduced: ReducedGraph, blocks: Mapping[str, Sequence[int]], fixed: AbstractSet[int]) -> None:
    graph = reduced.graph
    seen: List[int] = [v for members in blocks.values() for v in members]
    outside = {v for v in graph.vertices if v not in fixed}
    if len(seen) != len(set(seen)) or set(seen) != outside:
        raise ContractError("blocks must partition the vertices outside the fixed set")
    for name, members in blocks.items():
        members = set(members)
        for u, v in combinations(sorted(members), 2):
            if not graph.has_edge(u, v):
                raise ContractError(f"block {name} is not a clique: {u} and {v} are not adjacent")
        exterior = {v: graph.neighbor_set(v) - members for v in members}
        if len(set(exterior.values())) > 1:
            raise ContractError(f"vertices of block {name} have different neighborhoods outside the block")


def block_order_enumerate(
    reduced: ReducedGraph,
    blocks: Mapping[str, Sequence[int]],
    fixed: AbstractSet[int],
    last: Optional[str] = None,
) -> pd.DataFrame:
    """Per-block maximum predecessor count for every order of the blocks placed after ``fixed``.

    One row per block order (``last`` pins one block to the end). The minimum
    of the ``max`` column is the subdegeneracy over F-first orderings.
    """
    _validate_blocks(reduced, blocks, fixed)
    names = [name for name in blocks if name != last]
    if last is not None and last not in blocks:
        raise ContractError(f"unknown block {last!r}")
    rows = []
    for order in permutations(names):
        order = order + ((last,) if last is not None else ())
        sequence = tuple(sorted(fixed)) + tuple(v for name in order for v in blocks[name])
        ordering = VertexOrdering(sequence)
        row = {"order": ", ".join(order)}
        for name in blocks:
            row[f"p({name})"] = max_pred(reduced.graph, ordering, blocks[name])
        row["max"] = max(row[f"p({name})"] for name in blocks)
        rows.append(row)
    return pd.DataFrame(rows, columns=["order"] + [f"p({name})" for name in blocks] + ["max"])
