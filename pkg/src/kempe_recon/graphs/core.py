"""Undirected graphs, colorings, vertex orderings and Kempe-exchanges.

Vertex ids are dense 0-based integers. Colors are 1-based everywhere: a
k-coloring assigns each vertex a color in ``1..k``.
"""

import heapq
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from kempe_recon.exceptions import ContractError, GraphInputError

logger = logging.getLogger(__name__)

Vertex = int
Color = int
Edge = Tuple[Vertex, Vertex]


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph with sorted neighbor tuples."""

    vertex_count: int
    adjacency: Tuple[Tuple[Vertex, ...], ...]
    _neighbor_sets: Tuple[FrozenSet[Vertex], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.adjacency) != self.vertex_count:
            raise GraphInputError(
                f"adjacency has {len(self.adjacency)} rows for {self.vertex_count} vertices"
            )
        neighbor_sets = tuple(frozenset(row) for row in self.adjacency)
        for v, row in enumerate(neighbor_sets):
            if len(row) != len(self.adjacency[v]):
                raise GraphInputError(f"vertex {v} lists a neighbor more than once")
            if v in row:
                raise GraphInputError(f"self-loop at vertex {v}")
            for w in row:
                if not 0 <= w < self.vertex_count:
                    raise GraphInputError(f"neighbor {w} of vertex {v} out of range")
                if v not in neighbor_sets[w]:
                    raise GraphInputError(f"edge ({v},{w}) is not symmetric")
        object.__setattr__(self, "_neighbor_sets", neighbor_sets)

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    @property
    def edge_count(self) -> int:
        return sum(len(row) for row in self.adjacency) // 2

    def neighbors(self, v: Vertex) -> Tuple[Vertex, ...]:
        return self.adjacency[v]

    def neighbor_set(self, v: Vertex) -> FrozenSet[Vertex]:
        return self._neighbor_sets[v]

    def degree(self, v: Vertex) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return v in self._neighbor_sets[u]

    def edges(self) -> Iterator[Edge]:
        """Yield every edge once as ``(u, v)`` with ``u < v``, in ascending order."""
        for u, row in enumerate(self.adjacency):
            for v in row:
                if u < v:
                    yield u, v


@dataclass(frozen=True)
class Coloring:
    """Total map vertex -> color in ``1..palette_size``.

    Equality and hashing look at the colors only, so the same assignment
    compares equal regardless of the palette it was built for.
    """

    colors: Tuple[Color, ...]
    palette_size: int = field(compare=False)

    def __post_init__(self):
        if self.palette_size < 1:
            raise GraphInputError(f"palette size must be positive, got {self.palette_size}")
        for v, color in enumerate(self.colors):
            if not 1 <= color <= self.palette_size:
                raise GraphInputError(
                    f"vertex {v} has color {color} outside 1..{self.palette_size}"
                )

    @classmethod
    def of(cls, colors: Iterable[Color], palette_size: Optional[int] = None) -> "Coloring":
        colors = tuple(int(c) for c in colors)
        if palette_size is None:
            palette_size = max(colors, default=1)
        return cls(colors, palette_size)

    def __getitem__(self, v: Vertex) -> Color:
        return self.colors[v]

    def __len__(self) -> int:
        return len(self.colors)

    def __iter__(self) -> Iterator[Color]:
        return iter(self.colors)

    def with_colors(self, updates: Mapping[Vertex, Color]) -> "Coloring":
        colors = list(self.colors)
        for v, color in updates.items():
            colors[v] = color
        return Coloring(tuple(colors), self.palette_size)

    def to_text(self) -> str:
        return " ".join(str(c) for c in self.colors) + "\n"

    @classmethod
    def from_text(cls, text: str, palette_size: Optional[int] = None) -> "Coloring":
        try:
            colors = [int(token) for token in text.split()]
        except ValueError as e:
            raise GraphInputError(f"coloring contains a non-integer entry: {e}") from e
        return cls.of(colors, palette_size)


@dataclass(frozen=True)
class VertexOrdering:
    """Linear order over a subset of vertices, with its inverse index."""

    sequence: Tuple[Vertex, ...]
    positions: Dict[Vertex, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        positions = {v: i for i, v in enumerate(self.sequence)}
        if len(positions) != len(self.sequence):
            raise GraphInputError("vertex ordering contains duplicates")
        object.__setattr__(self, "positions", positions)

    @classmethod
    def of(cls, vertices: Iterable[Vertex]) -> "VertexOrdering":
        return cls(tuple(vertices))

    def __contains__(self, v: Vertex) -> bool:
        return v in self.positions

    def __iter__(self) -> Iterator[Vertex]:
        return iter(self.sequence)

    def __len__(self) -> int:
        return len(self.sequence)

    def position(self, v: Vertex) -> int:
        try:
            return self.positions[v]
        except KeyError:
            raise ContractError(f"vertex {v} is not part of the ordering") from None

    def covers(self, graph: Graph) -> bool:
        return len(self.sequence) == graph.vertex_count and all(v in self.positions for v in graph.vertices)

    def to_text(self) -> str:
        return " ".join(str(v + 1) for v in self.sequence) + "\n"


@dataclass(frozen=True)
class KempeExchange:
    """Swap colors ``color_a`` and ``color_b`` on the Kempe-component containing ``anchor``."""

    color_a: Color
    color_b: Color
    anchor: Vertex

    def __post_init__(self):
        if self.color_a == self.color_b:
            raise ContractError(f"Kempe-exchange needs two distinct colors, got {self.color_a} twice")


def build_graph(vertex_count: int, edges: Iterable[Edge]) -> Graph:
    """Build a graph from an edge list, dropping duplicate edges."""
    if vertex_count < 0:
        raise GraphInputError(f"vertex count must be non-negative, got {vertex_count}")
    rows: List[set] = [set() for _ in range(vertex_count)]
    for u, v in edges:
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise GraphInputError(f"edge ({u},{v}) has an endpoint outside 0..{vertex_count - 1}")
        if u == v:
            raise GraphInputError(f"self-loop at vertex {u}")
        rows[u].add(v)
        rows[v].add(u)
    return Graph(vertex_count, tuple(tuple(sorted(row)) for row in rows))


class _BucketQueue:
    """Decremental min-degree queue; ties resolve to the smallest vertex id.

    Each bucket is a heap of vertex ids. Stale entries left behind by
    ``decrement`` are discarded lazily on ``pop_min``.
    """

    def __init__(self, degrees: Mapping[Vertex, int]):
        self._degree: Dict[Vertex, int] = dict(degrees)
        top = max(self._degree.values(), default=0)
        self._buckets: List[List[Vertex]] = [[] for _ in range(top + 1)]
        for v, d in self._degree.items():
            self._buckets[d].append(v)
        for bucket in self._buckets:
            heapq.heapify(bucket)
        self._low = 0

    def __len__(self) -> int:
        return len(self._degree)

    def __contains__(self, v: Vertex) -> bool:
        return v in self._degree

    def decrement(self, v: Vertex) -> None:
        d = self._degree[v] - 1
        self._degree[v] = d
        heapq.heappush(self._buckets[d], v)
        if d < self._low:
            self._low = d

    def pop_min(self) -> Tuple[Vertex, int]:
        while self._low < len(self._buckets):
            bucket = self._buckets[self._low]
            while bucket:
                v = heapq.heappop(bucket)
                if self._degree.get(v) == self._low:
                    del self._degree[v]
                    return v, self._low
            self._low += 1
        raise IndexError("pop from an empty bucket queue")


def eliminate_min_degree(graph: Graph, candidates: Iterable[Vertex]) -> Tuple[int, List[Vertex]]:
    """Repeatedly remove a minimum-degree candidate, degrees counted in the remaining graph.

    Non-candidates are never removed but still contribute to degrees.

    Returns:
        The largest degree seen at removal time and the candidates in reverse
        removal order, so each vertex is preceded by exactly its neighbors that
        were removed after it.
    """
    queue = _BucketQueue({v: graph.degree(v) for v in candidates})
    removed: List[Vertex] = []
    worst = 0
    while queue:
        v, d = queue.pop_min()
        worst = max(worst, d)
        removed.append(v)
        for w in graph.neighbors(v):
            if w in queue:
                queue.decrement(w)
    removed.reverse()
    return worst, removed


def degeneracy(graph: Graph) -> Tuple[int, VertexOrdering]:
    """Degeneracy of ``graph`` and a witness ordering.

    Every vertex of the witness has at most ``value`` neighbors before it,
    and some vertex has exactly ``value``. The empty graph has degeneracy 0.
    """
    value, order = eliminate_min_degree(graph, graph.vertices)
    return value, VertexOrdering(tuple(order))


def pred_count(graph: Graph, ordering: VertexOrdering, v: Vertex) -> int:
    """Number of neighbors of ``v`` that strictly precede it in ``ordering``."""
    position = ordering.position(v)
    positions = ordering.positions
    return sum(1 for w in graph.neighbors(v) if positions.get(w, position) < position)


def max_pred(graph: Graph, ordering: VertexOrdering, vertices: Optional[Iterable[Vertex]] = None) -> int:
    """Maximum of ``pred_count`` over ``vertices`` (default: the whole ordering); 0 when empty."""
    if vertices is None:
        vertices = ordering.sequence
    return max((pred_count(graph, ordering, v) for v in vertices), default=0)


def kempe_component_within(
    graph: Graph,
    colors: Sequence[Color],
    a: Color,
    b: Color,
    start: Vertex,
    allowed: Optional[Sequence[bool]] = None,
) -> FrozenSet[Vertex]:
    """Kempe-component of ``start`` over a raw color array, optionally confined to ``allowed`` vertices.

    ``start`` itself is not checked against ``allowed`` or the two color classes.
    """
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in graph.neighbors(v):
            if w in seen or colors[w] not in (a, b):
                continue
            if allowed is not None and not allowed[w]:
                continue
            seen.add(w)
            queue.append(w)
    return frozenset(seen)


def swap_component(colors: List[Color], component: Iterable[Vertex], a: Color, b: Color) -> None:
    """In-place swap of colors ``a`` and ``b`` on ``component``."""
    for v in component:
        colors[v] = b if colors[v] == a else a


def kempe_component(graph: Graph, coloring: Coloring, a: Color, b: Color, u: Vertex) -> FrozenSet[Vertex]:
    """Connected component of ``u`` in the subgraph induced by color classes ``a`` and ``b``."""
    if coloring[u] not in (a, b):
        raise ContractError(f"vertex {u} has color {coloring[u]}, expected {a} or {b}")
    return kempe_component_within(graph, coloring.colors, a, b, u)


def apply_exchange(graph: Graph, coloring: Coloring, exchange: KempeExchange) -> Coloring:
    """Swap the two colors of ``exchange`` on the Kempe-component of its anchor."""
    a, b = exchange.color_a, exchange.color_b
    component = kempe_component(graph, coloring, a, b, exchange.anchor)
    colors = list(coloring.colors)
    swap_component(colors, component, a, b)
    return Coloring(tuple(colors), max(coloring.palette_size, a, b))


def is_proper(graph: Graph, coloring: Coloring) -> bool:
    """True iff every edge joins two differently colored vertices."""
    if len(coloring) != graph.vertex_count:
        return False
    return all(coloring[u] != coloring[v] for u, v in graph.edges())


def greedy_coloring(graph: Graph, ordering: VertexOrdering, palette_size: Optional[int] = None) -> Coloring:
    """Color along ``ordering`` with the smallest color unused by already colored neighbors.

    Along a degeneracy witness this never needs more than ``degeneracy + 1`` colors.
    """
    if not ordering.covers(graph):
        raise ContractError("greedy coloring needs an ordering of every vertex")
    colors = [0] * graph.vertex_count
    for v in ordering:
        taken = {colors[w] for w in graph.neighbors(v)}
        color = 1
        while color in taken:
            color += 1
        colors[v] = color
    used = max(colors, default=1)
    if palette_size is not None and used > palette_size:
        raise ContractError(f"greedy coloring needs {used} colors, palette has {palette_size}")
    return Coloring(tuple(colors), palette_size or used)
