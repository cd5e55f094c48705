"""
Explicit Kempe-exchange sequences between two proper colorings.

``kempe_reconfigure`` grows the sequence vertex by vertex along an ordering
v_1..v_n. At stage i the accumulated exchanges are replayed from the source
coloring on H_i = G[v_1..v_i]. Whenever v_i would glue the component an
exchange acts on in H_{i-1} to another component of the same two colors,
v_i is first moved to a color unused in its H_i-neighborhood, so every
exchange acts on H_{i-1} exactly as in the previous stage. A final
elementary recoloring then gives v_i its target color.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple, Union

from kempe_recon.exceptions import ContractError, ReplayError
from kempe_recon.graphs import (
    Coloring,
    Graph,
    KempeExchange,
    VertexOrdering,
    apply_exchange,
    is_proper,
    kempe_component,
    kempe_component_within,
    swap_component,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StuckVertex:
    vertex: int
    stage: int
    reason: str


@dataclass(frozen=True)
class ExchangePlan:
    exchanges: Tuple[KempeExchange, ...]
    source: Coloring
    target: Coloring
    ordering: Optional[VertexOrdering]
    palette_size: int
    failure: Optional[StuckVertex] = field(default=None)

    @property
    def succeeded(self) -> bool:
        return self.failure is None

    def __len__(self) -> int:
        return len(self.exchanges)


@dataclass(frozen=True)
class PlanVerdict:
    reaches_target: bool
    all_proper: bool
    fixed_untouched: Optional[bool]
    colors_used: int
    failed_step: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.reaches_target and self.all_proper and self.fixed_untouched is not False


PlanLike = Union[ExchangePlan, Sequence[KempeExchange]]


def _exchanges_of(plan: PlanLike) -> Tuple[KempeExchange, ...]:
    return plan.exchanges if isinstance(plan, ExchangePlan) else tuple(plan)


def _check_coloring(graph: Graph, coloring: Coloring, k: int, label: str) -> None:
    if len(coloring) != graph.vertex_count:
        raise ContractError(f"{label} colors {len(coloring)} vertices, graph has {graph.vertex_count}")
    if any(c > k for c in coloring):
        raise ContractError(f"{label} uses a color above the palette size {k}")
    if not is_proper(graph, coloring):
        raise ContractError(f"{label} is not proper")


def _free_color(graph: Graph, colors: Sequence[int], v: int, inside: Sequence[bool], k: int) -> Optional[int]:
    taken = {colors[w] for w in graph.neighbors(v) if inside[w]}
    taken.add(colors[v])
    return next((c for c in range(1, k + 1) if c not in taken), None)


def kempe_reconfigure(
    graph: Graph,
    ordering: VertexOrdering,
    source: Coloring,
    target: Coloring,
    k: int,
) -> ExchangePlan:
    """Build an exchange sequence turning ``source`` into ``target``.

    Succeeds whenever ``k`` exceeds every predecessor count along ``ordering``.
    With fewer colors the result may carry a ``StuckVertex`` failure and the
    exchanges accumulated before the stuck stage.
    """
    if not ordering.covers(graph):
        raise ContractError("ordering must cover every vertex of the graph")
    _check_coloring(graph, source, k, "source coloring")
    _check_coloring(graph, target, k, "target coloring")

    inside = [False] * graph.vertex_count
    exchanges: List[KempeExchange] = []
    for stage, v in enumerate(ordering, start=1):
        inside[v] = True
        colors = list(source.colors)
        rebuilt: List[KempeExchange] = []
        for exchange in exchanges:
            a, b, u = exchange.color_a, exchange.color_b, exchange.anchor
            current = colors[v]
            if current in (a, b):
                other = b if current == a else a
                inside[v] = False
                before = kempe_component_within(graph, colors, a, b, u, inside)
                inside[v] = True
                touches_before = touches_rest = False
                for w in graph.neighbors(v):
                    if inside[w] and colors[w] == other:
                        if w in before:
                            touches_before = True
                        else:
                            touches_rest = True
                if touches_before and touches_rest:
                    free = _free_color(graph, colors, v, inside, k)
                    if free is None:
                        logger.info(f"No free color for vertex {v} at stage {stage} with palette {k}")
                        return ExchangePlan(
                            exchanges=tuple(exchanges),
                            source=source,
                            target=target,
                            ordering=ordering,
                            palette_size=k,
                            failure=StuckVertex(v, stage, f"every color in 1..{k} is blocked around vertex {v}"),
                        )
                    rebuilt.append(KempeExchange(current, free, v))
                    colors[v] = free
                    logger.debug(f"stage {stage}: recolor {v} {current}->{free} before {exchange}")
            swap_component(colors, kempe_component_within(graph, colors, a, b, u, inside), a, b)
            rebuilt.append(exchange)
        if colors[v] != target[v]:
            rebuilt.append(KempeExchange(target[v], colors[v], v))
        exchanges = rebuilt

    logger.debug(f"Reconfiguration plan with {len(exchanges)} exchanges over {graph.vertex_count} vertices")
    return ExchangePlan(tuple(exchanges), source, target, ordering, k)


def _iter_replay(graph: Graph, coloring: Coloring, exchanges: Sequence[KempeExchange]) -> Iterator[Coloring]:
    current = coloring
    for step, exchange in enumerate(exchanges, start=1):
        if not 0 <= exchange.anchor < graph.vertex_count:
            raise ReplayError(f"anchor {exchange.anchor} is not a vertex", step)
        if current[exchange.anchor] not in (exchange.color_a, exchange.color_b):
            raise ReplayError(
                f"anchor {exchange.anchor} has color {current[exchange.anchor]}, "
                f"expected {exchange.color_a} or {exchange.color_b}",
                step,
            )
        current = apply_exchange(graph, current, exchange)
        yield current


def replay(graph: Graph, coloring: Coloring, plan: PlanLike) -> Tuple[Coloring, List[Coloring]]:
    """Apply the exchanges in order; the trace starts with ``coloring`` itself."""
    if not is_proper(graph, coloring):
        raise ContractError("replay needs a proper starting coloring")
    trace = [coloring]
    trace.extend(_iter_replay(graph, coloring, _exchanges_of(plan)))
    return trace[-1], trace


def verify_plan(
    graph: Graph,
    source: Coloring,
    target: Coloring,
    plan: PlanLike,
    fixed: Optional[Set[int]] = None,
) -> PlanVerdict:
    trace = [source]
    failed_step = None
    try:
        for coloring in _iter_replay(graph, source, _exchanges_of(plan)):
            trace.append(coloring)
    except ReplayError as e:
        failed_step = e.step
        logger.info(f"Plan replay stopped: {e}")

    fixed_untouched = None
    if fixed is not None:
        fixed_untouched = all(c[v] == source[v] for c in trace for v in fixed)
    return PlanVerdict(
        reaches_target=failed_step is None and trace[-1] == target,
        all_proper=all(is_proper(graph, c) for c in trace),
        fixed_untouched=fixed_untouched,
        colors_used=len({color for c in trace for color in c}),
        failed_step=failed_step,
    )


def compact_plan(graph: Graph, plan: ExchangePlan) -> ExchangePlan:
    """Loop-erase the plan: whenever a coloring recurs, drop the exchanges in between."""
    colorings = [plan.source]
    index: Dict[Coloring, int] = {plan.source: 0}
    kept: List[KempeExchange] = []
    current = plan.source
    for exchange in plan.exchanges:
        current = apply_exchange(graph, current, exchange)
        earlier = index.get(current)
        if earlier is None:
            kept.append(exchange)
            colorings.append(current)
            index[current] = len(colorings) - 1
            continue
        for dropped in colorings[earlier + 1:]:
            del index[dropped]
        del colorings[earlier + 1:]
        del kept[earlier:]
    logger.debug(f"Compacted plan from {len(plan.exchanges)} to {len(kept)} exchanges")
    return ExchangePlan(tuple(kept), plan.source, plan.target, plan.ordering, plan.palette_size, plan.failure)


def kempe_adjacent(graph: Graph, first: Coloring, second: Coloring) -> Optional[KempeExchange]:
    """The single exchange turning ``first`` into ``second``, or None when no such exchange exists."""
    differing = [v for v in graph.vertices if first[v] != second[v]]
    if not differing:
        return None
    v = differing[0]
    exchange = KempeExchange(first[v], second[v], v)
    swapped = list(first.colors)
    swap_component(swapped, kempe_component(graph, first, exchange.color_a, exchange.color_b, v),
                   exchange.color_a, exchange.color_b)
    return exchange if tuple(swapped) == second.colors else None


def write_plan(plan: ExchangePlan) -> str:
    lines = [f"k {plan.palette_size}"]
    lines.extend(f"x {e.color_a} {e.color_b} {e.anchor + 1}" for e in plan.exchanges)
    return "\n".join(lines) + "\n"


def read_plan(text: str) -> Tuple[int, List[KempeExchange]]:
    """Parse plan text into its palette size and exchange list."""
    palette = None
    exchanges: List[KempeExchange] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        entries = raw.split()
        if not entries or entries[0].startswith("#"):
            continue
        try:
            if entries[0] == "k" and len(entries) == 2:
                palette = int(entries[1])
            elif entries[0] == "x" and len(entries) == 4:
                a, b, anchor = (int(x) for x in entries[1:])
                exchanges.append(KempeExchange(a, b, anchor - 1))
            else:
                raise ContractError(f"line {line_no}: expected 'k <palette>' or 'x <a> <b> <anchor>'")
        except ValueError as e:
            if isinstance(e, ContractError):
                raise
            raise ContractError(f"line {line_no}: non-integer field in {raw.strip()!r}") from e
    if palette is None:
        raise ContractError("plan text has no 'k <palette>' line")
    return palette, exchanges
