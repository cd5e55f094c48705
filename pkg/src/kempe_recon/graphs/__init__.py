from .core import (
    Coloring,
    Graph,
    KempeExchange,
    VertexOrdering,
    apply_exchange,
    build_graph,
    degeneracy,
    greedy_coloring,
    is_proper,
    eliminate_min_degree,
    kempe_component,
    kempe_component_within,
    max_pred,
    pred_count,
    swap_component,
)
from .dimacs import read_dimacs, write_dimacs

__all__ = [
    "Coloring",
    "Graph",
    "KempeExchange",
    "VertexOrdering",
    "apply_exchange",
    "build_graph",
    "degeneracy",
    "greedy_coloring",
    "is_proper",
    "eliminate_min_degree",
    "kempe_component",
    "kempe_component_within",
    "max_pred",
    "pred_count",
    "swap_component",
    "read_dimacs",
    "write_dimacs",
]
