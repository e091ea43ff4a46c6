"""Grounding kernels, kernel cores and definitional hierarchies of dictionary graphs."""

from .dictionary import Dictionary, Entry, associated_graph
from .errors import LexKernelError
from .graph import (
    DirectedGraph,
    HierarchyLevels,
    acyclic_levels,
    build_graph,
    density,
    quotient,
    scc_decompose,
    sinks,
    sources,
)
from .grounding import (
    greedy_grounding_set,
    greedy_result,
    is_grounding_set,
    minimum_grounding_sets,
)
from .ingest import load_dictionary, normalize, parse_raw
from .kernel import (
    analyze,
    feature_report,
    gk_hierarchy,
    grounding_kernel,
    kernel_core,
    scc_hierarchy,
    scc_hierarchy_within_gk,
)
from .norms import join_levels, load_norms, merge_norms
from .porter import porter_stem
from .stats import anova, level_means, regress

__version__ = "0.1.0"

__all__ = [
    "Dictionary", "Entry", "associated_graph", "LexKernelError",
    "DirectedGraph", "HierarchyLevels", "acyclic_levels", "build_graph", "density",
    "quotient", "scc_decompose", "sinks", "sources",
    "greedy_grounding_set", "greedy_result", "is_grounding_set", "minimum_grounding_sets",
    "load_dictionary", "normalize", "parse_raw",
    "analyze", "feature_report", "gk_hierarchy", "grounding_kernel", "kernel_core",
    "scc_hierarchy", "scc_hierarchy_within_gk",
    "join_levels", "load_norms", "merge_norms", "porter_stem",
    "anova", "level_means", "regress",
]
