"""Graphs: structure queries, canonical forms, automorphisms, file formats."""
from .canon import (
    DEFAULT_CANON_CAP,
    CanonicalForm,
    automorphism_group,
    canonical_form,
    is_isomorphic,
)
from .core import (
    Graph,
    IrregularGraphError,
    complete_check,
    components,
    diameter,
    distances_from,
    is_bipartite,
    is_connected,
    valency,
)
from .formats import GraphFormatError, export, import_graph
from .normal import is_normal_subgroup_of_aut

__all__ = [
    "Graph",
    "IrregularGraphError",
    "GraphFormatError",
    "CanonicalForm",
    "DEFAULT_CANON_CAP",
    "valency",
    "is_connected",
    "complete_check",
    "components",
    "diameter",
    "distances_from",
    "is_bipartite",
    "canonical_form",
    "automorphism_group",
    "is_isomorphic",
    "is_normal_subgroup_of_aut",
    "export",
    "import_graph",
]
