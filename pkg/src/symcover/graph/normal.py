"""Normality of a vertex-acting group inside the full automorphism group."""
from __future__ import annotations

from ..errors import PreconditionError
from .canon import DEFAULT_CANON_CAP, automorphism_group


def is_normal_subgroup_of_aut(graph, group, cap=DEFAULT_CANON_CAP):
    """True iff ``group`` (acting on the vertices) is normal in Aut(graph).

    Raises PreconditionError if some generator of ``group`` is not an
    automorphism.
    """
    if group.degree != graph.n:
        raise PreconditionError(
            f"group of degree {group.degree} on a graph with {graph.n} vertices")
    for x in group.nontrivial_generators:
        if not graph.is_automorphism(x.images):
            raise PreconditionError(f"{x} is not an automorphism of the graph")
    aut = automorphism_group(graph, cap)
    for a in aut.nontrivial_generators:
        for x in group.nontrivial_generators:
            if not group.contains(x ** a):
                return False
    return True
