"""Arc-transitive covers and pseudocovers of complete graphs via coset graphs."""
from .errors import CapExceeded, PreconditionError, SymcoverError
from .perm import Permutation
from .group import PermGroup
from .cosetgraph import CosetGraphSpec
from .graph import Graph

__version__ = "0.1.0"

__all__ = [
    "Permutation",
    "PermGroup",
    "CosetGraphSpec",
    "Graph",
    "SymcoverError",
    "PreconditionError",
    "CapExceeded",
]
