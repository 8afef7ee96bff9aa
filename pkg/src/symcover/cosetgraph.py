"""Coset graphs Cos(G, L, LgL) and the coset action of G.

Vertices are the right cosets Lx; Lx ~ Ly iff y x^-1 lies in LgL. Each coset
is identified by its lexicographically least element, computed greedily from
a stabilizer chain of L with base 0, 1, ..., n-1. This gives an O(n * |orbit|)
canonical key per lookup, without enumerating L.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CapExceeded, PreconditionError
from .graph import Graph
from .group import PermGroup
from .perm import Permutation, identity_tuple, mul

__all__ = [
    "CosetGraphSpec",
    "CosetTable",
    "DEFAULT_VERTEX_CAP",
    "enumerate_cosets",
    "build_coset_graph",
    "is_connected_cosetgraph",
    "induced_action_on_cosets",
    "coset_key",
]

DEFAULT_VERTEX_CAP = 100_000


def coset_key(chain, x):
    """Least element (as an image tuple) of the right coset L*x.

    ``chain`` must be a stabilizer chain of L whose base is 0, 1, ..., n-1.
    """
    h = x
    for lev in chain.levels:
        trans = lev.transversal
        if len(trans) == 1:
            continue
        best = min(trans, key=h.__getitem__)
        if best != lev.point:
            h = mul(trans[best], h)
    return h


def _full_base_chain(group):
    return group.chain(tuple(range(group.degree)))


@dataclass(eq=False)
class CosetGraphSpec:
    """The data (G, L, g) of a coset graph, validated on construction.

    ``omega`` optionally names the point of the natural action whose
    stabilizer is the intended overgroup of L; by default it is the least
    point fixed by L.
    """

    G: PermGroup
    L: PermGroup
    g: Permutation
    vertex_cap: int = DEFAULT_VERTEX_CAP
    omega: int | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        problems = []
        if self.L.degree != self.G.degree or self.g.degree != self.G.degree:
            raise PreconditionError("G, L and g must have the same degree")
        for x in self.L.nontrivial_generators:
            if not self.G.contains(x):
                problems.append(f"generator {x} of L is not in G")
        if not self.G.contains(self.g):
            problems.append(f"g = {self.g} is not in G")
        if self.L.contains(self.g):
            problems.append(f"g = {self.g} lies in L")
        if not self.L.contains(self.g * self.g):
            problems.append(f"g^2 = {self.g * self.g} is not in L (graph would be directed)")
        if self.vertex_cap < 1:
            problems.append("vertex_cap must be positive")
        if self.omega is not None and not 0 <= self.omega < self.G.degree:
            problems.append(f"omega = {self.omega} out of range")
        if problems:
            raise PreconditionError("; ".join(problems))

    @property
    def degree(self):
        return self.G.degree

    def index(self):
        return self.G.order() // self.L.order()

    def base_point(self):
        """The point omega with L <= G_omega."""
        if self.omega is not None:
            if any(x[self.omega] != self.omega for x in self.L.nontrivial_generators):
                raise PreconditionError(f"L does not fix omega = {self.omega + 1}")
            return self.omega
        for p in range(self.degree):
            if all(x[p] == p for x in self.L.nontrivial_generators):
                return p
        raise PreconditionError("L fixes no point")

    def generated_subgroup(self):
        """The subgroup <L, g>."""
        if "Lg" not in self._cache:
            self._cache["Lg"] = PermGroup(self.L.nontrivial_generators + [self.g], self.degree)
        return self._cache["Lg"]

    def table(self):
        if "table" not in self._cache:
            self._cache["table"] = enumerate_cosets(self.G, self.L, self.vertex_cap)
        return self._cache["table"]

    def graph(self):
        if "graph" not in self._cache:
            self._cache["graph"] = build_coset_graph(self)
        return self._cache["graph"]


class CosetTable:
    """Right cosets of L in G with the action of G's generators.

    ``reps[i]`` is the least element of coset i (``reps[0]`` is the
    identity); ``action[k][i]`` is the index of coset i times generator k;
    ``parent[i] = (j, k)`` records that coset i was first reached as coset j
    times generator k.
    """

    def __init__(self, G, L, reps, index, action, parent, chain):
        self.G = G
        self.L = L
        self.reps = reps
        self._index = index
        self.action = action
        self.parent = parent
        self._chain = chain

    def __len__(self):
        return len(self.reps)

    def lookup(self, x):
        """Index of the coset L*x (x a Permutation or image tuple)."""
        t = x.images if isinstance(x, Permutation) else x
        return self._index[coset_key(self._chain, t)]

    def same_coset(self, x, y):
        return self.lookup(x) == self.lookup(y)

    def rep(self, i):
        return Permutation._raw(self.reps[i])

    def act(self, i, x):
        """Index of coset i times the element x of G."""
        t = x.images if isinstance(x, Permutation) else x
        return self.lookup(mul(self.reps[i], t))


def enumerate_cosets(G, L, cap=DEFAULT_VERTEX_CAP):
    """Breadth-first enumeration of [G : L] under G's generators."""
    n = G.degree
    index = G.order() // L.order()
    if index > cap:
        raise CapExceeded("coset count", index, cap)
    chain = _full_base_chain(L)
    gens = [s.images for s in G.nontrivial_generators]
    e = identity_tuple(n)
    reps = [e]
    lookup = {e: 0}
    parent = [None]
    action = [[] for _ in gens]
    i = 0
    while i < len(reps):
        x = reps[i]
        for k, s in enumerate(gens):
            key = coset_key(chain, mul(x, s))
            j = lookup.get(key)
            if j is None:
                j = len(reps)
                lookup[key] = j
                reps.append(key)
                parent.append((i, k))
            action[k].append(j)
        i += 1
    if len(reps) != index:
        raise RuntimeError(f"coset enumeration found {len(reps)} cosets, expected {index}")
    return CosetTable(G, L, reps, lookup, [tuple(a) for a in action], parent, chain)


def base_neighbourhood(spec):
    """Coset indices of {L g l : l in L}, the neighbours of the base vertex."""
    table = spec.table()
    lgens = [x.images for x in spec.L.nontrivial_generators]
    start = table.lookup(spec.g)
    seen = {start}
    stack = [start]
    while stack:
        i = stack.pop()
        r = table.reps[i]
        for s in lgens:
            j = table.lookup(mul(r, s))
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return sorted(seen)


def build_coset_graph(spec):
    """Materialize Cos(G, L, LgL) on the coset indices.

    The neighbourhood of the base coset is computed once; every other
    neighbourhood is its translate along the BFS tree of the coset table.
    """
    table = spec.table()
    nb0 = base_neighbourhood(spec)
    if 0 in nb0:
        raise PreconditionError("g lies in L: the coset graph would have loops")
    nbrs = [None] * len(table)
    nbrs[0] = nb0
    for i in range(1, len(table)):
        j, k = table.parent[i]
        act = table.action[k]
        nbrs[i] = [act[v] for v in nbrs[j]]
    edges = [(i, v) for i in range(len(table)) for v in nbrs[i] if i < v]
    graph = Graph(len(table), edges)
    if 2 * graph.edge_count() != sum(len(x) for x in nbrs):
        raise RuntimeError("coset graph adjacency is not symmetric")
    return graph


def is_connected_cosetgraph(spec, graph=None):
    """Connectivity via |<L, g>| = |G|; cross-checked by BFS if a graph is given."""
    from .graph import is_connected

    by_order = spec.generated_subgroup().order() == spec.G.order()
    if graph is not None and is_connected(graph) != by_order:
        raise RuntimeError("group-theoretic and BFS connectivity disagree")
    return by_order


def induced_action_on_cosets(spec):
    """G acting on [G : L]; generators follow G's generator order."""
    table = spec.table()
    gens = [Permutation._raw(a) for a in table.action]
    return PermGroup(gens, len(table))
