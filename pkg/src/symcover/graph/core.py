"""Simple undirected graphs on vertices 0..n-1."""
from __future__ import annotations

from collections import Counter, deque

from ..errors import PreconditionError

__all__ = ["Graph", "IrregularGraphError", "valency", "is_connected", "complete_check"]


class IrregularGraphError(PreconditionError):
    """Raised by ``valency`` on a non-regular graph."""

    def __init__(self, degrees):
        self.degrees = Counter(degrees)
        super().__init__(f"graph is not regular; degree multiset {dict(sorted(self.degrees.items()))}")


class Graph:
    """Immutable simple graph stored as sorted neighbour tuples."""

    __slots__ = ("n", "adj", "_edge_set", "_cache")

    def __init__(self, n, edges=()):
        if n < 0:
            raise PreconditionError("vertex count must be non-negative")
        nbrs = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise PreconditionError(f"loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj = tuple(tuple(sorted(s)) for s in nbrs)
        self._edge_set = None
        self._cache = {}

    @classmethod
    def from_adjacency(cls, adjacency):
        """Build from neighbour lists; the relation must be symmetric."""
        n = len(adjacency)
        edges = []
        for u, nb in enumerate(adjacency):
            for v in nb:
                if u not in adjacency[v]:
                    raise PreconditionError(f"adjacency not symmetric at ({u}, {v})")
                if u < v:
                    edges.append((u, v))
        return cls(n, edges)

    @classmethod
    def complete(cls, n):
        return cls(n, [(i, j) for i in range(n) for j in range(i + 1, n)])

    @property
    def vertex_count(self):
        return self.n

    def edges(self):
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def edge_count(self):
        return sum(len(a) for a in self.adj) // 2

    def neighbors(self, v):
        return self.adj[v]

    def degree(self, v):
        return len(self.adj[v])

    def degrees(self):
        return [len(a) for a in self.adj]

    def has_edge(self, u, v):
        if self._edge_set is None:
            self._edge_set = frozenset(self.edges())
        return (min(u, v), max(u, v)) in self._edge_set

    def relabel(self, new_label):
        """Graph with vertex ``v`` renamed to ``new_label[v]``."""
        lab = list(new_label)
        if sorted(lab) != list(range(self.n)):
            raise PreconditionError("relabeling is not a permutation of the vertices")
        return Graph(self.n, [(lab[u], lab[v]) for u, v in self.edges()])

    def is_automorphism(self, images):
        return all(self.has_edge(images[u], images[v]) for u, v in self.edges())

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_count()})"


def valency(graph):
    degs = graph.degrees()
    if not degs:
        return 0
    if len(set(degs)) != 1:
        raise IrregularGraphError(degs)
    return degs[0]


def distances_from(graph, source):
    dist = [-1] * graph.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in graph.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def is_connected(graph):
    if graph.n == 0:
        return True
    return min(distances_from(graph, 0)) >= 0


def components(graph):
    comp = [-1] * graph.n
    out = []
    for s in range(graph.n):
        if comp[s] >= 0:
            continue
        dist = distances_from(graph, s)
        members = [v for v in range(graph.n) if dist[v] >= 0]
        for v in members:
            comp[v] = len(out)
        out.append(members)
    return out


def diameter(graph):
    best = 0
    for s in range(graph.n):
        d = distances_from(graph, s)
        if min(d) < 0:
            raise PreconditionError("diameter of a disconnected graph")
        best = max(best, max(d))
    return best


def is_bipartite(graph):
    colour = [-1] * graph.n
    for s in range(graph.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in graph.adj[u]:
                if colour[w] < 0:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return False
    return True


def complete_check(graph):
    """True iff every pair of distinct vertices is adjacent."""
    return all(len(a) == graph.n - 1 for a in graph.adj)
