"""Canonical labelling and automorphism groups by individualization-refinement.

The search tree is the usual one: a node is an ordered partition of the
vertices made equitable by colour refinement; children individualize each
vertex of the target cell (the smallest non-singleton cell, lowest index).
Leaves are discrete partitions, i.e. vertex orderings.

A leaf's key is ``(trace sequence, certificate)`` where the certificate is the
relabelled adjacency structure. The canonical leaf is the one with least key.
Two leaves with equal certificates differ by an automorphism. Pruning:

* invariant pruning: a node whose trace prefix differs from the first leaf's
  and exceeds the best leaf's cannot hold the canonical leaf or a leaf
  equivalent to the first one;
* orbit pruning: children in one orbit of the known automorphisms fixing the
  current path pointwise have equivalent subtrees;
* backjumping: when an automorphism maps an earlier leaf's path onto the
  current one, the current branch below their common ancestor is the image
  of a finished branch and is abandoned.
"""
from __future__ import annotations

import hashlib
import sys
from dataclasses import dataclass

from ..errors import CapExceeded
from ..group import PermGroup
from ..perm import Permutation, is_identity_tuple
from .core import Graph

__all__ = [
    "CanonicalForm",
    "canonical_form",
    "automorphism_group",
    "is_isomorphic",
    "DEFAULT_CANON_CAP",
]

DEFAULT_CANON_CAP = 2000


@dataclass(frozen=True)
class CanonicalForm:
    vertex_count: int
    relabeling: Permutation
    canonical_edges: tuple

    def graph(self):
        return Graph(self.vertex_count, self.canonical_edges)

    @property
    def digest(self):
        n = self.vertex_count
        text = f"{n}:" + ";".join(f"{u},{v}" for u, v in self.canonical_edges)
        return hashlib.sha256(text.encode("ascii")).hexdigest()[:16]


def refine(adj, cells):
    """Refine an ordered partition to the coarsest equitable refinement.

    Cells split by the multiset of neighbour cell indices; pieces are ordered
    by that signature, which makes the procedure label-invariant. Returns the
    new cell list and a trace recording every split.
    """
    n = len(adj)
    cell_of = [0] * n
    for ci, cell in enumerate(cells):
        for v in cell:
            cell_of[v] = ci
    trace = []
    while True:
        new_cells = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            groups = {}
            for v in cell:
                cnt = {}
                for u in adj[v]:
                    c = cell_of[u]
                    cnt[c] = cnt.get(c, 0) + 1
                groups.setdefault(tuple(sorted(cnt.items())), []).append(v)
            if len(groups) == 1:
                new_cells.append(cell)
                continue
            changed = True
            keys = sorted(groups)
            trace.append((len(new_cells), tuple((k, len(groups[k])) for k in keys)))
            new_cells.extend(groups[k] for k in keys)
        if not changed:
            return new_cells, tuple(trace)
        cells = new_cells
        for ci, cell in enumerate(cells):
            for v in cell:
                cell_of[v] = ci


class _Search:
    def __init__(self, graph):
        self.adj = graph.adj
        self.n = graph.n
        self.generators = []
        self._gen_set = set()
        self.leaves = {}
        self.first_invs = None
        self.best = None  # (invs, cert, order)
        self.nodes = 0

    def run(self):
        if self.n == 0:
            self.best = ((), (), ())
            return
        limit = sys.getrecursionlimit()
        if limit < 4 * self.n + 100:
            sys.setrecursionlimit(4 * self.n + 100)
        try:
            self._visit([list(range(self.n))], (), ())
        finally:
            sys.setrecursionlimit(limit)

    def _leaf(self, cells, path, invs):
        order = tuple(c[0] for c in cells)
        lab = [0] * self.n
        for i, v in enumerate(order):
            lab[v] = i
        adj = self.adj
        cert = tuple(tuple(sorted(lab[u] for u in adj[v])) for v in order)
        seen = self.leaves.get(cert)
        if seen is not None:
            other_path, other_order = seen
            gamma = [0] * self.n
            for a, b in zip(other_order, order):
                gamma[a] = b
            gamma = tuple(gamma)
            if not is_identity_tuple(gamma) and gamma not in self._gen_set:
                self._gen_set.add(gamma)
                self.generators.append(gamma)
            if len(other_path) == len(path) and all(
                    gamma[p] == q for p, q in zip(other_path, path)):
                common = 0
                while other_path[common] == path[common]:
                    common += 1
                return common
            return None
        self.leaves[cert] = (path, order)
        if self.first_invs is None:
            self.first_invs = invs
            self.best = (invs, cert, order)
        elif (invs, cert) < self.best[:2]:
            self.best = (invs, cert, order)
        return None

    def _orbit_labels(self, path):
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gamma in self.generators:
            if all(gamma[p] == p for p in path):
                for x in range(self.n):
                    rx, ry = find(x), find(gamma[x])
                    if rx != ry:
                        parent[max(rx, ry)] = min(rx, ry)
        return find

    def _visit(self, cells, path, invs):
        self.nodes += 1
        cells, trace = refine(self.adj, cells)
        invs = invs + (trace,)
        depth = len(path)
        if self.best is not None:
            on_first = self.first_invs[:depth + 1] == invs
            if not on_first and invs > self.best[0][:depth + 1]:
                return None
        if len(cells) == self.n:
            return self._leaf(cells, path, invs)

        ti = min((i for i, c in enumerate(cells) if len(c) > 1),
                 key=lambda i: (len(cells[i]), i))
        target = sorted(cells[ti])
        explored = []
        find = None
        known = -1
        for v in target:
            if explored:
                if known != len(self.generators):
                    known = len(self.generators)
                    find = self._orbit_labels(path)
                rv = find(v)
                if any(find(w) == rv for w in explored):
                    continue
            child = cells[:ti] + [[v], [w for w in cells[ti] if w != v]] + cells[ti + 1:]
            jump = self._visit(child, path + (v,), invs)
            explored.append(v)
            if jump is not None and jump < depth:
                return jump
        return None


def _search(graph, cap):
    if graph.n > cap:
        raise CapExceeded("vertex count", graph.n, cap)
    cached = graph._cache.get("search")
    if cached is None:
        cached = _Search(graph)
        cached.run()
        graph._cache["search"] = cached
    return cached


def canonical_form(graph, cap=DEFAULT_CANON_CAP):
    """Canonical relabelling; isomorphic graphs get identical edge lists."""
    s = _search(graph, cap)
    order = s.best[2]
    lab = [0] * graph.n
    for i, v in enumerate(order):
        lab[v] = i
    edges = tuple(sorted((min(lab[u], lab[v]), max(lab[u], lab[v]))
                         for u, v in graph.edges()))
    relabeling = Permutation._raw(tuple(lab)) if graph.n else None
    return CanonicalForm(graph.n, relabeling, edges)


def automorphism_group(graph, cap=DEFAULT_CANON_CAP):
    """Automorphism group as a PermGroup on the vertex set."""
    s = _search(graph, cap)
    return PermGroup([Permutation._raw(g) for g in s.generators], graph.n)


def is_isomorphic(g1, g2, cap=DEFAULT_CANON_CAP):
    if g1.n != g2.n or g1.edge_count() != g2.edge_count():
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    return canonical_form(g1, cap).canonical_edges == canonical_form(g2, cap).canonical_edges
