"""graph6, DOT and edge-list serialization.

graph6 follows the standard header-less encoding: the vertex count N(n),
then the upper triangle of the adjacency matrix read column by column
(x(0,1), x(0,2), x(1,2), x(0,3), ...) packed into 6-bit groups, each byte
being the group value plus 63.
"""
from __future__ import annotations

import re

from ..errors import PreconditionError
from .core import Graph

__all__ = ["export", "import_graph", "to_graph6", "from_graph6"]

FORMATS = ("graph6", "dot", "edgelist")
GRAPH6_MAX = 68719476735


class GraphFormatError(PreconditionError):
    """Malformed serialized graph."""


def _encode_n(n):
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def to_graph6(graph):
    n = graph.n
    if n > GRAPH6_MAX:
        raise PreconditionError(f"graph6 supports at most {GRAPH6_MAX} vertices")
    bits = []
    for j in range(1, n):
        nb = set(graph.adj[j])
        bits.extend(1 if i in nb else 0 for i in range(j))
    bits.extend([0] * (-len(bits) % 6))
    body = bytes(
        63 + sum(b << (5 - k) for k, b in enumerate(bits[i:i + 6]))
        for i in range(0, len(bits), 6))
    return _encode_n(n) + body


def from_graph6(data):
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<"):]
    if not data or any(c < 63 or c > 126 for c in data):
        raise GraphFormatError("graph6 bytes must lie in 63..126")
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) > 1 and data[1] != 126:
        if len(data) < 4:
            raise GraphFormatError("truncated graph6 size field")
        n = sum((data[1 + k] - 63) << (12 - 6 * k) for k in range(3))
        pos = 4
    else:
        if len(data) < 8:
            raise GraphFormatError("truncated graph6 size field")
        n = sum((data[2 + k] - 63) << (30 - 6 * k) for k in range(6))
        pos = 8
    nbits = n * (n - 1) // 2
    body = data[pos:]
    if len(body) != (nbits + 5) // 6:
        raise GraphFormatError(
            f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6} for n={n}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if (byte >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def to_dot(graph):
    lines = ["graph G {"]
    lines.extend(f"  {v + 1};" for v in range(graph.n))
    lines.extend(f"  {u + 1} -- {v + 1};" for u, v in graph.edges())
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("ascii")


_DOT_EDGE = re.compile(r"^\s*(\d+)\s*--\s*(\d+)\s*;?\s*$")
_DOT_NODE = re.compile(r"^\s*(\d+)\s*;?\s*$")


def from_dot(data):
    text = data.decode("ascii") if isinstance(data, bytes) else data
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not re.match(r"^\s*(strict\s+)?graph\b.*\{\s*$", lines[0]) \
            or lines[-1].strip() != "}":
        raise GraphFormatError("expected 'graph NAME {' ... '}'")
    n = 0
    edges = []
    for ln in lines[1:-1]:
        m = _DOT_EDGE.match(ln)
        if m:
            u, v = int(m.group(1)), int(m.group(2))
            edges.append((u - 1, v - 1))
            n = max(n, u, v)
            continue
        m = _DOT_NODE.match(ln)
        if m:
            n = max(n, int(m.group(1)))
            continue
        raise GraphFormatError(f"unrecognized DOT line: {ln.strip()!r}")
    return Graph(n, edges)


def to_edgelist(graph):
    lines = [f"# vertices {graph.n}"]
    lines.extend(f"{u + 1} {v + 1}" for u, v in graph.edges())
    return ("\n".join(lines) + "\n").encode("ascii")


def from_edgelist(data):
    text = data.decode("ascii") if isinstance(data, bytes) else data
    n = None
    edges = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln:
            continue
        if ln.startswith("#"):
            m = re.match(r"#\s*vertices\s+(\d+)$", ln)
            if m:
                n = int(m.group(1))
            continue
        parts = ln.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise GraphFormatError(f"bad edge line: {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        if u < 1 or v < 1:
            raise GraphFormatError("edge list vertices are 1-based")
        edges.append((u - 1, v - 1))
    if n is None:
        n = max((max(e) + 1 for e in edges), default=0)
    return Graph(n, edges)


def export(graph, fmt="graph6"):
    """Serialize ``graph``; returns bytes."""
    if fmt == "graph6":
        return to_graph6(graph) + b"\n"
    if fmt == "dot":
        return to_dot(graph)
    if fmt == "edgelist":
        return to_edgelist(graph)
    raise PreconditionError(f"unknown format {fmt!r}; choose from {FORMATS}")


def import_graph(data, fmt="graph6"):
    if fmt == "graph6":
        return from_graph6(data)
    if fmt == "dot":
        return from_dot(data)
    if fmt == "edgelist":
        return from_edgelist(data)
    raise PreconditionError(f"unknown format {fmt!r}; choose from {FORMATS}")
