"""Permutations of the point set {0, ..., n-1}.

Conventions
-----------
* Points are 0-based internally. All text I/O (cycle notation) is 1-based,
  as in the usual mathematical notation Omega = {1, ..., n}.
* Right action: the image of a point ``i`` under ``p`` is ``p[i]`` and a
  product ``p * q`` means "first p, then q", so that
  ``(p * q)[i] == q[p[i]]``. Conjugation is ``p ** t == t^-1 p t`` and the
  commutator is ``[p, q] = p^-1 q^-1 p q``.

Group algorithms work on raw image tuples for speed; the helpers ``mul``,
``inv`` and ``identity_tuple`` below operate on those. ``Permutation`` wraps
such a tuple for the public API.
"""
from __future__ import annotations

import math
import re
from functools import reduce

from .errors import PreconditionError

__all__ = [
    "Permutation",
    "compose",
    "inverse",
    "conjugate",
    "commutator",
    "parity",
    "parse_cycles",
    "print_cycles",
    "support",
    "cycle_type",
    "order_of",
]


# -- raw tuple helpers ---------------------------------------------------

def mul(p, q):
    """Product of image tuples, first ``p`` then ``q``."""
    return tuple(map(q.__getitem__, p))


def inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def identity_tuple(n):
    return tuple(range(n))


def is_identity_tuple(p):
    return all(i == j for i, j in enumerate(p))


def cycles_of(p):
    """Nontrivial cycles of an image tuple, each starting at its minimum."""
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


# -- public type ---------------------------------------------------------

class Permutation:
    """An immutable permutation of ``{0, ..., degree-1}``.

    >>> p = Permutation.parse("(1,2,3)", 4)
    >>> p.images
    (1, 2, 0, 3)
    >>> str(p * p)
    '(1,3,2)'
    """

    __slots__ = ("images", "_hash")

    def __init__(self, images):
        images = tuple(images)
        n = len(images)
        if n < 1:
            raise PreconditionError("permutation degree must be at least 1")
        if sorted(images) != list(range(n)):
            raise PreconditionError(f"not a permutation of 0..{n - 1}: {images}")
        self.images = images
        self._hash = None

    @classmethod
    def _raw(cls, images):
        # trusted constructor: images already a valid tuple
        obj = object.__new__(cls)
        obj.images = images
        obj._hash = None
        return obj

    @classmethod
    def identity(cls, degree):
        if degree < 1:
            raise PreconditionError("permutation degree must be at least 1")
        return cls._raw(identity_tuple(degree))

    @classmethod
    def from_cycles(cls, cycles, degree, one_based=True):
        """Build from disjoint cycles given as sequences of points."""
        if degree < 1:
            raise PreconditionError("permutation degree must be at least 1")
        images = list(range(degree))
        seen = set()
        shift = 1 if one_based else 0
        for cyc in cycles:
            pts = [c - shift for c in cyc]
            for x in pts:
                if not 0 <= x < degree:
                    raise PreconditionError(
                        f"point {x + shift} out of range for degree {degree}")
                if x in seen:
                    raise PreconditionError(f"point {x + shift} repeated in cycles")
                seen.add(x)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                images[a] = b
        return cls._raw(tuple(images))

    @classmethod
    def parse(cls, text, degree):
        return parse_cycles(text, degree)

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, point):
        return self.images[point]

    def __getitem__(self, point):
        return self.images[point]

    def __len__(self):
        return len(self.images)

    def __iter__(self):
        return iter(self.images)

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __lt__(self, other):
        return self.images < other.images

    def __mul__(self, other):
        return compose(self, other)

    def __pow__(self, k):
        if isinstance(k, Permutation):
            return conjugate(self, k)
        k = int(k)
        base = self.images if k >= 0 else inv(self.images)
        result = identity_tuple(self.degree)
        k = abs(k)
        while k:
            if k & 1:
                result = mul(result, base)
            base = mul(base, base)
            k >>= 1
        return Permutation._raw(result)

    def __invert__(self):
        return inverse(self)

    def inverse(self):
        return inverse(self)

    def is_identity(self):
        return is_identity_tuple(self.images)

    def cycles(self):
        """Nontrivial cycles (0-based), minimal element first, sorted."""
        return cycles_of(self.images)

    def support(self):
        return support(self)

    def cycle_type(self):
        return cycle_type(self)

    def order(self):
        return order_of(self)

    def parity(self):
        return parity(self)

    def is_even(self):
        return parity(self) == "even"

    def __str__(self):
        return print_cycles(self)

    def __repr__(self):
        return f"Permutation.parse({print_cycles(self)!r}, {self.degree})"


def _check_degrees(p, q):
    if p.degree != q.degree:
        raise PreconditionError(
            f"degree mismatch: {p.degree} vs {q.degree}")


def compose(p, q):
    """``p`` followed by ``q``: result[i] = q[p[i]]."""
    _check_degrees(p, q)
    return Permutation._raw(mul(p.images, q.images))


def inverse(p):
    return Permutation._raw(inv(p.images))


def conjugate(p, t):
    """``p^t = t^-1 p t``."""
    _check_degrees(p, t)
    return Permutation._raw(mul(mul(inv(t.images), p.images), t.images))


def commutator(p, q):
    """``[p, q] = p^-1 q^-1 p q``."""
    _check_degrees(p, q)
    a, b = p.images, q.images
    return Permutation._raw(mul(mul(mul(inv(a), inv(b)), a), b))


def support(p):
    """Set of moved points (0-based)."""
    return frozenset(i for i, j in enumerate(p.images) if i != j)


def cycle_type(p):
    """Sorted tuple of all cycle lengths, fixed points included as 1s."""
    lengths = [len(c) for c in cycles_of(p.images)]
    fixed = p.degree - sum(lengths)
    return tuple(sorted(lengths + [1] * fixed))


def order_of(p):
    return reduce(math.lcm, (len(c) for c in cycles_of(p.images)), 1)


def parity(p):
    """'even' or 'odd', from the cycle type."""
    transpositions = sum(len(c) - 1 for c in cycles_of(p.images))
    return "even" if transpositions % 2 == 0 else "odd"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text, degree):
    """Parse disjoint-cycle notation with 1-based points.

    Points inside a cycle are separated by commas and/or whitespace, so
    ``"(1,2)(3,4)"`` and ``"(1 2)(3 4)"`` are both accepted. The empty
    string and ``"()"`` give the identity.
    """
    stripped = text.strip()
    pos = 0
    cycles = []
    for match in _CYCLE_RE.finditer(stripped):
        if stripped[pos:match.start()].strip():
            raise PreconditionError(f"malformed cycle notation: {text!r}")
        pos = match.end()
        body = match.group(1).strip()
        if not body:
            continue
        tokens = [t for t in re.split(r"[,\s]+", body) if t]
        try:
            cycles.append([int(t) for t in tokens])
        except ValueError:
            raise PreconditionError(f"malformed cycle notation: {text!r}") from None
    if stripped[pos:].strip():
        raise PreconditionError(f"malformed cycle notation: {text!r}")
    return Permutation.from_cycles(cycles, degree)


def print_cycles(p):
    """1-based cycle notation; identity prints as ``()``."""
    cycles = cycles_of(p.images)
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cycles)
