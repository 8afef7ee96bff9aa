"""Permutation groups backed by a deterministic Schreier-Sims stabilizer chain.

A ``PermGroup`` is given by generators; its ``StabilizerChain`` is built on
first use (under a lock) and cached. The chain answers order, membership and
point-stabilizer queries. Small groups can be enumerated element by element,
which is what the subgroup/normal-subgroup helpers at the bottom rely on.
"""
from __future__ import annotations

import math
import threading

from .errors import CapExceeded, PreconditionError
from .perm import Permutation, identity_tuple, inv, is_identity_tuple, mul

__all__ = [
    "PermGroup",
    "StabilizerChain",
    "build_chain",
    "intersect_small",
    "normal_closure",
    "normal_subgroups_small",
    "subgroups_small",
    "subgroup_conjugacy_classes",
    "classify_giant",
    "group_from_elements",
]

DEFAULT_ELEMENT_CAP = 10_000


class _Level:
    __slots__ = ("point", "gens", "transversal", "inv_transversal", "checked")

    def __init__(self, point, n):
        self.point = point
        self.gens = []
        e = identity_tuple(n)
        self.transversal = {point: e}
        self.inv_transversal = {point: e}
        self.checked = set()

    def extend(self, new_gens):
        """Grow the orbit after appending ``new_gens`` to ``self.gens``.

        Existing transversal entries are never replaced, so Schreier
        generators already verified stay valid.
        """
        trans = self.transversal
        itrans = self.inv_transversal
        frontier = []
        for beta in list(trans):
            u = trans[beta]
            for s in new_gens:
                gamma = s[beta]
                if gamma not in trans:
                    w = mul(u, s)
                    trans[gamma] = w
                    itrans[gamma] = inv(w)
                    frontier.append(gamma)
        k = 0
        while k < len(frontier):
            beta = frontier[k]
            k += 1
            u = trans[beta]
            for s in self.gens:
                gamma = s[beta]
                if gamma not in trans:
                    w = mul(u, s)
                    trans[gamma] = w
                    itrans[gamma] = inv(w)
                    frontier.append(gamma)


class StabilizerChain:
    """Base and strong generating set with explicit Schreier transversals.

    ``levels[i]`` holds base point ``base[i]``, the strong generators fixing
    ``base[:i]`` and the transversal of the fundamental orbit
    (``transversal[beta]`` maps the base point to ``beta``).
    """

    def __init__(self, degree, levels):
        self.degree = degree
        self.levels = levels

    @property
    def base(self):
        return [lev.point for lev in self.levels]

    def orbit_sizes(self):
        return [len(lev.transversal) for lev in self.levels]

    def order(self):
        return math.prod(self.orbit_sizes())

    def sift(self, h, start=0):
        """Strip image tuple ``h`` through the chain.

        Returns ``(residue, depth)``; ``h`` is in the group iff
        ``depth == len(levels)`` and the residue is the identity.
        """
        levels = self.levels
        for i in range(start, len(levels)):
            lev = levels[i]
            beta = h[lev.point]
            if beta == lev.point:
                continue
            w = lev.inv_transversal.get(beta)
            if w is None:
                return h, i
            h = mul(h, w)
        return h, len(levels)

    def contains_tuple(self, h):
        residue, depth = self.sift(h)
        return depth == len(self.levels) and is_identity_tuple(residue)

    def stabilizer_generators(self, depth):
        """Strong generators of the pointwise stabilizer of ``base[:depth]``."""
        if depth < len(self.levels):
            return list(self.levels[depth].gens)
        return []

    def element_tuples(self):
        result = [identity_tuple(self.degree)]
        for lev in reversed(self.levels):
            reps = list(lev.transversal.values())
            result = [mul(x, u) for x in result for u in reps]
        return result


def _schreier_sims(gens, n, base_prefix=()):
    gens = list(dict.fromkeys(g for g in gens if not is_identity_tuple(g)))
    base = list(base_prefix)
    for s in gens:
        if all(s[b] == b for b in base):
            base.append(next(i for i in range(n) if s[i] != i))
    levels = [_Level(b, n) for b in base]
    for i, lev in enumerate(levels):
        fixed = base[:i]
        lev.gens = [s for s in gens if all(s[b] == b for b in fixed)]
        lev.extend(lev.gens)

    chain = StabilizerChain(n, levels)
    i = len(levels) - 1
    while i >= 0:
        lev = levels[i]
        restart = None
        for beta in list(lev.transversal):
            u = lev.transversal[beta]
            for gi, s in enumerate(lev.gens):
                if (beta, gi) in lev.checked:
                    continue
                gamma = s[beta]
                schreier = mul(mul(u, s), lev.inv_transversal[gamma])
                h, j = chain.sift(schreier, i + 1)
                if j == len(levels) and is_identity_tuple(h):
                    lev.checked.add((beta, gi))
                    continue
                if j == len(levels):
                    moved = next(p for p in range(n) if h[p] != p)
                    levels.append(_Level(moved, n))
                for lv in range(i + 1, j + 1):
                    levels[lv].gens.append(h)
                    levels[lv].extend([h])
                restart = j
                break
            if restart is not None:
                break
        i = i - 1 if restart is None else restart
    return chain


def build_chain(group, base_prefix=()):
    """Deterministic Schreier-Sims for ``group`` (a PermGroup).

    ``base_prefix`` points come first in the base even if they are fixed by
    the whole group.
    """
    return _schreier_sims([g.images for g in group.generators], group.degree,
                          tuple(base_prefix))


class PermGroup:
    """A permutation group given by generators (0-based points, right action)."""

    def __init__(self, generators, degree=None):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise PreconditionError("degree required for a group with no generators")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise PreconditionError(
                    f"generator of degree {g.degree} in a group of degree {degree}")
        seen = {}
        for g in gens:
            if not g.is_identity():
                seen.setdefault(g.images, g)
        self.degree = degree
        self._gens = tuple(seen.values())
        self._lock = threading.Lock()
        self._chains = {}

    # -- construction helpers ---------------------------------------------

    @classmethod
    def from_cycles(cls, degree, cycle_strings):
        return cls([Permutation.parse(s, degree) for s in cycle_strings], degree)

    @classmethod
    def trivial(cls, degree):
        return cls([], degree)

    @classmethod
    def symmetric(cls, n, points=None):
        """Symmetric group on ``points`` (default all n points)."""
        pts = list(range(n)) if points is None else sorted(points)
        if len(pts) < 2:
            return cls.trivial(n)
        gens = [Permutation.from_cycles([pts[:2]], n, one_based=False)]
        if len(pts) > 2:
            gens.append(Permutation.from_cycles([pts], n, one_based=False))
        return cls(gens, n)

    @classmethod
    def alternating(cls, n, points=None):
        pts = list(range(n)) if points is None else sorted(points)
        if len(pts) < 3:
            return cls.trivial(n)
        gens = [Permutation.from_cycles([pts[i:i + 3]], n, one_based=False)
                for i in range(len(pts) - 2)]
        return cls(gens, n)

    # -- basic data ---------------------------------------------------------

    @property
    def generators(self):
        """Generator list; the identity alone when the group is trivial."""
        if self._gens:
            return list(self._gens)
        return [Permutation.identity(self.degree)]

    @property
    def nontrivial_generators(self):
        return list(self._gens)

    def chain(self, base_prefix=()):
        key = tuple(base_prefix)
        with self._lock:
            ch = self._chains.get(key)
            if ch is None:
                ch = _schreier_sims([g.images for g in self._gens], self.degree, key)
                self._chains[key] = ch
            return ch

    def order(self):
        return self.chain().order()

    def _check_degree(self, p):
        if p.degree != self.degree:
            raise PreconditionError(
                f"permutation of degree {p.degree} tested against group of degree {self.degree}")

    def contains(self, p):
        self._check_degree(p)
        return self.chain().contains_tuple(p.images)

    __contains__ = contains

    def is_trivial(self):
        return not self._gens

    def is_subgroup_of(self, other):
        return all(other.contains(g) for g in self._gens)

    def conjugate(self, t):
        """The conjugate group ``t^-1 G t``."""
        return PermGroup([g ** t for g in self._gens], self.degree)

    def __repr__(self):
        gens = ", ".join(repr(str(g)) for g in self.generators)
        return f"PermGroup(degree={self.degree}, generators=[{gens}])"

    # -- orbits -------------------------------------------------------------

    def _check_point(self, point):
        if not 0 <= point < self.degree:
            raise PreconditionError(f"point {point} out of range for degree {self.degree}")

    def orbit(self, point):
        self._check_point(point)
        gens = [g.images for g in self._gens]
        seen = {point}
        stack = [point]
        while stack:
            x = stack.pop()
            for s in gens:
                y = s[x]
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return frozenset(seen)

    def orbits(self):
        """Orbits as a list of frozensets, ordered by minimal element."""
        done = set()
        out = []
        for p in range(self.degree):
            if p not in done:
                orb = self.orbit(p)
                done |= orb
                out.append(orb)
        return out

    def is_transitive(self):
        return len(self.orbit(0)) == self.degree

    def is_2_transitive(self):
        if self.degree < 2:
            raise PreconditionError("2-transitivity needs degree at least 2")
        if not self.is_transitive():
            return False
        stab = self.point_stabilizer(0)
        return len(stab.orbit(1)) == self.degree - 1

    def point_stabilizer(self, point):
        self._check_point(point)
        ch = self.chain()
        if not ch.levels or ch.levels[0].point != point:
            ch = self.chain((point,))
        gens = ch.stabilizer_generators(1)
        return PermGroup([Permutation._raw(h) for h in gens], self.degree)

    def stabilizer_of_points(self, points):
        """Pointwise stabilizer of a sequence of points."""
        points = tuple(points)
        for p in points:
            self._check_point(p)
        ch = self.chain(points)
        gens = ch.stabilizer_generators(len(points))
        return PermGroup([Permutation._raw(h) for h in gens], self.degree)

    # -- enumeration ----------------------------------------------------------

    def element_tuples(self, cap=DEFAULT_ELEMENT_CAP):
        order = self.order()
        if order > cap:
            raise CapExceeded("group order", order, cap)
        return self.chain().element_tuples()

    def elements(self, cap=DEFAULT_ELEMENT_CAP):
        return [Permutation._raw(t) for t in self.element_tuples(cap)]


def _closure(gens, n):
    """Element set of the group generated by image tuples ``gens`` (BFS)."""
    e = identity_tuple(n)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = mul(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def group_from_elements(elements, degree):
    """PermGroup generated by a set of permutations forming a subgroup.

    Generators are picked greedily in sorted order, so the result is
    deterministic.
    """
    tuples = sorted(e.images if isinstance(e, Permutation) else tuple(e) for e in elements)
    gens = []
    current = frozenset([identity_tuple(degree)])
    for t in tuples:
        if t not in current:
            gens.append(t)
            current = _closure(gens, degree)
    return PermGroup([Permutation._raw(t) for t in gens], degree)


def intersect_small(a, b, cap=DEFAULT_ELEMENT_CAP):
    """Intersection of two groups by enumerating the smaller one."""
    if a.degree != b.degree:
        raise PreconditionError("groups of different degrees")
    small, big = (a, b) if a.order() <= b.order() else (b, a)
    if small.order() > cap:
        raise CapExceeded("smaller group order", small.order(), cap)
    big_chain = big.chain()
    kept = [t for t in small.element_tuples(cap) if big_chain.contains_tuple(t)]
    return group_from_elements(kept, a.degree)


def normal_closure(group, elements):
    """Smallest normal subgroup of ``group`` containing ``elements``."""
    n = group.degree
    gens = [p for p in elements if not p.is_identity()]
    closure = PermGroup(gens, n)
    queue = list(gens)
    conj = [g for g in group.nontrivial_generators]
    while queue:
        x = queue.pop()
        for s in conj:
            y = x ** s
            if not closure.contains(y):
                gens.append(y)
                closure = PermGroup(gens, n)
                queue.append(y)
    return closure


def _conjugacy_classes(elts, gens):
    """Conjugacy classes of a group given its element tuples and generators."""
    seen = set()
    classes = []
    ginv = [(s, inv(s)) for s in gens]
    for x in elts:
        if x in seen:
            continue
        cls = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for s, si in ginv:
                z = mul(mul(si, y), s)
                if z not in cls:
                    cls.add(z)
                    stack.append(z)
        seen |= cls
        classes.append(frozenset(cls))
    return classes


def normal_subgroups_small(group, cap=DEFAULT_ELEMENT_CAP):
    """All normal subgroups, each exactly once, sorted by order.

    Uses conjugacy classes of the enumerated group: every normal subgroup is
    a join of normal closures of single classes.
    """
    n = group.degree
    elts = group.element_tuples(cap)
    gens = [g.images for g in group.nontrivial_generators]
    classes = _conjugacy_classes(elts, gens)

    found = {}

    def add(sub):
        key = frozenset(sub.element_tuples(cap))
        if key in found:
            return None
        found[key] = sub
        return sub

    for cls in classes:
        rep = Permutation._raw(min(cls))
        add(normal_closure(group, [rep]))
    pending = list(found.values())
    while pending:
        fresh = []
        known = list(found.values())
        for a in pending:
            for b in known:
                joined = add(PermGroup(a.nontrivial_generators + b.nontrivial_generators, n))
                if joined is not None:
                    fresh.append(joined)
        pending = fresh
    return sorted(found.values(), key=lambda s: (s.order(), sorted(s.element_tuples(cap))))


def subgroups_small(group, cap=200):
    """All subgroups of a small group by cyclic extension.

    Returns a list of ``(elements, generators)`` pairs where ``elements`` is
    a frozenset of image tuples and ``generators`` a tuple of image tuples.
    Deterministic; sorted by order, then by sorted element list.
    """
    n = group.degree
    elts = sorted(group.element_tuples(cap))
    e = identity_tuple(n)
    trivial = frozenset([e])
    found = {trivial: ()}
    layer = [trivial]
    while layer:
        nxt = []
        for sub in layer:
            sub_gens = found[sub]
            covered = set(sub)
            for x in elts:
                if x in covered:
                    continue
                # <H, x> = <H, hx>: skip the rest of the coset Hx
                covered.update(mul(h, x) for h in sub)
                gens = sub_gens + (x,)
                ext = _closure(gens, n)
                if ext not in found:
                    found[ext] = gens
                    nxt.append(ext)
        layer = nxt
    return sorted(found.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))


def subgroup_conjugacy_classes(subgroups, conjugators):
    """Partition subgroups (frozensets of tuples) into classes under conjugation.

    ``conjugators`` is an iterable of image tuples (typically all elements of
    the acting group). Returns a list of lists of indices into ``subgroups``.
    """
    index = {s: i for i, s in enumerate(subgroups)}
    conj = [(c, inv(c)) for c in conjugators]
    assigned = [None] * len(subgroups)
    classes = []
    for i, s in enumerate(subgroups):
        if assigned[i] is not None:
            continue
        members = set()
        for c, ci in conj:
            img = frozenset(mul(mul(ci, h), c) for h in s)
            j = index.get(img)
            if j is None:
                raise PreconditionError("subgroup list is not closed under conjugation")
            members.add(j)
        for j in members:
            assigned[j] = len(classes)
        classes.append(sorted(members))
    return classes


def classify_giant(group):
    """'symmetric', 'alternating' or 'other', by exact order comparison."""
    n = group.degree
    order = group.order()
    full = math.factorial(n)
    if order == full:
        return "symmetric"
    if 2 * order == full:
        return "alternating"
    return "other"
