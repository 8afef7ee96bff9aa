"""Exhaustive small-degree classification of arc-transitive covers and
pseudocovers of complete graphs.

For a 2-transitive G <= S_n with point stabilizer H = G_omega the search
runs over subgroups L < H (one per H-conjugacy class) and elements g of G:

* covers: L transitive on the other points, g swapping omega and omega',
  g^2 in L, g normalizing L_omega', <L, g> = G;
* pseudocovers: L intransitive, g^2 in L, <L, g> = G and
  |L : L meet L^g| = n - 1.

Candidates are reduced to one per double coset LgL, materialized, and
deduplicated by canonical form.
"""
from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import factorial

from .constructions import (
    CoversnRecipe,
    KabRecipe,
    build_abelian_pseudocover,
    build_faithful_cover,
)
from .cosetgraph import CosetGraphSpec
from .errors import PreconditionError
from .graph import automorphism_group, canonical_form, valency
from .group import (
    DEFAULT_ELEMENT_CAP,
    PermGroup,
    subgroup_conjugacy_classes,
    subgroups_small,
)
from .perm import Permutation, inv, mul
from .quotient import (
    blocks_from_overgroup,
    classify_extender,
    is_normal_cover_search,
    matching_check,
    quotient_graph,
)

log = logging.getLogger(__name__)

__all__ = [
    "ClassEntry",
    "ClassificationReport",
    "ambient_group",
    "AMBIENT_PRESETS",
    "two_transitive_groups",
    "enumerate_covers",
    "enumerate_pseudocovers",
    "check_pseudocover_existence",
    "ExistenceResult",
    "arc_regular_cover_series",
    "SeriesRow",
]

AMBIENT_PRESETS = ("S", "A", "F5", "PGL25", "PSL25")


def _projective_line_group(q, maps):
    """Permutation group of x -> f(x) on the projective line over GF(q), q prime.

    Points: 0..q-1 then infinity (index q).
    """
    gens = []
    for f in maps:
        gens.append(Permutation([f(x) for x in range(q + 1)]))
    return PermGroup(gens, q + 1)


def _mobius(a, b, c, d, q):
    """x -> (ax + b) / (cx + d) on GF(q) u {inf}, with inf stored as q."""
    def f(x):
        if x == q:
            return q if c == 0 else a * pow(c, -1, q) % q
        num = (a * x + b) % q
        den = (c * x + d) % q
        if den == 0:
            return q
        return num * pow(den, -1, q) % q
    return f


def ambient_group(name, n):
    """Named 2-transitive group of degree n: S, A (any n), F5 (n = 5),
    PGL25 / PSL25 (PGL(2,5) and PSL(2,5) on the 6 points of the projective line)."""
    key = name.upper()
    if key in ("S", f"S{n}"):
        return PermGroup.symmetric(n)
    if key in ("A", f"A{n}"):
        return PermGroup.alternating(n)
    if key == "F5":
        if n != 5:
            raise PreconditionError("F5 is a group of degree 5")
        return PermGroup.from_cycles(5, ["(1,2,3,4,5)", "(2,3,5,4)"])
    if key in ("PGL25", "PGL(2,5)", "PSL25", "PSL(2,5)"):
        if n != 6:
            raise PreconditionError(f"{name} acts on 6 points")
        q = 5
        maps = [_mobius(1, 1, 0, 1, q), _mobius(0, q - 1, 1, 0, q)]
        # x -> 2x has non-square determinant; x -> 4x lies in PSL
        maps.append(_mobius(2 if key.startswith("PGL") else 4, 0, 0, 1, q))
        return _projective_line_group(q, maps)
    raise PreconditionError(f"unknown group {name!r}; known: S, A, F5, PGL25, PSL25")


def two_transitive_groups(n):
    """One representative of each conjugacy class of 2-transitive subgroups of S_n (n <= 6)."""
    if n < 2 or n > 6:
        raise PreconditionError("the table of 2-transitive groups covers 2 <= n <= 6")
    names = {2: ["S"], 3: ["S"], 4: ["S", "A"], 5: ["S", "A", "F5"],
             6: ["S", "A", "PGL25", "PSL25"]}[n]
    out = [(nm if nm in ("F5", "PGL25", "PSL25") else f"{nm}{n}", ambient_group(nm, n))
           for nm in names]
    for nm, grp in out:
        if not grp.is_2_transitive():
            raise RuntimeError(f"{nm} is not 2-transitive")
    return out


@dataclass
class ClassEntry:
    L_generators: tuple
    g: Permutation
    vertex_count: int
    verdict: str
    valency: int
    digest: str
    aut_order: int
    normal_cover: str  # true | false | inconclusive

    def line(self, n, ambient_order):
        lgens = ";".join(str(x) for x in self.L_generators) or "()"
        return (f"{n} {ambient_order} {self.vertex_count} {self.verdict} {self.valency} "
                f"{self.aut_order} {self.normal_cover} {self.digest} L:{lgens} g:{self.g}")


@dataclass
class ClassificationReport:
    kind: str  # covers | pseudocovers
    n: int
    ambient_name: str
    ambient: PermGroup
    entries: list = field(default_factory=list)
    candidates: int = 0
    subgroups_tried: int = 0

    @property
    def classes(self):
        return len(self.entries)

    def header(self):
        return (f"# {self.kind} n={self.n} ambient={self.ambient_name} "
                f"order={self.ambient.order()} classes={self.classes} "
                f"candidates={self.candidates}")

    def lines(self):
        order = self.ambient.order()
        return [self.header()] + [e.line(self.n, order) for e in self.entries]

    def text(self):
        return "\n".join(self.lines()) + "\n"


def _double_coset_key(Lset, g):
    return min(mul(mul(a, g), b) for a in Lset for b in Lset)


def _evaluate(job):
    """Materialize one candidate; returns a ClassEntry. Runs in worker processes."""
    degree, G_gens, L_gens, g, n, normal_cap = job
    G = PermGroup([Permutation._raw(t) for t in G_gens], degree)
    L = PermGroup([Permutation._raw(t) for t in L_gens], degree)
    gp = Permutation._raw(g)
    spec = CosetGraphSpec(G, L, gp, omega=0)
    verdict = classify_extender(spec)
    graph = spec.graph()
    cf = canonical_form(graph)
    aut = automorphism_group(graph)
    normal = is_normal_cover_search(graph, n, normal_cap)
    return ClassEntry(tuple(L.nontrivial_generators), gp, graph.n, verdict.kind,
                      valency(graph), cf.digest, aut.order(), normal.status)


def _check_ambient(n, G, cap):
    if G.degree != n:
        raise PreconditionError(f"ambient group has degree {G.degree}, expected {n}")
    if G.order() > cap:
        from .errors import CapExceeded
        raise CapExceeded("group order", G.order(), cap)
    if not G.is_2_transitive():
        raise PreconditionError("the ambient group must be 2-transitive")


def _subgroup_reps(H, transitive, min_order, cap):
    """One subgroup per H-conjugacy class: proper, with the requested
    transitivity on the points other than 0, and of order >= min_order."""
    n = H.degree
    subs = subgroups_small(H, cap)
    sets = [s for s, _ in subs]
    gens_of = {s: gens for s, gens in subs}
    classes = subgroup_conjugacy_classes(sets, H.element_tuples(cap))
    rest = frozenset(range(1, n))
    reps = []
    for cls in classes:
        s = sets[cls[0]]
        if len(s) >= H.order() or len(s) < min_order:
            continue
        orbit = {t[1] for t in s}
        if (orbit == rest) != transitive:
            continue
        reps.append((s, gens_of[s]))
    return reps


def _run(kind, n, G, name, candidates, jobs, normal_cap):
    report = ClassificationReport(kind, n, name, G)
    jobs_list = []
    for Lset, Lgens, g in candidates:
        jobs_list.append((n, tuple(x.images for x in G.nontrivial_generators),
                          Lgens, g, n, normal_cap))
    report.candidates = len(jobs_list)
    if jobs and jobs > 1 and len(jobs_list) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_evaluate, jobs_list))
    else:
        results = [_evaluate(j) for j in jobs_list]
    by_digest = {}
    for entry in results:
        by_digest.setdefault(entry.digest, entry)
    report.entries = sorted(by_digest.values(), key=lambda e: (e.vertex_count, e.digest))
    if report.candidates:
        log.info("%s n=%d %s: %d candidates -> %d classes", kind, n, name,
                 report.candidates, report.classes)
    return report


def _generates(Lgens, g, n, target):
    gens = [Permutation._raw(t) for t in Lgens] + [Permutation._raw(g)]
    return PermGroup(gens, n).order() == target


def enumerate_covers(n, G, name=None, jobs=1, cap=DEFAULT_ELEMENT_CAP):
    """All connected G-arc-transitive covers of K_n, up to isomorphism."""
    _check_ambient(n, G, cap)
    name = name or f"order{G.order()}"
    H = G.point_stabilizer(0)
    elements = G.element_tuples(cap)
    order = G.order()
    candidates = []
    reps = _subgroup_reps(H, transitive=True, min_order=1, cap=cap)
    for Lset, Lgens in reps:
        # L_omega' elementwise
        stab = frozenset(t for t in Lset if t[1] == 1)
        seen = set()
        for g in elements:
            if g[0] != 1 or g[1] != 0:
                continue
            if mul(g, g) not in Lset:
                continue
            gi = inv(g)
            if frozenset(mul(mul(gi, s), g) for s in stab) != stab:
                continue
            key = _double_coset_key(Lset, g)
            if key in seen:
                continue
            seen.add(key)
            if _generates(Lgens, g, n, order):
                candidates.append((Lset, Lgens, g))
    report = _run("covers", n, G, name, candidates, jobs, cap)
    report.subgroups_tried = len(reps)
    return report


def enumerate_pseudocovers(n, G, name=None, jobs=1, cap=DEFAULT_ELEMENT_CAP):
    """All connected G-arc-transitive pseudocovers of K_n, up to isomorphism."""
    _check_ambient(n, G, cap)
    name = name or f"order{G.order()}"
    H = G.point_stabilizer(0)
    elements = G.element_tuples(cap)
    order = G.order()
    candidates = []
    reps = _subgroup_reps(H, transitive=False, min_order=n - 1, cap=cap)
    for Lset, Lgens in reps:
        seen = set()
        for g in elements:
            if g[0] == 0 or mul(g, g) not in Lset:
                continue
            gi = inv(g)
            meet = sum(1 for t in Lset if mul(mul(g, t), gi) in Lset)
            if len(Lset) // meet != n - 1:
                continue
            key = _double_coset_key(Lset, g)
            if key in seen:
                continue
            seen.add(key)
            if _generates(Lgens, g, n, order):
                candidates.append((Lset, Lgens, g))
    report = _run("pseudocovers", n, G, name, candidates, jobs, cap)
    report.subgroups_tried = len(reps)
    for e in report.entries:
        if e.verdict != "pseudocover":
            raise RuntimeError(f"pseudocover search produced a {e.verdict}")
    return report


@dataclass
class ExistenceResult:
    n: int
    status: str  # exists_with_witness | none_proven | inconclusive
    witness: tuple | None = None
    verdict: object = None
    exhaustive: bool = False
    searched: list = field(default_factory=list)

    def line(self):
        if self.status == "exists_with_witness":
            a, b = self.witness
            return f"n={self.n} exists witness=kab({a},{b}) verdict={self.verdict.to_line()}"
        how = "exhaustive over " + ",".join(self.searched) if self.exhaustive else "no search"
        return f"n={self.n} {self.status} ({how})"


def _smallest_prime_factor(m):
    p = 2
    while p * p <= m:
        if m % p == 0:
            return p
        p += 1
    return m


def check_pseudocover_existence(n, exhaustive_max=6, jobs=1):
    """Connected symmetric pseudocovers of K_n exist iff n - 1 is not prime.

    Composite n - 1 = ab (a the least prime factor) gives a witness from the
    abelian family, verified without materializing the graph. For prime
    n - 1 and n <= ``exhaustive_max`` every 2-transitive G <= S_n is
    searched; beyond that the status is ``inconclusive``.
    """
    if n < 3:
        raise PreconditionError("n must be at least 3")
    m = n - 1
    a = _smallest_prime_factor(m)
    if a < m:
        recipe = KabRecipe(a, m // a)
        verdict = classify_extender(build_abelian_pseudocover(recipe))
        if verdict.kind != "pseudocover" or not verdict.connected:
            raise RuntimeError(f"kab({a},{m // a}) gave {verdict.to_line()}")
        return ExistenceResult(n, "exists_with_witness", (a, m // a), verdict)
    if n > exhaustive_max:
        return ExistenceResult(n, "inconclusive")
    searched = []
    for name, G in two_transitive_groups(n):
        rep = enumerate_pseudocovers(n, G, name, jobs=jobs)
        searched.append(name)
        if rep.entries:
            raise RuntimeError(f"found a pseudocover of K_{n} over {name}")
    return ExistenceResult(n, "none_proven", exhaustive=True, searched=searched)


@dataclass
class SeriesRow:
    n: int
    vertex_count: int
    expected_vertices: int
    group_order: int
    arcs: int
    verdict: str
    materialized: bool
    matching: bool | None = None

    @property
    def ok(self):
        return (self.vertex_count == self.expected_vertices
                and self.group_order == self.arcs and self.verdict == "cover"
                and self.matching is not False)

    def line(self):
        m = "-" if self.matching is None else str(self.matching).lower()
        return (f"n={self.n} vertices={self.vertex_count} expected={self.expected_vertices} "
                f"|G|={self.group_order} arcs={self.arcs} verdict={self.verdict} "
                f"matching={m} {'ok' if self.ok else 'MISMATCH'}")


def arc_regular_cover_series(n_max, n_min=4, materialize_cap=10_000):
    """Regular-cyclic covers of K_n: (n-2)! n vertices, arc-regular G = S_n."""
    rows = []
    for n in range(n_min, n_max + 1):
        recipe = CoversnRecipe.from_strings(n, ["(" + ",".join(map(str, range(2, n + 1))) + ")"])
        spec = build_faithful_cover(recipe)
        verdict = classify_extender(spec)
        vertices = spec.index()
        expected = factorial(n - 2) * n
        arcs = vertices * verdict.valency_gamma
        row = SeriesRow(n, vertices, expected, spec.G.order(), arcs, verdict.kind,
                        materialized=vertices <= materialize_cap)
        if row.materialized:
            graph = spec.graph()
            if graph.n != vertices or valency(graph) != verdict.valency_gamma:
                raise RuntimeError("materialized graph disagrees with index formulas")
            H = spec.G.point_stabilizer(spec.base_point())
            blocks = blocks_from_overgroup(spec, H)
            row.matching = matching_check(graph, blocks) and quotient_graph(
                graph, blocks).edge_count() == n * (n - 1) // 2
        rows.append(row)
    return rows


def default_jobs():
    env = os.environ.get("SYMCOVER_JOBS")
    return int(env) if env else 1
