"""Block systems, quotient graphs and the cover / pseudocover criterion.

The main entry point, ``classify_extender``, decides whether
Cos(G, L, LgL) is a cover or a pseudocover of Cos(G, H, HgH) purely from
orbit computations: the valencies are |L : L ∩ L^g| and |H : H ∩ H^g|, and
when they agree the extender is a cover exactly when L (the stabilizer of the
base vertex) is transitive on the neighbours of the base block.
Graph-level checks (perfect matchings between adjacent blocks, the three
stabilizer comparison) are provided for cross-validation.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .cosetgraph import coset_key
from .errors import CapExceeded, PreconditionError
from .graph import Graph, automorphism_group, complete_check, valency
from .group import (
    DEFAULT_ELEMENT_CAP,
    PermGroup,
    group_from_elements,
    intersect_small,
    normal_subgroups_small,
)
from .perm import Permutation, mul

log = logging.getLogger(__name__)

__all__ = [
    "BlockSystem",
    "ExtenderVerdict",
    "blocks_from_overgroup",
    "blocks_from_normal_orbits",
    "quotient_graph",
    "classify_extender",
    "matching_check",
    "three_stabilizers",
    "normal_quotient",
    "is_faithful_on_blocks",
    "block_kernel",
    "is_normal_cover_search",
    "factor_through_kernel",
    "cross_check",
]


@dataclass(frozen=True)
class BlockSystem:
    """A partition of ``range(n)``; blocks sorted by least element."""

    blocks: tuple
    block_of: tuple

    @classmethod
    def from_partition(cls, parts, n):
        blocks = sorted(tuple(sorted(p)) for p in parts)
        block_of = [-1] * n
        for bi, blk in enumerate(blocks):
            for v in blk:
                if not 0 <= v < n:
                    raise PreconditionError(f"vertex {v} out of range")
                if block_of[v] >= 0:
                    raise PreconditionError(f"vertex {v} lies in two blocks")
                block_of[v] = bi
        if -1 in block_of:
            raise PreconditionError(f"vertex {block_of.index(-1)} lies in no block")
        return cls(tuple(blocks), tuple(block_of))

    @classmethod
    def from_labels(cls, labels):
        parts = {}
        for v, lab in enumerate(labels):
            parts.setdefault(lab, []).append(v)
        return cls.from_partition(parts.values(), len(labels))

    def __len__(self):
        return len(self.blocks)

    @property
    def vertex_count(self):
        return len(self.block_of)

    @property
    def block_size(self):
        sizes = {len(b) for b in self.blocks}
        return sizes.pop() if len(sizes) == 1 else None

    def is_trivial(self):
        return len(self.blocks) in (1, self.vertex_count)

    def block_permutation(self, images):
        """Induced permutation of block indices, or None if blocks are not preserved."""
        out = []
        for blk in self.blocks:
            targets = {self.block_of[images[v]] for v in blk}
            if len(targets) != 1:
                return None
            out.append(targets.pop())
        if sorted(out) != list(range(len(self.blocks))):
            return None
        return tuple(out)

    def is_invariant(self, group):
        return all(self.block_permutation(x.images) is not None
                   for x in group.nontrivial_generators)

    def induced_action(self, group):
        gens = []
        for x in group.nontrivial_generators:
            bp = self.block_permutation(x.images)
            if bp is None:
                raise PreconditionError(f"{x} does not preserve the block system")
            gens.append(Permutation._raw(bp))
        return PermGroup(gens, len(self.blocks))


@dataclass
class ExtenderVerdict:
    """Outcome of the cover / pseudocover test for Cos(G,L,LgL) over Cos(G,H,HgH)."""

    kind: str  # cover | pseudocover | proper_multicover | valency_mismatch
    valency_gamma: int
    valency_sigma: int
    blocks: int
    block_size: int
    connected: bool
    witness_vertex: int = 0
    witness_orbits: tuple = ()
    point_action: bool = True
    notes: list = field(default_factory=list)

    def to_line(self):
        parts = [self.kind, str(self.valency_gamma), str(self.valency_sigma),
                 str(self.blocks), str(self.block_size),
                 "connected" if self.connected else "disconnected"]
        if self.kind == "pseudocover":
            shift = 1 if self.point_action else 0
            orbs = "|".join(",".join(str(p + shift) for p in sorted(o))
                            for o in self.witness_orbits)
            parts.append(f"alpha={self.witness_vertex + 1}")
            parts.append(f"orbits={orbs}")
        return " ".join(parts)


def _coset_orbit(chain, start, gens):
    """Orbit of the coset with key ``start`` under right multiplication by ``gens``."""
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for s in gens:
            y = coset_key(chain, mul(x, s))
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _coset_orbits(chain, points, gens):
    remaining = set(points)
    out = []
    for p in sorted(points):
        if p not in remaining:
            continue
        orb = _coset_orbit(chain, p, gens) & set(points)
        remaining -= orb
        out.append(frozenset(orb))
    return out


def _point_orbits(points, gens):
    remaining = set(points)
    out = []
    for p in sorted(points):
        if p not in remaining:
            continue
        orb = {p}
        stack = [p]
        while stack:
            x = stack.pop()
            for s in gens:
                y = s[x]
                if y not in orb:
                    orb.add(y)
                    stack.append(y)
        remaining -= orb
        out.append(frozenset(orb))
    return out


def subgroup_index_by_orbit(L, g):
    """|L : L ∩ L^g|, as the size of the L-orbit of the coset Lg."""
    chain = L.chain(tuple(range(L.degree)))
    gens = [x.images for x in L.nontrivial_generators]
    return len(_coset_orbit(chain, coset_key(chain, g.images), gens))


def classify_extender(spec, H=None):
    """Cover / pseudocover verdict for Cos(G,L,LgL) over Cos(G,H,HgH).

    With ``H`` omitted, H is the stabilizer of ``spec.base_point()`` and the
    quotient is read off the natural action on points (for a 2-transitive G
    it is the complete graph). Nothing is materialized.
    """
    G, L, g = spec.G, spec.L, spec.g
    point_action = H is None
    if point_action:
        omega = spec.base_point()
        H = G.point_stabilizer(omega)
    if not L.is_subgroup_of(H):
        raise PreconditionError("L is not contained in H")
    if not H.is_subgroup_of(G):
        raise PreconditionError("H is not contained in G")
    if L.order() >= H.order():
        raise PreconditionError("L must be a proper subgroup of H")
    connected = spec.generated_subgroup().order() == G.order()
    lgens = [x.images for x in L.nontrivial_generators]
    hgens = [x.images for x in H.nontrivial_generators]
    val_gamma = subgroup_index_by_orbit(L, g)
    if point_action:
        nbhd = _point_orbits([g[omega]], hgens)[0]
        val_sigma = len(nbhd)
        orbits = _point_orbits(nbhd, lgens)
    else:
        hchain = H.chain(tuple(range(H.degree)))
        nbhd = _coset_orbit(hchain, coset_key(hchain, g.images), hgens)
        val_sigma = len(nbhd)
        orbits = _coset_orbits(hchain, nbhd, lgens)
    blocks = G.order() // H.order()
    block_size = H.order() // L.order()
    if val_gamma > val_sigma:
        kind = "proper_multicover"
    elif val_gamma < val_sigma:
        kind = "valency_mismatch"
    elif len(orbits) == 1:
        kind = "cover"
    else:
        kind = "pseudocover"
    verdict = ExtenderVerdict(kind, val_gamma, val_sigma, blocks, block_size, connected,
                              witness_orbits=tuple(orbits), point_action=point_action)
    if not connected:
        verdict.notes.append("disconnected: <L, g> is a proper subgroup of G")
    return verdict


def blocks_from_overgroup(spec, H):
    """Blocks of [G : L] given by the fibres of Lx -> Hx."""
    if not spec.L.is_subgroup_of(H):
        raise PreconditionError("L is not contained in H")
    if not H.is_subgroup_of(spec.G):
        raise PreconditionError("H is not contained in G")
    table = spec.table()
    hchain = H.chain(tuple(range(H.degree)))
    labels = [coset_key(hchain, r) for r in table.reps]
    blocks = BlockSystem.from_labels(labels)
    expected = spec.G.order() // H.order()
    if len(blocks) != expected or blocks.block_size != H.order() // spec.L.order():
        raise RuntimeError("block system does not match the index formulas")
    if len(blocks) in (1, len(table)):
        log.info("trivial block system (%d blocks)", len(blocks))
    return blocks


def blocks_from_normal_orbits(gamma, X, N):
    """Orbits of N, where N is normal in X and X acts on ``gamma``."""
    if X.degree != gamma.n or N.degree != gamma.n:
        raise PreconditionError("groups do not act on the graph's vertex set")
    for x in X.nontrivial_generators:
        if not gamma.is_automorphism(x.images):
            raise PreconditionError(f"{x} is not an automorphism of the graph")
    for y in N.nontrivial_generators:
        if not X.contains(y):
            raise PreconditionError("N is not a subgroup of X")
        for x in X.nontrivial_generators:
            if not N.contains(y ** x):
                raise PreconditionError("N is not normal in X")
    blocks = BlockSystem.from_partition(N.orbits(), gamma.n)
    if not blocks.is_invariant(X):
        raise RuntimeError("orbits of a normal subgroup are not X-invariant")
    return blocks


def quotient_graph(gamma, blocks, group=None):
    """Blocks adjacent iff some edge joins them. Intra-block edges are dropped;
    with ``group`` given the blocks are required to be independent sets."""
    edges = set()
    bo = blocks.block_of
    for u, v in gamma.edges():
        bu, bv = bo[u], bo[v]
        if bu == bv:
            if group is not None:
                raise PreconditionError(f"edge ({u}, {v}) inside a block")
            continue
        edges.add((min(bu, bv), max(bu, bv)))
    return Graph(len(blocks), sorted(edges))


def matching_report(gamma, blocks):
    """(ok, reason): is Gamma[B, C] a perfect matching for every adjacent pair?"""
    if blocks.block_size is None:
        return False, "blocks have unequal sizes"
    bo = blocks.block_of
    adjacent = {}
    for v in range(gamma.n):
        counts = {}
        for w in gamma.adj[v]:
            counts[bo[w]] = counts.get(bo[w], 0) + 1
        for c, k in counts.items():
            if c == bo[v]:
                return False, f"edge inside block {c}"
            if k != 1:
                return False, f"vertex {v} has {k} neighbours in block {c}"
            adjacent.setdefault(bo[v], set()).add(c)
    # every vertex of B must meet every block adjacent to B
    for v in range(gamma.n):
        want = adjacent.get(bo[v], set())
        have = {bo[w] for w in gamma.adj[v]}
        if have != want:
            missing = sorted(want - have)
            return False, f"vertex {v} has no neighbour in block(s) {missing}"
    return True, "perfect matchings"


def matching_check(gamma, blocks):
    ok, reason = matching_report(gamma, blocks)
    if not ok:
        log.debug("matching check failed: %s", reason)
    return ok


@dataclass
class ThreeStabilizers:
    alpha_B: frozenset
    A_beta: frozenset
    alpha_beta: frozenset

    @property
    def pairwise_different(self):
        return len({self.alpha_B, self.A_beta, self.alpha_beta}) == 3


def three_stabilizers(spec, H=None, cap=DEFAULT_ELEMENT_CAP):
    """G_{alpha B}, G_{A beta}, G_{alpha beta} for alpha = L, beta = Lg, A = H, B = Hg."""
    G, L, g = spec.G, spec.L, spec.g
    if H is None:
        H = G.point_stabilizer(spec.base_point())
    Lg = L.conjugate(g)
    Hg = H.conjugate(g)
    return ThreeStabilizers(
        alpha_B=frozenset(intersect_small(L, Hg, cap).element_tuples(cap)),
        A_beta=frozenset(intersect_small(H, Lg, cap).element_tuples(cap)),
        alpha_beta=frozenset(intersect_small(L, Lg, cap).element_tuples(cap)),
    )


def is_faithful_on_blocks(X, blocks):
    """True iff the kernel of X acting on the blocks is trivial."""
    return blocks.induced_action(X).order() == X.order()


def block_kernel(X, blocks, cap=DEFAULT_ELEMENT_CAP):
    """Kernel of the action of X on the block set."""
    target = X.order() // blocks.induced_action(X).order()
    if target == 1:
        return PermGroup.trivial(X.degree)
    kept = [t for t in X.element_tuples(cap)
            if all(blocks.block_of[t[b[0]]] == i and
                   all(blocks.block_of[t[v]] == i for v in b)
                   for i, b in enumerate(blocks.blocks))]
    kernel = group_from_elements(kept, X.degree)
    if kernel.order() != target:
        raise RuntimeError("block kernel order does not match |X| / |X^B|")
    return kernel


@dataclass
class NormalQuotient:
    graph: Graph
    blocks: BlockSystem
    kind: str  # normal_cover | multicover
    valency_gamma: int
    valency_quotient: int


def normal_quotient(gamma, X, N):
    """Gamma_N and whether Gamma is a normal cover of it."""
    blocks = blocks_from_normal_orbits(gamma, X, N)
    q = quotient_graph(gamma, blocks, group=X)
    vg, vq = valency(gamma), valency(q)
    if vg % vq:
        raise RuntimeError(f"val(Gamma_N) = {vq} does not divide val(Gamma) = {vg}")
    kind = "normal_cover" if vg == vq else "multicover"
    return NormalQuotient(q, blocks, kind, vg, vq)


@dataclass
class NormalCoverResult:
    status: str  # true | false | inconclusive
    N: PermGroup | None = None
    blocks: BlockSystem | None = None
    reason: str = ""

    def __bool__(self):
        return self.status == "true"


def is_normal_cover_search(gamma, target_quotient_order, cap=DEFAULT_ELEMENT_CAP):
    """Look for N normal in Aut(Gamma) whose orbits give a complete quotient
    on ``target_quotient_order`` vertices of the same valency."""
    aut = automorphism_group(gamma)
    try:
        normals = normal_subgroups_small(aut, cap)
    except CapExceeded as exc:
        return NormalCoverResult("inconclusive", reason=str(exc))
    vg = valency(gamma)
    for N in normals:
        if N.is_trivial():
            continue
        orbits = N.orbits()
        if len(orbits) != target_quotient_order:
            continue
        blocks = BlockSystem.from_partition(orbits, gamma.n)
        if blocks.block_size is None:
            continue
        q = quotient_graph(gamma, blocks)
        if complete_check(q) and valency(q) == vg and matching_check(gamma, blocks):
            return NormalCoverResult("true", N, blocks, f"|N| = {N.order()}")
    return NormalCoverResult(
        "false", reason=f"none of {len(normals)} normal subgroups of Aut qualifies")


@dataclass
class Factorization:
    kernel: PermGroup
    intermediate: Graph
    normal_cover: bool
    intermediate_is_cover: bool
    faithful: bool


def factor_through_kernel(gamma, X, blocks, cap=DEFAULT_ELEMENT_CAP):
    """Split a cover Gamma -> Gamma_B through Gamma_N, N the block kernel of X."""
    N = block_kernel(X, blocks, cap)
    nq = normal_quotient(gamma, X, N)
    # blocks of Gamma_B seen on Gamma_N's vertices
    labels = [blocks.block_of[orb[0]] for orb in nq.blocks.blocks]
    induced = BlockSystem.from_labels(labels)
    x_bar = nq.blocks.induced_action(X)
    faithful = is_faithful_on_blocks(x_bar, induced)
    sigma = quotient_graph(nq.graph, induced, group=x_bar)
    is_cover = (matching_check(nq.graph, induced)
                and valency(nq.graph) == valency(sigma))
    return Factorization(N, nq.graph, nq.kind == "normal_cover", is_cover, faithful)


@dataclass
class CrossCheck:
    verdict: ExtenderVerdict
    matching: bool
    stabilizers_distinct: bool

    @property
    def agree(self):
        """Orbit test, matching test and stabilizer test give the same answer."""
        if self.verdict.kind == "cover":
            return self.matching and not self.stabilizers_distinct
        if self.verdict.kind == "pseudocover":
            return not self.matching and self.stabilizers_distinct
        return not self.matching


def cross_check(spec, H=None, cap=DEFAULT_ELEMENT_CAP):
    """Run the three equivalent cover tests on a materialized instance."""
    verdict = classify_extender(spec, H)
    if H is None:
        H = spec.G.point_stabilizer(spec.base_point())
    graph = spec.graph()
    blocks = blocks_from_overgroup(spec, H)
    stabs = three_stabilizers(spec, H, cap)
    return CrossCheck(verdict, matching_check(graph, blocks), stabs.pairwise_different)
