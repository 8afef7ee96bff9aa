import pytest

from symcover.constructions import (
    K2mRecipe,
    KabRecipe,
    build_abelian_pseudocover,
    build_dihedral_pseudocover,
)
from symcover.cosetgraph import CosetGraphSpec, induced_action_on_cosets
from symcover.errors import PreconditionError
from symcover.graph import (
    Graph,
    automorphism_group,
    complete_check,
    is_connected,
    is_isomorphic,
    valency,
)
from symcover.group import PermGroup, normal_subgroups_small
from symcover.perm import parse_cycles
from symcover.quotient import (
    BlockSystem,
    block_kernel,
    blocks_from_normal_orbits,
    blocks_from_overgroup,
    classify_extender,
    cross_check,
    factor_through_kernel,
    is_faithful_on_blocks,
    is_normal_cover_search,
    matching_check,
    normal_quotient,
    quotient_graph,
    three_stabilizers,
)

# the five S5 cover classes; row 3 uses the g that makes <L, g> = S5 (see README)
ROWS = {
    1: (["(2,3)(4,5)", "(2,4)(3,5)"], "(1,2)"),
    2: (["(2,3,4,5)"], "(1,2)"),
    3: (["(2,3,4,5)"], "(1,2)(3,5)"),
    4: (["(2,3,4,5)", "(3,5)"], "(1,2)"),
    5: (["(2,3,4)", "(2,3)(4,5)"], "(1,2)"),
}


def s5_spec(L, g):
    return CosetGraphSpec(PermGroup.symmetric(5), PermGroup.from_cycles(5, L),
                          parse_cycles(g, 5))


def cube_spec():
    return CosetGraphSpec(PermGroup.symmetric(4), PermGroup.from_cycles(4, ["(2,3,4)"]),
                          parse_cycles("(1,2)", 4))


def exk5_spec():
    return build_dihedral_pseudocover(K2mRecipe(2))


def stab1(G):
    return G.point_stabilizer(0)


def test_block_system_validation():
    b = BlockSystem.from_partition([[2, 0], [1, 3]], 4)
    assert b.blocks == ((0, 2), (1, 3)) and b.block_of == (0, 1, 0, 1)
    assert b.block_size == 2 and not b.is_trivial()
    with pytest.raises(PreconditionError):
        BlockSystem.from_partition([[0, 1], [1, 2]], 3)
    with pytest.raises(PreconditionError):
        BlockSystem.from_partition([[0, 1]], 3)
    assert BlockSystem.from_partition([[0], [1, 2]], 3).block_size is None


def test_blocks_from_overgroup():
    sp = cube_spec()
    b = blocks_from_overgroup(sp, stab1(sp.G))
    assert len(b) == 4 and b.block_size == 2
    assert b.is_invariant(induced_action_on_cosets(sp))
    sp = exk5_spec()
    b = blocks_from_overgroup(sp, stab1(sp.G))
    assert len(b) == 5 and b.block_size == 6
    triv = blocks_from_overgroup(sp, sp.L)
    assert triv.is_trivial() and len(triv) == 30
    with pytest.raises(PreconditionError):
        blocks_from_overgroup(sp, PermGroup.from_cycles(5, ["(1,2)"]))


def test_quotient_graphs():
    sp = cube_spec()
    g = sp.graph()
    b = blocks_from_overgroup(sp, stab1(sp.G))
    q = quotient_graph(g, b, group=induced_action_on_cosets(sp))
    assert complete_check(q) and q.n == 4
    sp = exk5_spec()
    q = quotient_graph(sp.graph(), blocks_from_overgroup(sp, stab1(sp.G)))
    assert complete_check(q) and q.n == 5
    singles = BlockSystem.from_partition([[v] for v in range(g.n)], g.n)
    assert quotient_graph(g, singles) == g


def test_quotient_rejects_edges_inside_blocks_when_group_given():
    g = Graph(4, [(0, 1), (2, 3)])
    b = BlockSystem.from_partition([[0, 1], [2, 3]], 4)
    assert quotient_graph(g, b).edge_count() == 0
    with pytest.raises(PreconditionError):
        quotient_graph(g, b, group=PermGroup.trivial(4))


def test_classify_extender_cube():
    v = classify_extender(cube_spec())
    assert v.kind == "cover" and v.valency_gamma == v.valency_sigma == 3
    assert v.connected and v.blocks == 4 and v.block_size == 2
    assert v.to_line() == "cover 3 3 4 2 connected"


def test_classify_extender_k5_pseudocover_witness():
    v = classify_extender(exk5_spec())
    assert v.kind == "pseudocover"
    assert sorted(sorted(p + 1 for p in o) for o in v.witness_orbits) == [[2, 4], [3, 5]]
    assert v.to_line().endswith("orbits=2,4|3,5")


def test_classify_extender_kab_2_3():
    sp = build_abelian_pseudocover(KabRecipe(2, 3))
    assert sp.degree == 7 and sp.L.order() == 6
    v = classify_extender(sp)
    assert v.kind == "pseudocover" and v.valency_gamma == 6 and v.valency_sigma == 6


def test_classify_extender_explicit_overgroup_agrees():
    for sp in (cube_spec(), exk5_spec(), s5_spec(*ROWS[4])):
        a = classify_extender(sp)
        b = classify_extender(sp, stab1(sp.G))
        assert (a.kind, a.valency_gamma, a.valency_sigma) == (b.kind, b.valency_gamma, b.valency_sigma)
        assert len(a.witness_orbits) == len(b.witness_orbits)
        assert not b.point_action


def test_classify_extender_preconditions():
    sp = exk5_spec()
    with pytest.raises(PreconditionError):
        classify_extender(sp, sp.L)
    with pytest.raises(PreconditionError):
        classify_extender(sp, PermGroup.from_cycles(5, ["(1,2,3)"]))


def test_proper_multicover_and_mismatch_kinds():
    # the cube over the two A4-cosets: quotient K2, valency 3 over 1
    A4 = PermGroup.from_cycles(4, ["(2,3,4)", "(1,2)(3,4)"])
    v = classify_extender(cube_spec(), A4)
    assert v.kind == "proper_multicover"
    assert (v.valency_gamma, v.valency_sigma, v.blocks, v.block_size) == (3, 1, 2, 4)
    sp = CosetGraphSpec(PermGroup.symmetric(5), PermGroup.from_cycles(5, ["(2,3)"]),
                        parse_cycles("(1,2)(3,4)", 5))
    v = classify_extender(sp)
    assert v.valency_gamma == 2 and v.valency_sigma == 4 and v.kind == "valency_mismatch"


def test_disconnected_spec_flagged():
    # with g = (1,2)(3,4), <L, g> is F5 and the S5 coset graph splits
    sp = s5_spec(["(2,3,4,5)"], "(1,2)(3,4)")
    v = classify_extender(sp)
    assert v.kind == "cover" and not v.connected and v.notes
    assert "disconnected" in v.to_line()
    assert not is_connected(sp.graph())


def test_disconnected_pseudocover_matching():
    # two copies of the K5 pseudocover, block i of one copy merged with block i of the other
    sp = exk5_spec()
    g = sp.graph()
    b = blocks_from_overgroup(sp, stab1(sp.G))
    n = g.n
    doubled = Graph(2 * n, list(g.edges()) + [(u + n, v + n) for u, v in g.edges()])
    merged = BlockSystem.from_partition([list(blk) + [v + n for v in blk] for blk in b.blocks], 2 * n)
    assert not is_connected(doubled)
    assert complete_check(quotient_graph(doubled, merged))
    assert valency(doubled) == valency(quotient_graph(doubled, merged))
    assert not matching_check(doubled, merged)


def test_matching_check():
    sp = cube_spec()
    assert matching_check(sp.graph(), blocks_from_overgroup(sp, stab1(sp.G)))
    sp = exk5_spec()
    assert not matching_check(sp.graph(), blocks_from_overgroup(sp, stab1(sp.G)))
    # two disjoint K4s paired across copies form a (disconnected) cover of K4
    two = Graph(8, [(u, v) for c in (0, 4) for u in range(c, c + 4) for v in range(u + 1, c + 4)])
    pairs = BlockSystem.from_partition([[i, i + 4] for i in range(4)], 8)
    assert matching_check(two, pairs)
    bad = BlockSystem.from_partition([[0, 1], [2, 3], [4, 5], [6, 7]], 8)
    assert not matching_check(two, bad)
    assert not matching_check(two, BlockSystem.from_partition([[0], [1, 2, 3, 4, 5, 6, 7]], 8))


def _instances():
    specs = [cube_spec(), exk5_spec()]
    specs += [s5_spec(*row) for row in ROWS.values()]
    specs += [build_dihedral_pseudocover(K2mRecipe(3)),
              build_abelian_pseudocover(KabRecipe(2, 2)),
              build_abelian_pseudocover(KabRecipe(2, 3))]
    return specs


@pytest.mark.parametrize("idx", range(10))
def test_three_way_agreement(idx):
    sp = _instances()[idx]
    cc = cross_check(sp)
    assert cc.verdict.kind in ("cover", "pseudocover")
    assert cc.agree


def test_three_stabilizers_cover_vs_pseudocover():
    cover = three_stabilizers(cube_spec())
    assert cover.alpha_B == cover.alpha_beta and not cover.pairwise_different
    ps = three_stabilizers(exk5_spec())
    assert ps.pairwise_different


def _row_graph(row):
    return s5_spec(*ROWS[row]).graph()


def _normal_of_order(graph, order):
    aut = automorphism_group(graph)
    return aut, [N for N in normal_subgroups_small(aut) if N.order() == order]


def test_normal_orbits_row1():
    g = _row_graph(1)
    aut, Ns = _normal_of_order(g, 6)
    assert aut.order() == 720 and len(Ns) == 1
    b = blocks_from_normal_orbits(g, aut, Ns[0])
    assert len(b) == 5 and b.block_size == 6
    nq = normal_quotient(g, aut, Ns[0])
    assert complete_check(nq.graph) and nq.graph.n == 5 and nq.kind == "normal_cover"


def test_normal_orbits_row5():
    g = _row_graph(5)
    aut, Ns = _normal_of_order(g, 2)
    b = blocks_from_normal_orbits(g, aut, Ns[0])
    assert len(b) == 5 and b.block_size == 2


def test_normal_orbits_trivial_and_errors():
    g = _row_graph(4)
    aut = automorphism_group(g)
    triv = PermGroup.trivial(g.n)
    b = blocks_from_normal_orbits(g, aut, triv)
    assert len(b) == g.n
    nq = normal_quotient(g, aut, triv)
    assert nq.graph == g and nq.kind == "normal_cover"
    assert block_kernel(aut, b).is_trivial()
    not_normal = PermGroup([aut.generators[0]], g.n)
    if not all(not_normal.contains(x ** y) for x in not_normal.generators for y in aut.generators):
        with pytest.raises(PreconditionError):
            blocks_from_normal_orbits(g, aut, not_normal)
    with pytest.raises(PreconditionError):
        blocks_from_normal_orbits(g, PermGroup.symmetric(4), triv)


@pytest.mark.parametrize("row,expected", [(1, "true"), (2, "false"), (3, "false"),
                                          (4, "false"), (5, "true")])
def test_normal_cover_search(row, expected):
    res = is_normal_cover_search(_row_graph(row), 5)
    assert res.status == expected
    if expected == "true":
        q = quotient_graph(_row_graph(row), res.blocks)
        assert complete_check(q) and q.n == 5


def test_normal_cover_search_inconclusive_on_cap():
    res = is_normal_cover_search(_row_graph(1), 5, cap=100)
    assert res.status == "inconclusive" and "group order" in res.reason


def test_valency_divides_for_normal_quotients():
    for row in ROWS:
        g = _row_graph(row)
        aut = automorphism_group(g)
        for N in normal_subgroups_small(aut):
            orbit_of = {v: i for i, orb in enumerate(N.orbits()) for v in orb}
            if any(orbit_of[u] == orbit_of[v] for u, v in g.edges()):
                # arc-transitivity puts every edge inside an orbit: no quotient
                with pytest.raises(PreconditionError):
                    normal_quotient(g, aut, N)
                continue
            nq = normal_quotient(g, aut, N)
            assert valency(g) % valency(nq.graph) == 0
            if is_connected(g):
                assert is_connected(nq.graph)


def test_faithful_on_blocks():
    sp = s5_spec(*ROWS[2])
    X = induced_action_on_cosets(sp)
    b = blocks_from_overgroup(sp, stab1(sp.G))
    assert is_faithful_on_blocks(X, b)


def faith_instance():
    """S5 x Z2 on 7 points, L = D8 on {2..5}, g = (1,2)(6,7): a cover of K5
    whose group has a kernel of order 2 on the blocks."""
    X = PermGroup.from_cycles(7, ["(1,2,3,4,5)", "(1,2)", "(6,7)"])
    L = PermGroup.from_cycles(7, ["(2,3,4,5)", "(3,5)"])
    return CosetGraphSpec(X, L, parse_cycles("(1,2)(6,7)", 7), omega=0)


def test_factor_through_kernel():
    sp = faith_instance()
    assert sp.G.order() == 240 and sp.generated_subgroup().order() == 240
    verdict = classify_extender(sp)
    assert verdict.kind == "cover" and verdict.blocks == 5
    gamma = sp.graph()
    X = induced_action_on_cosets(sp)
    blocks = blocks_from_overgroup(sp, stab1(sp.G))
    assert matching_check(gamma, blocks)
    assert not is_faithful_on_blocks(X, blocks)
    fac = factor_through_kernel(gamma, X, blocks)
    assert fac.kernel.order() == 2
    assert fac.normal_cover and fac.intermediate_is_cover and fac.faithful
    assert fac.intermediate.n == 15
    assert is_isomorphic(fac.intermediate, _row_graph(4))
