"""Cross-module invariants checked on the graphs used by the acceptance suite."""
import random

import pytest

from symcover.cli import main
from symcover.constructions import (
    K2mRecipe,
    KabRecipe,
    build_abelian_pseudocover,
    build_dihedral_pseudocover,
    build_faithful_cover,
    coversn_preset,
)
from symcover.cosetgraph import CosetGraphSpec, induced_action_on_cosets, is_connected_cosetgraph
from symcover.graph import (
    automorphism_group,
    canonical_form,
    export,
    import_graph,
    is_isomorphic,
    is_normal_subgroup_of_aut,
)
from symcover.group import PermGroup, normal_closure
from symcover.perm import parse_cycles

S5_ROWS = [
    (["(2,3)(4,5)", "(2,4)(3,5)"], "(1,2)"),
    (["(2,3,4,5)"], "(1,2)"),
    (["(2,3,4,5)"], "(1,2)(3,5)"),
    (["(2,3,4,5)", "(3,5)"], "(1,2)"),
    (["(2,3,4)", "(2,3)(4,5)"], "(1,2)"),
]


def s5_spec(L, g):
    return CosetGraphSpec(PermGroup.symmetric(5), PermGroup.from_cycles(5, L),
                          parse_cycles(g, 5))


def acceptance_specs():
    specs = [s5_spec(*row) for row in S5_ROWS]
    specs += [build_faithful_cover(coversn_preset("cyclic", n)) for n in (4, 6)]
    specs += [build_dihedral_pseudocover(K2mRecipe(m)) for m in (2, 3)]
    specs += [build_abelian_pseudocover(KabRecipe(2, 2))]
    return specs


@pytest.fixture(scope="module")
def graphs():
    return [sp.graph() for sp in acceptance_specs()]


def arc_orbit_count(graph, group):
    arcs = {(u, v) for u, v in graph.edges()} | {(v, u) for u, v in graph.edges()}
    seen, count = set(), 0
    for arc in sorted(arcs):
        if arc in seen:
            continue
        count += 1
        stack = [arc]
        seen.add(arc)
        while stack:
            u, v = stack.pop()
            for x in group.generators:
                img = (x[u], x[v])
                if img not in seen:
                    seen.add(img)
                    stack.append(img)
    return count, seen == arcs


def test_canonical_form_stable_under_500_relabelings(graphs):
    rng = random.Random(11)
    digests = [canonical_form(g).digest for g in graphs]
    for trial in range(500):
        i = trial % len(graphs)
        g = graphs[i]
        lab = list(range(g.n))
        rng.shuffle(lab)
        assert canonical_form(g.relabel(lab)).digest == digests[i]


@pytest.mark.parametrize("fmt", ["graph6", "dot", "edgelist"])
def test_format_roundtrip_on_acceptance_graphs(graphs, fmt):
    for g in graphs:
        assert import_graph(export(g, fmt), fmt) == g


def test_induced_action_is_arc_transitive():
    for sp in acceptance_specs():
        g = sp.graph()
        count, closed = arc_orbit_count(g, induced_action_on_cosets(sp))
        assert count == 1 and closed


def test_induced_action_faithful_for_row4():
    sp = s5_spec(*S5_ROWS[3])
    act = induced_action_on_cosets(sp)
    assert act.degree == 15 and act.order() == 120
    assert automorphism_group(sp.graph()).order() == 120
    assert is_normal_subgroup_of_aut(sp.graph(), act)


def test_s5_normal_in_aut_for_small_rows():
    sp = s5_spec(*S5_ROWS[0])
    g = sp.graph()
    assert automorphism_group(g).order() == 720
    assert is_normal_subgroup_of_aut(g, induced_action_on_cosets(sp))


def test_rows_2_and_3_differ():
    a, b = s5_spec(*S5_ROWS[1]).graph(), s5_spec(*S5_ROWS[2]).graph()
    assert not is_isomorphic(a, b)
    assert canonical_form(a).digest != canonical_form(b).digest


def test_disconnected_when_generated_subgroup_is_small():
    # <(2,3,4), (3,4)> is Sym{2,3,4}, of order 6
    sp = s5_spec(["(2,3,4)"], "(3,4)")
    assert sp.generated_subgroup().order() == 6
    assert not is_connected_cosetgraph(sp)
    cube_in_s4 = CosetGraphSpec(PermGroup.from_cycles(4, ["(1,2)", "(1,2,3,4)", "(1,2,3)"]),
                                PermGroup.from_cycles(4, ["(2,3,4)"]), parse_cycles("(1,2)", 4))
    assert is_connected_cosetgraph(cube_in_s4)


def test_normal_closure_of_3_cycle_is_a5():
    S5 = PermGroup.symmetric(5)
    N = normal_closure(S5, [parse_cycles("(1,2,3)", 5)])
    assert N.order() == 60 and N.is_subgroup_of(PermGroup.alternating(5))


def test_kab_2_2_point_stabilizer():
    sp = build_abelian_pseudocover(KabRecipe(2, 2))
    P = sp.G.point_stabilizer(4)
    assert P.order() == 24
    assert PermGroup.from_cycles(5, ["(1,2)", "(1,2,3,4)"]).is_subgroup_of(P)


def test_kab_2_3_orbits_of_L():
    r = KabRecipe(2, 3)
    L = PermGroup([r.x(), r.y()], 7)
    assert sorted(sorted(o) for o in L.orbits()) == [[0, 1, 2], [3, 4], [5], [6]]
    assert not L.is_transitive()


def test_cli_k5_pseudocover_routes_agree(tmp_path, capsys):
    a, b = tmp_path / "a.g6", tmp_path / "b.g6"
    assert main(["construct", "k2m", "--m", "2", "-o", str(a)]) == 0
    out = capsys.readouterr().out
    assert "vertices=30" in out and "|G|=120" in out and out.startswith("pseudocover")
    assert main(["construct", "kab", "--a", "2", "--b", "2", "-o", str(b)]) == 0
    ga, gb = import_graph(a.read_bytes()), import_graph(b.read_bytes())
    assert is_isomorphic(ga, gb)


def test_cli_empty_reports_exit_zero(capsys):
    assert main(["classify", "pseudocovers", "--n", "4", "--group", "S4"]) == 0
    out = capsys.readouterr().out
    assert "classes=0" in out and len(out.strip().splitlines()) == 1


def test_cli_full_verify_suites(capsys):
    assert main(["verify", "k2m", "--m-max", "8"]) == 0
    assert main(["verify", "kab", "--a-max", "5", "--b-max", "5"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
