import networkx as nx

from symcover.cli import main
from symcover.graph import automorphism_group, import_graph, valency


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_cube(capsys, tmp_path):
    path = tmp_path / "cube.g6"
    code, out, _ = run(capsys, "construct", "coversn", "--n", "4", "-o", str(path))
    assert code == 0
    assert out.startswith("cover n=4 vertices=8 valency=3 quotient_valency=3 |G|=24")
    assert "connected=true" in out
    data = path.read_bytes()
    assert data == b"GsT`_[\n"
    g = import_graph(data, "graph6")
    assert automorphism_group(g).order() == 48
    h = nx.from_graph6_bytes(data.strip())
    assert nx.is_isomorphic(h, nx.hypercube_graph(3))


def test_construct_to_stdout(capsysbinary):
    code = main(["construct", "coversn", "--n", "4", "--format", "edgelist"])
    out = capsysbinary.readouterr().out
    assert code == 0
    edges = [line for line in out.decode().splitlines() if line and line[0].isdigit()]
    assert len(edges) == 12


def test_construct_k2m_and_kab(capsys):
    code, out, _ = run(capsys, "construct", "k2m", "--m", "3")
    assert code == 0 and out.startswith("pseudocover n=7 vertices=28 valency=6")
    assert "|G|=168" in out
    code, out, _ = run(capsys, "construct", "kab", "--a", "2", "--b", "3")
    assert code == 0 and "vertices=840" in out and "group=symmetric" in out
    lines = out.splitlines()
    assert lines[1].startswith("verdict: pseudocover 6 6 7 120 connected")


def test_construct_custom_L(capsys, tmp_path):
    path = tmp_path / "g.dot"
    code, out, _ = run(capsys, "construct", "coversn", "--n", "5", "--L", "(2,3,4,5);(3,5)",
                       "--format", "dot", "-o", str(path))
    assert code == 0 and "vertices=15" in out
    g = import_graph(path.read_bytes(), "dot")
    assert g.n == 15 and valency(g) == 4


def test_construct_recipe(capsys, tmp_path):
    path = tmp_path / "r.txt"
    path.write_text("kind = kab\na = 2\nb = 2\n")
    code, out, _ = run(capsys, "construct", "kab", "--recipe", str(path))
    assert code == 0 and "vertices=30" in out
    code, _, err = run(capsys, "construct", "k2m", "--recipe", str(path))
    assert code == 2 and "recipe" in err


def test_construct_errors(capsys):
    assert run(capsys, "construct", "coversn", "--n", "3")[0] == 2
    assert run(capsys, "construct", "k2m")[0] == 2
    assert run(capsys, "construct", "kab", "--a", "4", "--b", "3")[0] == 2
    assert run(capsys, "construct", "coversn", "--n", "0")[0] == 2
    assert run(capsys, "construct", "nope")[0] == 2
    assert run(capsys)[0] == 2
    # the summary line is orbit-based; the cap applies once the graph is materialized
    code, out, _ = run(capsys, "construct", "coversn", "--n", "6", "--vertex-cap", "50")
    assert code == 0 and "vertices=144" in out
    code, _, err = run(capsys, "construct", "coversn", "--n", "6", "--vertex-cap", "50",
                       "--format", "graph6", "-o", "-")
    assert code == 3 and "error" in err


def test_cap_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("SYMCOVER_VERTEX_CAP", "20")
    assert run(capsys, "construct", "coversn", "--n", "5", "--format", "graph6")[0] == 3
    monkeypatch.setenv("SYMCOVER_VERTEX_CAP", "abc")
    assert run(capsys, "construct", "coversn", "--n", "5")[0] == 2


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "covers", "--n", "5")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("# covers n=5 ambient=S5 order=120 classes=5")
    assert len(lines) == 6
    code, out, _ = run(capsys, "classify", "pseudocovers", "--n", "5", "--group", "A5")
    assert code == 0 and "classes=0" in out
    code, out, _ = run(capsys, "classify", "covers", "--n", "4", "--jobs", "2")
    assert code == 0 and "classes=1" in out


def test_classify_needs_explore(capsys):
    assert run(capsys, "classify", "covers", "--n", "6")[0] == 2
    assert run(capsys, "classify", "covers", "--n", "5", "--group", "M11")[0] == 2
    assert run(capsys, "classify", "covers", "--n", "5", "--element-cap", "10")[0] == 3


def test_classify_output_file(capsys, tmp_path):
    path = tmp_path / "out.txt"
    assert run(capsys, "classify", "covers", "--n", "4", "-o", str(path))[0] == 0
    assert path.read_text().startswith("# covers n=4 ambient=S4")


def test_verify_suites(capsys):
    code, out, _ = run(capsys, "verify", "table-k5")
    assert code == 0 and "table-k5: 3/3 checks passed" in out
    code, out, _ = run(capsys, "verify", "k2m", "--m-max", "4")
    assert code == 0 and out.splitlines()[-1].startswith("k2m:")
    assert all(line.startswith("PASS") for line in out.splitlines()[:-1])
    code, out, _ = run(capsys, "verify", "kab", "--a-max", "3", "--b-max", "3")
    assert code == 0
    code, out, _ = run(capsys, "verify", "complete", "--n", "4", "5", "6")
    assert code == 0 and "complete: 3/3" in out
    code, out, _ = run(capsys, "verify", "series", "--n-max", "5")
    assert code == 0 and "series: 2/2" in out
