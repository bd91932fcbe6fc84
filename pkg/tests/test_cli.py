import json

import pytest

from biinvariant.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_INPUT, EXIT_UNSTABLE, expand_powers, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--json", *argv)
    return code, json.loads(out)


@pytest.fixture
def path3_graph(tmp_path):
    f = tmp_path / "path3.graph"
    f.write_text("vertices: a b c\nedges: a-b b-c\n")
    return str(f)


@pytest.fixture
def path3_tree(tmp_path):
    f = tmp_path / "path3.tree"
    f.write_text("0 1\n1 2\n")
    return str(f)


def test_expand_powers():
    assert expand_powers("b4aB4") == "bbbbaBBBB"
    assert expand_powers("ab") == "ab"


def test_norm(capsys):
    assert run(capsys, "norm", "--alphabet", "ab", "abAB")[:2] == (0, "2")
    assert run(capsys, "norm", "--alphabet", "ab", "")[:2] == (0, "0")
    assert run(capsys, "norm", "b4aB4")[:2] == (0, "1")


def test_norm_witness(capsys):
    code, data = run_json(capsys, "norm", "--witness", "abA")
    assert code == 0 and data["norm"] == 1 and data["trivializing_sequence"] == [1]


def test_norm_graph(capsys, path3_graph):
    assert run(capsys, "norm", "--graph", path3_graph, "--kind", "artin", "acAC")[:2] == (0, "2")
    code, data = run_json(capsys, "norm", "--graph", path3_graph, "--kind", "coxeter", "--witness", "aca")
    assert code == 0 and data["norm"] == 1 and data["kind"] == "coxeter"


def test_norm_errors(capsys, path3_graph):
    code, _, err = run(capsys, "norm", "abc")
    assert code == EXIT_INPUT and "position 2" in err
    word = "ab" * 15
    assert run(capsys, "norm", "--graph", path3_graph, "--budget", "10", word)[0] == EXIT_BUDGET


def test_profile(capsys):
    assert run(capsys, "profile", "a", "5")[:2] == (0, "1 2 3 4 5")
    assert run(capsys, "profile", "", "3")[:2] == (0, "0 0 0")
    code, data = run_json(capsys, "profile", "abAB", "3")
    prof = data["profile"]
    assert prof[0] == 2 and prof == sorted(prof)


def test_embed_cube(capsys):
    code, out, _ = run(capsys, "embed", "--cube", "1", "--verify")
    assert code == 0 and "bbbbaBBBB" in out and "OK" in out
    code, data = run_json(capsys, "embed", "--cube", "0")
    assert code == 0 and data["images"] == {"": ""}
    code, data = run_json(capsys, "embed", "--cube", "2", "--verify")
    assert data["verified_pairs"] == 6 and data["violations"] == []


def test_embed_tree(capsys, path3_tree):
    code, data = run_json(capsys, "embed", path3_tree, "--verify")
    assert code == 0 and data["verified_pairs"] == 3 and data["violations"] == []
    assert data["cube"] == {"0": [], "1": [0], "2": [0, 1]}


def test_embed_errors(capsys, tmp_path):
    bad = tmp_path / "cycle.tree"
    bad.write_text("0 1\n1 2\n2 0\n")
    assert run(capsys, "embed", str(bad))[0] == EXIT_INPUT
    assert run(capsys, "embed", "--cube", "9")[0] == EXIT_INPUT
    assert run(capsys, "embed")[0] == EXIT_INPUT


def test_qm(capsys):
    assert run(capsys, "qm", "ab", "--homogenize", "ab")[:2] == (0, "1")
    assert run(capsys, "qm", "ab", "--homogenize", "a")[:2] == (0, "0")
    assert run(capsys, "qm", "ab", "BABA")[:2] == (0, "-2")
    code, data = run_json(capsys, "qm", "--dual", "ab,aB", "ab,aB")
    assert data["matrix"] == [[1, 0], [0, 1]] and data["identity"]


def test_qm_sandwich(capsys):
    code, data = run_json(capsys, "qm", "--sandwich=-4,3", "--trials", "200")
    assert code == 0 and data["holds"] and data["norm"] <= 2 * 7
    code, data = run_json(capsys, "qm", "--sandwich=1,0", "--C", "1", "--D", "0")
    assert code == EXIT_FAIL and not data["holds"]


def test_qm_nonstabilized_exit(capsys, monkeypatch):
    import biinvariant.quasi as qmod
    calls = iter(range(100))
    monkeypatch.setattr(qmod, "_increment", lambda q, core, N: next(calls))
    assert run(capsys, "qm", "ab", "--homogenize", "ab")[0] == EXIT_UNSTABLE


def test_bench(capsys):
    code, data = run_json(capsys, "bench", "50", "100", "200", "--repeats", "1")
    rows = data["rows"]
    assert [r["n"] for r in rows] == [50, 100, 200]
    assert rows[0]["ratio"] is None and all(r["ratio"] > 0 for r in rows[1:])
    assert rows[2]["table_cells"] == 200 * 201 // 2
    _, again = run_json(capsys, "bench", "50", "100", "200", "--repeats", "1")
    assert [r["norm"] for r in again["rows"]] == [r["norm"] for r in rows]
    code, out, _ = run(capsys, "bench", "40", "80", "--repeats", "1")
    assert "ratio" in out.splitlines()[0]


def test_witness(capsys):
    code, data = run_json(capsys, "witness", "lamplighter", "--n", "100")
    assert code == 0 and data["ok"]
    code, data = run_json(capsys, "witness", "heisenberg", "--n", "100")
    assert data["ok"] and data["z_exponent"] == 100
    code, data = run_json(capsys, "witness", "bs", "--p", "2", "--q", "5")
    assert data["relation"] and data["commutator_exponent"] == 3


def test_global_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "norm", "abc", "--alphabet", "abc", "--json")
    assert json.loads(out)["norm"] == 3
