import json
import subprocess
import sys
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from gptlab import cli, core, documents
from gptlab.errors import DocumentError


def run(args, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_rational_parsing():
    assert documents.parse_rational("3/4") == F(3, 4)
    assert documents.parse_rational("0.25") == F(1, 4)
    assert documents.parse_rational(-2) == -2
    with pytest.raises(DocumentError):
        documents.parse_rational(True)
    with pytest.raises(DocumentError):
        documents.parse_rational("x/2")
    with pytest.raises(DocumentError):
        documents.parse_space('{"type": "polytope", "vertices": [[0.5, 0], [1, 1]]}')


def test_ball_accepts_decimal_numbers_exactly():
    space, canon = documents.parse_space('{"type": "ball", "dim": 2, "center": [0.1, 0], "radius": 0.5}')
    assert space.center == (F(1, 10), 0) and space.radius == F(1, 2)
    assert canon["center"] == ["1/10", 0] and canon["radius"] == "1/2"


@pytest.mark.parametrize("text", [
    "not json", '{"type": "torus"}', '{"type": "polytope", "vertices": []}',
    '{"type": "polytope", "vertices": [[0, 0], [1]]}', '{"type": "generator", "name": "hat"}',
    '{"type": "ball", "dim": 2, "center": [0, 0, 0]}', '{"type": "ball", "radius": -1}',
])
def test_bad_documents(text):
    with pytest.raises(DocumentError):
        documents.parse_space(text)


rat = st.fractions(min_value=-10, max_value=10, max_denominator=12)


@st.composite
def documents_st(draw):
    kind = draw(st.sampled_from(["polytope", "ball", "generator"]))
    if kind == "polytope":
        d = draw(st.integers(1, 3))
        verts = draw(st.lists(st.tuples(*[rat] * d), min_size=1, max_size=5))
        enc = draw(st.sampled_from([str, lambda x: f"{x.numerator}/{x.denominator}"]))
        return {"type": "polytope", "vertices": [[enc(x) for x in v] for v in verts]}
    if kind == "ball":
        d = draw(st.sampled_from([2, 3]))
        return {"type": "ball", "dim": d, "center": [str(draw(rat)) for _ in range(d)],
                "radius": str(draw(st.fractions(min_value=F(1, 10), max_value=5, max_denominator=12)))}
    name = draw(st.sampled_from(["simplex", "cube", "polygon"]))
    key = {"simplex": "c", "cube": "d", "polygon": "n"}[name]
    return {"type": "generator", "name": name, "params": {key: draw(st.integers(3, 4))}}


@given(documents_st())
def test_document_round_trip(doc):
    space, canon = documents.parse_space(doc)
    space2, canon2 = documents.parse_space(documents.serialize(canon))
    assert canon2 == canon
    assert space2 == space
    # a document built from the space itself also round-trips
    again = documents.space_document(space)
    assert documents.parse_space(documents.serialize(again))[1] == again


def test_analyze_simplex(capsys):
    code, out, _ = run(["analyze", "simplex:c=3", "--json"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["is_simplex"] and rep["c"] == 3 and rep["satisfies_p5"]
    assert rep["p6"] == {"status": "Holds"} and rep["classification_tag"] == "classical"
    assert rep["invariant_state"] == ["1/3", "1/3", "1/3"]


def test_analyze_square_and_ball(capsys):
    _, out, _ = run(["analyze", '{"type":"generator","name":"cube","params":{"d":2}}', "--json"], capsys)
    rep = json.loads(out)
    assert rep["c"] == 2 and rep["satisfies_p5"] and rep["p6"]["status"] == "FailsWith"
    assert "counterexample" in rep["p6"] and rep["classification_tag"] == "other"
    assert rep["automorphism_group_order"] == 8
    _, out, _ = run(["analyze", "ball:dim=3", "--json"], capsys)
    rep = json.loads(out)
    assert rep["c"] == 2 and rep["p6"]["status"] == "Holds"
    assert rep["classification_tag"] == "qubit-like-ball"
    assert rep["num_pure_states"] == "infinite" and rep["automorphism_group_order"] == "continuous"


def test_analyze_is_deterministic_and_seed_env(capsys, monkeypatch):
    _, a, _ = run(["analyze", "polygon:n=6", "--json", "--seed", "3"], capsys)
    _, b, _ = run(["analyze", "polygon:n=6", "--json", "--seed", "3"], capsys)
    assert a == b
    monkeypatch.setenv(cli.SEED_ENV, "3")
    _, c, _ = run(["analyze", "polygon:n=6", "--json", "--seed", "99"], capsys)
    assert c == a


def test_distance(capsys):
    _, out, _ = run(["distance", "simplex:c=3", "1,0,0", "0,1,0", "--json"], capsys)
    assert json.loads(out) == {"kolmogorov": 1, "success_probability": 1, "identity_D_eq_2P_minus_1": True}
    _, out, _ = run(["distance", "cube:d=2", "1/2,1/2", "[\"1/2\", \"1/2\"]", "--json"], capsys)
    assert json.loads(out)["kolmogorov"] == 0 and json.loads(out)["success_probability"] == "1/2"
    _, out, _ = run(["distance", "ball", "[0,0,1]", "0,0,-1", "--json"], capsys)
    rep = json.loads(out)
    assert rep["kolmogorov"] == pytest.approx(1) and rep["success_probability"] == pytest.approx(1)


def test_text_table(capsys):
    code, out, _ = run(["distance", "simplex:c=2", "1,0", "1/2,1/2"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["kolmogorov", "1/2"]
    assert len({line.index(line.split()[1]) for line in lines}) == 1


def test_space_from_file_and_stdin(tmp_path, capsys, monkeypatch):
    path = tmp_path / "sq.json"
    path.write_text('{"type":"polytope","vertices":[[0,0],[1,0],[0,1],[1,1]]}')
    code, out, _ = run(["symmetry", str(path), "--json"], capsys)
    assert code == 0 and json.loads(out)["automorphism_group_order"] == 8
    code, out, _ = run(["entropy", "-", "1/2,1/2", "--json"], capsys,
                       stdin='{"type":"generator","name":"simplex","params":{"c":2}}', monkeypatch=monkeypatch)
    assert code == 0 and json.loads(out)["entropy"] == pytest.approx(1)


def test_distinguish_and_decompose(capsys):
    _, out, _ = run(["distinguish", "cube:d=2", "0,0", "1,1", "--json"], capsys)
    assert json.loads(out)["distinguishable"] is True
    _, out, _ = run(["distinguish", "cube:d=2", "0,0", "1,0", "0,1", "--json"], capsys)
    assert json.loads(out) == {"distinguishable": False}
    _, out, _ = run(["decompose", "ball", "0,0,1/2", "--json"], capsys)
    rep = json.loads(out)
    assert rep["weights"] == ["3/4", "1/4"]
    _, out, _ = run(["decompose", "cube:d=2", "1/4,1/2", "--json"], capsys)
    assert json.loads(out) == {"found": False}


def test_exit_codes(capsys):
    assert run(["analyze", "nope.json"], capsys)[0] == cli.EXIT_PARSE
    assert run(["analyze", '{"type":"polytope","vertices":[[0.5]]}'], capsys)[0] == cli.EXIT_PARSE
    assert run(["entropy", "ball:dim=4", "0,0,0,0"], capsys)[0] == cli.EXIT_UNSUPPORTED
    assert run(["distance", "simplex:c=3", "1,1,0", "0,1,0"], capsys)[0] == cli.EXIT_DOMAIN
    assert run(["distance", "simplex:c=3", "1,0", "0,1,0"], capsys)[0] == cli.EXIT_DOMAIN
    assert run(["entropy", "simplex:c=3", "1,,0"], capsys)[0] == cli.EXIT_PARSE
    with pytest.raises(SystemExit) as exc:
        cli.main(["bogus"])
    assert exc.value.code == 2


def test_verify_simplices_and_fault(capsys):
    code, out, _ = run(["verify", "--corpus", "simplices", "--random", "2", "--json"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["passed"]
    p6 = [r for r in rep["results"] if r["check"].startswith("P6 iff")]
    assert p6 and all("p6=Holds" in r["detail"] for r in p6)
    code, _, _ = run(["verify", "--corpus", "simplices", "--random", "1", "--inject-fault"], capsys)
    assert code == cli.EXIT_VERIFY


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gptlab.cli", "distance", "simplex:c=2", "1,0", "0,1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "kolmogorov" in proc.stdout
