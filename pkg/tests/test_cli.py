import json

import pytest

from toric_em.cli import main
from toric_em.corpus import corpus_document, corpus_names
from toric_em.document import document_from_polytope, parse_document, parse_polynomial, DocumentError


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_count_square2(capsys):
    code, out = run(capsys, "count", "--corpus", "square2")
    assert code == 0
    assert "square2: oracle=9 brion=9 localization=9 OK" in out.out


def test_weighted_count_triangle(capsys):
    code, out = run(capsys, "count", "--corpus", "mult2_triangle", "--weighted")
    assert code == 0 and "oracle=4 + y brion=4 + y localization=4 + y OK" in out.out


def test_interior_count(capsys):
    code, out = run(capsys, "count", "--corpus", "unit_square", "--interior")
    assert code == 0 and "oracle=0 brion=0 localization=0" in out.out


def test_em_examples(capsys):
    assert run(capsys, "em", "--corpus", "segment2", "--variant", "todd", "--f", "1")[1].out.startswith("segment2 todd f=1 LEFT=3 RIGHT=3 OK")
    assert "LEFT=3 RIGHT=3 OK" in run(capsys, "em", "--corpus", "mult2_triangle", "--variant", "cs", "--f", "x2")[1].out
    assert "LEFT=1 RIGHT=1 OK" in run(capsys, "em", "--corpus", "square2", "--variant", "dual", "--f", "1")[1].out


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "em", "--corpus", "square2", "--f", "x1", "--order", "1")[0] == 4
    assert run(capsys, "em", "--corpus", "kite", "--f", "x1")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"lattice_dim": 2, "vertices": [[0, 0], [1]]}')
    assert run(capsys, "count", str(bad))[0] == 2
    assert run(capsys, "em", "--corpus", "square2", "--f", "x1/x2")[0] == 2
    assert run(capsys, "count")[0] == 2


def test_mismatch_exit(capsys, monkeypatch):
    import toric_em.cli as cli

    monkeypatch.setattr(cli, "_count_routes", lambda P, w, i: (1, 1, 2))
    assert run(capsys, "count", "--corpus", "std_triangle")[0] == 3


def test_corpus_run_skips_inapplicable(capsys):
    code, out = run(capsys, "em", "--corpus", "default", "--variant", "todd", "--f", "x1")
    assert code == 0 and "kite: skipped" in out.out


def test_verify_suites(capsys):
    code, out = run(capsys, "verify", "--corpus", "mult2_triangle", "--molien")
    assert code == 0 and out.out.count("molien vertex") == 3
    code, out = run(capsys, "verify", "--corpus", "unit_square", "--global-class")
    assert code == 0 and "(1+y)^(2-4)" in out.out
    code, out = run(capsys, "verify", "--corpus", "std_triangle", "--hrr", "--rel1")
    assert code == 0 and "deviation 0 OK" in out.out


def test_report_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "count", "--corpus", "default", "--weighted", "--report", str(a))
    run(capsys, "count", "--corpus", "default", "--weighted", "--report", str(b))
    assert a.read_bytes() == b.read_bytes()
    doc = json.loads(a.read_text())
    assert doc["status"] == "OK" and len(doc["records"]) == len(corpus_names())
    assert "timing" not in doc["records"][0]


def test_timing_is_opt_in(capsys, tmp_path):
    r = tmp_path / "r.json"
    run(capsys, "count", "--corpus", "segment1", "--report", str(r), "--timing")
    assert "timing" in json.loads(r.read_text())["records"][0]


def test_document_input_and_round_trip(capsys, tmp_path):
    P = corpus_document("kite").polytope()
    text = document_from_polytope(P).dumps()
    again = parse_document(text).polytope()
    assert again.vertices == P.vertices and again.facets == P.facets
    path = tmp_path / "kite.json"
    path.write_text(text)
    code, out = run(capsys, "count", str(path))
    assert code == 0 and "oracle=7" in out.out


def test_corpus_listing(capsys):
    code, out = run(capsys, "corpus")
    assert code == 0 and out.out.split() == corpus_names()
    code, out = run(capsys, "corpus", "reeve2")
    assert parse_document(out.out).name == "reeve2"


def test_dumps(capsys):
    code, out = run(capsys, "fan", "--corpus", "mult2_triangle")
    assert code == 0 and "mult 2" in out.out
    code, out = run(capsys, "brion", "--corpus", "segment1")
    assert code == 0 and "vertex (0,)" in out.out


def test_polynomial_grammar():
    p = parse_polynomial("x1^2 - 3/2*x2 + (x1+1)*2", 2)
    assert p.evaluate((1, 2)) == 2
    for bad in ("x3", "x1/x2", "x1^-1", "import os", "x1**x2", "__import__('os')"):
        with pytest.raises(DocumentError):
            parse_polynomial(bad, 2)
