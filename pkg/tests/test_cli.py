import json

import pytest

from mvalgebra.cli import main

CHAIN2 = '{"kind":"chain","n":2}'
CHANG = '{"kind":"lex_gamma","k":1}'
P12 = '{"kind":"product","factors":[{"kind":"chain","n":1},{"kind":"chain","n":2}]}'
BAD_TABLE = json.dumps({"kind": "table", "name": "bad", "oplus": [[0, 1, 2], [1, 2, 2], [2, 2, 2]],
                        "neg": [2, 0, 0], "labels": ["0", "1/2", "1"]})


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--report", "json")
    return code, json.loads(out)


def test_classify_element_in_chang(capsys):
    code, r = run_json(capsys, "classify", "--algebra", CHANG, "--element", "(0,1)")
    assert code == 0
    assert (r["infinitesimal"], r["archimedean"], r["quasiarchimedean"]) == (True, False, True)


def test_classify_ideal_in_chain(capsys):
    code, r = run_json(capsys, "classify", "--algebra", '{"kind":"chain","n":6}', "--ideal", "zero")
    assert code == 0 and r["flags"]["maximal"] and r["flags"]["prime"] and r["flags"]["hyperradical"]


def test_classify_algebra_without_target(capsys):
    code, out, _ = run(capsys, "classify", "--algebra", CHANG)
    assert code == 0 and "quasihyperarchimedean" in out


@pytest.mark.parametrize("argv", [
    ("classify", "--algebra", '{"kind":"chain","n":0}'),
    ("classify", "--algebra", "{not json"),
    ("term", "parse", "x + * x"),
    ("term", "eval", "x1 + x2", "--at", "x1=1/2"),
    ("frobnicate",),
    ("suite", "run", "--nmax", "notanumber"),
])
def test_usage_errors_exit_2(capsys, argv):
    assert main(list(argv)) == 2


def test_syntax_error_reports_column(capsys):
    code, _, err = run(capsys, "term", "parse", "x + * x")
    assert code == 2 and "5" in err


def test_resource_limit_exit_3(capsys):
    assert main(["ideals", "list", "--algebra", '{"kind":"chain","n":80}']) == 3
    assert main(["lattice", "--algebra", '{"kind":"chain","n":80}']) == 3
    assert main(["null", "check", "--carrier", 'finite:{"points":6,"chain":2}', "--ideal", "zero"]) == 3


def test_check_axioms(capsys):
    code, r = run_json(capsys, "check-axioms", "--algebra", CHAIN2)
    assert code == 0 and r["ok"]
    code, r = run_json(capsys, "check-axioms", "--algebra", BAD_TABLE)
    assert code == 1 and not r["ok"]
    assert any(f["axiom"] == "involution" for f in r["failures"])


def test_ideals_list_and_classify(capsys):
    code, r = run_json(capsys, "ideals", "list", "--algebra", P12)
    assert code == 0 and len(r["ideals"]) == 4
    code, r = run_json(capsys, "ideals", "classify", "--algebra", CHANG, "--ideal", "zero")
    assert code == 0 and r["flags"]["prime"] and not r["flags"]["maximal"]


def test_spectrum(capsys):
    code, r = run_json(capsys, "spectrum", P12, "--base-sets")
    assert code == 0 and len(r["characters"]) == 2 and "base_sets" in r
    for check in ("2.4", "2.5", "2.6"):
        code, _, _ = run(capsys, "spectrum", CHANG, "--check", check)
        assert code == 0


def test_term_commands(capsys):
    code, r = run_json(capsys, "term", "eval", "x + x", "--at", "x=1/3")
    assert code == 0 and r["value"] == "2/3"
    code, r = run_json(capsys, "term", "zeros", "x . x")
    assert r["zero_set"] == [["0", "1/2"]]
    code, r = run_json(capsys, "term", "eq", "x", "x + x")
    assert code == 0 and not r["equal"]
    code, r = run_json(capsys, "term", "eq", "x \\/ !x", "!(x /\\ !x)")
    assert r["equal"]
    code, out, _ = run(capsys, "term", "parse", "!(x + x)")
    assert code == 0 and "Neg" in out
    code, out, _ = run(capsys, "term", "pl", "x + x")
    assert code == 0 and "1/2" in out


def test_null_check_f1(capsys):
    code, r = run_json(capsys, "null", "check", "--carrier", "f1", "--ideal", "principal:x . x", "--nmax", "8")
    assert code == 0 and r["ok"] and r["locus"] == [["0", "1/2"]]
    row = next(row for row in r["rows"] if row["g"] == "x")
    assert not row["vanishes_on_locus"] and row["first_failing_n"] == 2


def test_null_check_finite(capsys):
    code, r = run_json(capsys, "null", "check", "--carrier", 'finite:{"points":3,"chain":2}', "--ideal", "zero")
    assert code == 0 and r["ok"]
    code, _, _ = run(capsys, "null", "check", "--carrier",
                     'finite:{"points":3,"chain":2,"subalgebra":"constants"}', "--ideal", "zero")
    assert code == 0


def test_lattice_dot(capsys):
    code, out, _ = run(capsys, "lattice", "--algebra", P12)
    assert code == 0 and out.startswith("digraph")
    assert out.count("[label=") == 4 and out.count("->") == 4
    code, out, _ = run(capsys, "lattice", "--algebra", '{"kind":"chain","n":5}')
    assert out.count("[label=") == 2 and out.count("->") == 1
    code, out, _ = run(capsys, "lattice", "--algebra", CHANG)
    assert out.count("[label=") == 3 and out.count("->") == 2
    code, r = run_json(capsys, "lattice", "--algebra", P12)
    assert code == 0


def test_suite_degenerate_bank(capsys):
    code, r = run_json(capsys, "suite", "run", "--bank", CHAIN2)
    assert code == 0 and r["status"] == "pass"
    assert r["summary"]["fail"] == 0


def test_suite_corrupted_table_fails_on_axioms_first(capsys):
    bank = "[" + CHAIN2 + "," + BAD_TABLE + "]"
    code, r = run_json(capsys, "suite", "run", "--bank", bank)
    assert code == 1 and r["status"] == "fail"
    failing = [c for c in r["checks"] if c["status"] == "fail"]
    assert failing[0]["id"] == "axioms"
    assert all("reproduce" in cx for c in failing for cx in c["counterexamples"])
    code, out, _ = run(capsys, "suite", "run", "--bank", bank)
    assert code == 1 and "mv check-axioms" in out


def test_text_reports_are_plain(capsys):
    code, out, _ = run(capsys, "classify", "--algebra", CHANG, "--element", "(0,1)")
    assert code == 0 and "infinitesimal" in out and not out.lstrip().startswith("{")
