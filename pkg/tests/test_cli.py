import json

import pytest

from permfrac.cli import SCHEMA, main


def run_json(capsys, *argv):
    code = main(["--json", *argv])
    doc = json.loads(capsys.readouterr().out)
    assert doc["schema"] == SCHEMA
    return code, doc


def test_stats_figure_one(capsys):
    code, doc = run_json(capsys, "stats", "597126843")
    assert code == 0 and doc["status"] == "ok"
    assert doc["permutation"] == [5, 9, 7, 1, 2, 6, 8, 4, 3]
    assert doc["stats"]["exc"] == 4 and doc["stats"]["fp"] == 1


def test_json_flag_after_subcommand(capsys):
    assert main(["stats", "21", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["command"] == "stats"


def test_path_text(capsys):
    assert main(["path", "597126843"]) == 0
    out = capsys.readouterr().out
    assert "labels:  p dp cdp g^2t l^2r w^2u as hr r" in out
    assert "kinds:   U U U T D F S D D" in out


def test_path_unpath_roundtrip(capsys, tmp_path):
    code, doc = run_json(capsys, "path", "3142")
    assert code == 0
    code, back = run_json(capsys, "unpath", *doc["encoding"].split())
    assert back["permutation"] == [3, 1, 4, 2]
    doc_file = tmp_path / "path.json"
    doc_file.write_text(json.dumps(doc))
    code, back = run_json(capsys, "unpath", "--from-json", str(doc_file))
    assert code == 0 and back["permutation"] == [3, 1, 4, 2]


def test_unpath_error_position(capsys):
    code, doc = run_json(capsys, "unpath", "D[h^0 l^0]")
    assert code == 2 and doc["status"] == "error"
    assert doc["path_error"]["position"] == 1


def test_expand_at_ones(capsys):
    code, doc = run_json(capsys, "expand", "-n", "4", "--at", "*=1")
    assert code == 0
    assert doc["moments"][1] == "u"
    assert doc["evaluated"] == [1, 1, 2, 6, 24]


def test_expand_with_catalog_and_set(capsys):
    code, doc = run_json(capsys, "expand", "-n", "6", "--catalog", "derangements",
                         "--default", "1")
    assert doc["moments"] == [1, 0, 1, 2, 9, 44, 265]
    code, doc = run_json(capsys, "expand", "-n", "3", "--default", "1", "--set", "u=0",
                         "--set", "p=2")
    assert doc["moments"] == [1, 0, 2, 4]


def test_catalog_commands(capsys):
    assert main(["catalog", "compare", "derangements", "-n", "8"]) == 0
    capsys.readouterr()
    code, doc = run_json(capsys, "catalog", "list", "--group", "table2")
    assert code == 0
    assert main(["catalog", "compare", "no-such-entry"]) == 2
    assert "unknown specialization" in capsys.readouterr().err


def test_failing_report_exit_code(capsys):
    assert main(["verify", "conjectures", "-n", "3", "-k", "2"]) == 1


def test_usage_errors(capsys):
    assert main(["classify"]) == 2
    assert main(["stats", "1 1"]) == 2
    assert main(["expand"]) == 2
    assert main(["no-such-command"]) == 2


def test_classify_numeric(capsys):
    code, doc = run_json(capsys, "classify", "--default", "1")
    assert code == 0
    assert doc["status"] == "ok"


def test_hankel_all_ones(capsys):
    assert main(["hankel", "-n", "3", "--default", "1"]) == 0
    out = capsys.readouterr().out
    assert "H_2 = 4" in out and "H_3 = 144" in out


def test_arrangements_counts(capsys):
    code, doc = run_json(capsys, "arrangements", "count", "-k", "2", "-n", "4",
                         "--method", "all")
    assert [len(set(v.values())) for v in doc["counts"].values()] == [1] * 5
    assert doc["counts"]["4"]["egf"] == 65


def test_compare_seq(capsys, tmp_path):
    seq = tmp_path / "fact.txt"
    seq.write_text("0 1\n1 1\n2 2\n3 6\n4 24\n")
    assert main(["compare-seq", str(seq), "--default", "1"]) == 0
    seq.write_text("0 1\n1 1\n2 2\n3 7\n")
    assert main(["compare-seq", str(seq), "--default", "1"]) == 1
