"""Command-line surface: reports, exit codes, determinism."""

import json

import pytest

from curlywedge import catalog
from curlywedge.cli import main

BROKEN_D4 = "name BrokenD4\norders 2 4\nconj 2 1 = g2^2\n"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_info_reference_group(capsys):
    code, out, _ = run(capsys, "info", "catalog:G243_28")
    assert code == 0
    assert "order: 243" in out
    assert "abelianization: [3, 3]" in out


def test_info_json(capsys):
    code, out, _ = run(capsys, "info", "catalog:C5", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "1"
    assert doc["body"]["order"] == "5"
    assert doc["input"]["kind"] == "catalog"


def test_bogomolov_reference_group(capsys):
    code, out, _ = run(capsys, "bogomolov", "catalog:G243_28", "--json")
    assert code == 0
    body = json.loads(out)["body"]
    assert body["bogomolov"] == ["3"]
    assert body["multiplier"] == ["9"]
    assert body["exterior_square_order"] == "243"
    assert body["curly_wedge_order"] == "81"


def test_bogomolov_json_body_is_deterministic(capsys):
    bodies = []
    for _ in range(2):
        code, out, _ = run(capsys, "bogomolov", "catalog:G243_28", "--json")
        assert code == 0
        doc = json.loads(out)
        doc.pop("timing_seconds")
        bodies.append(json.dumps(doc, sort_keys=True))
    assert bodies[0] == bodies[1]


def test_bogomolov_method_both(capsys):
    for name in ["D4", "S3", "Heis3"]:
        code, out, _ = run(capsys, "bogomolov", f"catalog:{name}",
                           "--method", "both")
        assert code == 0
        assert "bogomolov: []" in out


def test_multiplier_command(capsys):
    code, out, _ = run(capsys, "multiplier", "catalog:Heis3")
    assert code == 0
    assert "multiplier: [3, 3]" in out


def test_wedge_command(capsys):
    code, out, _ = run(capsys, "wedge", "catalog:G243_28")
    assert code == 0
    assert "curly_wedge_order: 81" in out
    assert "m0_index: 3" in out


def test_fiveterm_center(capsys):
    code, out, _ = run(capsys, "fiveterm", "catalog:D4", "--normal", "center")
    assert code == 0
    assert "partial: False" in out


def test_fiveterm_explicit_words(capsys):
    code, _, _ = run(capsys, "fiveterm", "catalog:S3", "--normal", "g2")
    assert code == 0


def test_catalog_list_and_emit(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0
    assert out.splitlines() == catalog.list_names()
    code, out, _ = run(capsys, "catalog", "emit", "D4")
    assert code == 0
    assert out == catalog.get("D4").source


def test_corrupted_fixture_rejected(tmp_path, capsys):
    fixture = tmp_path / "broken.pc"
    fixture.write_text(BROKEN_D4)
    code, _, err = run(capsys, "info", str(fixture))
    assert code == 2
    assert "failing overlap" in err
    assert "g2*g1^r1" in err


def test_unknown_catalog_name(capsys):
    code, _, err = run(capsys, "info", "catalog:NoSuchGroup")
    assert code == 2
    assert "no catalog entry" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "info", "/nonexistent/file.pc")
    assert code == 2


def test_bound_exceeded_exit_code(capsys):
    code, _, err = run(capsys, "bogomolov", "catalog:G243_28",
                       "--bound", "10")
    assert code == 3


def test_verify_single_group(capsys):
    code, out, _ = run(capsys, "verify", "catalog:S3", "--samples", "20")
    assert code == 0
    assert "FAIL" not in out


def test_verify_all_catalog_json(capsys):
    code, out, _ = run(capsys, "verify", "--all-catalog", "--samples", "10",
                       "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["body"]["passed"] is True
