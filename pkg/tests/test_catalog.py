"""Catalog entries: consistency, frozen expectations, emission."""

import pytest

from curlywedge import catalog, pc


def test_list_is_sorted_and_complete():
    names = catalog.list_names()
    assert names == sorted(names)
    required = {"C2", "C3", "C5", "C12", "V4", "E27", "Z4xZ2", "D4", "Q8",
                "SD16", "Heis3", "Heis5", "S3", "A4", "G243_28"}
    assert required <= set(names)


def test_entries_parse_and_are_consistent():
    for entry in catalog.entries():
        p = entry.presentation()
        assert pc.is_consistent(p)
        assert p.order() == entry.expected["order"][0]
        assert p.name == entry.name


def test_expected_values_carry_provenance():
    tags = {"trivial", "oracle", "literature", "reference"}
    for entry in catalog.entries():
        for field, (value, provenance) in entry.expected.items():
            assert provenance in tags, (entry.name, field)


def test_structure_matches_expectations():
    for entry in catalog.entries():
        p = entry.presentation()
        assert pc.abelianization(p) == entry.expected["abelianization"][0]
        assert len(pc.derived_subgroup(p)) == entry.expected["derived_order"][0]


def test_source_is_canonical():
    # stored sources round-trip byte-exactly through parse and format
    for entry in catalog.entries():
        p = entry.presentation()
        assert pc.format_presentation(p) == entry.source, entry.name


def test_get_unknown_name_suggests():
    with pytest.raises(KeyError) as exc:
        catalog.get("Heis4")
    assert "Heis" in str(exc.value)


def test_reference_entry_documents_convention():
    entry = catalog.get("G243_28")
    assert "conven" in entry.notes
    assert entry.expected["bogomolov"] == ((3,), "reference")
