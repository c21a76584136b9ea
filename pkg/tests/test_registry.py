"""The bundled worked examples must all pass and stay deterministic."""

import json

import pytest

from natext.errors import UnknownExample
from natext.registry import REGISTRY, get_example, list_examples, run_all, run_example

EXPECTED_NAMES = [
    "fig1-bs12",
    "fig1-free",
    "coset-s3-bs12",
    "nat-to-int-goldenmean",
    "fractions-test-z2",
    "fractions-test-f2",
    "reversible-f2plus",
    "grothendieck-n2",
    "bs23-endo",
    "transitive-lift-goldenmean",
]


def test_listing_names_and_summaries():
    rows = list_examples()
    assert [r["name"] for r in rows] == EXPECTED_NAMES
    for r in rows:
        assert r["anchor"]
        assert r["summary"]


def test_unknown_example_lists_known_names():
    with pytest.raises(UnknownExample) as exc:
        get_example("not-a-thing")
    msg = str(exc.value)
    assert "fig1-bs12" in msg


@pytest.mark.parametrize("name", EXPECTED_NAMES)
def test_each_example_passes(name):
    rep = run_example(name)
    assert rep["schema"] == 1
    assert rep["name"] == name
    assert rep["pass"], rep["failures"]
    assert rep["failures"] == []


def test_run_all_passes_and_is_deterministic():
    seq = run_all(concurrent=False)
    con = run_all(concurrent=True)
    assert json.dumps(seq, sort_keys=True) == json.dumps(con, sort_keys=True)
    assert seq["pass"]
    assert len(seq["results"]) == len(REGISTRY)
    assert [r["name"] for r in seq["results"]] == EXPECTED_NAMES


def test_example_payload_spot_checks():
    rep = run_example("fig1-bs12")
    assert rep["data"]["verdict"] == "EmptyProven"
    assert rep["data"]["radius"] == 3
    assert rep["data"]["core"]["elements"] == [
        "1", "a", "b", "b a", "a b", "a^-1 b a",
    ]
    rep = run_example("grothendieck-n2")
    assert rep["data"]["rank"] == 2
    assert rep["data"]["torsion"] == []
    rep = run_example("fractions-test-z2")
    assert rep["data"]["verdict"] == "Directed"
    assert rep["data"]["witness"] == "y x"
